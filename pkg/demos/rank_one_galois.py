"""The rank-one Galois verification and cover classification for a few groups.

Run with ``python3 demos/rank_one_galois.py``.
"""

from sepalg.io import load_group
from sepalg.permalg import classify_rank_one, verify_rank_one_galois


def main():
    for name, p in [("z4", 2), ("q8", 2), ("s3", 3), ("sl23", 3)]:
        G = load_group(name)
        rep = verify_rank_one_galois(G, p)
        status = "ok" if rep.ok else f"FAILED {rep.checks}"
        print(f"{name}, p = {p}: |W| = {rep.W.order}, degree {rep.degree}, h = tau: {rep.h == rep.tau} ({status})")
        for c in classify_rank_one(G, p).covers:
            print(f"    cover: index {c.index}, |V| = {c.V.order}, W-set size {c.W_set}")


if __name__ == "__main__":
    main()
