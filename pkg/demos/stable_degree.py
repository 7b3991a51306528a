"""Degrees of permutation algebras in the stable module category.

Run with ``python3 demos/stable_degree.py``.
"""

from sepalg.grp import all_subgroups
from sepalg.gset import coset_gset
from sepalg.io import load_group
from sepalg.permalg import modG_galois_data, stmod_degree, strip_projective_summands


def main():
    for name, p in [("s3", 3), ("z4", 2), ("q8", 2), ("a4", 2)]:
        G = load_group(name)
        print(f"{name}, p = {p}")
        for H in all_subgroups(G):
            X = coset_gset(G, H)
            rep = stmod_degree(G, X, p)
            nonproj, proj = strip_projective_summands(G, X, p)
            print(f"  |H| = {H.order:2d}  |G/H| = {len(X):2d}  stable degree {rep.degree}"
                  f"  ({len(proj)} projective orbits dropped)")
        data = modG_galois_data(G, p)
        print(f"  Galois group of the covers: order {data.quotient.order}")


if __name__ == "__main__":
    main()
