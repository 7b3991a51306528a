"""Command line interface: ``sepalg alg|grp|stmod|batch ...``.

Every subcommand builds a JSON-ready report; ``--json`` prints it verbatim
(canonical, sorted keys) and the default mode renders the same object as
indented text.  Errors map to exit codes through the exception taxonomy.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import grp as G_
from .errors import SepalgError, UsageError
from .fdalg import (
    etale_via_trace_form,
    graded_separability_idempotent,
    primitive_idempotents,
    separability_idempotent,
    solution_space_dimension,
    splitting_tower,
    validate,
)
from .io import (
    corpus_names,
    corpus_path,
    dumps,
    gset_from_json,
    load_algebra,
    load_group,
    read_json,
    subgroup_from_spec,
)
from .permalg import classify_rank_one, modG_galois_data, stmod_degree, verify_rank_one_galois

ENV_PREFIX = "SEPALG_"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    max_group_order: int = G_.DEFAULT_MAX_ORDER
    max_rational_degree: int = 24
    oracle_cutoff: int = 16
    json: bool = False


def _env(name, default, cast):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise UsageError(f"bad value for {ENV_PREFIX}{name}: {raw!r}") from exc


def _flag(raw: str) -> bool:
    if raw.lower() in ("1", "true", "yes", "on"):
        return True
    if raw.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)


def config_from_args(ns) -> RunConfig:
    """Flags override ``SEPALG_*`` environment variables, which override defaults."""
    base = RunConfig()

    def pick(attr, env, cast):
        val = getattr(ns, attr, None)
        return val if val is not None else _env(env, getattr(base, attr), cast)

    return RunConfig(
        seed=pick("seed", "SEED", int),
        max_group_order=pick("max_group_order", "MAX_GROUP_ORDER", int),
        max_rational_degree=pick("max_rational_degree", "MAX_RATIONAL_DEGREE", int),
        oracle_cutoff=pick("oracle_cutoff", "ORACLE_CUTOFF", int),
        json=bool(ns.json) or _env("JSON", False, _flag),
    )


def _prime(ns):
    p = ns.p if getattr(ns, "p", None) is not None else _env("P", None, int)
    if p is None:
        raise UsageError("this command needs a prime: pass -p P")
    return p


# -- alg --------------------------------------------------------------------------------

def cmd_alg(sub: str, path, cfg: RunConfig) -> dict:
    a = load_algebra(path)
    report = {"command": f"alg {sub}", "file": Path(path).name, "dim": a.dim}
    if sub == "validate":
        report.update(validate(a).to_json())
        return report
    rep = validate(a)
    if not rep.ok:
        f = rep.failures[0]
        raise UsageError(f"algebra fails validation: {f['axiom']} at {f['indices']}")
    if sub == "separable":
        if a.grading is not None and a.is_graded:
            w = graded_separability_idempotent(a)
            report["graded"] = True
            report["solution_space_dim"] = solution_space_dimension(a, graded=True)
        else:
            w = separability_idempotent(a)
            report["graded"] = False
            report["solution_space_dim"] = solution_space_dimension(a)
            report["trace_form_nondegenerate"] = etale_via_trace_form(a)
        report["separable"] = w is not None
        report["witness"] = w.to_json()["e"] if w is not None else None
    elif sub == "idempotents":
        report.update(primitive_idempotents(a, seed=cfg.seed,
                                            max_rational_degree=cfg.max_rational_degree).to_json())
    elif sub == "tower":
        report.update(splitting_tower(a, seed=cfg.seed).to_json())
    elif sub == "degree":
        report["degree"] = splitting_tower(a, seed=cfg.seed).degree
    else:
        raise UsageError(f"unknown alg subcommand {sub!r}")
    return report


# -- grp --------------------------------------------------------------------------------

def _sylow_kind(G, p, S, r):
    if S.order == 1:
        return "trivial"
    if G_.is_cyclic(G, S):
        return "cyclic"
    if p == 2 and r == 1 and G_.is_generalized_quaternion(G, S):
        return "generalized-quaternion"
    return "noncyclic"


def cmd_grp(sub: str, path, cfg: RunConfig, p=None, h=None, k=None) -> dict:
    G = load_group(path, max_order=cfg.max_group_order)
    report = {"command": f"grp {sub}", "group": G.name or Path(path).stem, "order": G.order}
    if sub == "doublecosets":
        if h is None or k is None:
            raise UsageError("doublecosets needs --h and --k")
        H = subgroup_from_spec(G, h)
        K = subgroup_from_spec(G, k)
        dc = G_.double_coset_decomposition(G, H, K)
        report.update({"H": H.to_json(), "K": K.to_json(), "count": len(dc.cosets),
                       "double_cosets": dc.to_json()})
        return report
    if p is None:
        raise UsageError("this command needs a prime: pass -p P")
    G_._require_prime(p)
    report["p"] = p
    if sub == "sylow":
        report["sylow"] = G_.sylow_subgroup(G, p).to_json()
    elif sub == "prank":
        report["p_rank"] = G_.p_rank(G, p)
    elif sub == "np":
        Np = G_.np_closure(G, p)
        report["Np"] = Np.to_json()
        report["quotient_order"] = G.order // Np.order
    elif sub == "weyl":
        if G.order % p:
            raise UsageError(f"p = {p} does not divide |G| = {G.order}")
        P = G_.order_p_subgroups(G, p)[0]
        wd = G_.normalizer_and_weyl(G, P)
        report.update({"P": P.to_json(), "N": wd.normalizer.to_json(), "W_order": wd.weyl.order,
                       "coset_reps": [G_.cycle_string(r) for r in wd.coset_reps]})
    elif sub == "info":
        S = G_.sylow_subgroup(G, p)
        r = G_.p_rank(G, p)
        Np = G_.np_closure(G, p)
        report.update({"sylow_order": S.order, "p_rank": r, "sylow": _sylow_kind(G, p, S, r),
                       "np_order": Np.order, "modG_galois_order": G.order // Np.order})
        if r == 1:
            P = G_.order_p_subgroups(G, p)[0]
            report["weyl_order"] = G_.normalizer_and_weyl(G, P).weyl.order
        else:
            report["weyl_order"] = None
    else:
        raise UsageError(f"unknown grp subcommand {sub!r}")
    return report


# -- stmod ------------------------------------------------------------------------------

def cmd_stmod(sub: str, path, cfg: RunConfig, p=None, h=None, gset=None) -> dict:
    G = load_group(path, max_order=cfg.max_group_order)
    if p is None:
        raise UsageError("this command needs a prime: pass -p P")
    G_._require_prime(p)
    name = G.name or Path(path).stem
    report = {"command": f"stmod {sub}", "group": name, "p": p}
    if sub == "degree":
        if gset is not None:
            target = gset_from_json(read_json(gset), Path(gset), group=G)
            report["target"] = {"gset": Path(gset).name, "size": len(target)}
        else:
            if h is not None:
                target = subgroup_from_spec(G, h)
            elif G.order % p == 0:
                target = G_.order_p_subgroups(G, p)[0]
            else:
                target = G.trivial
            report["target"] = {"H": target.to_json(), "size": G.order // target.order}
        rep = stmod_degree(G, target, p, oracle_cutoff=cfg.oracle_cutoff)
        report.update(rep.to_json())
    elif sub == "galois":
        rep = verify_rank_one_galois(G, p, oracle_cutoff=cfg.oracle_cutoff)
        body = rep.to_json()
        body["group"] = name
        report.update(body)
    elif sub == "classify":
        rep = classify_rank_one(G, p)
        body = rep.to_json()
        report.update({"P": [G_.cycle_string(g) for g in rep.P.generators], "N": body["N_order"], "W_order": body["W_order"],
                       "covers": body["covers"], "cover_count": body["cover_count"],
                       "conjugacy_classes": body["conjugacy_classes"]})
    elif sub == "modg":
        data = modG_galois_data(G, p)
        report.update(data.to_json())
        report["galois_group_order"] = data.quotient.order
    else:
        raise UsageError(f"unknown stmod subcommand {sub!r}")
    return report


# -- batch ------------------------------------------------------------------------------

def _primes(n):
    return [q for q in range(2, n + 1) if n % q == 0 and all(q % d for d in range(2, q))]


def _guarded(fn, *args, **kw):
    try:
        return fn(*args, **kw)
    except SepalgError as exc:
        return {"error": str(exc), "exit_code": exc.exit_code}


def rank_one_report(path, cfg: RunConfig, p: int) -> dict:
    """The combined rank-one summary: Weyl data, stable degree, h = tau and covers."""
    G = load_group(path, max_order=cfg.max_group_order)
    gal = verify_rank_one_galois(G, p, oracle_cutoff=cfg.oracle_cutoff)
    cls = classify_rank_one(G, p)
    deg = stmod_degree(G, gal.P, p, oracle_cutoff=cfg.oracle_cutoff).to_json()
    return {
        "group": G.name or Path(path).stem,
        "p": p,
        "P": [G_.cycle_string(g) for g in gal.P.generators],
        "N": gal.N.order,
        "W_order": gal.W.order,
        "degree": deg["degree"],
        "maximizing_Q": deg["maximizing_Q"],
        "h_equals_tau": gal.checks["h_equals_tau"],
        "covers": [{k: c[k] for k in ("V_order", "index", "W_set")} for c in cls.to_json()["covers"]],
    }


def _expand(paths):
    """Turn files and corpus list files into (kind, path, primes) jobs."""
    jobs = []
    for path in paths:
        if not Path(path).is_file():
            # bare corpus names work here as they do for the other commands
            cands = [corpus_path(k, Path(path).stem) for k in ("groups", "algebras")]
            path = str(next((c for c in cands if c.is_file()), path))
        obj = read_json(path)
        if "groups" in obj or "algebras" in obj:
            base = Path(path).parent
            for g in obj.get("groups", []):
                gp = base / f"groups/{g['group']}.json"
                if not gp.is_file():
                    gp = corpus_path("groups", g["group"])
                jobs.append(("group", str(gp), g.get("primes")))
            for name in obj.get("algebras", []):
                ap = base / f"algebras/{name}.json"
                if not ap.is_file():
                    ap = corpus_path("algebras", name)
                jobs.append(("algebra", str(ap), None))
        elif "structure" in obj:
            jobs.append(("algebra", path, None))
        elif "generators" in obj:
            jobs.append(("group", path, None))
        else:
            raise UsageError(f"{path}: not an algebra, group or corpus list file")
    return jobs


def cmd_batch(paths, cfg: RunConfig) -> dict:
    """Run the standard reports over the given files (default: the shipped corpus list)."""
    if not paths:
        paths = [str(corpus_path("", "batch"))]
    entries = []
    for kind, path, primes in _expand(paths):
        label = Path(path).name
        if kind == "algebra":
            entries.append({"file": label, "kind": "algebra",
                            "separable": _guarded(cmd_alg, "separable", path, cfg),
                            "degree": _guarded(cmd_alg, "degree", path, cfg)})
            continue
        G = load_group(path, max_order=cfg.max_group_order)
        for p in primes if primes is not None else _primes(G.order):
            info = _guarded(cmd_grp, "info", path, cfg, p=p)
            entry = {"file": label, "kind": "group", "p": p, "info": info}
            if info.get("p_rank") == 1:
                entry["report"] = _guarded(rank_one_report, path, cfg, p)
                entry["galois"] = _guarded(cmd_stmod, "galois", path, cfg, p=p)
            entries.append(entry)
    entries.sort(key=lambda e: (e["kind"], e["file"], e.get("p", 0)))
    failures = sum(1 for e in entries for v in e.values() if isinstance(v, dict) and "error" in v)
    return {"command": "batch", "entries": entries, "count": len(entries), "errors": failures}


# -- rendering --------------------------------------------------------------------------

def render_text(obj, indent: int = 0) -> str:
    """Human rendering of a report; a view of the JSON, nothing more."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat(val) -> bool:
    return isinstance(val, list) and all(not isinstance(v, (dict, list)) for v in val)


def _scalar(val) -> str:
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    if isinstance(val, list):
        return "[" + ", ".join(_scalar(v) for v in val) + "]"
    if isinstance(val, dict):
        return "{}"
    return str(val)


# -- entry point ------------------------------------------------------------------------

def _common(parser, top=False):
    # accepted before or after the subcommand; the subcommand copies must not reset the top-level value
    kw = {} if top else {"default": argparse.SUPPRESS}
    parser.add_argument("--json", action="store_true", help="emit canonical JSON",
                        **({"default": None} if top else kw))
    parser.add_argument("--seed", type=int, help="seed for randomized subroutines", **kw)
    parser.add_argument("--max-group-order", type=int, help="refuse to enumerate larger groups", **kw)
    parser.add_argument("--max-rational-degree", type=int, help="degree cap for factoring over Q", **kw)
    parser.add_argument("--oracle-cutoff", type=int, help="largest G-set checked by the subset oracle", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepalg", description=__doc__.splitlines()[0])
    _common(parser, top=True)
    top = parser.add_subparsers(dest="area", required=True)

    alg = top.add_parser("alg", help="algebra pipelines")
    alg.add_argument("sub", choices=["validate", "separable", "idempotents", "tower", "degree"])
    alg.add_argument("file")
    _common(alg)

    grp = top.add_parser("grp", help="permutation group computations")
    grp.add_argument("sub", choices=["info", "sylow", "prank", "np", "weyl", "doublecosets"])
    grp.add_argument("file")
    grp.add_argument("-p", type=int)
    grp.add_argument("--h", help="subgroup name or ';'-separated cycle generators")
    grp.add_argument("--k", help="subgroup name or ';'-separated cycle generators")
    _common(grp)

    st = top.add_parser("stmod", help="stable module category computations")
    st.add_argument("sub", choices=["degree", "galois", "classify", "modg"])
    st.add_argument("file")
    st.add_argument("-p", type=int)
    st.add_argument("--h", help="subgroup H for the degree of A^G_{G/H}")
    st.add_argument("--gset", help="G-set file for the degree of its permutation algebra")
    _common(st)

    b = top.add_parser("batch", help="run the standard reports over files or the shipped corpus")
    b.add_argument("files", nargs="*")
    _common(b)
    return parser


def run(argv=None) -> tuple[int, str]:
    """Parse and execute; returns (exit code, text to print)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return (1 if exc.code else 0), ""
    want_json = bool(ns.json)
    try:
        cfg = config_from_args(ns)
        want_json = cfg.json
        if ns.area == "alg":
            report = cmd_alg(ns.sub, ns.file, cfg)
        elif ns.area == "grp":
            p = _prime(ns) if ns.sub != "doublecosets" else None
            report = cmd_grp(ns.sub, ns.file, cfg, p=p, h=ns.h, k=ns.k)
        elif ns.area == "stmod":
            report = cmd_stmod(ns.sub, ns.file, cfg, p=_prime(ns), h=ns.h, gset=ns.gset)
        else:
            report = cmd_batch(ns.files, cfg)
    except SepalgError as exc:
        err = {"error": str(exc), "kind": type(exc).__name__, "exit_code": exc.exit_code}
        text = dumps(err) if want_json else f"error ({type(exc).__name__}): {exc}\n"
        return exc.exit_code, text
    text = dumps(report) if want_json else render_text(report) + "\n"
    return 0, text


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == 0 or text.startswith("{") else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
