"""JSON reading and writing for fields, groups, G-sets and algebras.

Coefficients are written as decimal strings ("a/b" for fractions) or, for
extension-field elements outside the prime field, as coefficient lists.
Group references are either inline objects, names of shipped corpus groups,
or paths to group files (resolved relative to the referring file).
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import UsageError
from .exactcore.fields import Field, field_from_json
from .fdalg.algebra import GroupAction, StructureAlgebra
from .grp import PermGroup, Subgroup, closure, cycle_string, parse_cycles
from .gset import GSet


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


# -- corpus -------------------------------------------------------------------------

def corpus_path(kind: str, name: str) -> Path:
    """A shipped corpus file; ``kind`` is a subdirectory or "" for the top level."""
    base = resources.files("sepalg") / "corpus"
    if kind:
        base = base / kind
    return Path(str(base / f"{name}.json"))


def corpus_names(kind: str) -> list[str]:
    base = Path(str(resources.files("sepalg") / "corpus" / kind))
    return sorted(p.stem for p in base.glob("*.json"))


def load_corpus_group(name: str) -> PermGroup:
    return group_from_json(read_json(corpus_path("groups", name)))


# -- groups -------------------------------------------------------------------------

def _perm(obj, degree):
    if isinstance(obj, str):
        return parse_cycles(obj, degree)
    return tuple(int(x) for x in obj)


def group_from_json(obj: dict, *, max_order: int | None = None) -> PermGroup:
    try:
        degree = int(obj["degree"])
        gens = [_perm(g, degree) for g in obj["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad group specification: {exc}") from exc
    kwargs = {} if max_order is None else {"max_order": max_order}
    G = PermGroup(degree, gens or [tuple(range(degree))], name=obj.get("name"), **kwargs)
    G.named_subgroups = {k: v for k, v in sorted(obj.get("subgroups", {}).items())}
    return G


def group_to_json(G: PermGroup) -> dict:
    out = G.to_json()
    subs = G.named_subgroups
    if subs:
        out["subgroups"] = subs
    return out


def resolve_group(ref, relative_to: Path | None = None, *, max_order: int | None = None) -> PermGroup:
    if isinstance(ref, dict):
        return group_from_json(ref, max_order=max_order)
    if isinstance(ref, str):
        candidates = []
        if relative_to is not None:
            candidates.append(relative_to.parent / ref)
        candidates.append(Path(ref))
        for c in candidates:
            if c.is_file():
                return group_from_json(read_json(c), max_order=max_order)
        name = ref[:-5] if ref.endswith(".json") else ref
        path = corpus_path("groups", name)
        if path.is_file():
            return group_from_json(read_json(path), max_order=max_order)
        raise UsageError(f"unknown group reference {ref!r}")
    raise UsageError(f"bad group reference {ref!r}")


def subgroup_from_spec(G: PermGroup, spec) -> Subgroup:
    """A subgroup from a name in the group file, or from generators.

    Generators may be cycle strings separated by ';' or a list of cycle
    strings / one-line permutations.  An empty spec gives the trivial group.
    """
    named = G.named_subgroups
    if isinstance(spec, str) and spec in named:
        spec = named[spec]
    if isinstance(spec, str):
        spec = [s for s in spec.split(";") if s.strip()]
    gens = [_perm(s, G.degree) for s in spec]
    for g in gens:
        if g not in G:
            raise UsageError(f"{cycle_string(g)} is not an element of the group")
    return Subgroup(G, closure(G, gens))


# -- G-sets --------------------------------------------------------------------------

def gset_from_json(obj: dict, relative_to: Path | None = None, group: PermGroup | None = None) -> GSet:
    G = group or resolve_group(obj["group"], relative_to)
    try:
        points = obj["points"]
        act = obj["action"]
        if isinstance(act, dict):
            perms = [act[str(i)] for i in range(len(G.generators))]
        else:
            perms = act
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad G-set specification: {exc}") from exc
    return GSet(G, points, perms)


def gset_to_json(X: GSet, group_ref=None) -> dict:
    out = X.to_json()
    out["group"] = group_ref if group_ref is not None else group_to_json(X.group)
    return out


# -- algebras ------------------------------------------------------------------------

def _coef(F: Field, c):
    return F.parse(c)


def algebra_from_json(obj: dict, relative_to: Path | None = None) -> StructureAlgebra:
    try:
        F = field_from_json(obj["field"])
        n = int(obj["dim"])
        unit = tuple(_coef(F, u) for u in obj["unit"])
        structure = tuple((int(i), int(j), int(k), _coef(F, c)) for i, j, k, c in obj["structure"])
        basis = tuple(obj.get("basis", ()))
        grading = obj.get("grading")
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad algebra specification: {exc}") from exc
    action = None
    if obj.get("action") is not None:
        act = obj["action"]
        G = resolve_group(act["group"], relative_to)
        mats = tuple(tuple(tuple(_coef(F, x) for x in row) for row in M) for M in act["generators"])
        if len(mats) != len(G.generators):
            raise UsageError(f"{len(mats)} action matrices for {len(G.generators)} generators")
        action = GroupAction(G, mats)
    return StructureAlgebra(F, n, structure, unit, basis, tuple(grading) if grading is not None else None,
                            action)


def algebra_to_json(a: StructureAlgebra, group_ref=None) -> dict:
    F = a.field
    out = {
        "field": F.to_json(),
        "dim": a.dim,
        "basis": list(a.basis),
        "unit": [F.format(u) for u in a.unit],
        "structure": [[i, j, k, F.format(c)] for i, j, k, c in a.structure],
    }
    if a.grading is not None:
        out["grading"] = list(a.grading)
    if a.action is not None:
        out["action"] = {
            "group": group_ref if group_ref is not None else group_to_json(a.action.group),
            "generators": [[[F.format(x) for x in row] for row in M] for M in a.action.matrices],
        }
    return out


def load_algebra(path) -> StructureAlgebra:
    path = Path(path)
    if not path.is_file():
        cand = corpus_path("algebras", path.stem)
        if cand.is_file():
            path = cand
    return algebra_from_json(read_json(path), path)


def load_group(path, *, max_order: int | None = None) -> PermGroup:
    path = Path(path)
    if path.is_file():
        return group_from_json(read_json(path), max_order=max_order)
    return resolve_group(path.stem, None, max_order=max_order)
