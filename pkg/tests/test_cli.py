import json
import os
import subprocess
import sys

import pytest

from sepalg import cli
from sepalg.errors import ConsistencyError
from sepalg.gset import coset_gset, product
from sepalg.io import (algebra_from_json, algebra_to_json, corpus_names, group_from_json, group_to_json,
                       gset_to_json, load_algebra, load_group)


def run_json(*argv):
    code, text = cli.run(["--json", *argv])
    return code, json.loads(text)


def sepalg(*argv, env=None):
    full = dict(os.environ)
    full.update(env or {})
    return subprocess.run([sys.executable, "-m", "sepalg", *argv], capture_output=True, text=True,
                          env=full, timeout=300)


# -- the documented examples -------------------------------------------------------------

def test_alg_examples():
    code, out = run_json("alg", "degree", "f4_over_f2")
    assert code == 0 and out["degree"] == 2
    code, out = run_json("alg", "separable", "dual_numbers_f2")
    assert code == 0 and out["separable"] is False
    code, out = run_json("alg", "tower", "dual_numbers_f2")
    assert code == 2 and out["kind"] == "NotSeparable"
    code, out = run_json("alg", "tower", "k_times_k")
    assert code == 0 and out["dims"] == [2, 2, 0] and out["degree"] == 2


def test_alg_other_subcommands():
    code, out = run_json("alg", "validate", "exterior_f3")
    assert code == 0 and out["valid"] is True and out["failures"] == []
    code, out = run_json("alg", "separable", "f4_over_f2")
    assert out["separable"] is True and out["solution_space_dim"] == 0
    code, out = run_json("alg", "separable", "exterior_f3")
    assert code == 0 and out["graded"] is True and out["separable"] is False
    code, out = run_json("alg", "idempotents", "k3_over_f3")
    assert code == 0 and len(out["idempotents"]) == 3


def test_grp_examples():
    code, out = run_json("grp", "info", "s3", "-p", "3")
    assert code == 0
    assert (out["p_rank"], out["sylow"], out["weyl_order"]) == (1, "cyclic", 2)
    code, out = run_json("grp", "np", "z6", "-p", "2")
    assert code == 0 and out["Np"]["order"] == 2
    code, out = run_json("grp", "doublecosets", "s3", "--h", "A3", "--k", "A3")
    assert code == 0 and out["count"] == 2


def test_grp_subgroups_by_cycles():
    code, out = run_json("grp", "doublecosets", "s3", "--h", "(0 1)", "--k", "(0 1)")
    assert code == 0 and out["count"] == 2
    code, out = run_json("grp", "prank", "c2xc2", "-p", "2")
    assert code == 0 and out["p_rank"] == 2


def test_stmod_examples():
    code, out = run_json("stmod", "classify", "q8", "-p", "2")
    assert code == 0 and out["cover_count"] == 5 and len(out["covers"]) == 5
    code, out = run_json("stmod", "galois", "z4", "-p", "2")
    assert code == 0 and out["passed"] is True and all(out["checks"].values())
    code, out = run_json("stmod", "modg", "s3", "-p", "3")
    assert code == 0 and out["galois_group_order"] == 2
    code, out = run_json("stmod", "degree", "q8", "-p", "2", "--h", "Z")
    assert code == 0 and out["degree"] == 4


def test_stmod_degree_of_gset_file(tmp_path):
    G = load_group("s3")
    X = product(coset_gset(G, G.subgroup([(1, 2, 0)])), coset_gset(G, G.subgroup([(1, 2, 0)])))
    path = tmp_path / "x.json"
    path.write_text(json.dumps(gset_to_json(X, "s3")))
    code, out = run_json("stmod", "degree", "s3", "-p", "3", "--gset", str(path))
    assert code == 0 and out["degree"] == 4 and out["non_projective_orbits"] == [2, 2]


def test_text_output_renders_the_report():
    code, text = cli.run(["grp", "info", "s3", "-p", "3"])
    _, out = run_json("grp", "info", "s3", "-p", "3")
    assert code == 0
    for key, val in out.items():
        assert f"{key}:" in text
    assert "p_rank: 1" in text


# -- exit codes ------------------------------------------------------------------------

def test_exit_codes():
    assert cli.run(["alg", "degree", "f4_over_f2"])[0] == 0
    assert cli.run(["grp", "info", "s3"])[0] == 1                      # missing prime
    assert cli.run(["grp", "info", "s3", "-p", "4"])[0] == 1           # not a prime
    assert cli.run(["alg", "degree", "no_such_algebra"])[0] == 1
    assert cli.run(["bogus"])[0] == 1
    assert cli.run(["alg", "degree", "dual_numbers_f2"])[0] == 2
    assert cli.run(["stmod", "galois", "c2xc2", "-p", "2"])[0] == 1    # p-rank 2
    assert cli.run(["--max-group-order", "4", "grp", "info", "s4", "-p", "2"])[0] == 3


def test_consistency_exit_code(monkeypatch):
    def broken(*args, **kwargs):
        raise ConsistencyError("planted failure")

    monkeypatch.setattr(cli, "cmd_alg", broken)
    code, text = cli.run(["--json", "alg", "degree", "f4_over_f2"])
    assert code == 4 and json.loads(text)["kind"] == "ConsistencyError"


def test_subprocess_exit_codes_and_streams():
    ok = sepalg("--json", "grp", "info", "s3", "-p", "3")
    assert ok.returncode == 0 and json.loads(ok.stdout)["p_rank"] == 1
    bad = sepalg("alg", "tower", "dual_numbers_f2")
    assert bad.returncode == 2 and "NotSeparable" in bad.stderr and bad.stdout == ""
    cap = sepalg("--max-group-order", "4", "grp", "info", "s4", "-p", "2")
    assert cap.returncode == 3


# -- config ----------------------------------------------------------------------------

def test_env_overrides(monkeypatch):
    monkeypatch.setenv("SEPALG_JSON", "1")
    monkeypatch.setenv("SEPALG_P", "3")
    code, text = cli.run(["grp", "info", "s3"])
    assert code == 0 and json.loads(text)["p"] == 3
    monkeypatch.setenv("SEPALG_MAX_GROUP_ORDER", "4")
    assert cli.run(["grp", "info", "s4", "-p", "2"])[0] == 3
    # flags beat the environment
    assert cli.run(["--max-group-order", "100", "grp", "info", "s4", "-p", "2"])[0] == 0


def test_flags_accepted_before_or_after_subcommand():
    a = cli.run(["--json", "--seed", "5", "alg", "degree", "f8_over_f2"])
    b = cli.run(["alg", "degree", "f8_over_f2", "--json", "--seed", "5"])
    assert a == b and a[0] == 0


# -- round trips and determinism ---------------------------------------------------------

@pytest.mark.parametrize("name", corpus_names("algebras"))
def test_algebra_json_round_trip(name):
    a = load_algebra(name)
    obj = algebra_to_json(a)
    b = algebra_from_json(json.loads(json.dumps(obj)))
    assert (b.field, b.dim, b.structure, b.unit, b.grading) == (a.field, a.dim, a.structure, a.unit, a.grading)
    assert algebra_to_json(b) == obj


@pytest.mark.parametrize("name", corpus_names("groups"))
def test_group_json_round_trip(name):
    G = load_group(name)
    H = group_from_json(json.loads(json.dumps(group_to_json(G))))
    assert H.degree == G.degree and H.elements == G.elements
    assert group_to_json(H) == group_to_json(G)


def test_output_is_canonical_json():
    code, text = cli.run(["--json", "stmod", "classify", "q8", "-p", "2"])
    assert text == json.dumps(json.loads(text), indent=2, sort_keys=True) + "\n"


def test_byte_identical_across_hash_seeds():
    outs = {sepalg("--json", "batch", env={"PYTHONHASHSEED": s}).stdout for s in ("0", "1", "12345")}
    assert len(outs) == 1
    batch = json.loads(outs.pop())
    assert batch["entries"]


def test_batch_over_files():
    code, out = run_json("batch", "s3", "f4_over_f2")
    assert code == 0
    assert len(out["entries"]) >= 2
