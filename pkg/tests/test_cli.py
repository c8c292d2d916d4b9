"""Command-line surface: suites, exit codes, file formats, determinism."""

import json

import pytest

from qflagk import gkm, quatflag
from qflagk.cli import main
from qflagk.randgen import random_invertible_matrix, trial_rng


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("suite", ["roots", "presentation", "schubert", "gkm-t", "gkm-x", "theorem2"])
def test_verify_suites_pass_at_rank_two(capsys, suite):
    rc, out, _ = run(capsys, "verify", "--suite", suite, "--n", "2", "--trials", "5")
    assert rc == 0, out
    assert "OK" in out


def test_verify_cells_suite(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "cells", "--n", "2", "--trials", "5")
    assert rc == 0, out


def test_verify_rank_one_trivial_suites(capsys):
    # rank one has no index pairs: theorem2 is vacuous, theorem1 holds
    rc, out, _ = run(capsys, "verify", "--suite", "theorem2", "--n", "1", "--trials", "3")
    assert rc == 0, out
    rc, out, _ = run(capsys, "verify", "--suite", "theorem1", "--n", "1", "--trials", "3")
    assert rc == 0, out


def test_verify_theorem1_reports_the_documented_invariance_gap(capsys):
    # see the README's Known mathematical gap section: the classes at
    # maximal-length representatives are not fixed by every sign change,
    # and the suite reports it honestly
    rc, out, _ = run(
        capsys, "verify", "--suite", "theorem1", "--n", "2", "--trials", "3",
        "--format", "json",
    )
    assert rc == 1
    report = json.loads(out)
    kinds = {v["check"] for v in report["violations"]}
    assert kinds == {"maxrep-invariance"}
    assert report["passed"] + len(report["violations"]) == report["checks"]


def test_verify_mutate_mode_finds_witnesses(capsys):
    rc, out, _ = run(
        capsys, "verify", "--suite", "gkm-t", "--n", "2", "--trials", "3",
        "--mutate", "1", "--format", "json",
    )
    assert rc == 1
    report = json.loads(out)
    assert report["violations"]
    for v in report["violations"]:
        assert "remainder" in v and "index" in v and "partner" in v


def test_verify_unknown_suite(capsys):
    rc, _, err = run(capsys, "verify", "--suite", "nonsense", "--n", "2")
    assert rc == 2
    assert "unknown suite" in err


def test_verify_deterministic_reports(capsys):
    args = ["verify", "--suite", "gkm-x", "--n", "2", "--trials", "4",
            "--seed", "11", "--format", "json"]
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("wall_time_s")
    r2.pop("wall_time_s")
    assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)


def test_verify_jobs_parallel_matches_serial(capsys):
    base = ["verify", "--suite", "cells", "--n", "2", "--trials", "6",
            "--seed", "3", "--format", "json"]
    rc1, out1, _ = run(capsys, *base, "--jobs", "1")
    rc2, out2, _ = run(capsys, *base, "--jobs", "2")
    assert rc1 == rc2 == 0
    r1, r2 = json.loads(out1), json.loads(out2)
    r1.pop("wall_time_s")
    r2.pop("wall_time_s")
    assert r1 == r2


def test_rank_cap_and_env_override(capsys, monkeypatch):
    rc, _, err = run(capsys, "verify", "--suite", "roots", "--n", "5", "--trials", "1")
    assert rc == 2 and "cap" in err
    monkeypatch.setenv("QFLAGK_MAX_N", "5")
    rc, _, _ = run(capsys, "basis", "--n", "5")
    assert rc == 0
    monkeypatch.delenv("QFLAGK_MAX_N")
    rc, _, _ = run(capsys, "basis", "--n", "5", "--unsafe-n")
    assert rc == 0


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    rc, out, _ = run(
        capsys, "verify", "--suite", "presentation", "--n", "2",
        "--format", "json", "--output", str(target),
    )
    assert rc == 0 and out == ""
    report = json.loads(target.read_text())
    assert report["suite"] == "presentation"
    assert report["violations"] == []


# ---------------------------------------------------------------------------
# schubert
# ---------------------------------------------------------------------------

def test_schubert_rank_one_window_examples(capsys):
    rc, out, _ = run(capsys, "schubert", "--n", "1", "--w", "[-1]", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    cls = gkm.GKMTupleT.from_json(data)
    assert cls == gkm.GKMTupleT.constant(1, 1)

    rc, out, _ = run(capsys, "schubert", "--n", "1", "--w", "[1]", "--format", "json")
    assert rc == 0
    cls = gkm.GKMTupleT.from_json(json.loads(out))
    assert cls == gkm.point_class(1)


def test_schubert_all_classes_valid(capsys):
    rc, out, _ = run(capsys, "schubert", "--n", "2", "--all", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert len(data["classes"]) == 8
    for key, tup in data["classes"].items():
        cls = gkm.GKMTupleT.from_json(tup)
        assert gkm.gkm_check_t(cls) == []


def test_schubert_bad_window(capsys):
    rc, _, err = run(capsys, "schubert", "--n", "2", "--w", "[0,1]")
    assert rc == 2
    rc, _, err = run(capsys, "schubert", "--n", "2", "--w", "[1]")
    assert rc == 2


# ---------------------------------------------------------------------------
# decompose / cell-index
# ---------------------------------------------------------------------------

def _write_matrix(path, m):
    path.write_text(json.dumps(m.to_json()))


def test_decompose_identity_and_permutation(tmp_path, capsys):
    p = tmp_path / "m.json"
    _write_matrix(p, quatflag.QMatrix.identity(2))
    rc, out, _ = run(capsys, "decompose", "--input", str(p), "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["tau"] == [1, 2]
    assert quatflag.QMatrix.from_json(data["u"]) == quatflag.QMatrix.identity(2)

    _write_matrix(p, quatflag.perm_matrix((2, 1)))
    rc, out, _ = run(capsys, "decompose", "--input", str(p), "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["tau"] == [2, 1]


def test_decompose_random_roundtrip(tmp_path, capsys):
    g = random_invertible_matrix(trial_rng(20, 0), 3)
    p = tmp_path / "m.json"
    _write_matrix(p, g)
    rc, out, _ = run(capsys, "decompose", "--input", str(p), "--format", "json")
    assert rc == 0
    data = json.loads(out)
    u = quatflag.QMatrix.from_json(data["u"])
    b = quatflag.QMatrix.from_json(data["b"])
    tau = tuple(data["tau"])
    assert u * quatflag.perm_matrix(tau) * b == g


def test_decompose_singular_and_parse_errors(tmp_path, capsys):
    p = tmp_path / "m.json"
    zero = quatflag.QMatrix.from_rows([[0, 0], [0, 0]])
    _write_matrix(p, zero)
    rc, _, err = run(capsys, "decompose", "--input", str(p))
    assert rc == 1 and "singular" in err
    p.write_text("not json")
    rc, _, _ = run(capsys, "decompose", "--input", str(p))
    assert rc == 2
    rc, _, _ = run(capsys, "decompose", "--input", str(tmp_path / "missing.json"))
    assert rc == 2


def test_cell_index_command(tmp_path, capsys):
    p = tmp_path / "m.json"
    _write_matrix(p, quatflag.perm_matrix((2, 3, 1)))
    rc, out, _ = run(capsys, "cell-index", "--input", str(p), "--format", "json")
    assert rc == 0
    assert json.loads(out)["tau"] == [2, 3, 1]


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _write_tuple(path, tup):
    path.write_text(json.dumps(tup.to_json()))


def test_check_constant_tuples_pass(tmp_path, capsys):
    for model, tup in (
        ("T", gkm.GKMTupleT.constant(2, 3)),
        ("X", gkm.GKMTupleX.constant(2, 3)),
        ("G", gkm.GKMTupleG.constant(2, 3)),
    ):
        p = tmp_path / f"{model}.json"
        _write_tuple(p, tup)
        rc, out, _ = run(capsys, "check", "--model", model, "--input", str(p))
        assert rc == 0
        assert "OK" in out


def test_check_canonical_class_passes(tmp_path, capsys):
    p = tmp_path / "g.json"
    _write_tuple(p, gkm.canonical_class(1, 2))
    rc, _, _ = run(capsys, "check", "--model", "G", "--input", str(p))
    assert rc == 0


def test_check_perturbed_class_fails_with_witness(tmp_path, capsys):
    cls = gkm.canonical_class(1, 2)
    values = dict(cls.values)
    values[(1, 2)] = values[(1, 2)] + 1
    broken = gkm.GKMTupleG(2, values)
    p = tmp_path / "g.json"
    _write_tuple(p, broken)
    rc, out, _ = run(capsys, "check", "--model", "G", "--input", str(p), "--format", "json")
    assert rc == 1
    data = json.loads(out)
    assert data["violations"]
    v = data["violations"][0]
    assert sorted([v["index"], v["partner"]]) == [[1, 2], [2, 1]]


def test_check_wrong_model_tag(tmp_path, capsys):
    p = tmp_path / "t.json"
    _write_tuple(p, gkm.GKMTupleT.constant(2, 1))
    rc, _, err = run(capsys, "check", "--model", "X", "--input", str(p))
    assert rc == 2


# ---------------------------------------------------------------------------
# basis
# ---------------------------------------------------------------------------

def test_basis_lists_max_length_representatives(capsys):
    rc, out, _ = run(capsys, "basis", "--n", "2", "--format", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["representatives"] == {"[1,2]": [-1, -2], "[2,1]": [-2, -1]}


def test_check_wrong_index_set_is_a_parse_error(tmp_path, capsys):
    data = gkm.GKMTupleT.constant(2, 1).to_json()
    del data["values"]["[1,2]"]
    p = tmp_path / "partial.json"
    p.write_text(json.dumps(data))
    rc, _, err = run(capsys, "check", "--model", "T", "--input", str(p))
    assert rc == 2
