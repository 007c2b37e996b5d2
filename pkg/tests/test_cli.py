"""Command-line interface and JSON serialization round trips."""

import json
import random

import pytest

import abeliants.abeliant as abeliant_mod
from abeliants.cli import main
from abeliants.fields import PrimeField
from abeliants.jsonio import (JsonIOError, family_from_json, family_to_json,
                              mat_from_json, mat_to_json)
from abeliants.matrix import Mat
from abeliants.poly import Algebra, poly_from_json

from conftest import F7, F101

CURVE_DOC = {"p": "1009", "f": ["3", "0", "2", "1"]}


def const_mats(F, mats):
    ring = Algebra(F, gens=()).ring((0,), 0)
    return [m.map(lambda v: ring.const(v), ring) for m in mats]


def write_family(tmp_path, F, mats, name="fam.json"):
    doc = family_to_json(F, const_mats(F, mats))
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(args, tmp_path):
    out = tmp_path / "out.json"
    rc = main(args + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return rc, report


# -- JSON round trips -------------------------------------------------------

def test_family_roundtrip():
    rng = random.Random(1)
    ring = Algebra(F101, gens=("a",)).ring((0, 1), 0)
    mats = []
    for _ in range(4):
        entries = [[ring.const(F101.random(rng))
                    + ring.monomial([(0, s, 1)], F101.random(rng))
                    for s in (0, 1)] for _ in range(2)]
        mats.append(Mat(ring, entries))
    doc = family_to_json(F101, mats)
    field, back = family_from_json(doc)
    assert field.p == 101
    # the reconstructed algebra is fresh, so compare canonical JSON forms
    assert family_to_json(field, back) == doc


def test_mat_shape_validation():
    ring = Algebra(F7, gens=()).ring((0,), 0)
    good = mat_to_json(Mat.identity(ring, 2))
    assert mat_from_json(ring, good) == Mat.identity(ring, 2)
    bad = dict(good, rows=3)
    with pytest.raises(JsonIOError):
        mat_from_json(ring, bad)


def test_family_member_size_validation():
    ring = Algebra(F7, gens=()).ring((0,), 0)
    doc = family_to_json(F7, [Mat.identity(ring, 2)] * 3
                         + [Mat.identity(ring, 3)])
    with pytest.raises(JsonIOError):
        family_from_json(doc)


# -- abeliant subcommand ----------------------------------------------------

def test_cli_abeliant_identity_family(tmp_path):
    path = write_family(tmp_path, F7, [Mat.identity(F7, 2)] * 4)
    rc, rep = run(["abeliant", "--in", path], tmp_path)
    assert rc == 0
    assert rep["agreement"] is True
    assert rep["algorithms"]["expand"] is True
    two = [["2", []]]
    assert rep["abeliant"]["entries"] == [[two, two], [two, two]]


def test_cli_abeliant_special_case_family(tmp_path):
    rng = random.Random(2)
    n, F = 2, F101

    def diag(vals):
        return Mat(F, [[vals[i] if i == j else F.zero() for j in range(n)]
                       for i in range(n)])

    X = Mat(F, [[F.random(rng) for _ in range(n)] for _ in range(n)])
    q = [F.random_nonzero(rng) for _ in range(n)]
    L = diag([F.random_nonzero(rng) for _ in range(n)])
    M = diag([F.random_nonzero(rng) for _ in range(n)])
    Q = diag(q)
    E = Mat(F, [[F.one()] * n for _ in range(n)])
    fam = [X]
    for a in range(n):
        m = Mat.zeros(F, n, n).entries
        m[a][a] = q[a]
        fam.append(Mat(F, m))
    fam.append(L * E * M)
    path = write_family(tmp_path, F, fam)
    rc, rep = run(["abeliant", "--in", path], tmp_path)
    assert rc == 0
    # every member past the first is rank one, so the factored algorithm runs
    assert rep["algorithms"]["factored"] is True
    expect = M * Q.adjugate() * X * Q.adjugate() * L
    ring = Algebra(F, gens=()).ring((0,), 0)
    got = [[poly_from_json(ring, e).constant() for e in row]
           for row in rep["abeliant"]["entries"]]
    assert got == expect.entries


def test_cli_abeliant_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    rc, _ = run(["abeliant", "--in", str(path)], tmp_path)
    assert rc == 2


def test_cli_abeliant_wrong_member_count(tmp_path):
    path = write_family(tmp_path, F7, [Mat.identity(F7, 2)] * 3)
    rc, _ = run(["abeliant", "--in", str(path)], tmp_path)
    assert rc == 2


def test_cli_abeliant_surfaces_corruption(tmp_path, monkeypatch):
    path = write_family(tmp_path, F7, [Mat.identity(F7, 2)] * 4)
    monkeypatch.setattr(abeliant_mod, "_CORRUPT_EXPAND", True)
    rc, rep = run(["abeliant", "--in", path], tmp_path)
    assert rc == 1
    assert rep["algorithms"]["expand"] is False


# -- check-identities subcommand --------------------------------------------

def test_cli_check_identities_passes(tmp_path):
    rc, rep = run(["check-identities", "--seed", "11", "--p", "1009",
                   "--n", "2", "--trials", "3"], tmp_path)
    assert rc == 0
    assert rep["all_pass"] is True
    assert len(rep["identities"]) == 13
    assert all(r["passes"] == 3 for r in rep["identities"])


def test_cli_check_identities_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    args = ["check-identities", "--seed", "42", "--n", "2", "--trials", "2"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_check_identities_surfaces_corruption(tmp_path, monkeypatch):
    monkeypatch.setattr(abeliant_mod, "_CORRUPT_EXPAND", True)
    rc, rep = run(["check-identities", "--seed", "1", "--trials", "2"],
                  tmp_path)
    assert rc == 1
    failed = {r["identity"] for r in rep["identities"] if not r["ok"]}
    assert "def_equals_expand" in failed


def test_cli_check_identities_rejects_bad_args(tmp_path):
    rc, _ = run(["check-identities", "--n", "5"], tmp_path)
    assert rc == 2
    rc, _ = run(["check-identities", "--trials", "0"], tmp_path)
    assert rc == 2
    rc, _ = run(["check-identities", "--p", "1"], tmp_path)
    assert rc == 2


# -- jacobian-demo subcommand -----------------------------------------------

@pytest.fixture(scope="module")
def curve_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("demo") / "curve.json"
    path.write_text(json.dumps(CURVE_DOC))
    return str(path)


def test_cli_jacobian_demo_generic_pair(curve_file, tmp_path):
    rc, rep = run(["jacobian-demo", "--curve", curve_file,
                   "--p1", "759,564", "--p2", "707,583", "--seed", "3"],
                  tmp_path)
    assert rc == 0
    assert rep["sum_matches_oracle"] is True
    assert rep["commutativity"] is True
    assert rep["identity"] is True
    assert rep["inverse_via_transpose"] is True
    assert rep["oracle_sum"] == ["905", "770"]
    assert rep["jacobi_matrices"]["sum"]["n"] == 3


def test_cli_jacobian_demo_inverse_pair(curve_file, tmp_path):
    # q = -p, so the sum class is the zero class (oracle sum at infinity)
    F = PrimeField(1009)
    y = 564
    rc, rep = run(["jacobian-demo", "--curve", curve_file,
                   "--p1", f"759,{y}", "--p2", f"759,{1009 - y}",
                   "--seed", "4"], tmp_path)
    assert rc == 0
    assert rep["oracle_sum"] == "inf"
    assert rep["sum_matches_oracle"] is True
    del F


def test_cli_jacobian_demo_off_curve(curve_file, tmp_path):
    rc, _ = run(["jacobian-demo", "--curve", curve_file,
                 "--p1", "1,1", "--p2", "707,583"], tmp_path)
    assert rc == 3


def test_cli_jacobian_demo_bad_curve(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"p": "1009", "f": ["1", "0", "0", "0", "1"]}))
    rc, _ = run(["jacobian-demo", "--curve", str(path),
                 "--p1", "0,1", "--p2", "0,1"], tmp_path)
    assert rc == 3  # even-degree model is a domain error, not a parse error


# -- numeric-elliptic subcommand --------------------------------------------

def test_cli_numeric_elliptic_passes(tmp_path):
    rc, rep = run(["numeric-elliptic", "--omega1", "1.0,0.0",
                   "--omega2", "0.1,1.0", "--n", "3", "--samples", "4",
                   "--tol", "1e-5", "--seed", "9"], tmp_path)
    assert rc == 0
    assert rep["all_pass"] is True
    checks = {r["check"] for r in rep["rows"]}
    assert checks == {"frobstick", "big_identity"}
    assert max(r["residual"] for r in rep["rows"]) < 1e-5


def test_cli_numeric_elliptic_degenerate_lattice(tmp_path):
    rc, _ = run(["numeric-elliptic", "--omega1", "1.0,0.0",
                 "--omega2", "2.0,0.0"], tmp_path)
    assert rc == 3


def test_cli_numeric_elliptic_deterministic(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    args = ["numeric-elliptic", "--omega1", "1.0,0.0", "--omega2", "0.1,1.0",
            "--samples", "2", "--seed", "5"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
