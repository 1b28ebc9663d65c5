import json
import math

import pytest

from dmlattice.verify import (
    DEFAULT_SEED,
    CheckRecord,
    VerificationReport,
    export_data,
    report_from_json,
    reverify,
    verify_lattice,
)

from conftest import params_for


def test_every_row_verifies(row):
    rep = verify_lattice(params_for(*row))
    assert rep.passed, [(c.name, c.residual, c.detail) for c in rep.failures]
    assert rep.seed == DEFAULT_SEED


def test_report_fields():
    rep = verify_lattice(params_for(10, 5))
    names = rep.statuses()
    assert "relator (K^-1*R1)^15" in names
    assert names["literal K^2*S1^-1*R1 (not an identity)"] == "informational"
    assert rep.facet_counts == (14, 26, 20, 8)
    assert rep.euler["orbit_sum"] == rep.euler["closed_form"] == "1/10"
    assert rep.presentation.startswith("< K, R1 |")


def test_status_rule():
    rep = VerificationReport("7", "3", 0, 1e-9)
    rep.add("a", True)
    rep.add("b", residual=1.0, tol=1e-9, informational=True)
    assert rep.passed
    rep.add("c", residual=1e-3, tol=1e-9)
    assert not rep.passed
    assert [c.name for c in rep.failures] == ["c"]


def test_round_trip():
    rep = verify_lattice(params_for(7, 3))
    data = json.loads(json.dumps(rep.to_json()))
    back = report_from_json(data)
    assert back.statuses() == rep.statuses()
    assert back.to_json() == rep.to_json()


def test_infinite_residual_serialises():
    c = CheckRecord("x", "fail", math.inf, 1e-9)
    assert c.to_json()["residual"] == "inf"
    rep = VerificationReport("7", "3", 0, 1e-9, [c])
    assert report_from_json(json.loads(json.dumps(rep.to_json()))).checks[0].residual == math.inf


def test_deterministic():
    a = verify_lattice(params_for(8, 4), seed=7).to_json()
    b = verify_lattice(params_for(8, 4), seed=7).to_json()
    a.pop("timestamp"), b.pop("timestamp")
    assert json.dumps(a) == json.dumps(b)


@pytest.mark.parametrize("pk", [(8, 3), (3, 6)])
def test_export_and_reverify(pk):
    q = params_for(*pk)
    data = json.loads(json.dumps(export_data(q)))
    assert set(data) == {
        "params", "generators", "vertices", "lines", "bisectors",
        "facet_complex", "cycles", "presentation", "euler", "checks",
    }
    assert data["params"]["theta_over_pi"] == [q.theta.numerator, q.theta.denominator]
    z = data["generators"]["J"]["matrix"][0][0]
    assert isinstance(z, list) and len(z) == 2
    _, same = reverify(data)
    assert same


def test_export_vertex_counts():
    assert len(export_data(params_for(8, 3))["vertices"]) == 14
    d = export_data(params_for(3, 6))
    assert d["params"]["l"] == "inf"
    assert {"z3-5", "z6-8", "z9-11", "z12-14"} <= set(d["vertices"])
