import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmlattice import conemetric as cm
from dmlattice.cxgeom import hermitian_form, inner
from dmlattice.moves import basic_moves
from dmlattice.polyhedron import VERTEX_LABELS, coalescence_residual_ok

from conftest import REPRESENTATIVE, params_for

TH, PH = 2 * math.pi / 10, math.pi / 5


def _cfg(z, th=TH, ph=PH):
    return cm.OctagonConfig(z[0], z[1], z[2], th, ph)


def test_degenerate_octagon():
    o = cm.build_octagon(_cfg([0, 0, 1]))
    assert abs(o["v0"] - o["v1"]) < 1e-15
    assert abs(o["v2"] - o["v3"]) < 1e-15
    assert o["v*"] == 0
    want = math.sin(TH) * math.sin(PH) / math.sin(TH + PH)
    assert cm.signed_area(o) == pytest.approx(want)
    assert cm.area_form(_cfg([0, 0, 1])) == pytest.approx(want)


def test_origin_area_is_two_triangles():
    th, ph = 2 * math.pi / 7, math.pi / 3
    # T3 has unit side opposite the angle pi - theta - phi at the origin
    A, B, C = math.pi - th - ph, th, ph
    tri = math.sin(B) * math.sin(C) / (2 * math.sin(A))
    area = float(cm.shoelace(cm.octagon_vertices(th, ph, [0, 0, 1])))
    assert area == pytest.approx(2 * tri)


def test_real_configuration_is_symmetric():
    o = cm.build_octagon(_cfg([0.05, 0.04, 1]))
    d = o.as_dict()
    assert len({round(v.real, 12) + 1j * round(v.imag, 12) for v in d.values()}) == 8
    for i in (1, 2, 3):
        assert abs(d[f"v-{i}"] - (-np.conj(d[f"v{i}"]))) < 1e-14
    assert abs(d["v0"].real) < 1e-15 and d["v0"].imag < 0


def test_shoelace_orientation():
    sq = np.array([0, 1, 1 + 1j, 1j])
    assert cm.shoelace(sq) == pytest.approx(1)
    assert cm.shoelace(sq[::-1]) == pytest.approx(-1)


@pytest.mark.parametrize("pk", REPRESENTATIVE)
def test_area_oracle(pk):
    q = params_for(*pk)
    th, ph = q.theta_rad, q.phi_rad
    H = hermitian_form(th, ph)
    rng = np.random.default_rng(11)
    Z = np.column_stack([*(0.4 * (rng.normal(size=(2, 4000)) + 1j * rng.normal(size=(2, 4000)))), np.ones(4000)])
    Z = Z[np.real(inner(Z, Z, H)) > 1e-3][:1000]
    Z = Z * np.exp(2j * math.pi * rng.random(len(Z)))[:, None]
    assert len(Z) == 1000
    herm = cm.hermitian_area(th, ph, Z)
    shoe = cm.shoelace(cm.octagon_vertices(th, ph, Z))
    assert np.max(np.abs(shoe - herm) / np.abs(herm)) < 1e-8
    np.testing.assert_allclose(herm, np.real(inner(Z, Z, H)), rtol=1e-12)


@pytest.mark.parametrize("move", ["R1", "R2"])
def test_moves_preserve_area(move):
    M = basic_moves(TH, PH)[move]
    rng = np.random.default_rng(12)
    for _ in range(100):
        z = np.array([*(0.3 * (rng.normal(size=2) + 1j * rng.normal(size=2))), 1])
        assert cm.area_form(_cfg(M(z))) == pytest.approx(cm.area_form(_cfg(z)), abs=1e-12)


@pytest.mark.parametrize("pk", REPRESENTATIVE)
def test_move_vertex_equations(pk):
    q = params_for(*pk)
    th, ph = q.theta_rad, q.phi_rad
    rng = np.random.default_rng(13)
    moves = ["R1", "R2"] + (["S1"] if q.theta == q.phi else [])
    for _ in range(100):
        z = np.array([*(0.3 * (rng.normal(size=2) + 1j * rng.normal(size=2))), 1])
        for m in moves:
            assert cm.move_vertex_equations(m, _cfg(z, th, ph)), m


def test_s1_needs_equal_angles():
    with pytest.raises(ValueError):
        cm.move_vertex_residual("S1", _cfg([0.1, 0.1, 1], TH, math.pi / 3))


def test_cone_points():
    assert cm.cone_point("v-2") == "v2"
    o = cm.build_octagon(_cfg([0, 0, 1]))
    assert cm.cone_point_collisions(o) == frozenset({frozenset({"v0", "v1"}), frozenset({"v2", "v3"})})
    assert cm.coalescence_check(o, [("v0", "v1"), ("v-2", "v-3")])
    assert not cm.coalescence_check(o, [("v0", "v1")])


@pytest.mark.parametrize("pk", [(7, 3), (8, 3), (12, 3), (10, 5), (7, 3.5)])
def test_vertices_realise_their_coincidences(pk):
    from fractions import Fraction

    q = params_for(pk[0], Fraction(pk[1]))
    for v in VERTEX_LABELS:
        assert coalescence_residual_ok(q, v), v


@settings(max_examples=100, deadline=None)
@given(
    st.floats(-0.3, 0.3), st.floats(-0.3, 0.3), st.floats(-0.3, 0.3), st.floats(-0.3, 0.3),
    st.floats(0, 2 * math.pi),
)
def test_area_is_phase_invariant(a, b, c, d, t):
    z = np.array([a + 1j * b, c + 1j * d, 1])
    s1 = float(cm.shoelace(cm.octagon_vertices(TH, PH, z)))
    s2 = float(cm.shoelace(cm.octagon_vertices(TH, PH, np.exp(1j * t) * z)))
    assert s2 == pytest.approx(s1, abs=1e-12)
