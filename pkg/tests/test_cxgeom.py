import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dmlattice.cxgeom import (
    GeometryError,
    Isometry,
    ProjectivePoint,
    cosh2_half_distance,
    distance,
    hermitian_form,
    inner,
    norm2,
    normalize_affine,
    proj_equal,
    proj_order,
    proj_residual,
    signature,
)

from conftest import gens_for

TH10 = 2 * math.pi / 10
PH10 = math.pi / 5
E1, E2, E3 = np.eye(3, dtype=complex)


def test_symmetric_form():
    th = TH10
    H = hermitian_form(th, th).diag
    np.testing.assert_allclose(H, math.sin(th) * np.array([-1, -1, 1 / (2 * math.cos(th))]), atol=1e-15)


def test_third_basis_vector_is_positive():
    th, ph = 2 * math.pi / 7, math.pi / 3
    H = hermitian_form(th, ph)
    want = math.sin(th) * math.sin(ph) / math.sin(th + ph)
    assert inner(E3, E3, H) == pytest.approx(want)
    assert inner(E1, E2, H) == 0
    assert norm2(E3, H) > 0


def test_origin_norm_for_10_5():
    H = hermitian_form(TH10, PH10)
    assert norm2(E3, H) == pytest.approx(math.sin(TH10) / (2 * math.cos(TH10)))


def test_signature():
    assert signature(hermitian_form(TH10, PH10)) == (1, 2)


def test_bad_angles():
    with pytest.raises(GeometryError):
        hermitian_form(0, 1)
    with pytest.raises(GeometryError):
        hermitian_form(2, 1.5)


def _positive_points(rng, n, H):
    out = []
    while len(out) < n:
        z = np.array([*(0.4 * (rng.normal(size=2) + 1j * rng.normal(size=2))), 1])
        if norm2(z, H) > 1e-3:
            out.append(z)
    return out


def test_distance_basics():
    H = hermitian_form(TH10, PH10)
    z = np.array([0.1 + 0.05j, -0.1j, 1])
    assert distance(z, z, H) == pytest.approx(0, abs=1e-7)
    assert distance(z, (2 - 3j) * z, H) == pytest.approx(0, abs=1e-7)


def test_cosh_at_least_one():
    H = hermitian_form(TH10, PH10)
    rng = np.random.default_rng(1)
    pts = _positive_points(rng, 2000, H)
    for z, w in zip(pts[::2], pts[1::2]):
        assert cosh2_half_distance(z, w, H) >= 1 - 1e-12


def test_distance_needs_positive_points():
    H = hermitian_form(TH10, PH10)
    with pytest.raises(GeometryError):
        distance(E1, E3, H)


def test_projective_equality():
    assert proj_equal([1, 2, 3], [2, 4, 6])
    assert proj_equal([1, 2, 3], [1j, 2j, 3j])
    assert not proj_equal([1, 0, 0], [0, 1, 0])
    with pytest.raises(GeometryError):
        proj_residual([0, 0, 0], [1, 0, 0])


def test_inverse_round_trip():
    P = gens_for(8, 3).p
    rng = np.random.default_rng(2)
    for _ in range(100):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        assert proj_equal(P(P.inverse()(z)), z)


def test_orders():
    g = gens_for(10, 5)
    assert proj_order(g.j) == 3
    assert proj_order(g.r1) == 10
    assert proj_order(g.k_map) == 4
    with pytest.raises(GeometryError):
        proj_order(g.iota)


def test_antiholomorphic_composition():
    iota = gens_for(7, 3).iota
    assert (iota @ iota).antiholomorphic is False
    assert (iota @ gens_for(7, 3).j).antiholomorphic is True
    z = np.array([0.1 + 0.2j, 0.3j, 1])
    assert proj_equal(iota.inverse()(iota(z)), z)


def test_projective_point():
    H = hermitian_form(TH10, PH10)
    pt = ProjectivePoint(np.array([0, 0, 2]), H)
    assert pt.is_positive
    np.testing.assert_allclose(pt.affine(), [0, 0, 1])
    assert pt.equals([0, 0, 5j])
    with pytest.raises(GeometryError):
        ProjectivePoint(np.zeros(3))
    with pytest.raises(GeometryError):
        normalize_affine([1, 2, 0])


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=3, max_size=3),
    st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_residual_is_scale_invariant(v, lam):
    v = np.array(v)
    if np.max(np.abs(v)) < 1e-3:
        return
    assert proj_residual(v, lam * v) < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(-7, 7), st.integers(-7, 7))
def test_powers_add(a, b):
    R2 = gens_for(7, 3).r2
    assert (R2**a @ R2**b).equals(R2 ** (a + b), 1e-9)
