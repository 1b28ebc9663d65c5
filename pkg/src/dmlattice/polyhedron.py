"""The polyhedron D: vertices, complex lines, bisectors and the facet complex.

Vertex and facet names follow one convention throughout: vertices are
``"z1"`` ... ``"z14"``, generators and their inverses are ``"P"``,
``"P^-1"``, ``"R1^-1"`` and so on, bisectors and sides are keyed by that
generator name, and a ridge is keyed by the frozenset of its two bisectors.
When triples of vertices merge they are relabelled ``"z3-5"``, ``"z6-8"``,
``"z9-11"`` and ``"z12-14"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .conemetric import OctagonRealization, coalescence_check, octagon_vertices
from .cxgeom import (
    DEFAULT_TOL,
    GeometryError,
    inner,
    norm2,
    normalize_affine,
    proj_equal,
    proj_residual,
)
from .moves import GeneratorSet, build_generators
from .params import CollapseCase, LatticeParams

__all__ = [
    "VERTEX_LABELS",
    "COALESCENCE",
    "VERTEX_LINES",
    "TRIPLES",
    "BISECTORS",
    "GENERATOR_NAMES",
    "RIDGES",
    "EDGES",
    "EDGE_TABLE_CORRECTIONS",
    "VertexEntry",
    "VertexTable",
    "ComplexLine",
    "BisectorSpec",
    "Ridge",
    "Edge",
    "Side",
    "FacetComplex",
    "Membership",
    "inverse_name",
    "ridge_key",
    "ridge_name",
    "vertex_table",
    "collapsed_representatives",
    "line_table",
    "polar_vectors",
    "bisector_table",
    "bisector_value",
    "membership",
    "lemma_vectors",
    "side_inequality_check",
    "lemma_bounds_check",
    "xi_coords",
    "facet_complex",
    "generic_complex",
    "vertex_representatives",
    "vertex_map",
    "giraud_triple",
    "giraud_check",
    "sample_positive_points",
    "sample_ridge_points",
    "find_interior_witness",
    "coalescence_pairs",
    "coalescence_residual_ok",
    "lemma_residual",
]

VERTEX_LABELS = tuple(f"z{i}" for i in range(1, 15))

#: Cone points made to coincide at each vertex (two pairs per vertex).
COALESCENCE = {
    "z1": (("v0", "v±1"), ("v±2", "v±3")),
    "z2": (("v0", "v±3"), ("v±1", "v±2")),
    "z3": (("v*", "v0"), ("v±2", "v±3")),
    "z4": (("v*", "v0"), ("v±1", "v±2")),
    "z5": (("v*", "v0"), ("v±1", "v±3")),
    "z6": (("v*", "v±1"), ("v±2", "v±3")),
    "z7": (("v*", "v±1"), ("v0", "v±2")),
    "z8": (("v*", "v±1"), ("v0", "v±3")),
    "z9": (("v*", "v±3"), ("v0", "v±1")),
    "z10": (("v*", "v±3"), ("v±1", "v±2")),
    "z11": (("v*", "v±3"), ("v0", "v±2")),
    "z12": (("v*", "v±2"), ("v0", "v±1")),
    "z13": (("v*", "v±2"), ("v±1", "v±3")),
    "z14": (("v*", "v±2"), ("v0", "v±3")),
}

#: The two complex lines meeting at each vertex.
VERTEX_LINES = {
    "z1": ("L01", "L23"),
    "z2": ("L03", "L12"),
    "z3": ("L*0", "L23"),
    "z4": ("L*0", "L12"),
    "z5": ("L*0", "L13"),
    "z6": ("L*1", "L23"),
    "z7": ("L*1", "L02"),
    "z8": ("L*1", "L03"),
    "z9": ("L*3", "L01"),
    "z10": ("L*3", "L12"),
    "z11": ("L*3", "L02"),
    "z12": ("L*2", "L01"),
    "z13": ("L*2", "L13"),
    "z14": ("L*2", "L03"),
}

#: Triples that merge, with their merged label.
TRIPLES = {
    "z3-5": ("z3", "z4", "z5"),
    "z6-8": ("z6", "z7", "z8"),
    "z9-11": ("z9", "z10", "z11"),
    "z12-14": ("z12", "z13", "z14"),
}

GENERATOR_NAMES = ("P", "P^-1", "J", "J^-1", "R1", "R1^-1", "R2", "R2^-1")


def inverse_name(name: str) -> str:
    return name[:-3] if name.endswith("^-1") else name + "^-1"


def _expand_pair(a: str, b: str):
    """Octagon vertex coincidences meant by a pair of cone points.

    ``v±i`` stands for both ``vi`` and its mirror ``v-i``; two such names
    pair up side by side, otherwise every copy meets the single point.
    """
    def copies(n):
        return [f"v{n[-1]}", f"v-{n[-1]}"] if "±" in n else [n]

    ca, cb = copies(a), copies(b)
    if len(ca) == len(cb) == 2:
        return list(zip(ca, cb))
    return [(x, y) for x in ca for y in cb]


def coalescence_pairs(label: str) -> list:
    """Octagon-vertex equalities realised at a vertex."""
    out = []
    for a, b in COALESCENCE[label]:
        out += _expand_pair(a, b)
    return out


# --------------------------------------------------------------------------
# vertices


def _consts(theta: float, phi: float):
    st, sp = math.sin(theta), math.sin(phi)
    s = sp + math.sin(theta - phi)
    stp = math.sin(theta + phi)
    return st, sp, s, stp, np.exp(1j * theta), np.exp(1j * phi)


def _z_table(theta: float, phi: float) -> dict:
    st, sp, s, stp, et, ep = _consts(theta, phi)
    a = s / stp
    b = sp * (2 * math.cos(theta) - 1) / stp
    c = st / stp / ep
    q = 1 - st**2 / (stp * s)
    r = sp / stp
    m = (stp - sp) / stp
    n = s / st * (1 - r) / ep
    den = sp + ep * st
    rows = {
        "z1": (0, 0),
        "z2": (s / den, et * sp / den),
        "z3": (a, 0),
        "z4": (a, b),
        "z5": (a, et * b),
        "z6": (c, 0),
        "z7": (c, q),
        "z8": (c, et * q),
        "z9": (0, r),
        "z10": (m, r),
        "z11": (n, r),
        "z12": (0, et * r),
        "z13": (m, et * r),
        "z14": (n, et * r),
    }
    return {k: np.array([v[0], v[1], 1], dtype=complex) for k, v in rows.items()}


def _w_table(theta: float, phi: float) -> dict:
    st, sp, s, stp, et, ep = _consts(theta, phi)
    a = s / stp
    b = sp * (2 * math.cos(theta) - 1) / stp
    r = sp / stp
    m = (stp - sp) / stp
    n = s / st * (1 - r) * ep
    c = ep * st / stp
    q = 1 - st**2 / (stp * s)
    den = sp + st / ep
    rows = {
        "z1": (s / den, sp / den),
        "z2": (0, 0),
        "z3": (a, et * b),
        "z4": (a, 0),
        "z5": (a, b),
        "z6": (m, et * r),
        "z7": (n, et * r),
        "z8": (0, et * r),
        "z9": (c, q),
        "z10": (c, 0),
        "z11": (c, et * q),
        "z12": (n, r),
        "z13": (m, r),
        "z14": (0, r),
    }
    return {k: np.array([v[0], v[1], 1], dtype=complex) for k, v in rows.items()}


@dataclass(frozen=True)
class VertexEntry:
    label: str
    z_rep: np.ndarray
    w_rep: np.ndarray
    cone_pairs: tuple
    lines: tuple


@dataclass(frozen=True)
class VertexTable:
    entries: dict

    def __getitem__(self, label: str) -> VertexEntry:
        return self.entries[label]

    def __iter__(self):
        return iter(self.entries.values())

    def __len__(self) -> int:
        return len(self.entries)


def vertex_table(params: LatticeParams, gens: Optional[GeneratorSet] = None) -> VertexTable:
    """The 14 generic vertices with both coordinate representatives."""
    th, ph = params.theta_rad, params.phi_rad
    zt, wt = _z_table(th, ph), _w_table(th, ph)
    return VertexTable(
        {
            lab: VertexEntry(lab, zt[lab], wt[lab], COALESCENCE[lab], VERTEX_LINES[lab])
            for lab in VERTEX_LABELS
        }
    )


def collapsed_representatives(params: LatticeParams) -> dict:
    """Representatives of the merged vertices.

    Each merged vertex is the configuration where three cone points meet:
    ``v1, v2, v3`` for ``z3-5``, ``v0, v2, v3`` for ``z6-8``, ``v0, v1, v2``
    for ``z9-11`` and ``v0, v1, v3`` for ``z12-14``.
    """
    st, sp, s, stp, et, ep = _consts(params.theta_rad, params.phi_rad)
    return {
        "z3-5": np.array([1, 0, 1], dtype=complex),
        "z6-8": np.array([s / st / ep, 0, 1], dtype=complex),
        "z9-11": np.array([0, 1, 1], dtype=complex),
        "z12-14": np.array([0, et, 1], dtype=complex),
    }


# --------------------------------------------------------------------------
# complex lines


@dataclass(frozen=True)
class ComplexLine:
    """A line given by linear functionals ``z_eq . z = 0`` and ``w_eq . w = 0``."""

    label: str
    cone_points: tuple
    z_eq: np.ndarray
    w_eq: np.ndarray
    polar: np.ndarray

    def z_residual(self, z) -> float:
        z = normalize_affine(z)
        return abs(self.z_eq @ z)

    def w_residual(self, w) -> float:
        w = normalize_affine(w)
        return abs(self.w_eq @ w)


def _line_equations(theta: float, phi: float) -> dict:
    st, sp, s, stp, et, ep = _consts(theta, phi)
    g = st / s
    return {
        "L*0": (("v*", "v0"), [1, 0, -s / stp], [1, 0, -s / stp]),
        "L*1": (("v*", "v-1"), [1, 0, -st / stp / ep], [0, 1, -et * sp / stp]),
        "L*2": (("v*", "v-2"), [0, 1, -et * sp / stp], [0, 1, -sp / stp]),
        "L*3": (("v*", "v3"), [0, 1, -sp / stp], [1, 0, -ep * st / stp]),
        "L01": (("v0", "v1"), [1, 0, 0], [g / ep, 1, -1]),
        "L02": (("v0", "v2"), [g * ep, 1, -1], [g / ep, 1 / et, -1]),
        "L03": (("v0", "v3"), [g * ep, 1 / et, -1], [1, 0, 0]),
        "L12": (("v1", "v2"), [1, 1, -1], [0, 1, 0]),
        "L23": (("v2", "v3"), [0, 1, 0], [1, 1 / et, -1]),
        "L13": (("v1", "v3"), [1, 1 / et, -1], [1, 1, -1]),
    }


def _polar(a: np.ndarray, H: np.ndarray) -> np.ndarray:
    n = np.linalg.solve(H, np.conj(a))
    if abs(n[2]) > 1e-12:
        return n / n[2]
    return n / n[np.argmax(np.abs(n))]


def line_table(params: LatticeParams) -> list:
    """The ten lines ``L*0 ... L13`` with their polar vectors.

    The polar of ``a . z = 0`` is ``H^-1 conj(a)``, scaled so its last
    coordinate is 1 when possible.
    """
    from .cxgeom import hermitian_form

    th, ph = params.theta_rad, params.phi_rad
    H = hermitian_form(th, ph).matrix
    out = []
    for lab, (pts, az, aw) in _line_equations(th, ph).items():
        az = np.array(az, dtype=complex)
        aw = np.array(aw, dtype=complex)
        out.append(ComplexLine(lab, pts, az, aw, _polar(az, H)))
    return out


def polar_vectors(params: LatticeParams) -> dict:
    return {ln.label: ln.polar for ln in line_table(params)}


# --------------------------------------------------------------------------
# bisectors


@dataclass(frozen=True)
class BisectorSpec:
    """``B(T)``: the condition ``Im(phase * coord) = 0``.

    ``coords`` is ``"z"`` or ``"w"``, ``index`` is 0 or 1, and the interior of
    D has ``sign * Im(phase * coord) > 0``.
    """

    name: str
    coords: str
    index: int
    phase_kind: str
    sign: int
    vertices: frozenset

    def phase(self, theta: float, phi: float) -> complex:
        return {
            "1": 1.0,
            "e^{i phi}": np.exp(1j * phi),
            "e^{-i phi}": np.exp(-1j * phi),
            "e^{-i theta}": np.exp(-1j * theta),
        }[self.phase_kind]

    @property
    def condition(self) -> str:
        coord = f"{self.coords}{self.index + 1}"
        inner_ = coord if self.phase_kind == "1" else f"{self.phase_kind} {coord}"
        return f"Im({inner_}) = 0"


def _vs(*ids):
    return frozenset(f"z{i}" for i in ids)


BISECTORS = {
    "P": BisectorSpec("P", "z", 0, "1", -1, _vs(1, 3, 4, 5, 9, 10, 12, 13)),
    "P^-1": BisectorSpec("P^-1", "w", 0, "1", 1, _vs(2, 3, 4, 5, 6, 8, 13, 14)),
    "J": BisectorSpec("J", "z", 0, "e^{i phi}", 1, _vs(1, 6, 7, 8, 9, 11, 12, 14)),
    "J^-1": BisectorSpec("J^-1", "w", 0, "e^{-i phi}", -1, _vs(2, 7, 8, 9, 10, 11, 12, 14)),
    "R1": BisectorSpec("R1", "z", 1, "1", 1, _vs(1, 3, 4, 6, 7, 9, 10, 11)),
    "R1^-1": BisectorSpec("R1^-1", "z", 1, "e^{-i theta}", -1, _vs(1, 3, 5, 6, 8, 12, 13, 14)),
    "R2": BisectorSpec("R2", "w", 1, "1", 1, _vs(2, 4, 5, 9, 10, 12, 13, 14)),
    "R2^-1": BisectorSpec("R2^-1", "w", 1, "e^{-i theta}", -1, _vs(2, 3, 4, 6, 7, 8, 10, 11)),
}


def bisector_table() -> dict:
    return dict(BISECTORS)


def _zw(z, gens: GeneratorSet):
    """Affine z- and w-coordinates of (a batch of) points."""
    z = np.asarray(z, dtype=complex)
    za = z / z[..., 2:3]
    w = np.einsum("ij,...j->...i", gens.p_inv.unitary, z)
    wa = w / w[..., 2:3]
    return za, wa


def bisector_value(name: str, z, gens: GeneratorSet) -> np.ndarray:
    """``Im(phase * coord)`` for the bisector ``B(name)``."""
    b = BISECTORS[name]
    za, wa = _zw(z, gens)
    c = (za if b.coords == "z" else wa)[..., b.index]
    return np.imag(b.phase(gens.params.theta_rad, gens.params.phi_rad) * c)


# --------------------------------------------------------------------------
# lemma on the sign conditions

#: (near, far): D lies on the side closer to the first line.
_LEMMA = {
    "P": (("L*1", None), ("L*3", "P^-1")),
    "P^-1": (("L*3", None), ("L*1", "P")),
    "J": (("L*0", None), ("L*0", "J^-1")),
    "J^-1": (("L*0", None), ("L*0", "J")),
    "R1": (("L*2", None), ("L*3", "R1^-1")),
    "R1^-1": (("L*3", None), ("L*2", "R1")),
    "R2": (("L*1", None), ("L*2", "R2^-1")),
    "R2^-1": (("L*2", None), ("L*1", "R2")),
}


def _unit(n: np.ndarray, H) -> np.ndarray:
    q = norm2(n, H)
    if abs(q) < 1e-12:
        raise GeometryError("polar vector is null; the comparison has no scale")
    return n / math.sqrt(abs(q))


def lemma_vectors(name: str, gens: GeneratorSet) -> tuple:
    """The two polar vectors, scaled to norm -1 or 1, that define ``B(name)``.

    The polars are negative whenever the corresponding vertex triple does
    not collapse; for collapsed triples they are the merged vertex itself.
    """
    polars = polar_vectors(gens.params)
    out = []
    for line, move in _LEMMA[name]:
        n = polars[line]
        if move is not None:
            n = gens.by_name(move)(n)
        out.append(_unit(n, gens.form))
    return tuple(out)


def side_inequality_check(z, which: str, gens: GeneratorSet) -> np.ndarray:
    """Whether the sign condition of ``B(which)`` matches the distance comparison.

    Returns a boolean (array) that is true where the strict coordinate
    inequality holds exactly when the point is strictly closer to the first
    polar line than to the second.
    """
    z = np.asarray(z, dtype=complex)
    near, far = lemma_vectors(which, gens)
    a = np.abs(inner(z, near, gens.form))
    b = np.abs(inner(z, far, gens.form))
    val = BISECTORS[which].sign * bisector_value(which, z, gens)
    return (val > 0) == (a < b)


def lemma_residual(z, which: str, gens: GeneratorSet) -> np.ndarray:
    """``|<z,n>| - |<z,m>|`` with ``z`` scaled to norm 1."""
    z = np.asarray(z, dtype=complex)
    z = z / np.sqrt(norm2(z, gens.form))[..., None]
    near, far = lemma_vectors(which, gens)
    return np.abs(inner(z, near, gens.form)) - np.abs(inner(z, far, gens.form))


def lemma_bounds_check(z, gens: GeneratorSet, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coordinate bounds valid for every positive point.

    ``|z1|^2, |w1|^2 <= s/sin(theta+phi)`` and ``|z2|^2, |w2|^2 <=
    sin(phi)/sin(theta+phi)``; moreover ``|z1|, |w1| < 1`` when ``p > 6``
    and ``|z2|, |w2| <= 1`` when ``1/l >= 0``.
    """
    params = gens.params
    st, sp, s, stp, _, _ = _consts(params.theta_rad, params.phi_rad)
    za, wa = _zw(z, gens)
    a1 = np.maximum(np.abs(za[..., 0]), np.abs(wa[..., 0]))
    a2 = np.maximum(np.abs(za[..., 1]), np.abs(wa[..., 1]))
    ok = (a1**2 <= s / stp + tol) & (a2**2 <= sp / stp + tol)
    if params.p > 6:
        ok &= a1 < 1
    if params.l.reciprocal() >= 0:
        ok &= a2 <= 1 + tol
    return ok


def xi_coords(z, params: LatticeParams):
    """``(xi1, xi2)`` adapted to the line ``L*3``.

    Raises
    ------
    GeometryError
        If ``z2 == 1``.
    """
    st, sp, s, stp, _, _ = _consts(params.theta_rad, params.phi_rad)
    z = normalize_affine(z)
    z1, z2 = z[0], z[1]
    if abs(1 - z2) < 1e-14:
        raise GeometryError("xi-coordinates need z2 != 1")
    return (sp - stp * z2) / (1 - z2), z1 * (stp - sp) / (1 - z2)


# --------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Membership:
    """``kind`` is ``"interior"``, ``"boundary"`` or ``"exterior"``."""

    kind: str
    sides: frozenset = frozenset()
    violated: frozenset = frozenset()


def membership(z, gens: GeneratorSet, tol: float = DEFAULT_TOL) -> Membership:
    """Locate a positive point relative to D.

    D is cut out by ``arg z1 in (-phi, 0)``, ``arg z2 in (0, theta)``,
    ``arg w1 in (0, phi)`` and ``arg w2 in (0, theta)``; each end of each
    range is one bisector.  ``tol`` is an angular tolerance in radians.  A
    vanishing coordinate puts the point on both bisectors of that coordinate.
    """
    z = np.asarray(z, dtype=complex)
    if norm2(z, gens.form) <= 0:
        raise GeometryError("membership needs a positive point")
    za, wa = _zw(z, gens)
    th, ph = gens.params.theta_rad, gens.params.phi_rad
    active, violated = set(), set()
    for c, lo, hi, lo_name, hi_name in (
        (za[0], -ph, 0.0, "J", "P"),
        (za[1], 0.0, th, "R1", "R1^-1"),
        (wa[0], 0.0, ph, "P^-1", "J^-1"),
        (wa[1], 0.0, th, "R2", "R2^-1"),
    ):
        if abs(c) < tol:
            active.update((lo_name, hi_name))
            continue
        # measure the argument from the middle of the range to avoid the branch cut
        mid = 0.5 * (lo + hi)
        rel = float(np.angle(c * np.exp(-1j * mid)))
        half = 0.5 * (hi - lo)
        if abs(rel + half) <= tol:
            active.add(lo_name)
        elif abs(rel - half) <= tol:
            active.add(hi_name)
        elif rel < -half:
            violated.add(lo_name)
        elif rel > half:
            violated.add(hi_name)
    if violated:
        return Membership("exterior", frozenset(active), frozenset(violated))
    if active:
        return Membership("boundary", frozenset(active))
    return Membership("interior")


# --------------------------------------------------------------------------
# sampling


def sample_positive_points(gens: GeneratorSet, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` points with ``<z,z> > 0``, uniform in the affine bounding discs."""
    st, sp, s, stp, _, _ = _consts(gens.params.theta_rad, gens.params.phi_rad)
    r1, r2 = math.sqrt(s / stp), math.sqrt(sp / stp)
    out = []
    while sum(len(o) for o in out) < n:
        m = 2 * n
        z1 = r1 * np.sqrt(rng.random(m)) * np.exp(2j * np.pi * rng.random(m))
        z2 = r2 * np.sqrt(rng.random(m)) * np.exp(2j * np.pi * rng.random(m))
        Z = np.column_stack([z1, z2, np.ones(m)])
        out.append(Z[norm2(Z, gens.form) > 1e-6])
    return np.concatenate(out)[:n]


def find_interior_witness(gens: GeneratorSet, rng: np.random.Generator, max_tries: int = 200000):
    """A point strictly inside D, found by rejection sampling in the arg box."""
    th, ph = gens.params.theta_rad, gens.params.phi_rad
    st, sp, s, stp, _, _ = _consts(th, ph)
    r1, r2 = math.sqrt(s / stp), math.sqrt(sp / stp)
    batch = 4096
    for _ in range(max_tries // batch + 1):
        z1 = r1 * np.sqrt(rng.random(batch)) * np.exp(-1j * ph * rng.random(batch))
        z2 = r2 * np.sqrt(rng.random(batch)) * np.exp(1j * th * rng.random(batch))
        Z = np.column_stack([z1, z2, np.ones(batch)])
        Z = Z[norm2(Z, gens.form) > 1e-6]
        for z in Z:
            if membership(z, gens, 1e-7).kind == "interior":
                return z
    raise RuntimeError("no interior point found")


def _solve_other(z_fixed_idx: int, z_fixed: complex, row_num, row_den, target: complex) -> Optional[complex]:
    """Solve ``(row_num - target*row_den) . (z1, z2, 1) = 0`` for the free z."""
    a = row_num - target * row_den
    other = 1 - z_fixed_idx
    if abs(a[other]) < 1e-14:
        return None
    return -(a[z_fixed_idx] * z_fixed + a[2]) / a[other]


def sample_ridge_points(
    pair, gens: GeneratorSet, rng: np.random.Generator, n: int = 50, scale: float = 1.0
) -> np.ndarray:
    """Positive points satisfying both conditions of the bisectors in ``pair``."""
    names = sorted(pair, key=lambda nm: BISECTORS[nm].coords != "z")
    b1, b2 = BISECTORS[names[0]], BISECTORS[names[1]]
    th, ph = gens.params.theta_rad, gens.params.phi_rad
    st, sp, s, stp, _, _ = _consts(th, ph)
    rad = math.sqrt(max(s, sp) / stp) * scale
    Pinv = gens.p_inv.unitary
    pts = []
    tries = 0
    while len(pts) < n and tries < 200 * n:
        tries += 1
        x, y = rng.uniform(-rad, rad, 2)
        if b1.coords == b2.coords:
            if b1.index == b2.index:
                raise ValueError("bisectors on the same coordinate")
            c = np.zeros(2, dtype=complex)
            c[b1.index] = x / b1.phase(th, ph)
            c[b2.index] = y / b2.phase(th, ph)
            v = np.array([c[0], c[1], 1], dtype=complex)
            z = gens.p(v) if b1.coords == "w" else v
        else:
            zi = x / b1.phase(th, ph)
            target = y / b2.phase(th, ph)
            other = _solve_other(b1.index, zi, Pinv[b2.index], Pinv[2], target)
            if other is None:
                continue
            v = np.zeros(3, dtype=complex)
            v[b1.index], v[1 - b1.index], v[2] = zi, other, 1
            z = v
        if norm2(z, gens.form) > 1e-6:
            pts.append(z / z[2])
    return np.array(pts)


# --------------------------------------------------------------------------
# facet complex


def ridge_key(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class Ridge:
    key: frozenset
    name: str
    kind: str
    vertices: tuple


@dataclass(frozen=True)
class Edge:
    endpoints: tuple
    ridges: tuple


@dataclass(frozen=True)
class Side:
    name: str
    vertices: frozenset
    ridges: tuple


def _r(a, b, kind, *ids):
    return (a, b, kind, tuple(f"z{i}" for i in ids))


#: Ridges as (first bisector, second bisector, type, vertices).
RIDGES = (
    _r("P", "J", "S", 1, 9, 12),
    _r("R1", "R1^-1", "S", 1, 3, 6),
    _r("P", "R1", "M", 1, 3, 4, 9, 10),
    _r("P", "R1^-1", "M", 1, 3, 5, 12, 13),
    _r("J", "R1", "M", 1, 6, 7, 9, 11),
    _r("J", "R1^-1", "M", 1, 6, 8, 12, 14),
    _r("P^-1", "J^-1", "S", 2, 8, 14),
    _r("R2", "R2^-1", "S", 2, 4, 10),
    _r("P^-1", "R2", "M", 2, 4, 5, 13, 14),
    _r("P^-1", "R2^-1", "M", 2, 3, 4, 6, 8),
    _r("J^-1", "R2", "M", 2, 9, 10, 12, 14),
    _r("J^-1", "R2^-1", "M", 2, 7, 8, 10, 11),
    _r("P", "R2", "G", 4, 5, 9, 10, 12, 13),
    _r("J", "J^-1", "G", 7, 8, 9, 11, 12, 14),
    _r("R1", "R2^-1", "G", 3, 4, 6, 7, 10, 11),
    _r("R1^-1", "P^-1", "G", 3, 5, 6, 8, 13, 14),
    _r("P", "P^-1", "S", 3, 4, 5),
    _r("J", "R2^-1", "S", 6, 7, 8),
    _r("R1", "J^-1", "S", 9, 10, 11),
    _r("R1^-1", "R2", "S", 12, 13, 14),
)

_RIDGE_NAMES = {ridge_key(a, b): f"F({a},{b})" for a, b, _, _ in RIDGES}


def ridge_name(key: frozenset) -> str:
    return _RIDGE_NAMES[key]


def _e(i, j, *ridges):
    return ((f"z{i}", f"z{j}"), tuple(ridge_key(*r.split(",")) for r in ridges))


#: Edges with the ridges containing them.
EDGES = (
    _e(1, 3, "R1,R1^-1", "P,R1", "P,R1^-1"),
    _e(1, 6, "R1,R1^-1", "J,R1", "J,R1^-1"),
    _e(1, 9, "P,J", "P,R1", "J,R1"),
    _e(1, 12, "P,J", "P,R1^-1", "J,R1^-1"),
    _e(2, 4, "R2,R2^-1", "P^-1,R2^-1", "P^-1,R2"),
    _e(2, 8, "P^-1,J^-1", "P^-1,R2^-1", "J^-1,R2^-1"),
    _e(2, 10, "R2,R2^-1", "J^-1,R2", "J^-1,R2^-1"),
    _e(2, 14, "P^-1,J^-1", "P^-1,R2", "J^-1,R2"),
    _e(5, 13, "P,R1^-1", "P^-1,R2", "P,R2", "R1^-1,P^-1"),
    _e(7, 11, "J,R1", "J^-1,R2^-1", "J,J^-1", "R1,R2^-1"),
    _e(9, 10, "R1,J^-1", "P,R1", "J^-1,R2", "P,R2"),
    _e(3, 4, "P,P^-1", "P,R1", "P^-1,R2^-1", "R1,R2^-1"),
    _e(6, 8, "J,R2^-1", "J,R1^-1", "P^-1,R2^-1", "R1^-1,P^-1"),
    _e(12, 14, "R1^-1,R2", "J,R1^-1", "J^-1,R2", "J,J^-1"),
    _e(4, 10, "R2,R2^-1", "P,R1", "P,R2", "R1,R2^-1"),
    _e(8, 14, "P^-1,J^-1", "J,R1^-1", "J,J^-1", "R1^-1,P^-1"),
    _e(9, 12, "P,J", "J^-1,R2", "P,R2", "J,J^-1"),
    _e(3, 6, "R1,R1^-1", "P^-1,R2^-1", "R1,R2^-1", "R1^-1,P^-1"),
    _e(13, 14, "R1^-1,R2", "P^-1,R2", "R1^-1,P^-1"),
    _e(12, 13, "R1^-1,R2", "P,R1^-1", "P,R2"),
    _e(10, 11, "R1,J^-1", "J^-1,R2^-1", "R1,R2^-1"),
    _e(9, 11, "R1,J^-1", "J,R1", "J,J^-1"),
    _e(7, 8, "J,R2^-1", "J^-1,R2^-1", "J,J^-1"),
    _e(6, 7, "J,R2^-1", "J,R1", "R1,R2^-1"),
    _e(4, 5, "P,P^-1", "P^-1,R2", "P,R2"),
    _e(3, 5, "P,P^-1", "P,R1^-1", "R1^-1,P^-1"),
)

#: Edge rows corrected from the printed table: (edge, printed ridge, used ridge).
EDGE_TABLE_CORRECTIONS = (
    (("z6", "z8"), ridge_key("P^-1", "R2"), ridge_key("P^-1", "R2^-1")),
)


@dataclass
class FacetComplex:
    """Vertices, edges, ridges and sides of D after the collapse rule."""

    collapse_case: CollapseCase
    vertices: tuple
    edges: tuple
    ridges: dict
    sides: dict
    relabel: dict = field(default_factory=dict)

    @property
    def counts(self) -> tuple:
        return (len(self.vertices), len(self.edges), len(self.ridges), len(self.sides))

    @property
    def euler_count(self) -> int:
        v, e, r, s = self.counts
        return v - e + r - s

    @property
    def edge_ridge_incidences(self) -> int:
        return sum(len(e.ridges) for e in self.edges)

    def sides_of_ridge(self, key: frozenset) -> list:
        return [n for n, s in self.sides.items() if key in s.ridges]

    def to_json(self) -> dict:
        return {
            "collapse_case": self.collapse_case.value,
            "counts": dict(zip(("vertices", "edges", "ridges", "sides"), self.counts)),
            "vertices": list(self.vertices),
            "edges": [
                {"endpoints": list(e.endpoints), "ridges": [ridge_name(k) for k in e.ridges]}
                for e in self.edges
            ],
            "ridges": [
                {"name": r.name, "type": r.kind, "vertices": list(r.vertices)}
                for r in self.ridges.values()
            ],
            "sides": [
                {
                    "name": f"S({s.name})",
                    "vertices": sorted(s.vertices, key=_vertex_sort_key),
                    "ridges": [ridge_name(k) for k in s.ridges],
                }
                for s in self.sides.values()
            ],
        }


def _vertex_sort_key(label: str):
    return int(label[1:].split("-")[0])


def _relabel_map(case: CollapseCase) -> dict:
    rel = {v: v for v in VERTEX_LABELS}
    merged = []
    if case.merges_z345:
        merged.append("z3-5")
    if case.merges_triples:
        merged += ["z6-8", "z9-11", "z12-14"]
    for m in merged:
        for v in TRIPLES[m]:
            rel[v] = m
    return rel


def _dedup(seq):
    out = []
    for x in seq:
        if x not in out:
            out.append(x)
    return tuple(out)


def _build_complex(case: CollapseCase) -> FacetComplex:
    rel = _relabel_map(case)
    vertices = _dedup(rel[v] for v in VERTEX_LABELS)
    ridges = {}
    for a, b, kind, vs in RIDGES:
        new = _dedup(rel[v] for v in vs)
        if len(new) < 3:
            continue
        key = ridge_key(a, b)
        ridges[key] = Ridge(key, _RIDGE_NAMES[key], kind, new)
    edges = []
    for (u, v), rs in EDGES:
        if rel[u] == rel[v]:
            continue
        edges.append(Edge((rel[u], rel[v]), tuple(k for k in rs if k in ridges)))
    sides = {}
    for name in GENERATOR_NAMES:
        sides[name] = Side(
            name,
            frozenset(rel[v] for v in BISECTORS[name].vertices),
            tuple(k for k in ridges if name in k),
        )
    return FacetComplex(case, vertices, tuple(edges), ridges, sides, rel)


def generic_complex() -> FacetComplex:
    """The complex with no collapse (14 vertices, 26 edges, 20 ridges)."""
    return _build_complex(CollapseCase.FULL_D)


def facet_complex(params: LatticeParams) -> FacetComplex:
    """Facet complex of D with the collapse rule of ``params`` applied."""
    return _build_complex(params.collapse_case)


# --------------------------------------------------------------------------
# vertex-level action of the maps


def vertex_representatives(params: LatticeParams, cx: FacetComplex) -> dict:
    """z-coordinate representative of every vertex of ``cx``."""
    zt = _z_table(params.theta_rad, params.phi_rad)
    col = collapsed_representatives(params)
    return {v: (col[v] if v in col else zt[v]) for v in cx.vertices}


def vertex_map(T, reps: dict, tol: float = 1e-7) -> dict:
    """Label -> label of the image under ``T``; ``None`` when unmatched.

    Raises
    ------
    GeometryError
        If an image matches more than one vertex.
    """
    out = {}
    for lab, z in reps.items():
        img = T(z)
        hits = [m for m, w in reps.items() if proj_equal(img, w, tol)]
        if len(hits) > 1:
            raise GeometryError(f"image of {lab} matches several vertices: {hits}")
        out[lab] = hits[0] if hits else None
    return out


def giraud_triple(ridge_key_: frozenset, gens: GeneratorSet, tol: float = 1e-9) -> list:
    """The distinct lemma vectors of the two bisectors of a ridge."""
    vecs = []
    for name in sorted(ridge_key_):
        for n in lemma_vectors(name, gens):
            if not any(proj_equal(n, m, tol) for m in vecs):
                vecs.append(n)
    return vecs


def giraud_check(
    ridge_key_: frozenset,
    gens: GeneratorSet,
    rng: Optional[np.random.Generator] = None,
    n_samples: int = 50,
    tol: float = 1e-8,
) -> tuple:
    """Check that a G-ridge is equidistant from three polar lines.

    Returns
    -------
    (ok, residual)
        ``residual`` is the largest spread of the three ``|<z, n>|`` values,
        over the ridge's positive vertices and sampled points satisfying
        both conditions, with ``z`` scaled to norm 1.

    Raises
    ------
    ValueError
        If the ridge is not of type G.
    """
    kinds = {ridge_key(a, b): k for a, b, k, _ in RIDGES}
    if kinds.get(ridge_key_) != "G":
        raise ValueError(f"{sorted(ridge_key_)} is not a G-ridge")
    triple = giraud_triple(ridge_key_, gens)
    if len(triple) != 3:
        return False, math.inf
    verts = [v for a, b, _, vs in RIDGES if ridge_key(a, b) == ridge_key_ for v in vs]
    zt = _z_table(gens.params.theta_rad, gens.params.phi_rad)
    pts = [zt[v] for v in verts]
    rng = rng or np.random.default_rng(0)
    pts += list(sample_ridge_points(ridge_key_, gens, rng, n_samples))
    worst = 0.0
    for z in pts:
        q = norm2(z, gens.form)
        if q <= 1e-12:
            continue
        z = z / math.sqrt(q)
        vals = [abs(inner(z, n, gens.form)) for n in triple]
        worst = max(worst, max(vals) - min(vals))
        for name in ridge_key_:
            worst = max(worst, abs(bisector_value(name, z / z[2], gens)))
    return worst <= tol, worst


def coalescence_residual_ok(params: LatticeParams, label: str, tol: float = 1e-8) -> bool:
    """The octagon at a vertex shows exactly the coincidences of its cone pairs."""
    z = _z_table(params.theta_rad, params.phi_rad)[label]
    V = octagon_vertices(params.theta_rad, params.phi_rad, z)
    return coalescence_check(OctagonRealization(V), coalescence_pairs(label), tol)
