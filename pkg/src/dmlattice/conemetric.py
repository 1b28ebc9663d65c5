"""The octagon model of a flat cone metric with five cone points.

A point ``(z1, z2, z3)`` describes three triangles: ``T3`` with a side of
length ``z3`` and angles ``phi`` (at ``v0``), ``theta`` and
``pi - theta - phi`` (at the origin ``v*``), and the two triangles ``T1``,
``T2`` of sides ``z1``, ``z2`` removed from it.  Gluing ``T3`` to its mirror
image gives an octagon whose signed area equals the Hermitian norm of the
point.  All eight vertices depend complex-linearly on ``(z1, z2, z3)``, so
the octagon is stored as an 8x3 coefficient matrix applied to the point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .moves import basic_moves

__all__ = [
    "VERTEX_ORDER",
    "OctagonConfig",
    "OctagonRealization",
    "octagon_coefficients",
    "octagon_vertices",
    "build_octagon",
    "signed_area",
    "shoelace",
    "area_form",
    "hermitian_area",
    "move_vertex_residual",
    "MOVE_EQUATIONS",
    "move_vertex_equations",
    "coincidences",
    "coalescence_check",
    "cone_point",
    "cone_point_collisions",
]

#: Cyclic order used for the shoelace sum.
VERTEX_ORDER = ("v0", "v1", "v2", "v3", "v*", "v-3", "v-2", "v-1")
_IDX = {name: i for i, name in enumerate(VERTEX_ORDER)}


@dataclass(frozen=True)
class OctagonConfig:
    """Triangle side parameters and the two angles (radians)."""

    z1: complex
    z2: complex
    z3: complex
    theta: float
    phi: float

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.z1, self.z2, self.z3], dtype=complex)


@dataclass(frozen=True)
class OctagonRealization:
    """Vertex positions in the plane, in :data:`VERTEX_ORDER`."""

    vertices: np.ndarray

    def __getitem__(self, name: str) -> complex:
        return complex(self.vertices[_IDX[name]])

    def as_dict(self) -> dict:
        return {n: complex(v) for n, v in zip(VERTEX_ORDER, self.vertices)}


@lru_cache(maxsize=256)
def _coefficients(theta: float, phi: float) -> np.ndarray:
    stp = math.sin(theta + phi)
    base = -1j * math.sin(theta) / stp  # v0 of T3 for z1 = 0
    u = np.exp(1j * (math.pi / 2 - phi))  # direction from v0 along T3
    w = np.exp(1j * (math.pi / 2 - theta - phi))  # direction from v* along T3
    c3 = math.sin(phi) / stp * w  # far vertex of T3
    v0 = [1j * math.cos(theta / 2) / math.cos(theta / 2 - phi), 0, base]
    v1 = [u, 0, base]
    v2 = [0, -u, c3]
    v3 = [0, -w, c3]
    rows = [v0, v1, v2, v3, [0, 0, 0]]
    rows += [[-np.conj(c) for c in r] for r in (v3, v2, v1)]
    out = np.array(rows, dtype=complex)
    out.setflags(write=False)
    return out


def octagon_coefficients(theta: float, phi: float) -> np.ndarray:
    """The 8x3 matrix ``C`` with ``vertices = C @ (z1, z2, z3)``.

    Mirror vertices use the negated conjugate coefficients, which is the
    reflection in the imaginary axis extended complex-linearly.
    """
    return _coefficients(float(theta), float(phi))


def octagon_vertices(theta: float, phi: float, Z) -> np.ndarray:
    """Vertices for one point or a batch of shape ``(..., 3)``."""
    return np.asarray(Z, dtype=complex) @ octagon_coefficients(theta, phi).T


def build_octagon(cfg: OctagonConfig) -> OctagonRealization:
    """Vertices of the octagon described by ``cfg``."""
    return OctagonRealization(octagon_vertices(cfg.theta, cfg.phi, cfg.vector))


def shoelace(V) -> np.ndarray:
    """Signed area of closed polygons given as ``(..., n)`` complex arrays."""
    V = np.asarray(V, dtype=complex)
    return 0.5 * np.imag(np.sum(np.conj(V) * np.roll(V, -1, axis=-1), axis=-1))


def signed_area(octagon) -> float:
    """Shoelace area, positive for counter-clockwise vertex order."""
    V = octagon.vertices if isinstance(octagon, OctagonRealization) else octagon
    return shoelace(V)


def hermitian_area(theta: float, phi: float, Z) -> np.ndarray:
    """Closed-form area for one point or a ``(..., 3)`` batch."""
    Z = np.asarray(Z, dtype=complex)
    st, sp = math.sin(theta), math.sin(phi)
    s = sp + math.sin(theta - phi)
    a = np.abs(Z) ** 2
    return st * sp / math.sin(theta + phi) * a[..., 2] - st * a[..., 1] - st * sp / s * a[..., 0]


def area_form(cfg: OctagonConfig) -> float:
    """Hermitian area of a configuration."""
    return float(hermitian_area(cfg.theta, cfg.phi, cfg.vector))


#: Pairs ``(new vertex, old vertex)`` fixed by each move.
MOVE_EQUATIONS = {
    "R1": (("v0", "v0"), ("v1", "v1"), ("v3", "v2"), ("v-2", "v-3")),
    "R2": (("v0", "v0"), ("v2", "v1"), ("v-1", "v-2"), ("v3", "v3")),
    "S1": (("v3", "v3"), ("v2", "v2"), ("v1", "v0"), ("v0", "v-1")),
}


def _move_matrix(name: str, theta: float, phi: float) -> np.ndarray:
    if name == "S1":
        if not math.isclose(theta, phi, rel_tol=1e-12):
            raise ValueError("S1 needs theta == phi")
        return np.diag([np.exp(1j * theta), 1, 1])
    return basic_moves(theta, phi)[name].unitary


def move_vertex_residual(move_name: str, cfg: OctagonConfig) -> float:
    """Largest distance between paired vertices before and after the move."""
    M = _move_matrix(move_name, cfg.theta, cfg.phi)
    old = octagon_vertices(cfg.theta, cfg.phi, cfg.vector)
    new = octagon_vertices(cfg.theta, cfg.phi, M @ cfg.vector)
    return max(abs(new[_IDX[a]] - old[_IDX[b]]) for a, b in MOVE_EQUATIONS[move_name])


def move_vertex_equations(move_name: str, cfg: OctagonConfig, tol: float = 1e-8) -> bool:
    """Whether the rebuilt octagon satisfies the move's vertex equations."""
    return move_vertex_residual(move_name, cfg) <= tol


def coincidences(octagon: OctagonRealization, tol: float = 1e-8) -> set:
    """Unordered pairs of vertex names that coincide within ``tol``."""
    V = octagon.vertices
    out = set()
    for i in range(8):
        for j in range(i + 1, 8):
            if abs(V[i] - V[j]) <= tol:
                out.add(frozenset((VERTEX_ORDER[i], VERTEX_ORDER[j])))
    return out


def cone_point(name: str) -> str:
    """Cone point represented by an octagon vertex (``v-i`` and ``vi`` agree)."""
    return name.replace("-", "")


def _partition(pairs) -> frozenset:
    groups = {cone_point(n): {cone_point(n)} for n in VERTEX_ORDER}
    for a, b in (tuple(e) for e in pairs):
        merged = groups[cone_point(a)] | groups[cone_point(b)]
        for n in merged:
            groups[n] = merged
    return frozenset(frozenset(g) for g in groups.values() if len(g) > 1)


def cone_point_collisions(octagon: OctagonRealization, tol: float = 1e-8) -> frozenset:
    """Nontrivial classes of cone points that collide in ``octagon``."""
    return _partition(coincidences(octagon, tol))


def coalescence_check(octagon: OctagonRealization, expected, tol: float = 1e-8) -> bool:
    """True iff the colliding cone points are exactly those in ``expected``.

    ``expected`` is an iterable of 2-element vertex-name collections.  The
    two octagon copies ``vi`` and ``v-i`` stand for the same cone point, and
    the transitive closure is compared, so extra collisions also fail.
    """
    return cone_point_collisions(octagon, tol) == _partition(expected)
