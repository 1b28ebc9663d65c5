"""Linear algebra on C^3 with a Hermitian form of signature (1, 2).

Points of the complex hyperbolic plane are the projective classes of
vectors with ``<z, z> > 0``.  Everything here works on plain numpy arrays;
:class:`ProjectivePoint` and :class:`Isometry` are light wrappers that carry
the conventions (projective comparison, antiholomorphic action).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "GeometryError",
    "HForm",
    "ProjectivePoint",
    "Isometry",
    "hermitian_form",
    "inner",
    "norm2",
    "distance",
    "cosh2_half_distance",
    "proj_residual",
    "proj_equal",
    "proj_order",
    "normalize_affine",
    "signature",
]

#: Default tolerance for comparisons of O(1)-normalised quantities.
DEFAULT_TOL = 1e-9


class GeometryError(ValueError):
    """Raised for inputs outside the model (non-positive points, bad angles)."""


@dataclass(frozen=True)
class HForm:
    """Diagonal Hermitian form attached to the angles ``theta, phi`` (radians)."""

    matrix: np.ndarray
    theta: float
    phi: float

    @property
    def diag(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))


def hermitian_form(theta: float, phi: float) -> HForm:
    """Build the form ``sin(theta) * diag(-sin(phi)/s, -1, sin(phi)/sin(theta+phi))``.

    Here ``s = sin(phi) + sin(theta - phi)``.

    Raises
    ------
    GeometryError
        If an angle is non-positive or ``theta + phi >= pi``.
    """
    if theta <= 0 or phi <= 0:
        raise GeometryError("angles must be positive")
    if theta + phi >= math.pi:
        raise GeometryError("theta + phi must be less than pi")
    st = math.sin(theta)
    s = math.sin(phi) + math.sin(theta - phi)
    h = st * np.array([-math.sin(phi) / s, -1.0, math.sin(phi) / math.sin(theta + phi)])
    return HForm(np.diag(h).astype(complex), theta, phi)


def _hmat(H: Union[HForm, np.ndarray]) -> np.ndarray:
    return H.matrix if isinstance(H, HForm) else np.asarray(H)


def _vec(z) -> np.ndarray:
    return z.vector if isinstance(z, ProjectivePoint) else np.asarray(z, dtype=complex)


def inner(z, w, H) -> complex:
    """``<z, w> = w^* H z``.  Broadcasts over leading axes of ``z`` and ``w``."""
    Hm = _hmat(H)
    z, w = _vec(z), _vec(w)
    return np.einsum("...i,ij,...j->...", np.conj(w), Hm, z)


def norm2(z, H) -> float:
    """Real part of ``<z, z>``."""
    return np.real(inner(z, z, H))


def cosh2_half_distance(z, w, H) -> float:
    """``cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>)``."""
    zz, ww = norm2(z, H), norm2(w, H)
    if np.any(zz <= 0) or np.any(ww <= 0):
        raise GeometryError("distance is only defined between positive points")
    return np.abs(inner(z, w, H)) ** 2 / (zz * ww)


def distance(z, w, H) -> float:
    """Hyperbolic distance between two positive points."""
    c = cosh2_half_distance(z, w, H)
    return 2.0 * np.arccosh(np.sqrt(np.maximum(c, 1.0)))


def signature(H) -> tuple:
    """(number of positive, number of negative) eigenvalues."""
    ev = np.linalg.eigvalsh(_hmat(H))
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def _max_normalize(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex).reshape(-1)
    m = a[np.argmax(np.abs(a))]
    if m == 0:
        raise GeometryError("zero vector has no projective class")
    return a / m


def proj_residual(a, b) -> float:
    """Largest 2x2 minor of ``[a b]`` after normalising each by its largest entry.

    Works for vectors and, flattened, for matrices.  Zero means ``a`` and
    ``b`` are proportional.
    """
    x, y = _max_normalize(_vec(a)), _max_normalize(_vec(b))
    if x.shape != y.shape:
        raise ValueError("shape mismatch")
    minors = np.outer(x, y) - np.outer(y, x)
    return float(np.max(np.abs(minors)))


def proj_equal(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Projective equality of two vectors (or matrices) up to a nonzero scalar."""
    return proj_residual(a, b) <= tol


def normalize_affine(z) -> np.ndarray:
    """Scale so the last coordinate is 1.

    Raises
    ------
    GeometryError
        If the last coordinate vanishes.
    """
    z = _vec(z)
    if abs(z[-1]) < 1e-300:
        raise GeometryError("point lies at infinity of the affine chart")
    return z / z[-1]


@dataclass(frozen=True)
class ProjectivePoint:
    """A representative of a point of P(C^3), with an optional form."""

    vector: np.ndarray
    form: Optional[HForm] = field(default=None, compare=False)

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex)
        if v.shape != (3,) or not np.any(v):
            raise GeometryError("a projective point needs a nonzero vector in C^3")
        object.__setattr__(self, "vector", v)

    @property
    def norm(self) -> float:
        if self.form is None:
            raise GeometryError("no Hermitian form attached")
        return float(norm2(self.vector, self.form))

    @property
    def is_positive(self) -> bool:
        return self.norm > 0

    def affine(self) -> np.ndarray:
        return normalize_affine(self.vector)

    def equals(self, other, tol: float = DEFAULT_TOL) -> bool:
        return proj_equal(self.vector, _vec(other), tol)


@dataclass(frozen=True)
class Isometry:
    """``z -> c M z`` or, when antiholomorphic, ``z -> c M conj(z)``.

    ``matrix`` is stored without the scalar ``prefactor``; the product
    ``prefactor * matrix`` is the unitary representative.
    """

    matrix: np.ndarray
    antiholomorphic: bool = False
    prefactor: complex = 1.0
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=complex))

    @property
    def unitary(self) -> np.ndarray:
        return self.prefactor * self.matrix

    def __call__(self, z) -> np.ndarray:
        z = _vec(z)
        if self.antiholomorphic:
            z = np.conj(z)
        return np.einsum("ij,...j->...i", self.unitary, z)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        m2, c2 = other.matrix, other.prefactor
        if self.antiholomorphic:
            m2, c2 = np.conj(m2), np.conj(c2)
        return Isometry(
            self.matrix @ m2,
            self.antiholomorphic != other.antiholomorphic,
            self.prefactor * c2,
            f"{self.name}{other.name}" if self.name and other.name else "",
        )

    def inverse(self) -> "Isometry":
        minv, cinv = np.linalg.inv(self.matrix), 1.0 / self.prefactor
        if self.antiholomorphic:
            minv, cinv = np.conj(minv), np.conj(cinv)
        return Isometry(minv, self.antiholomorphic, cinv, f"{self.name}^-1" if self.name else "")

    def __pow__(self, n: int) -> "Isometry":
        if n < 0:
            return self.inverse() ** (-n)
        out = Isometry(np.eye(3), False, 1.0)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def unitarity_residual(self, H) -> float:
        """``max |G^* H G - H|`` for the unitary representative."""
        Hm = _hmat(H)
        G = self.unitary
        return float(np.max(np.abs(G.conj().T @ Hm @ G - Hm)))

    def equals(self, other: "Isometry", tol: float = DEFAULT_TOL) -> bool:
        return self.antiholomorphic == other.antiholomorphic and proj_equal(
            self.matrix, other.matrix, tol
        )

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(np.eye(3), False, 1.0, "I")


def proj_order(T: Isometry, n_max: int = 200, tol: float = DEFAULT_TOL) -> Optional[int]:
    """Least ``n <= n_max`` with ``T^n`` projectively the identity, else ``None``."""
    if T.antiholomorphic:
        raise GeometryError("proj_order expects a holomorphic map")
    eye = np.eye(3)
    # normalise each power to avoid drift in the scale
    M = T.matrix / np.abs(np.linalg.det(T.matrix)) ** (1 / 3)
    acc = np.eye(3, dtype=complex)
    for n in range(1, n_max + 1):
        acc = acc @ M
        if proj_equal(acc, eye, tol):
            return n
    return None
