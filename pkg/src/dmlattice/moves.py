"""The named transformations and the relation checker.

Generators are built from the angles ``theta = 2 pi / p`` and
``phi = pi / k``.  Bracket matrices are kept separate from their scalar
prefactor ``1 / ((1 - e^{-i theta}) sin(phi))`` so that projective checks
work on well-scaled entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cxgeom import (
    DEFAULT_TOL,
    GeometryError,
    HForm,
    Isometry,
    hermitian_form,
    normalize_affine,
    proj_order,
    proj_residual,
)
from .params import LatticeParams

__all__ = [
    "GeneratorSet",
    "RelationCheck",
    "RelationReport",
    "basic_moves",
    "build_generators",
    "to_w",
    "to_z",
    "w_from_formula",
    "z_from_formula",
    "apply_iota",
    "verify_relations",
    "evaluate_word",
    "generator_orders",
]


def _trig(theta: float, phi: float):
    st, sp = math.sin(theta), math.sin(phi)
    s = sp + math.sin(theta - phi)
    stp = math.sin(theta + phi)
    return st, sp, s, stp


def _prefactor(theta: float, phi: float) -> complex:
    return 1.0 / ((1 - np.exp(-1j * theta)) * math.sin(phi))


def basic_moves(theta: float, phi: float) -> dict:
    """R1, R2, A1, J, P as :class:`Isometry` objects for the given angles."""
    st, sp, s, stp = _trig(theta, phi)
    e = lambda x: np.exp(1j * x)  # noqa: E731
    c = _prefactor(theta, phi)
    corner = sp + st * e(phi)
    r1 = np.diag([1, e(theta), 1])
    a1 = np.diag([e(2 * phi), 1, 1])
    r2 = np.array(
        [
            [-st * e(-phi), -s, s],
            [-sp, -sp * e(-theta), sp],
            [-stp, -stp, corner],
        ]
    )
    j = np.array(
        [
            [-st * e(phi), -s, s],
            [-sp * e(2 * phi + theta), -sp, sp * e(theta)],
            [-stp * e(2 * phi), -stp, corner],
        ]
    )
    p = np.array(
        [
            [-st * e(-phi), -s, s],
            [-sp * e(theta), -sp, sp * e(theta)],
            [-stp, -stp, corner],
        ]
    )
    return {
        "R1": Isometry(r1, False, 1.0, "R1"),
        "R2": Isometry(r2, False, c, "R2"),
        "A1": Isometry(a1, False, 1.0, "A1"),
        "J": Isometry(j, False, c, "J"),
        "P": Isometry(p, False, c, "P"),
    }


@dataclass(frozen=True)
class GeneratorSet:
    """All named maps for one lattice.

    ``s1``, ``s2`` and ``k_map`` exist only for symmetric lattices; they live
    in the frame ``sym_params`` where ``theta == phi`` and are unitary for
    ``sym_form``.  The remaining maps use ``params`` and ``form``.
    """

    params: LatticeParams
    form: HForm
    r1: Isometry
    r2: Isometry
    a1: Isometry
    j: Isometry
    p: Isometry
    iota: Isometry
    p_inv: Isometry
    sym_params: Optional[LatticeParams] = None
    sym_form: Optional[HForm] = None
    sym_moves: Optional[dict] = None
    s1: Optional[Isometry] = None
    s2: Optional[Isometry] = None
    k_map: Optional[Isometry] = None

    def by_name(self, name: str) -> Isometry:
        """Look up ``"P"``, ``"P^-1"``, ``"R1"``, ... by symbol."""
        base, inv = (name[:-3], True) if name.endswith("^-1") else (name, False)
        table = {"R1": self.r1, "R2": self.r2, "A1": self.a1, "J": self.j, "P": self.p}
        if self.k_map is not None:
            table.update({"S1": self.s1, "S2": self.s2, "K": self.k_map})
        if base not in table:
            raise KeyError(name)
        g = table[base]
        return g.inverse() if inv else g

    def holomorphic(self) -> dict:
        """Name -> (map, form it is unitary for)."""
        out = {n: (self.by_name(n), self.form) for n in ("R1", "R2", "A1", "J", "P")}
        if self.k_map is not None:
            for n in ("S1", "S2", "K"):
                out[n] = (self.by_name(n), self.sym_form)
        return out


def build_generators(params: LatticeParams) -> GeneratorSet:
    """All generator matrices for ``params``."""
    theta, phi = params.theta_rad, params.phi_rad
    form = hermitian_form(theta, phi)
    m = basic_moves(theta, phi)
    iota = (m["P"] @ m["R1"]) @ Isometry(np.eye(3), True, 1.0)
    iota = Isometry(iota.matrix, True, iota.prefactor, "iota")
    extra = {}
    if params.symmetric:
        sp = params.symmetric_frame
        th = sp.theta_rad
        sm = basic_moves(th, sp.phi_rad)
        s1 = Isometry(np.diag([np.exp(1j * th), 1, 1]), False, 1.0, "S1")
        s2 = sm["P"] @ s1 @ sm["P"].inverse()
        k_map = sm["R1"] @ sm["R2"] @ s1
        extra = dict(
            sym_params=sp,
            sym_form=hermitian_form(th, sp.phi_rad),
            sym_moves=sm,
            s1=s1,
            s2=Isometry(s2.matrix, False, s2.prefactor, "S2"),
            k_map=Isometry(k_map.matrix, False, k_map.prefactor, "K"),
        )
    return GeneratorSet(
        params=params,
        form=form,
        r1=m["R1"],
        r2=m["R2"],
        a1=m["A1"],
        j=m["J"],
        p=m["P"],
        iota=iota,
        p_inv=m["P"].inverse(),
        **extra,
    )


def to_w(z, gens: GeneratorSet) -> np.ndarray:
    """Affine w-coordinates ``(w1, w2, 1)`` of ``z``, via ``P^-1``.

    Raises
    ------
    GeometryError
        If the point is at infinity of the w-chart.
    """
    return normalize_affine(gens.p_inv(np.asarray(z, dtype=complex)))


def to_z(w, gens: GeneratorSet) -> np.ndarray:
    """Inverse of :func:`to_w`."""
    return normalize_affine(gens.p(np.asarray(w, dtype=complex)))


def _affine_pair(num1, num2, den):
    den = np.asarray(den)
    if np.any(np.abs(den) < 1e-14):
        raise GeometryError("denominator vanishes: point at infinity of the chart")
    return num1 / den, num2 / den


def w_from_formula(z1, z2, theta: float, phi: float):
    """Closed-form ``(w1, w2)`` from affine ``(z1, z2)``."""
    st, sp, s, stp = _trig(theta, phi)
    eth, eph = np.exp(1j * theta), np.exp(1j * phi)
    den = -stp * z1 - stp * z2 / eth + sp + st / eph
    n1 = -st * eph * z1 - s * z2 / eth + s
    n2 = -sp * z1 - sp * z2 + sp
    return _affine_pair(n1, n2, den)


def z_from_formula(w1, w2, theta: float, phi: float):
    """Closed-form ``(z1, z2)`` from affine ``(w1, w2)``."""
    st, sp, s, stp = _trig(theta, phi)
    eth, eph = np.exp(1j * theta), np.exp(1j * phi)
    den = -stp * w1 - stp * w2 + sp + st * eph
    n1 = -st / eph * w1 - s * w2 + s
    n2 = -sp * eth * w1 - sp * w2 + sp * eth
    return _affine_pair(n1, n2, den)


def apply_iota(z, gens: GeneratorSet) -> np.ndarray:
    """``iota(z) = P R1 conj(z)``."""
    return gens.iota(np.asarray(z, dtype=complex))


def evaluate_word(word, gens: GeneratorSet) -> Isometry:
    """Product of ``(symbol, exponent)`` letters, leftmost letter outermost."""
    out = Isometry.identity()
    for sym, exp in word:
        out = out @ (gens.by_name(sym) ** exp)
    return out


@dataclass(frozen=True)
class RelationCheck:
    """One relation: ``status`` is ``pass``, ``fail`` or ``informational``."""

    name: str
    status: str
    residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class RelationReport:
    params: LatticeParams
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def by_name(self, name: str) -> RelationCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, residual: float, tol: float, informational: bool = False):
        if informational:
            status = "informational"
        else:
            status = "pass" if residual <= tol else "fail"
        self.checks.append(RelationCheck(name, status, float(residual), tol))


def _is_identity(T: Isometry) -> float:
    if T.antiholomorphic:
        return math.inf
    return proj_residual(T.matrix, np.eye(3))


def _same(A: Isometry, B: Isometry) -> float:
    if A.antiholomorphic != B.antiholomorphic:
        return math.inf
    return proj_residual(A.matrix, B.matrix)


def verify_relations(params: LatticeParams, tol: float = DEFAULT_TOL, gens=None) -> RelationReport:
    """Check the defining relations of the generators for ``params``.

    Relators whose exponent is not a positive integer are skipped, except
    that for negative ``l`` or ``d`` the powers with ``|l|`` and ``3|d|``
    are recorded as informational entries.
    """
    g = gens or build_generators(params)
    rep = RelationReport(params)
    J, P, R1, R2, A1, iota = g.j, g.p, g.r1, g.r2, g.a1, g.iota
    p = int(params.p)

    rep.add("J^3", _is_identity(J**3), tol)
    rep.add("R1^p", _is_identity(R1**p), tol)
    rep.add("R2^p", _is_identity(R2**p), tol)
    if params.k.is_positive_integer:
        rep.add("(P^-1*J)^k", _is_identity((P.inverse() @ J) ** int(params.k)), tol)
    for sym, val, word in (
        ("d", params.d, lambda n: P ** (3 * n)),
        ("l", params.l, lambda n: (R2 @ R1 @ J) ** n),
    ):
        name = "P^(3d)" if sym == "d" else "(R2*R1*J)^l"
        if val.is_positive_integer:
            rep.add(name, _is_identity(word(int(val))), tol)
        elif val.is_integer:
            rep.add(name + " with |" + sym + "|", _is_identity(word(-int(val))), tol, True)
    rep.add("R2 = P*R1*P^-1", _same(R2, P @ R1 @ P.inverse()), tol)
    rep.add("R2 = J*R1*J^-1", _same(R2, J @ R1 @ J.inverse()), tol)
    rep.add("P = R1*R2", float(np.max(np.abs(P.unitary - (R1 @ R2).unitary))), tol)
    rep.add("J = P*A1", _same(J, P @ A1), tol)
    rep.add("J = R1*R2*A1", _same(J, R1 @ R2 @ A1), tol)
    rep.add("iota^2 = I", _is_identity(iota @ iota), tol)
    rep.add("J*iota = iota*J^-1", _same(J @ iota, iota @ J.inverse()), tol)
    rep.add("P*iota = iota*P^-1", _same(P @ iota, iota @ P.inverse()), tol)
    rep.add("R1*iota = iota*R2^-1", _same(R1 @ iota, iota @ R2.inverse()), tol)
    rep.add("R2*iota = iota*R1^-1", _same(R2 @ iota, iota @ R1.inverse()), tol)

    if g.k_map is not None:
        sm = g.sym_moves
        S1, S2, K = g.s1, g.s2, g.k_map
        R1s, R2s, A1s = sm["R1"], sm["R2"], sm["A1"]
        rep.add("S1*R1 = R1*S1", _same(S1 @ R1s, R1s @ S1), tol)
        rep.add("S1*R2*S1 = R2*S1*R2", _same(S1 @ R2s @ S1, R2s @ S1 @ R2s), tol)
        rep.add("K^4", _is_identity(K**4), tol)
        rep.add("R2 = K*R1*K^-1", _same(R2s, K @ R1s @ K.inverse()), tol)
        rep.add("S1 = K^2*R1*K^-2", _same(S1, K**2 @ R1s @ K ** -2), tol)
        rep.add("S2 = K^3*R1*K^-3", _same(S2, K**3 @ R1s @ K ** -3), tol)
        rep.add("S1^2 = A1", _same(S1 @ S1, A1s), tol)
        rep.add("S1^p", _is_identity(S1**p), tol)
        rep.add("(K*R1)^3", _is_identity((K @ R1s) ** 3), tol)
        rep.add("(K^2*R1)^2 = (R1*K^2)^2", _same((K**2 @ R1s) ** 2, (R1s @ K**2) ** 2), tol)
        d = g.sym_params.d
        if d.is_positive_integer:
            rep.add("(K^-1*R1)^(3d)", _is_identity((K.inverse() @ R1s) ** (3 * int(d))), tol)
    return rep


def generator_orders(gens: GeneratorSet, n_max: int = 200, tol: float = DEFAULT_TOL) -> dict:
    """Projective orders of the main words, ``None`` when above ``n_max``."""
    out = {
        "J": proj_order(gens.j, n_max, tol),
        "R1": proj_order(gens.r1, n_max, tol),
        "R2": proj_order(gens.r2, n_max, tol),
        "P^-1*J": proj_order(gens.p.inverse() @ gens.j, n_max, tol),
        "P": proj_order(gens.p, n_max, tol),
        "R2*R1*J": proj_order(gens.r2 @ gens.r1 @ gens.j, n_max, tol),
    }
    if gens.k_map is not None:
        out["K"] = proj_order(gens.k_map, n_max, tol)
        out["S1"] = proj_order(gens.s1, n_max, tol)
    return out
