"""Exact parameter algebra for the three-fold symmetric lattices.

Every quantity attached to a pair ``(p, k)`` is a rational number or the
unsigned infinity, so the whole module works over :class:`fractions.Fraction`
with a thin wrapper, :class:`ExtRational`, that adds ``inf``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Union

__all__ = [
    "ExtRational",
    "INF",
    "CollapseCase",
    "LatticeParams",
    "TableRow",
    "TABLE",
    "derive_params",
    "classify",
    "ball_quintuple_check",
    "cone_angles",
    "curvatures",
    "parse_rational",
    "table_params",
    "SYMMETRIC_PAIRS",
    "table_row",
    "table_mismatches",
]

RationalLike = Union[int, Fraction, str, "ExtRational"]


@total_ordering
class ExtRational:
    """A rational number extended by a single unsigned infinity.

    Parameters
    ----------
    numerator : int
    denominator : int
        Non-negative.  A zero denominator encodes infinity and the sign of
        the numerator is discarded.

    Notes
    -----
    Only the operations needed by the lattice formulas are supported.
    Sums involving infinity are infinite, ``0 * inf`` is rejected, and
    ordering comparisons against infinity raise ``TypeError`` because the
    infinity carries no sign.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: int, denominator: int = 1):
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        if denominator == 0:
            self._num, self._den = 1, 0
            return
        g = math.gcd(numerator, denominator)
        self._num, self._den = numerator // g, denominator // g

    @classmethod
    def inf(cls) -> "ExtRational":
        return cls(1, 0)

    @classmethod
    def coerce(cls, value: RationalLike) -> "ExtRational":
        if isinstance(value, ExtRational):
            return value
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, (int, Fraction)):
            f = Fraction(value)
            return cls(f.numerator, f.denominator)
        raise TypeError(f"cannot interpret {value!r} as an extended rational")

    @property
    def numerator(self) -> int:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def is_finite(self) -> bool:
        return self._den != 0

    @property
    def is_integer(self) -> bool:
        return self._den == 1

    @property
    def is_positive_integer(self) -> bool:
        return self._den == 1 and self._num > 0

    def as_fraction(self) -> Fraction:
        if not self.is_finite:
            raise ValueError("infinity has no finite value")
        return Fraction(self._num, self._den)

    def reciprocal(self) -> "ExtRational":
        if not self.is_finite:
            return ExtRational(0)
        if self._num == 0:
            return ExtRational.inf()
        return ExtRational(self._den, self._num)

    def __neg__(self) -> "ExtRational":
        return self if not self.is_finite else ExtRational(-self._num, self._den)

    def __add__(self, other: RationalLike) -> "ExtRational":
        other = ExtRational.coerce(other)
        if not (self.is_finite and other.is_finite):
            return ExtRational.inf()
        s = self.as_fraction() + other.as_fraction()
        return ExtRational(s.numerator, s.denominator)

    __radd__ = __add__

    def __sub__(self, other: RationalLike) -> "ExtRational":
        return self + (-ExtRational.coerce(other))

    def __rsub__(self, other: RationalLike) -> "ExtRational":
        return ExtRational.coerce(other) - self

    def __mul__(self, other: RationalLike) -> "ExtRational":
        other = ExtRational.coerce(other)
        if self.is_finite and other.is_finite:
            s = self.as_fraction() * other.as_fraction()
            return ExtRational(s.numerator, s.denominator)
        if (self.is_finite and self._num == 0) or (other.is_finite and other._num == 0):
            raise ArithmeticError("0 * inf is undefined")
        return ExtRational.inf()

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> "ExtRational":
        return self * ExtRational.coerce(other).reciprocal()

    def __rtruediv__(self, other: RationalLike) -> "ExtRational":
        return ExtRational.coerce(other) * self.reciprocal()

    def __eq__(self, other: object) -> bool:
        try:
            other = ExtRational.coerce(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented
        return (self._num, self._den) == (other._num, other._den)

    def __lt__(self, other: RationalLike) -> bool:
        other = ExtRational.coerce(other)
        if not (self.is_finite and other.is_finite):
            raise TypeError("unsigned infinity is not ordered")
        return self.as_fraction() < other.as_fraction()

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __float__(self) -> float:
        return math.inf if not self.is_finite else self._num / self._den

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self._num

    def __str__(self) -> str:
        if not self.is_finite:
            return "inf"
        return str(self._num) if self._den == 1 else f"{self._num}/{self._den}"

    def __repr__(self) -> str:
        return f"ExtRational({self})"

    def to_json(self) -> str:
        return str(self)


INF = ExtRational.inf()


def parse_rational(text: str) -> ExtRational:
    """Parse ``"7/2"``, ``"3"``, ``"-12"`` or ``"inf"`` exactly."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "∞"):
        return ExtRational.inf()
    try:
        f = Fraction(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
    return ExtRational(f.numerator, f.denominator)


class CollapseCase(enum.Enum):
    """Which triples of vertices of the generic polyhedron merge."""

    FULL_D = "FullD"
    COLLAPSE_Z345 = "CollapseZ345"
    COLLAPSE_THREE_TRIPLES = "CollapseThreeTriples"
    COLLAPSE_ALL_FOUR = "CollapseAllFour"

    @property
    def merges_z345(self) -> bool:
        return self in (CollapseCase.COLLAPSE_Z345, CollapseCase.COLLAPSE_ALL_FOUR)

    @property
    def merges_triples(self) -> bool:
        return self in (CollapseCase.COLLAPSE_THREE_TRIPLES, CollapseCase.COLLAPSE_ALL_FOUR)


@dataclass(frozen=True)
class LatticeParams:
    """All exact data attached to a pair ``(p, k)``.

    Angles are stored as fractions of pi: ``theta == 2/p`` means 2*pi/p.
    """

    p: ExtRational
    k: ExtRational
    l: ExtRational
    d: ExtRational
    t: ExtRational
    mu: tuple
    theta: Fraction
    phi: Fraction
    collapse_case: CollapseCase
    symmetric: bool
    in_table: bool

    @property
    def theta_rad(self) -> float:
        return float(self.theta) * math.pi

    @property
    def phi_rad(self) -> float:
        return float(self.phi) * math.pi

    @property
    def label(self) -> str:
        return f"({self.p},{self.k})"

    @property
    def symmetric_frame(self) -> "LatticeParams | None":
        """Parameters whose angles satisfy theta == phi, if any.

        For ``k == p/2`` this is the pair itself.  For ``l == p/2`` the roles
        of ``k`` and ``l`` are swapped, which exchanges the first and fifth
        cone points and describes the same lattice.
        """
        if not self.symmetric:
            return None
        if self.k == self.p / 2:
            return self
        return derive_params(self.p.as_fraction(), self.l.as_fraction())

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "k": str(self.k),
            "l": str(self.l),
            "d": str(self.d),
            "t": str(self.t),
            "mu": [str(m) for m in self.mu],
            "theta_over_pi": [self.theta.numerator, self.theta.denominator],
            "phi_over_pi": [self.phi.numerator, self.phi.denominator],
            "collapse_case": self.collapse_case.value,
            "symmetric": self.symmetric,
            "in_table": self.in_table,
        }


@dataclass(frozen=True)
class TableRow:
    """One printed row of the lattice table, kept verbatim as strings."""

    group: int
    p: str
    k: str
    l: str
    d: str
    t: str
    mu1: str
    mu234: str
    mu5: str


_RAW_TABLE = """
1 3 4 -12 -2 1/3 7/12 1/6 11/12
1 3 5 -30 -2 7/30 19/30 1/6 13/15
1 3 6 inf -2 1/6 2/3 1/6 5/6
1 4 3 -12 -4 5/12 5/12 1/4 5/6
1 4 4 inf -4 1/4 1/2 1/4 3/4
1 5 2 -5 -10 7/10 1/5 3/10 9/10
1 5 5/2 -10 -10 1/2 3/10 3/10 4/5
1 5 3 -30 -10 11/30 11/30 3/10 11/15
1 6 2 -6 inf 2/3 1/6 1/3 5/6
1 6 3 inf inf 1/3 1/3 1/3 2/3
2 3 7 42 -2 5/42 29/42 1/6 17/21
2 3 8 24 -2 1/12 17/24 1/6 19/24
2 3 9 18 -2 1/18 13/18 1/6 7/9
2 3 10 15 -2 1/30 11/15 1/6 23/30
2 3 12 12 -2 0 3/4 1/6 3/4
2 4 5 20 -4 3/20 11/20 1/4 7/10
2 4 6 12 -4 1/12 7/12 1/4 2/3
2 4 8 8 -4 0 5/8 1/4 5/8
2 5 4 20 -10 1/5 9/20 3/10 13/20
2 5 5 10 -10 1/10 1/2 3/10 3/5
2 6 4 12 inf 1/6 5/12 1/3 7/12
2 6 6 6 inf 0 1/2 1/3 1/2
3 7 2 -7 14 9/14 1/7 5/14 11/14
3 8 2 -8 8 5/8 1/8 3/8 3/4
3 9 2 -9 6 11/18 1/9 7/18 13/18
3 10 2 -10 5 3/5 1/10 2/5 7/10
3 12 2 -12 4 7/12 1/12 5/12 2/3
3 18 2 -18 3 5/9 1/18 4/9 11/18
4 7 3 42 14 13/42 13/42 5/14 13/21
4 8 3 24 8 7/24 7/24 3/8 7/12
4 9 3 18 6 5/18 5/18 7/18 5/9
4 10 3 15 5 4/15 4/15 2/5 8/15
4 12 3 12 4 1/4 1/4 5/12 1/2
4 18 3 9 3 2/9 2/9 4/9 4/9
5 7 7/2 14 14 3/14 5/14 5/14 4/7
5 8 4 8 8 1/8 3/8 3/8 1/2
5 9 9/2 6 6 1/18 7/18 7/18 4/9
5 10 5 5 5 0 2/5 2/5 2/5
5 12 4 6 4 1/12 1/3 5/12 5/12
"""

#: The 39 printed rows, in table order.
TABLE: tuple = tuple(
    TableRow(int(g), *rest)
    for g, *rest in (line.split() for line in _RAW_TABLE.strip().splitlines())
)

_TABLE_PAIRS = frozenset((Fraction(r.p), Fraction(r.k)) for r in TABLE)

#: Pairs with theta == phi after possibly exchanging k and l.
SYMMETRIC_PAIRS: tuple = (
    (5, Fraction(5, 2)),
    (6, 3),
    (7, Fraction(7, 2)),
    (8, 4),
    (9, Fraction(9, 2)),
    (10, 5),
    (12, 4),
    (18, 3),
)


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, ExtRational):
        return value.as_fraction()
    if isinstance(value, str):
        return parse_rational(value).as_fraction()
    return Fraction(value)


def _ext(f: Fraction) -> ExtRational:
    return ExtRational(f.numerator, f.denominator)


def ball_quintuple_check(mu: Iterable[RationalLike]) -> bool:
    """True iff the five weights sum to 2 and each lies in (0, 1)."""
    vals = [_frac(m) for m in mu]
    if len(vals) != 5:
        return False
    return sum(vals) == 2 and all(0 < m < 1 for m in vals)


def curvatures(mu: Iterable[RationalLike]) -> tuple:
    """Cone curvatures as fractions of pi, ``alpha_i = 2 mu_i``."""
    return tuple(2 * _frac(m) for m in mu)


def cone_angles(mu: Iterable[RationalLike]) -> tuple:
    """Cone angles as fractions of pi, ``2 - 2 mu_i``."""
    return tuple(2 - a for a in curvatures(mu))


def classify(params: LatticeParams) -> CollapseCase:
    """Collapse case from the signs of ``p - 6`` and ``k - 2p/(p-2)``.

    Equality cases go to the collapsed branch.
    """
    return _classify(params.p.as_fraction(), params.k.as_fraction())


def _classify(p: Fraction, k: Fraction) -> CollapseCase:
    small_k = k <= 2 * p / (p - 2)
    if p <= 6:
        return CollapseCase.COLLAPSE_ALL_FOUR if small_k else CollapseCase.COLLAPSE_Z345
    return CollapseCase.COLLAPSE_THREE_TRIPLES if small_k else CollapseCase.FULL_D


def derive_params(p: RationalLike, k: RationalLike) -> LatticeParams:
    """Derive every exact quantity attached to ``(p, k)``.

    Parameters
    ----------
    p : int, Fraction, str or ExtRational
        Integer at least 3.
    k : int, Fraction, str or ExtRational
        Positive integer or half-integer.

    Returns
    -------
    LatticeParams

    Raises
    ------
    ValueError
        If ``p`` is not an integer at least 3, ``k`` is not a positive
        (half-)integer, or the weights fail the ball condition.
    """
    pf, kf = _frac(p), _frac(k)
    if pf.denominator != 1 or pf < 3:
        raise ValueError(f"p must be an integer >= 3, got {pf}")
    if kf <= 0 or kf.denominator > 2:
        raise ValueError(f"k must be a positive integer or half-integer, got {kf}")

    half = Fraction(1, 2)
    inv_l = half - 1 / pf - 1 / kf
    inv_d = half - 3 / pf
    t = -half + 1 / pf + 2 / kf
    mu1 = half + 1 / pf - 1 / kf
    mu2 = half - 1 / pf
    mu5 = 2 / pf + 1 / kf
    mu = (mu1, mu2, mu2, mu2, mu5)
    if not ball_quintuple_check(mu):
        raise ValueError(f"weights {tuple(str(m) for m in mu)} violate the ball condition")

    l = _ext(inv_l).reciprocal()
    d = _ext(inv_d).reciprocal()
    pe, ke = _ext(pf), _ext(kf)
    symmetric = kf == pf / 2 or (l.is_finite and l == pe / 2)
    return LatticeParams(
        p=pe,
        k=ke,
        l=l,
        d=d,
        t=_ext(t),
        mu=tuple(_ext(m) for m in mu),
        theta=2 / pf,
        phi=1 / kf,
        collapse_case=_classify(pf, kf),
        symmetric=symmetric,
        in_table=(pf, kf) in _TABLE_PAIRS,
    )


def table_params() -> list:
    """``LatticeParams`` for the 39 rows, in table order."""
    return [derive_params(r.p, r.k) for r in TABLE]


def table_row(p: RationalLike, k: RationalLike) -> Optional[TableRow]:
    """The printed row for ``(p, k)``, or ``None`` off the table."""
    key = (_frac(p), _frac(k))
    for r in TABLE:
        if (Fraction(r.p), Fraction(r.k)) == key:
            return r
    return None


def table_mismatches(params: LatticeParams) -> list:
    """Names of the fields where ``params`` differs from its printed row."""
    row = table_row(params.p, params.k)
    if row is None:
        return []
    derived = {
        "l": params.l,
        "d": params.d,
        "t": params.t,
        "mu1": params.mu[0],
        "mu234": params.mu[1],
        "mu5": params.mu[4],
    }
    return [n for n, v in derived.items() if parse_rational(getattr(row, n)) != v]
