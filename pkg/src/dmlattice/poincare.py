"""Side pairings, ridge cycles, facet orbits, Euler characteristic, presentation.

Words are tuples of ``(symbol, exponent)`` letters with the leftmost letter
outermost, so ``(("P", -1), ("J", 1))`` is the map ``P^-1 J`` that applies
``J`` first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .cxgeom import DEFAULT_TOL, GeometryError, Isometry, proj_order, proj_residual
from .moves import GeneratorSet, build_generators, evaluate_word
from .params import ExtRational, LatticeParams
from .polyhedron import (
    GENERATOR_NAMES,
    FacetComplex,
    facet_complex,
    find_interior_witness,
    generic_complex,
    inverse_name,
    membership,
    ridge_key,
    ridge_name,
    vertex_map,
    vertex_representatives,
)

__all__ = [
    "Word",
    "word_text",
    "parse_word",
    "SidePairing",
    "side_pairing_report",
    "CycleStep",
    "RidgeCycle",
    "CYCLE_ROWS",
    "cycle_table",
    "OrbitEntry",
    "ORBITS",
    "orbit_table",
    "computed_orbits",
    "StabiliserCheck",
    "stabiliser_checks",
    "EulerResult",
    "euler_closed_form",
    "euler_orbit_sum",
    "euler_characteristic",
    "Relator",
    "Presentation",
    "presentation",
    "verify_presentation",
    "literal_coset_relator_residual",
]

Word = tuple


def word_text(word: Word) -> str:
    """``"R1^-1*P^-1*R2*P"`` style rendering."""
    if not word:
        return "I"
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in word)


def parse_word(text: str) -> Word:
    """Inverse of :func:`word_text` for flat words."""
    if text.strip() in ("", "I"):
        return ()
    out = []
    for tok in text.split("*"):
        sym, _, exp = tok.strip().partition("^")
        out.append((sym, int(exp) if exp else 1))
    return tuple(out)


def _letter(name: str) -> tuple:
    return (name[:-3], -1) if name.endswith("^-1") else (name, 1)


def _letter_name(letter: tuple) -> str:
    sym, e = letter
    return sym if e == 1 else f"{sym}^-1"


def _identity_residual(T: Isometry) -> float:
    if T.antiholomorphic:
        return math.inf
    return proj_residual(T.matrix, np.eye(3))


def _maps(gens: GeneratorSet, reps: dict) -> dict:
    return {n: vertex_map(gens.by_name(n), reps) for n in GENERATOR_NAMES}


# --------------------------------------------------------------------------
# side pairings


@dataclass(frozen=True)
class SidePairing:
    """``T`` carries the vertices of ``S(T)`` onto those of ``S(T^-1)``."""

    name: str
    bijection: dict
    onto: bool
    witness_excluded: bool

    @property
    def ok(self) -> bool:
        return self.onto and self.witness_excluded


def side_pairing_report(
    params: LatticeParams,
    gens: Optional[GeneratorSet] = None,
    cx: Optional[FacetComplex] = None,
    witness: Optional[np.ndarray] = None,
    seed: int = 0,
) -> list:
    """Vertex bijections ``S(T) -> S(T^-1)`` and exclusion of ``T^-1(witness)``.

    All eight maps are reported, so the pairs ``(T, T^-1)`` appear together.
    """
    gens = gens or build_generators(params)
    cx = cx or facet_complex(params)
    reps = vertex_representatives(params, cx)
    if witness is None:
        witness = find_interior_witness(gens, np.random.default_rng(seed))
    out = []
    for name in GENERATOR_NAMES:
        T = gens.by_name(name)
        vm = vertex_map(T, reps)
        src = cx.sides[name].vertices
        dst = cx.sides[inverse_name(name)].vertices
        bij = {v: vm[v] for v in sorted(src, key=_vkey)}
        onto = None not in bij.values() and set(bij.values()) == set(dst) and len(src) == len(dst)
        excluded = membership(T.inverse()(witness), gens).kind == "exterior"
        out.append(SidePairing(name, bij, onto, excluded))
    return out


def _vkey(label: str) -> int:
    return int(label[1:].split("-")[0])


# --------------------------------------------------------------------------
# ridge cycles


@dataclass(frozen=True)
class CycleStep:
    ridge: str
    letter: str
    image: str


@dataclass
class RidgeCycle:
    """One row of the cycle table, checked against the generators.

    ``status`` is ``"active"`` when ``m`` is a positive integer,
    ``"inactive"`` otherwise and ``"absent"`` when the starting ridge has
    collapsed away.
    """

    row: int
    printed_ridges: tuple
    printed_word: Word
    ell: int
    m: ExtRational
    status: str
    steps: list = field(default_factory=list)
    word: Word = ()
    word_matches: bool = False
    ridges_match: bool = False
    word_residual: float = math.inf
    fix_residual: float = math.inf
    relation_residual: Optional[float] = None

    def ok(self, tol: float = DEFAULT_TOL) -> bool:
        if self.status == "absent":
            return True
        good = self.word_matches and self.ridges_match
        good = good and self.word_residual <= tol and self.fix_residual <= tol
        if self.status == "active":
            good = good and self.relation_residual is not None and self.relation_residual <= tol
        return good


def _rk(text: str) -> frozenset:
    return ridge_key(*text.split(","))


#: (ridges, start ridge, start letter, printed word, ell, m symbol)
CYCLE_ROWS = (
    (("P,J", "P^-1,J^-1"), "P,J", "J", "P^-1*J", 1, "k"),
    (("R1,R1^-1",), "R1,R1^-1", "R1", "R1", 1, "p"),
    (("R2,R2^-1",), "R2,R2^-1", "R2", "R2", 1, "p"),
    (("P,R1", "P,R1^-1", "P^-1,R2", "P^-1,R2^-1"), "P,R1", "P", "R1^-1*P^-1*R2*P", 1, "1"),
    (("J,R1", "J,R1^-1", "J^-1,R2", "J^-1,R2^-1"), "J,R1", "J", "R1^-1*J^-1*R2*J", 1, "1"),
    (("P,R2", "R1,R2^-1", "R1^-1,P^-1"), "R1,R2^-1", "R1", "R2*P^-1*R1", 1, "1"),
    (("J,R2^-1", "R1,J^-1", "R1^-1,R2"), "J,R2^-1", "J", "R2*R1*J", 1, "l"),
    (("J,J^-1",), "J,J^-1", "J", "J", 3, "1"),
    (("P,P^-1",), "P,P^-1", "P", "P", 3, "d"),
)


def _exponent(params: LatticeParams, sym: str) -> ExtRational:
    return {
        "k": params.k,
        "p": params.p,
        "l": params.l,
        "d": params.d,
        "1": ExtRational(1),
    }[sym]


def _walk(cx: FacetComplex, maps: dict, start: frozenset, letter: str, max_len: int = 12):
    """Follow a ridge cycle; returns the steps or ``None`` if it breaks."""
    steps = []
    ridge, x = start, letter
    for _ in range(max_len):
        img = {maps[x][v] for v in cx.ridges[ridge].vertices}
        if None in img:
            return None
        target = [
            k for k, r in cx.ridges.items() if inverse_name(x) in k and set(r.vertices) == img
        ]
        if len(target) != 1:
            return None
        nxt = target[0]
        steps.append(CycleStep(ridge_name(ridge), x, ridge_name(nxt)))
        (other,) = nxt - {inverse_name(x)}
        ridge, x = nxt, other
        if ridge == start and x == letter:
            return steps
    return None


def cycle_table(
    params: LatticeParams,
    gens: Optional[GeneratorSet] = None,
    cx: Optional[FacetComplex] = None,
    tol: float = DEFAULT_TOL,
) -> list:
    """All nine cycle rows, walked on the facet complex and checked numerically."""
    gens = gens or build_generators(params)
    cx = cx or facet_complex(params)
    reps = vertex_representatives(params, cx)
    maps = _maps(gens, reps)
    out = []
    for i, (ridges, start, letter, printed, ell, msym) in enumerate(CYCLE_ROWS, 1):
        m = _exponent(params, msym)
        pw = parse_word(printed)
        cyc = RidgeCycle(i, ridges, pw, ell, m, "active" if m.is_positive_integer else "inactive")
        key = _rk(start)
        if key not in cx.ridges:
            cyc.status = "absent"
            out.append(cyc)
            continue
        steps = _walk(cx, maps, key, letter)
        if steps is None:
            out.append(cyc)
            continue
        cyc.steps = steps
        cyc.word = tuple(_letter(s.letter) for s in reversed(steps))
        cyc.word_matches = cyc.word == pw
        cyc.ridges_match = {_rk_name(s.ridge) for s in steps} == {_rk(r) for r in ridges}
        T = evaluate_word(cyc.word, gens)
        cyc.word_residual = proj_residual(T.matrix, evaluate_word(pw, gens).matrix)
        Tl = T**ell
        cyc.fix_residual = max(
            proj_residual(Tl(reps[v]), reps[v]) for v in cx.ridges[key].vertices
        )
        if cyc.status == "active":
            cyc.relation_residual = _identity_residual(Tl ** int(m))
        out.append(cyc)
    return out


def _rk_name(name: str) -> frozenset:
    return _rk(name[2:-1])


# --------------------------------------------------------------------------
# orbits and stabilisers


@dataclass(frozen=True)
class OrbitEntry:
    """A facet orbit with its stabiliser and the order of the stabiliser."""

    dimension: int
    members: tuple
    stabiliser: str
    order: ExtRational

    @property
    def weight(self) -> ExtRational:
        """``1/order`` with ``1/inf = 0``."""
        return self.order.reciprocal()


def _edges(*pairs):
    return tuple(f"g{i},{j}" for i, j in pairs)


def _ridges(*names):
    return tuple(f"F({n})" for n in names)


#: (dimension, members, stabiliser, order as a product of symbols)
ORBITS = (
    (0, ("z1", "z2"), "<A1,R1>", ("k", "p")),
    (0, ("z3", "z4", "z5"), "<P^3,R1>", ("p", "d")),
    (0, ("z6", "z10", "z13"), "<A1',R1>", ("p", "l")),
    (0, ("z8", "z7", "z9", "z11", "z12", "z14"), "<A1,A1'>", ("k", "l")),
    (1, _edges((1, 3), (2, 4)), "<R1>", ("p",)),
    (1, _edges((1, 6), (2, 10)), "<R1>", ("p",)),
    (1, _edges((3, 6), (5, 13), (4, 10)), "<R1>", ("p",)),
    (1, _edges((2, 8), (1, 9), (1, 12), (2, 14)), "<A1>", ("k",)),
    (1, _edges((7, 11), (9, 12), (8, 14)), "<J*R1>", ("2", "k")),
    (1, _edges((9, 10), (12, 13), (6, 7), (13, 14), (6, 8), (10, 11)), "<A2'>", ("l",)),
    (1, _edges((7, 8), (12, 14), (9, 11)), "<J*R1^-1>", ("2", "l")),
    (1, _edges((4, 5), (3, 5), (3, 4)), "<R2*P>", ("2", "d")),
    (2, _ridges("P,J", "P^-1,J^-1"), "<A1>", ("k",)),
    (2, _ridges("R1,R1^-1"), "<R1>", ("p",)),
    (2, _ridges("R2,R2^-1"), "<R2>", ("p",)),
    (2, _ridges("P,R1", "P,R1^-1", "P^-1,R2", "P^-1,R2^-1"), "1", ()),
    (2, _ridges("J,R1", "J,R1^-1", "J^-1,R2", "J^-1,R2^-1"), "1", ()),
    (2, _ridges("P,R2", "R1,R2^-1", "R1^-1,P^-1"), "1", ()),
    (2, _ridges("J,R2^-1", "R1,J^-1", "R1^-1,R2"), "<A1'>", ("l",)),
    (2, _ridges("J,J^-1"), "<J>", ("3",)),
    (2, _ridges("P,P^-1"), "<P>", ("3", "d")),
    (3, ("S(J)", "S(J^-1)"), "1", ()),
    (3, ("S(R1)", "S(R1^-1)"), "1", ()),
    (3, ("S(R2)", "S(R2^-1)"), "1", ()),
    (3, ("S(P)", "S(P^-1)"), "1", ()),
    (4, ("D",), "1", ()),
)


def _order(params: LatticeParams, symbols: tuple) -> ExtRational:
    out = ExtRational(1)
    for s in symbols:
        out = out * (ExtRational(int(s)) if s.isdigit() else _exponent(params, s))
    return out


def orbit_table(params: LatticeParams) -> list:
    """Facet orbits of the generic polyhedron with their stabiliser orders."""
    return [OrbitEntry(dim, mem, stab, _order(params, sym)) for dim, mem, stab, sym in ORBITS]


def _edge_label(u: str, v: str) -> str:
    i, j = sorted((_vkey(u), _vkey(v)))
    return f"g{i},{j}"


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def classes(self) -> set:
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), set()).add(x)
        return {frozenset(g) for g in groups.values()}


def computed_orbits(params: LatticeParams, gens: Optional[GeneratorSet] = None) -> dict:
    """Orbits of vertices, edges and ridges under the side pairings.

    Computed on the generic complex from the vertex maps, so it is only
    meaningful for rows where all fourteen vertices are distinct.

    Raises
    ------
    GeometryError
        If a side pairing does not carry a facet onto a facet.
    """
    gens = gens or build_generators(params)
    cx = generic_complex()
    reps = vertex_representatives(params, cx)
    maps = _maps(gens, reps)
    edge_sets = {frozenset(e.endpoints): e for e in cx.edges}
    uf_v = _UnionFind(cx.vertices)
    uf_e = _UnionFind([_edge_label(*e.endpoints) for e in cx.edges])
    uf_r = _UnionFind([r.name for r in cx.ridges.values()])
    for name in GENERATOR_NAMES:
        vm, inv = maps[name], inverse_name(name)
        for v in cx.sides[name].vertices:
            if vm[v] not in cx.sides[inv].vertices:
                raise GeometryError(f"{name} does not map {v} into S({inv})")
            uf_v.union(v, vm[v])
        for e in cx.edges:
            if not any(name in k for k in e.ridges):
                continue
            img = frozenset(vm[u] for u in e.endpoints)
            if img not in edge_sets:
                raise GeometryError(f"{name} does not map edge {e.endpoints} to an edge")
            uf_e.union(_edge_label(*e.endpoints), _edge_label(*edge_sets[img].endpoints))
        for key, r in cx.ridges.items():
            if name not in key:
                continue
            img = {vm[v] for v in r.vertices}
            hits = [
                q for k, q in cx.ridges.items() if inv in k and set(q.vertices) == img
            ]
            if len(hits) != 1:
                raise GeometryError(f"{name} does not map {r.name} to a ridge")
            uf_r.union(r.name, hits[0].name)
    return {0: uf_v.classes(), 1: uf_e.classes(), 2: uf_r.classes()}


@dataclass(frozen=True)
class StabiliserCheck:
    """A named word: its projective order and whether it fixes its facet."""

    word: str
    facets: tuple
    expected: ExtRational
    order: Optional[int]
    preserves: Optional[bool]
    status: str


#: (word, vertex sets of the facets in its orbit, expected order)
_STAB_WORDS = (
    ("A1", (("z1", "z9", "z12"), ("z2", "z8", "z14")), ("k",)),
    ("R1", (("z1", "z3", "z6"),), ("p",)),
    ("R2", (("z2", "z4", "z10"),), ("p",)),
    ("J*R1", (("z7", "z11"), ("z9", "z12"), ("z8", "z14")), ("2", "k")),
    ("J*R1^-1", (("z7", "z8"), ("z12", "z14"), ("z9", "z11")), ("2", "l")),
    ("R2*P", (("z4", "z5"), ("z3", "z5"), ("z3", "z4")), ("2", "d")),
    ("J", (("z7", "z8", "z9", "z11", "z12", "z14"),), ("3",)),
    ("P", (("z3", "z4", "z5"),), ("3", "d")),
    ("P^3", (("z3",), ("z4",), ("z5",)), ("d",)),
)


def stabiliser_checks(
    params: LatticeParams, gens: Optional[GeneratorSet] = None, tol: float = DEFAULT_TOL
) -> list:
    """Orders of the stabiliser words that the orbit table names.

    A check passes when the projective order equals the expected one and the
    word preserves some facet of its orbit (stabilisers along an orbit are
    conjugate).  It is ``"informational"`` when the expected order is not a
    positive integer or ``k`` is a half-integer, where the table's orders
    are only formal.  Facet preservation is only tested when the fourteen
    vertices are distinct.
    """
    gens = gens or build_generators(params)
    generic = params.collapse_case.value == "FullD"
    reps = vertex_representatives(params, generic_complex()) if generic else None
    out = []
    for text, facets, sym in _STAB_WORDS:
        T = evaluate_word(parse_word(text), gens)
        expected = _order(params, sym)
        order = proj_order(T, 200, tol)
        preserves = None
        if generic:
            vm = vertex_map(T, reps)
            preserves = any({vm[v] for v in f} == set(f) for f in facets)
        if expected.is_positive_integer and params.k.is_integer:
            ok = order == int(expected) and preserves is not False
            status = "pass" if ok else "fail"
        else:
            status = "informational"
        out.append(StabiliserCheck(text, facets, expected, order, preserves, status))
    return out


# --------------------------------------------------------------------------
# Euler characteristic


@dataclass(frozen=True)
class EulerResult:
    orbit_sum: ExtRational
    closed_form: ExtRational
    symmetric_form: Optional[ExtRational]

    @property
    def agree(self) -> bool:
        ok = self.orbit_sum == self.closed_form
        if self.symmetric_form is not None:
            ok = ok and self.orbit_sum == self.symmetric_form
        return ok


def euler_orbit_sum(params: LatticeParams) -> ExtRational:
    """Alternating sum of ``1/order`` over all facet orbits, ``1/inf = 0``."""
    total = ExtRational(0)
    for entry in orbit_table(params):
        w = entry.weight
        total = total + w if entry.dimension % 2 == 0 else total - w
    return total


def euler_closed_form(params: LatticeParams) -> ExtRational:
    """``(p^2 + 12p - 60) / (16 p^2) - t^2 / 4``."""
    p, t = params.p.as_fraction(), params.t.as_fraction()
    return ExtRational.coerce((p * p + 12 * p - 60) / (16 * p * p) - t * t / 4)


def euler_characteristic(params: LatticeParams) -> EulerResult:
    """Both evaluations, plus ``2(p-5)/p^2`` for symmetric rows."""
    sym = None
    if params.symmetric:
        p = params.p.as_fraction()
        sym = ExtRational.coerce(Fraction(2) * (p - 5) / (p * p))
    return EulerResult(euler_orbit_sum(params), euler_closed_form(params), sym)


# --------------------------------------------------------------------------
# presentation


def _pow_text(word: Word, n: Optional[int], label: str = "") -> str:
    b = word_text(word)
    if n == 1:
        return b
    if len(word) > 1 or word[0][1] != 1:
        b = f"({b})"
    return f"{b}^{n if n is not None else label}"


def _pow_word(word: Word, n: int) -> Word:
    if n < 0:
        word, n = tuple((s, -e) for s, e in reversed(word)), -n
    return word * n


@dataclass(frozen=True)
class Relator:
    """``base^power = I``, or ``base^power = rhs^rhs_power`` when ``rhs`` is set.

    ``exponent`` keeps the symbolic name of the power (``"3d"``, ``"l"``)
    and ``active`` is false when that power is not a positive integer.
    """

    base: Word
    power: Optional[int] = 1
    rhs: Optional[Word] = None
    rhs_power: int = 1
    exponent: str = ""
    active: bool = True

    @property
    def text(self) -> str:
        lhs = _pow_text(self.base, self.power, self.exponent)
        if self.rhs is None:
            return lhs
        return f"{lhs} = {_pow_text(self.rhs, self.rhs_power)}"

    @property
    def gap(self) -> str:
        """The relator as one word, ``lhs * rhs^-1`` for equations."""
        if self.rhs is None:
            return self.text
        return f"{_pow_text(self.base, self.power)}*{_pow_text(self.rhs, -self.rhs_power)}"

    def word(self) -> Word:
        """Flat word equal to the identity in the group."""
        w = _pow_word(self.base, self.power)
        if self.rhs is not None:
            w += _pow_word(self.rhs, -self.rhs_power)
        return w

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "gap": self.gap,
            "exponent": self.exponent or None,
            "power": self.power,
            "active": self.active,
        }


@dataclass(frozen=True)
class Presentation:
    """Generators, abbreviations (``name := word``) and relators."""

    kind: str
    generators: tuple
    relators: tuple
    abbreviations: tuple = ()

    @property
    def active_relators(self) -> tuple:
        return tuple(r for r in self.relators if r.active)

    def gap_text(self) -> str:
        gens = ", ".join(f'"{g}"' for g in self.generators)
        lines = [f"F := FreeGroup({gens});;"]
        lines += [f"{g} := F.{i};;" for i, g in enumerate(self.generators, 1)]
        lines += [f"{n} := {word_text(w)};;" for n, w in self.abbreviations]
        rels = ", ".join(r.gap for r in self.active_relators)
        lines += [f"rels := [ {rels} ];;", "G := F / rels;;"]
        return "\n".join(lines)

    def text(self) -> str:
        body = ", ".join(r.text for r in self.active_relators)
        out = f"< {', '.join(self.generators)} | {body} >"
        if self.abbreviations:
            out += " where " + ", ".join(f"{n} := {word_text(w)}" for n, w in self.abbreviations)
        return out

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "generators": list(self.generators),
            "abbreviations": {n: word_text(w) for n, w in self.abbreviations},
            "relators": [r.to_json() for r in self.relators],
            "gap": self.gap_text(),
        }


def _power(base: Word, value: ExtRational, factor: int, label: str) -> Relator:
    n = value * factor
    active = n.is_positive_integer
    return Relator(base, int(n) if active else None, exponent=label, active=active)


def presentation(params: LatticeParams, coset: Optional[bool] = None) -> Presentation:
    """The presentation for ``params``.

    ``coset`` defaults to ``params.symmetric``.  In the coset form ``S1``
    is an abbreviation for ``K^2*R1*K^-2``.
    """
    coset = params.symmetric if coset is None else coset
    W = parse_word
    if coset:
        if not params.symmetric:
            raise ValueError("the coset presentation needs a symmetric lattice")
        rels = (
            _power(W("R1"), params.p, 1, "p"),
            Relator(W("K"), 4, exponent="4"),
            _power(W("K^-1*R1"), params.symmetric_frame.d, 3, "3d"),
            Relator(W("K*R1"), 3, exponent="3"),
            Relator(W("K^-2*S1^-1*K^2*R1")),
            Relator(W("K^2*R1"), 2, W("R1*K^2"), 2),
        )
        return Presentation("coset", ("K", "R1"), rels, (("S1", W("K^2*R1*K^-2")),))
    rels = (
        Relator(W("J"), 3, exponent="3"),
        _power(W("P"), params.d, 3, "3d"),
        _power(W("R1"), params.p, 1, "p"),
        _power(W("R2"), params.p, 1, "p"),
        _power(W("P^-1*J"), params.k, 1, "k"),
        _power(W("R2*R1*J"), params.l, 1, "l"),
        Relator(W("R2"), 1, W("P*R1*P^-1")),
        Relator(W("R2"), 1, W("J*R1*J^-1")),
        Relator(W("P"), 1, W("R1*R2")),
    )
    return Presentation("generic", ("J", "P", "R1", "R2"), rels)


def _coset_gens(gens: GeneratorSet) -> dict:
    sm = gens.sym_moves
    return {"K": gens.k_map, "R1": sm["R1"], "S1": gens.s1}


def _eval(word: Word, table: dict) -> Isometry:
    out = Isometry.identity()
    for sym, e in word:
        out = out @ (table[sym] ** e)
    return out


def verify_presentation(
    pres: Presentation, gens: GeneratorSet, tol: float = DEFAULT_TOL
) -> list:
    """``(relator text, residual, ok)`` for every active relator."""
    if pres.kind == "coset":
        table = _coset_gens(gens)
    else:
        table = {n: gens.by_name(n) for n in ("J", "P", "R1", "R2")}
    out = []
    for r in pres.active_relators:
        if r.rhs is not None:
            lhs = _eval(r.base, table) ** r.power
            res = proj_residual(lhs.matrix, (_eval(r.rhs, table) ** r.rhs_power).matrix)
        else:
            res = _identity_residual(_eval(r.base, table) ** r.power)
        out.append((r.text, res, res <= tol))
    return out


def literal_coset_relator_residual(gens: GeneratorSet) -> float:
    """Distance from the identity of ``K^2 S1^-1 R1`` taken literally."""
    return _identity_residual(_eval(parse_word("K^2*S1^-1*R1"), _coset_gens(gens)))
