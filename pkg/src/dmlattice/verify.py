"""Run every check for one lattice and collect the results in a report."""

from __future__ import annotations

import datetime as _dt
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import conemetric as cm
from . import poincare as pc
from . import polyhedron as ph
from .cxgeom import DEFAULT_TOL, GeometryError, norm2, proj_order, proj_residual
from .moves import build_generators, verify_relations
from .params import (
    LatticeParams,
    ball_quintuple_check,
    cone_angles,
    derive_params,
    table_mismatches,
)

__all__ = [
    "DEFAULT_SEED",
    "CheckRecord",
    "VerificationReport",
    "verify_lattice",
    "export_data",
    "report_from_json",
    "EXPECTED_COUNTS",
    "IOTA_ACTION",
]

#: Seed used when none is given.
DEFAULT_SEED = 20240601

#: Facet counts (V, E, R, S) per collapse case.
EXPECTED_COUNTS = {
    "FullD": (14, 26, 20, 8),
    "CollapseZ345": (12, 23, 19, 8),
    "CollapseThreeTriples": (8, 17, 17, 8),
    "CollapseAllFour": (6, 14, 16, 8),
}

#: Action of the antiholomorphic symmetry on the vertices (an involution).
IOTA_ACTION = {
    "z1": "z2", "z3": "z4", "z5": "z5", "z6": "z10",
    "z7": "z11", "z8": "z9", "z12": "z14", "z13": "z13",
}
IOTA_ACTION.update({v: k for k, v in list(IOTA_ACTION.items())})

_RIDGE_SIZES = {"S": 3, "M": 5, "G": 6}


@dataclass(frozen=True)
class CheckRecord:
    """One check: ``status`` is ``pass``, ``fail`` or ``informational``."""

    name: str
    status: str
    residual: Optional[float]
    tol: Optional[float]
    detail: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        if d["residual"] is not None and not math.isfinite(d["residual"]):
            d["residual"] = "inf"
        return d


@dataclass
class VerificationReport:
    """All check records for one lattice together with its derived data."""

    p: str
    k: str
    seed: int
    tol: float
    checks: list = field(default_factory=list)
    presentation: str = ""
    facet_counts: tuple = ()
    euler: dict = field(default_factory=dict)
    timestamp: str = ""

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    def statuses(self) -> dict:
        return {c.name: c.status for c in self.checks}

    def add(self, name, ok=None, residual=None, tol=None, detail="", informational=False):
        """Record a check; ``ok`` defaults to ``residual <= tol``."""
        if residual is not None:
            residual = float(residual)
        if informational:
            status = "informational"
        else:
            if ok is None:
                ok = residual is not None and residual <= tol
            status = "pass" if ok else "fail"
        self.checks.append(CheckRecord(name, status, residual, tol, detail))

    def to_json(self) -> dict:
        return {
            "lattice": {"p": self.p, "k": self.k},
            "status": "pass" if self.passed else "fail",
            "seed": self.seed,
            "tol": self.tol,
            "timestamp": self.timestamp,
            "facet_counts": list(self.facet_counts),
            "euler": self.euler,
            "presentation": self.presentation,
            "checks": [c.to_json() for c in self.checks],
        }


def _residual(x) -> Optional[float]:
    if x == "inf":
        return math.inf
    return x


def report_from_json(data: dict) -> VerificationReport:
    """Rebuild a report from :meth:`VerificationReport.to_json` output."""
    checks = [
        CheckRecord(c["name"], c["status"], _residual(c["residual"]), c["tol"], c.get("detail", ""))
        for c in data["checks"]
    ]
    return VerificationReport(
        p=data["lattice"]["p"],
        k=data["lattice"]["k"],
        seed=data["seed"],
        tol=data["tol"],
        checks=checks,
        presentation=data.get("presentation", ""),
        facet_counts=tuple(data.get("facet_counts", ())),
        euler=data.get("euler", {}),
        timestamp=data.get("timestamp", ""),
    )


# --------------------------------------------------------------------------
# the individual groups of checks


def _check_params(rep, params):
    bad = table_mismatches(params)
    if params.in_table:
        rep.add("table row", not bad, detail=", ".join(bad))
    rep.add("ball quintuple", ball_quintuple_check(params.mu))
    th, phi = params.theta, params.phi
    want = (1 - th + 2 * phi, 1 + th, 1 + th, 1 + th, 2 - 2 * th - 2 * phi)
    rep.add("cone angles", cone_angles(params.mu) == want)


def _check_generators(rep, gens, tol):
    params = gens.params
    for name, (G, form) in gens.holomorphic().items():
        rep.add(f"unitary {name}", residual=G.unitarity_residual(form), tol=1e-10)

    def order(name, T, expected, informational=False):
        got = proj_order(T, 200, tol)
        rep.add(f"order {name} = {expected}", got == expected, detail=f"found {got}",
                informational=informational)

    p = int(params.p)
    order("J", gens.j, 3)
    order("R1", gens.r1, p)
    order("R2", gens.r2, p)
    if params.k.is_integer:
        order("P^-1*J", gens.p_inv @ gens.j, int(params.k))
    if gens.s1 is not None and not params.k.is_integer:
        order("S1", gens.s1, int(2 * params.k))
    if params.d.is_positive_integer:
        order("P", gens.p, 3 * int(params.d))
    if params.l.is_positive_integer:
        order("R2*R1*J", gens.r2 @ gens.r1 @ gens.j, int(params.l))
    if gens.k_map is not None:
        order("K", gens.k_map, 4)
        th = gens.sym_params.theta_rad
        M = np.exp(-1j * th) * gens.k_map.unitary
        rep.add("det(e^{-i theta} K) = 1", residual=abs(np.linalg.det(M) - 1), tol=1e-10)
        rep.add("trace(e^{-i theta} K) = 1", residual=abs(np.trace(M) - 1), tol=1e-10)
    for c in verify_relations(params, tol, gens).checks:
        rep.add(f"relation {c.name}", residual=c.residual, tol=c.tol,
                informational=c.status == "informational")


def _distinct_vertices(cx):
    return [v for v in cx.vertices if v in ph.VERTEX_LABELS]


def _check_vertices(rep, gens, cx, tol):
    params = gens.params
    table = ph.vertex_table(params, gens)
    lines = {ln.label: ln for ln in ph.line_table(params)}
    labels = _distinct_vertices(cx)
    worst_line = worst_w = 0.0
    nonpos = []
    for v in labels:
        e = table[v]
        for ln in e.lines:
            worst_line = max(worst_line, lines[ln].z_residual(e.z_rep), lines[ln].w_residual(e.w_rep))
        worst_w = max(worst_w, proj_residual(gens.p_inv(e.z_rep), e.w_rep))
        if norm2(e.z_rep, gens.form) <= 0:
            nonpos.append(v)
    rep.add("vertex line equations", residual=worst_line, tol=tol)
    rep.add("vertex w-rep ~ P^-1 z-rep", residual=worst_w, tol=tol)
    rep.add("vertices positive", not nonpos, detail=", ".join(nonpos))
    bad = [v for v in labels if not ph.coalescence_residual_ok(params, v)]
    rep.add("octagon coalescence at vertices", not bad, detail=", ".join(bad))

    worst_lz = 0.0
    for ln in lines.values():
        worst_lz = max(worst_lz, proj_residual(ln.w_eq @ gens.p_inv.unitary, ln.z_eq))
    rep.add("line z/w equations agree", residual=worst_lz, tol=tol)

    reps = ph.vertex_representatives(params, cx)
    vm = ph.vertex_map(gens.iota, reps)
    want = {cx.relabel[v]: cx.relabel[IOTA_ACTION[v]] for v in ph.VERTEX_LABELS}
    rep.add("iota permutes the vertices", vm == want)
    worst = max(proj_residual(gens.iota(gens.iota(z)), z) for z in reps.values())
    rep.add("iota is an involution on vertices", residual=worst, tol=tol)


def _check_bisectors(rep, gens, cx, tol):
    params = gens.params
    zt = {e.label: e.z_rep for e in ph.vertex_table(params, gens)}
    labels = set(_distinct_vertices(cx))
    worst, n = 0.0, 0
    stray = []
    for name, b in ph.BISECTORS.items():
        for v in ph.VERTEX_LABELS:
            if v not in labels:
                continue
            val = abs(float(ph.bisector_value(name, zt[v], gens)))
            if v in b.vertices:
                worst = max(worst, val)
                n += 1
            elif val <= tol:
                stray.append(f"{v} on B({name})")
    rep.add(f"bisector incidences ({n})", residual=worst, tol=tol)
    if params.collapse_case.value == "FullD":
        rep.add("bisector incidences are strict", not stray, detail="; ".join(stray))


def _check_complex(rep, gens, cx, tol):
    params = gens.params
    case = params.collapse_case.value
    rep.add("facet counts", cx.counts == EXPECTED_COUNTS[case], detail=str(cx.counts))
    rep.add("V - E + R - S = 0", cx.euler_count == 0)
    rep.add("each ridge in two sides",
            all(len(cx.sides_of_ridge(k)) == 2 for k in cx.ridges))
    g = ph.generic_complex()
    rep.add("generic edge-ridge incidences = 88", g.edge_ridge_incidences == 88)
    rep.add("ridge vertex counts by type",
            all(len(r.vertices) == _RIDGE_SIZES[r.kind] for r in g.ridges.values()))
    rep.add("edge endpoints lie on their ridges",
            all(set(e.endpoints) <= set(cx.ridges[k].vertices) for e in cx.edges for k in e.ridges))
    # numerically: distinct endpoints satisfy both conditions of each ridge
    zt = {e.label: e.z_rep for e in ph.vertex_table(params, gens)}
    worst = 0.0
    for e in cx.edges:
        for k in e.ridges:
            for v in e.endpoints:
                if v in zt:
                    worst = max(worst, max(abs(float(ph.bisector_value(n, zt[v], gens))) for n in k))
    rep.add("edge endpoints satisfy ridge conditions", residual=worst, tol=tol)


def _check_octagon(rep, gens, rng, n_area, n_moves):
    params = gens.params
    th, phi = params.theta_rad, params.phi_rad
    Z = ph.sample_positive_points(gens, n_area, rng)
    Z = Z * np.exp(2j * np.pi * rng.random(len(Z)))[:, None]
    herm = cm.hermitian_area(th, phi, Z)
    shoe = cm.shoelace(cm.octagon_vertices(th, phi, Z))
    rep.add(f"octagon area = Hermitian area ({len(Z)} points)",
            residual=np.max(np.abs(shoe - herm) / np.abs(herm)), tol=1e-8)
    moves = ["R1", "R2"] + (["S1"] if abs(th - phi) < 1e-12 else [])
    for m in moves:
        worst = 0.0
        for z in Z[:n_moves]:
            cfg = cm.OctagonConfig(z[0], z[1], z[2], th, phi)
            worst = max(worst, cm.move_vertex_residual(m, cfg))
        rep.add(f"move {m} vertex equations", residual=worst, tol=1e-8)


def _check_lemmas(rep, gens, rng, n_points, tol):
    Z = ph.sample_positive_points(gens, n_points, rng)
    for name in ph.GENERATOR_NAMES:
        try:
            agree = ph.side_inequality_check(Z, name, gens)
        except GeometryError as exc:
            rep.add(f"sign equivalence B({name})", informational=True, detail=str(exc))
            continue
        rep.add(f"sign equivalence B({name})", bool(np.all(agree)),
                detail=f"{int(np.sum(~agree))} disagreements in {len(Z)}")
    ok = ph.lemma_bounds_check(Z, gens, tol)
    rep.add("coordinate bounds", bool(np.all(ok)), detail=f"{int(np.sum(~ok))} violations")


def _check_giraud(rep, gens, cx, rng):
    for a, b, kind, _ in ph.RIDGES:
        key = ph.ridge_key(a, b)
        if kind != "G" or key not in cx.ridges:
            continue
        name = ph.ridge_name(key)
        try:
            ok, res = ph.giraud_check(key, gens, rng)
        except GeometryError as exc:
            rep.add(f"Giraud {name}", informational=True, detail=str(exc))
            continue
        rep.add(f"Giraud {name}", ok, residual=res, tol=1e-8)


def _check_membership(rep, gens, cx, witness, tol):
    params = gens.params
    rep.add("witness is interior", ph.membership(witness, gens).kind == "interior",
            detail=str([complex(x) for x in witness]))
    zt = {e.label: e.z_rep for e in ph.vertex_table(params, gens)}
    kinds = {}
    for v in _distinct_vertices(cx):
        if norm2(zt[v], gens.form) > 0:
            kinds[v] = ph.membership(zt[v], gens).kind
    off = [v for v, k in kinds.items() if k != "boundary"]
    rep.add("vertices lie on the boundary", not off, detail=", ".join(off))
    for s in pc.side_pairing_report(params, gens, cx, witness):
        rep.add(f"side pairing {s.name}: S({s.name}) -> S({ph.inverse_name(s.name)})", s.onto,
                detail=str(s.bijection))
        rep.add(f"{ph.inverse_name(s.name)}(witness) is exterior", s.witness_excluded)


def _check_xi(rep, gens, rng, n):
    params = gens.params
    if not params.l.is_positive_integer:
        return
    th, phi = params.theta_rad, params.phi_rad
    ub = min(math.sin(phi) / math.sin(th + phi), 1.0)
    T = gens.j @ gens.r2
    psi = 2 * math.pi / int(params.l)
    worst = 0.0
    for _ in range(n):
        u = rng.uniform(0, ub)
        z1 = complex(*rng.normal(scale=0.3, size=2))
        xi1, _ = ph.xi_coords(T(np.array([z1, np.exp(1j * th) * u, 1])), params)
        worst = max(worst, abs(float(np.angle(xi1 * np.exp(1j * psi)))))
    rep.add("xi rotation by -2 pi / l", residual=worst, tol=1e-8)


def _check_cycles(rep, gens, cx, tol):
    for c in pc.cycle_table(gens.params, gens, cx, tol):
        word = pc.word_text(c.printed_word)
        name = f"cycle {c.row} {word} (l={c.ell}, m={c.m})"
        if c.status == "absent":
            rep.add(name, informational=True, detail="ridge collapsed")
            continue
        detail = " -> ".join(f"{s.ridge} [{s.letter}]" for s in c.steps)
        if c.status == "inactive":
            detail += "; relation inactive"
        res = max(c.word_residual, c.fix_residual, c.relation_residual or 0.0)
        rep.add(name, c.ok(tol), residual=res, tol=tol, detail=detail)


def _check_group(rep, gens, tol):
    params = gens.params
    eu = pc.euler_characteristic(params)
    rep.add("Euler orbit sum = closed form", eu.agree,
            detail=f"{eu.orbit_sum} vs {eu.closed_form}")
    pres = pc.presentation(params)
    for text, res, ok in pc.verify_presentation(pres, gens, tol):
        rep.add(f"relator {text}", ok, residual=res, tol=tol)
    if pres.kind == "coset":
        rep.add("literal K^2*S1^-1*R1 (not an identity)",
                residual=pc.literal_coset_relator_residual(gens), informational=True)
    for s in pc.stabiliser_checks(params, gens, tol):
        rep.add(f"stabiliser {s.word} order {s.expected}", s.status == "pass",
                detail=f"order {s.order}, preserves a facet: {s.preserves}",
                informational=s.status == "informational")
    if params.collapse_case.value == "FullD":
        got = pc.computed_orbits(params, gens)
        want = {
            d: {frozenset(e.members) for e in pc.orbit_table(params) if e.dimension == d}
            for d in (0, 1, 2)
        }
        for d, label in ((0, "vertex"), (1, "edge"), (2, "ridge")):
            rep.add(f"{label} orbits match the table", got[d] == want[d])
    return eu, pres


def verify_lattice(
    params: LatticeParams,
    tol: float = DEFAULT_TOL,
    seed: int = DEFAULT_SEED,
    n_points: int = 1000,
    n_moves: int = 100,
    n_xi: int = 100,
) -> VerificationReport:
    """Run the whole suite for ``params``."""
    rng = np.random.default_rng(seed)
    gens = build_generators(params)
    cx = ph.facet_complex(params)
    rep = VerificationReport(str(params.p), str(params.k), seed, tol)
    _check_params(rep, params)
    _check_generators(rep, gens, tol)
    _check_vertices(rep, gens, cx, tol)
    _check_bisectors(rep, gens, cx, tol)
    _check_complex(rep, gens, cx, tol)
    _check_octagon(rep, gens, rng, n_points, n_moves)
    _check_lemmas(rep, gens, rng, n_points, tol)
    _check_giraud(rep, gens, cx, rng)
    witness = ph.find_interior_witness(gens, rng)
    _check_membership(rep, gens, cx, witness, tol)
    _check_xi(rep, gens, rng, n_xi)
    _check_cycles(rep, gens, cx, tol)
    eu, pres = _check_group(rep, gens, tol)
    rep.presentation = pres.text()
    rep.facet_counts = cx.counts
    rep.euler = {
        "orbit_sum": str(eu.orbit_sum),
        "closed_form": str(eu.closed_form),
        "symmetric_form": None if eu.symmetric_form is None else str(eu.symmetric_form),
    }
    rep.timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return rep


# --------------------------------------------------------------------------
# export


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _vec(v) -> list:
    return [_c(x) for x in v]


def export_data(params: LatticeParams, report: Optional[VerificationReport] = None,
                tol: float = DEFAULT_TOL, seed: int = DEFAULT_SEED) -> dict:
    """Everything about one lattice as JSON-ready data."""
    report = report or verify_lattice(params, tol, seed)
    gens = build_generators(params)
    cx = ph.facet_complex(params)
    generators = {
        name: {"matrix": [_vec(row) for row in G.unitary], "antiholomorphic": False}
        for name, (G, _) in gens.holomorphic().items()
    }
    generators["iota"] = {"matrix": [_vec(row) for row in gens.iota.unitary], "antiholomorphic": True}
    vt = ph.vertex_table(params, gens)
    vertices = {
        e.label: {
            "z_rep": _vec(e.z_rep),
            "w_rep": _vec(e.w_rep),
            "lines": list(e.lines),
            "cone_pairs": [list(p) for p in e.cone_pairs],
        }
        for e in vt
    }
    for lab, z in ph.collapsed_representatives(params).items():
        if lab in cx.vertices:
            vertices[lab] = {"z_rep": _vec(z), "w_rep": _vec(gens.p_inv(z) / gens.p_inv(z)[2])}
    lines = [
        {
            "label": ln.label,
            "cone_points": list(ln.cone_points),
            "z_equation": _vec(ln.z_eq),
            "w_equation": _vec(ln.w_eq),
            "polar": _vec(ln.polar),
        }
        for ln in ph.line_table(params)
    ]
    bisectors = [
        {"name": f"B({b.name})", "condition": b.condition,
         "vertices": sorted(b.vertices, key=lambda v: int(v[1:]))}
        for b in ph.BISECTORS.values()
    ]
    cycles = [
        {
            "row": c.row,
            "ridges": [f"F({r})" for r in c.printed_ridges],
            "word": pc.word_text(c.printed_word),
            "ell": c.ell,
            "m": str(c.m),
            "status": c.status,
            "steps": [asdict(s) for s in c.steps],
        }
        for c in pc.cycle_table(params, gens, cx, tol)
    ]
    eu = pc.euler_characteristic(params)
    return {
        "params": params.to_json(),
        "generators": generators,
        "vertices": vertices,
        "lines": lines,
        "bisectors": bisectors,
        "facet_complex": cx.to_json(),
        "cycles": cycles,
        "presentation": pc.presentation(params).to_json(),
        "euler": {"orbit_sum": str(eu.orbit_sum), "closed_form": str(eu.closed_form)},
        "checks": report.to_json(),
    }


def reverify(data: dict) -> tuple:
    """Re-run the checks recorded in exported ``data``.

    Returns the new report and whether every status is unchanged.
    """
    old = report_from_json(data["checks"])
    params = derive_params(data["params"]["p"], data["params"]["k"])
    new = verify_lattice(params, old.tol, old.seed)
    return new, new.statuses() == old.statuses()


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
