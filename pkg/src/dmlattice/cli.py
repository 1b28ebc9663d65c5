"""Command line interface: ``dmlattice {list,inspect,verify,export,octagon,presentation}``.

Exit codes are 0 on success, 1 when a verification check fails and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import conemetric as cm
from .cxgeom import DEFAULT_TOL
from .params import TABLE, LatticeParams, derive_params, parse_rational, table_params
from .poincare import euler_characteristic, presentation
from .polyhedron import facet_complex
from .verify import DEFAULT_SEED, export_data, report_from_json, verify_lattice

__all__ = ["main", "build_parser", "UsageError"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad command line input; reported with exit code 2."""


# --------------------------------------------------------------------------
# argument handling


def _add_common(sp, lattice=True):
    if lattice:
        sp.add_argument("--p", help="integer p >= 3")
        sp.add_argument("--k", help="positive integer or half-integer, e.g. 5 or 7/2")
        sp.add_argument("--k-num", type=int, help="numerator of k")
        sp.add_argument("--k-den", type=int, default=1, help="denominator of k (default 1)")
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL, help="tolerance (default 1e-9)")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                    help=f"random seed (default {DEFAULT_SEED})")
    sp.add_argument("--out", help="write output to this file")
    sp.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmlattice",
        description="Verify the Deligne-Mostow lattices with three-fold symmetry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("list", help="print the table of lattices")
    _add_common(sp, lattice=False)

    sp = sub.add_parser("inspect", help="derived data for one (p, k)")
    _add_common(sp)

    sp = sub.add_parser("verify", help="run every check")
    _add_common(sp)
    sp.add_argument("--all", action="store_true", help="verify all table rows")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for --all")
    sp.add_argument("--report", help="re-verify an exported JSON file and compare statuses")
    sp.add_argument("--verbose", action="store_true", help="print every check")

    sp = sub.add_parser("export", help="write the full JSON report for one lattice")
    _add_common(sp)

    sp = sub.add_parser("octagon", help="octagon vertices and areas at a point")
    _add_common(sp)
    sp.add_argument("--z1", default="0", help="complex z1, e.g. 0.1-0.2j")
    sp.add_argument("--z2", default="0", help="complex z2")

    sp = sub.add_parser("presentation", help="print the group presentation")
    _add_common(sp)
    sp.add_argument("--gap", action="store_true", help="emit a GAP script")
    return parser


def _lattice(args) -> LatticeParams:
    if args.p is None:
        raise UsageError("--p is required")
    if args.k is not None and args.k_num is not None:
        raise UsageError("give either --k or --k-num/--k-den")
    if args.k is not None:
        k = args.k
    elif args.k_num is not None:
        if args.k_den == 0:
            raise UsageError("--k-den must be nonzero")
        k = Fraction(args.k_num, args.k_den)
    else:
        raise UsageError("--k (or --k-num) is required")
    try:
        p = parse_rational(args.p)
        k = parse_rational(k) if isinstance(k, str) else k
        if not p.is_finite or (hasattr(k, "is_finite") and not k.is_finite):
            raise ValueError("p and k must be finite")
        return derive_params(p, k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise UsageError(f"not a complex number: {text!r}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _json(data) -> str:
    return json.dumps(data, indent=2)


# --------------------------------------------------------------------------
# commands

_LIST_COLS = ("p", "k", "l", "d", "t", "mu1", "mu2..4", "mu5")


def _row(params: LatticeParams) -> dict:
    mu = params.mu
    vals = (params.p, params.k, params.l, params.d, params.t, mu[0], mu[1], mu[4])
    return dict(zip(_LIST_COLS, (str(v) for v in vals)))


def cmd_list(args) -> int:
    rows = [_row(p) for p in table_params()]
    if args.format == "json":
        _emit(args, _json(rows))
        return EXIT_OK
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in _LIST_COLS}
    lines = ["  ".join(c.rjust(widths[c]) for c in _LIST_COLS)]
    lines += ["  ".join(r[c].rjust(widths[c]) for c in _LIST_COLS) for r in rows]
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_inspect(args) -> int:
    params = _lattice(args)
    cx = facet_complex(params)
    eu = euler_characteristic(params)
    data = {
        "params": params.to_json(),
        "facet_counts": dict(zip(("vertices", "edges", "ridges", "sides"), cx.counts)),
        "vertices": list(cx.vertices),
        "euler": {"orbit_sum": str(eu.orbit_sum), "closed_form": str(eu.closed_form)},
        "presentation": presentation(params).text(),
    }
    if args.format == "json":
        _emit(args, _json(data))
        return EXIT_OK
    j = data["params"]
    lines = [f"lattice {params.label}"]
    if not params.in_table:
        lines.append("warning: (p, k) is not a row of the lattice table")
    lines += [
        f"  l = {j['l']}, d = {j['d']}, t = {j['t']}",
        f"  mu = ({', '.join(j['mu'])})",
        f"  theta = {params.theta} pi, phi = {params.phi} pi",
        f"  collapse case: {j['collapse_case']}",
        f"  symmetric: {j['symmetric']}",
        "  facets (V, E, R, S) = ({vertices}, {edges}, {ridges}, {sides})".format(**data["facet_counts"]),
        f"  vertices: {' '.join(cx.vertices)}",
        f"  Euler characteristic: {eu.orbit_sum} (closed form {eu.closed_form})",
        f"  presentation: {data['presentation']}",
    ]
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _verify_one(task):
    p, k, tol, seed = task
    return verify_lattice(derive_params(p, k), tol, seed).to_json()


def _summary(rep: dict, verbose: bool) -> list:
    n = len(rep["checks"])
    n_fail = sum(c["status"] == "fail" for c in rep["checks"])
    n_info = sum(c["status"] == "informational" for c in rep["checks"])
    p, k = rep["lattice"]["p"], rep["lattice"]["k"]
    head = f"({p},{k}) {rep['status'].upper()}  {n - n_fail - n_info} pass, {n_fail} fail, {n_info} informational"
    out = [head]
    for c in rep["checks"]:
        if verbose or c["status"] == "fail":
            res = "" if c["residual"] is None else f"  residual {c['residual']}"
            det = f"  [{c['detail']}]" if c["detail"] else ""
            out.append(f"    {c['status']:<13} {c['name']}{res}{det}")
    return out


def cmd_verify(args) -> int:
    if args.report:
        return _reverify(args)
    if args.all:
        if args.p is not None or args.k is not None or args.k_num is not None:
            raise UsageError("--all cannot be combined with --p/--k")
        tasks = [(r.p, r.k, args.tol, args.seed) for r in TABLE]
        start = time.perf_counter()
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                reports = list(pool.map(_verify_one, tasks))
        else:
            reports = [_verify_one(t) for t in tasks]
        elapsed = time.perf_counter() - start
    else:
        params = _lattice(args)
        reports = [verify_lattice(params, args.tol, args.seed).to_json()]
        elapsed = None
    ok = all(r["status"] == "pass" for r in reports)
    payload = reports if args.all else reports[0]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_json(payload) + "\n")
    if args.format == "json":
        if not args.out:
            print(_json(payload))
    else:
        lines = [ln for r in reports for ln in _summary(r, args.verbose)]
        if args.all:
            n_ok = sum(r["status"] == "pass" for r in reports)
            lines.append(f"{n_ok}/{len(reports)} lattices pass in {elapsed:.1f} s")
        print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _reverify(args) -> int:
    try:
        with open(args.report, encoding="utf-8") as fh:
            data = json.load(fh)
        old = report_from_json(data["checks"] if "params" in data else data)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(f"cannot read report {args.report}: {exc}") from exc
    params = derive_params(old.p, old.k)
    new = verify_lattice(params, old.tol, old.seed)
    a, b = old.statuses(), new.statuses()
    changed = sorted(n for n in a.keys() | b.keys() if a.get(n) != b.get(n))
    print(f"({old.p},{old.k}) re-verified: {len(b)} checks, {len(changed)} status changes")
    for n in changed:
        print(f"    {n}: {a.get(n)} -> {b.get(n)}")
    return EXIT_OK if new.passed and not changed else EXIT_FAIL


def cmd_export(args) -> int:
    params = _lattice(args)
    rep = verify_lattice(params, args.tol, args.seed)
    _emit(args, _json(export_data(params, rep, args.tol, args.seed)))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_octagon(args) -> int:
    params = _lattice(args)
    z = np.array([_complex(args.z1), _complex(args.z2), 1], dtype=complex)
    th, ph = params.theta_rad, params.phi_rad
    V = cm.octagon_vertices(th, ph, z)
    shoe = float(cm.shoelace(V))
    herm = float(cm.hermitian_area(th, ph, z))
    positive = herm > 0
    data = {
        "point": [[c.real, c.imag] for c in z],
        "vertices": {n: [complex(v).real, complex(v).imag] for n, v in zip(cm.VERTEX_ORDER, V)},
        "shoelace_area": shoe,
        "hermitian_area": herm,
        "difference": shoe - herm,
        "positive": positive,
    }
    if args.format == "json":
        _emit(args, _json(data))
    else:
        lines = [f"octagon for {params.label} at z = ({args.z1}, {args.z2}, 1)"]
        if not positive:
            lines.append("warning: the point is not positive for the Hermitian form")
        lines += [f"  {n:>4}  {v.real: .12f} {v.imag:+.12f}i" for n, v in zip(cm.VERTEX_ORDER, V)]
        lines += [
            f"  shoelace area   {shoe:.15g}",
            f"  Hermitian area  {herm:.15g}",
            f"  difference      {shoe - herm:.3e}",
        ]
        _emit(args, "\n".join(lines))
        return EXIT_OK
    if not positive:
        print("warning: the point is not positive for the Hermitian form", file=sys.stderr)
    return EXIT_OK


def cmd_presentation(args) -> int:
    params = _lattice(args)
    pres = presentation(params)
    if args.format == "json":
        _emit(args, _json(pres.to_json()))
    elif args.gap:
        _emit(args, pres.gap_text())
    else:
        _emit(args, pres.text())
    return EXIT_OK


_COMMANDS = {
    "list": cmd_list,
    "inspect": cmd_inspect,
    "verify": cmd_verify,
    "export": cmd_export,
    "octagon": cmd_octagon,
    "presentation": cmd_presentation,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dmlattice {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
