"""Command-line front end.

Subcommands: list, solve, convergence, compare, crosscheck.  Every
report embeds its resolved configuration; identical argv produce
byte-identical JSON apart from runtime_seconds.  Exit codes: 0 success,
2 usage error (the message names the failing flag), 1 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cutting_plane import CuttingPlaneParams, solve_cutting_plane
from .instances import (
    FINE_GRID_POINTS,
    REFERENCE_OPTIMA,
    EvaluationGrid,
    SipInstance,
    builtin_example,
    builtin_registry,
    load_instance,
)
from .reports import (
    KNOWN_METHODS,
    REPORT_CSV_HEADER,
    SolveReport,
    render_compare,
    render_convergence,
)
from .sdp import INFEASIBLE, OPTIMAL, UNBOUNDED
from .validation import convergence_study, cross_check, grid_lp_report, grid_lp_value, solve_moment

_DEFAULT_KS = (8, 16, 32)


def default_truncation(n: int) -> int:
    """Default K: twice the variable count, rounded up to a multiple of 4."""
    return ((2 * n + 3) // 4) * 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trigsip",
        description="Solve linear semi-infinite programs over [0, 2pi] by "
                    "trigonometric moment reduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="describe the built-in instances").add_argument(
        "--format", choices=("json", "csv", "text"), default="text")

    def common(p, methods=True):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--example", type=int, choices=(1, 2, 3, 4, 5),
                           help="built-in instance id")
        group.add_argument("--instance-file",
                           help="JSON file with fields n, c, rows")
        p.add_argument("--n", type=int, help="variable count for --example")
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        if methods:
            p.add_argument("--method", choices=KNOWN_METHODS, default="moment_real")

    solve = sub.add_parser("solve", help="solve one instance")
    common(solve)
    solve.add_argument("--K", type=int, help="truncation order")
    solve.add_argument("--N", type=int, help="sample count override")
    solve.add_argument("--grid-density", type=int,
                       help="grid points for the grid_lp method")
    solve.add_argument("--seed", type=int,
                       help="jitter seed for cutting-plane start points")

    conv = sub.add_parser("convergence", help="error vs truncation order")
    common(conv, methods=True)
    conv.add_argument("--K", type=int, action="append",
                      help="truncation order; repeat for several")
    conv.add_argument("--plot", nargs="?", const="", metavar="PATH",
                      help="also render the series to a figure")

    comp = sub.add_parser("compare", help="run every method on one instance")
    common(comp, methods=False)
    comp.add_argument("--K", type=int, help="truncation order for moment methods")
    comp.add_argument("--N", type=int, help="sample count override")
    comp.add_argument("--grid-density", type=int)
    comp.add_argument("--seed", type=int)
    comp.add_argument("--plot", nargs="?", const="", metavar="PATH")

    cross = sub.add_parser("crosscheck",
                           help="moment value vs grid LP of the same table")
    common(cross, methods=True)
    cross.add_argument("--K", type=int)
    cross.add_argument("--grid-density", type=int, default=FINE_GRID_POINTS)

    return parser


def _resolve_instance(parser, args) -> SipInstance:
    if args.instance_file is not None:
        if args.n is not None:
            parser.error("argument --n: only valid with --example")
        try:
            return load_instance(args.instance_file)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
            parser.error(f"argument --instance-file: {exc}")
    try:
        return builtin_example(args.example, args.n)
    except ValueError as exc:
        # bad ids are rejected by argparse choices, so only --n remains
        parser.error(f"argument --n: {exc}")


def _validate_tol(parser, tol: float) -> float:
    if not 1e-12 <= tol <= 1e-2:
        parser.error("argument --tol: must lie in [1e-12, 1e-2]")
    return tol


def _resolve_k(parser, args, instance) -> int:
    if args.K is not None:
        if args.K < 1:
            parser.error("argument --K: must be a positive integer")
        return args.K
    return default_truncation(instance.n)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _plot_path(arg: str, out: str | None, stem: str) -> str:
    if arg:
        return arg
    if out:
        base = out.rsplit(".", 1)[0]
        return base + ".png"
    return stem + ".png"


def _run_solve(parser, args) -> int:
    instance = _resolve_instance(parser, args)
    tol = _validate_tol(parser, args.tol)
    if args.method in ("moment_real", "moment_complex"):
        K = _resolve_k(parser, args, instance)
        if args.N is not None and args.N < 2 * K + 2:
            parser.error(f"argument --N: needs at least 2K+2 = {2 * K + 2} samples")
        report = solve_moment(instance, K, args.N, method=args.method, tol=tol)
    elif args.method == "cutting_plane":
        params_kw = {"initial_grid": EvaluationGrid.uniform(10),
                     "violation_tol": tol, "jitter_seed": args.seed}
        if args.grid_density:
            params_kw["refine_grid_density"] = args.grid_density
        report = solve_cutting_plane(instance, CuttingPlaneParams(**params_kw), tol=tol)
    else:
        density = args.grid_density or FINE_GRID_POINTS
        report = grid_lp_report(instance, density, tol=tol)

    _emit({"json": report.to_json, "csv": report.to_csv,
           "text": report.to_text}[args.format](), args.out)
    return 0 if report.status == OPTIMAL else 1


def _reference_value(instance, args, tol):
    key = (args.example, instance.n) if args.example is not None else None
    if key in REFERENCE_OPTIMA:
        return REFERENCE_OPTIMA[key], "builtin"
    res = grid_lp_value(instance, EvaluationGrid.uniform(FINE_GRID_POINTS), tol=tol)
    return res.value, "grid_lp"


def _run_convergence(parser, args) -> int:
    instance = _resolve_instance(parser, args)
    tol = _validate_tol(parser, args.tol)
    if args.method not in ("moment_real", "moment_complex"):
        parser.error("argument --method: convergence studies need a moment method")
    Ks = sorted(set(args.K)) if args.K else list(_DEFAULT_KS)
    if any(K < 1 for K in Ks):
        parser.error("argument --K: must be positive integers")
    reference, source = _reference_value(instance, args, tol)
    series = convergence_study(instance, Ks, reference, method=args.method, tol=tol)
    series.config["reference_source"] = source

    _emit({"json": series.to_json, "csv": series.to_csv,
           "text": series.to_text}[args.format](), args.out)
    if args.plot is not None:
        render_convergence(series, _plot_path(args.plot, args.out,
                                              f"convergence_{instance.label}"))
    return 0 if any(e.status == OPTIMAL for e in series.entries) else 1


def _run_compare(parser, args) -> int:
    instance = _resolve_instance(parser, args)
    tol = _validate_tol(parser, args.tol)
    K = _resolve_k(parser, args, instance)
    reports = [
        solve_moment(instance, K, args.N, method="moment_real", tol=tol),
        solve_moment(instance, K, args.N, method="moment_complex", tol=tol),
        solve_cutting_plane(
            instance,
            CuttingPlaneParams(initial_grid=EvaluationGrid.uniform(10),
                               violation_tol=tol, jitter_seed=args.seed),
            tol=tol),
        grid_lp_report(instance, args.grid_density or FINE_GRID_POINTS, tol=tol),
    ]
    if args.format == "json":
        text = json.dumps({"instance": instance.label,
                           "reports": [r.to_dict() for r in reports]},
                          indent=2, sort_keys=True)
    elif args.format == "csv":
        lines = [REPORT_CSV_HEADER]
        lines += [r.to_csv().splitlines()[1] for r in reports]
        text = "\n".join(lines)
    else:
        text = "\n".join(r.to_text() for r in reports)
    _emit(text, args.out)
    if args.plot is not None:
        reference, _ = _reference_value(instance, args, tol)
        render_compare(reports, reference,
                       _plot_path(args.plot, args.out, f"compare_{instance.label}"))
    return 0 if any(r.status == OPTIMAL for r in reports) else 1


def _run_crosscheck(parser, args) -> int:
    instance = _resolve_instance(parser, args)
    tol = _validate_tol(parser, args.tol)
    K = _resolve_k(parser, args, instance)
    if args.grid_density < 2:
        parser.error("argument --grid-density: must be at least 2")
    record = cross_check(instance, K, tol=tol, method=args.method,
                         grid_density=args.grid_density)
    if args.format == "json":
        text = record.to_json()
    elif args.format == "csv":
        text = record.to_csv()
    else:
        d = record.to_dict()
        lines = [f"cross-check {record.label} at K={record.K}"]
        for name in ("moment", "truncated_lp", "original_lp"):
            lines.append(f"  {name:>12}: {d[name + '_status']:>12} "
                         f"value={d[name + '_value']}")
        lines.append(f"  moment vs truncated gap: {d['moment_vs_truncated_gap']}")
        lines.append(f"  statuses agree: {record.statuses_agree}")
        text = "\n".join(lines)
    _emit(text, args.out)
    ok = record.statuses_agree and all(
        s in (OPTIMAL, INFEASIBLE, UNBOUNDED)
        for s in (record.moment_status, record.truncated_lp_status,
                  record.original_lp_status))
    return 0 if ok else 1


def _run_list(args) -> int:
    entries = builtin_registry()
    if args.format == "json":
        text = json.dumps(entries, indent=2, sort_keys=True)
    elif args.format == "csv":
        lines = ["id,n_choices,description"]
        for e in entries:
            ns = ";".join(str(n) for n in e["n_choices"])
            lines.append(f"{e['id']},{ns},\"{e['description']}\"")
        text = "\n".join(lines)
    else:
        lines = []
        for e in entries:
            ns = ", ".join(str(n) for n in e["n_choices"])
            lines.append(f"example {e['id']} (n in {{{ns}}}): {e['description']}")
        text = "\n".join(lines)
    _emit(text, getattr(args, "out", None))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "list":
            return _run_list(args)
        if args.command == "solve":
            return _run_solve(parser, args)
        if args.command == "convergence":
            return _run_convergence(parser, args)
        if args.command == "compare":
            return _run_compare(parser, args)
        return _run_crosscheck(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)


def console_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_entry()
