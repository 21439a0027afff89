"""Command line interface: subcommands over spec files, exit codes for scripted sweeps."""

from __future__ import annotations

import argparse
import asyncio
from concurrent.futures import ProcessPoolExecutor
import glob
import logging
import os

from . import common
from .errors import InvariantSyzygyError, UsageError, exit_code_for
from .polyring import expand_series
from .report import (
    RunSpec,
    betti_triples,
    load_spec,
    render_betti_table,
    report_to_dict,
    save_json,
)
from .types import ExitCode
from .workbench import InvariantWorkbench

CONSOLE: logging.Logger = common.CONSOLE

SUBCOMMANDS = ("invariants", "tau", "syzygy-ideal", "betti", "molien", "verify", "sweep")


class _Parser(argparse.ArgumentParser):
    """Argument parser raising UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from err
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return number


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subparser per subcommand."""
    parser = _Parser(prog="syzygy_workbench", description="Invariant rings, syzygies and degree bounds of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        cmd = sub.add_parser(name)
        if name == "sweep":
            cmd.add_argument("--dir", required=True, help="Directory with *.json spec files")
            cmd.add_argument("--jobs", type=_positive_int, default=None, help="Worker processes")
        else:
            cmd.add_argument("--spec", required=True, help="JSON spec file")
            cmd.add_argument("--degree-cap", type=_positive_int, default=None, help="Largest generator degree to scan")
        cmd.add_argument("--imax", type=_positive_int, default=None, help="Largest homological degree to report")
        cmd.add_argument("--out", default=None, help="Write the JSON result to this file")
        cmd.add_argument("--budget-seconds", type=float, default=None, help="Abort after this wall clock time")
        cmd.add_argument("--timings", action="store_true", help="Include stage timings in the JSON result")
        cmd.add_argument("--verbose", action="store_true", help="Debug logging")
    return parser


def _workbench(run: RunSpec, args: argparse.Namespace) -> InvariantWorkbench:
    return InvariantWorkbench(
        run.group,
        degree_cap=args.degree_cap or run.degree_cap,
        i_max=args.imax or run.i_max,
        logger=logging.getLogger("invariant_syzygies") if args.verbose else None,
        budget_seconds=args.budget_seconds if args.budget_seconds is not None else common.budget_seconds(),
        group_cap=common.group_cap(),
        include_timings=args.timings,
    )


def _command_invariants(bench: InvariantWorkbench) -> tuple[dict, int]:
    gens = bench.generators()
    bench.completeness()
    CONSOLE.info("|G| = %s, generator degrees %s (r = %s, beta = %s)", bench.closure().order, gens.degrees, gens.r, gens.beta)
    for f in gens.generators:
        CONSOLE.info("  %s", f)
    data = {
        "order": bench.closure().order,
        "degrees": list(gens.degrees),
        "r": gens.r,
        "beta": gens.beta,
        "generators": [str(f) for f in gens.generators],
    }
    return data, int(ExitCode.OK)


def _command_tau(bench: InvariantWorkbench) -> tuple[dict, int]:
    hd = bench.hilbert_ideal()
    regularity = bench.regularity()
    CONSOLE.info("tau = %s, reg(I) = %s, Hilbert function of T/I %s", hd.tau, regularity, hd.hilbert_function())
    data = {
        "tau": hd.tau,
        "regularity": regularity,
        "hilbert_function": hd.hilbert_function(),
        "hilbert_ideal_basis": [str(g) for g in hd.hilbert_ideal_basis.elements],
    }
    return data, int(ExitCode.OK)


def _command_syzygy_ideal(bench: InvariantWorkbench) -> tuple[dict, int]:
    J = bench.syzygy_ideal()
    CONSOLE.info("J has %s minimal generators, degrees %s, beta1 = %s", len(J.minimal_generators), J.minimal_generator_degrees, J.beta1)
    for h in J.minimal_generators:
        CONSOLE.info("  %s", h)
    data = {
        "ring": str(J.ring),
        "degrees": list(J.minimal_generator_degrees),
        "beta1": J.beta1,
        "generators": [str(h) for h in J.minimal_generators],
        "groebner_basis": [str(h) for h in J.basis.elements],
    }
    return data, int(ExitCode.OK)


def _command_betti(bench: InvariantWorkbench, i_max: int | None) -> tuple[dict, int]:
    table, resolution = bench.resolution(i_max) if i_max else bench.resolution()
    common.print_betti_table(table)
    data = {
        "betti": betti_triples(table),
        "betti_table": render_betti_table(table).splitlines(),
        "length": table.length,
        "complete": table.complete,
        "module_degrees": [list(d) for d in resolution.module_degrees],
    }
    return data, int(ExitCode.OK)


def _command_molien(bench: InvariantWorkbench) -> tuple[dict, int]:
    series = bench.molien()
    order = bench.closure().order
    coefficients = expand_series(series, 2 * order)
    CONSOLE.info("H(R,t) = %s (degree %s)", series, series.degree)
    CONSOLE.info("dim R_d for d <= %s: %s", 2 * order, [str(c) for c in coefficients])
    data = {
        "series": str(series),
        "degree": series.degree,
        "expansion": [int(c) if c.denominator == 1 else str(c) for c in coefficients],
    }
    return data, int(ExitCode.OK)


def _command_verify(bench: InvariantWorkbench, digest: str | None) -> tuple[dict, int]:
    report = bench.verify_bounds()
    report.spec_digest = digest
    common.print_report(report)
    return report_to_dict(report), report.exit_code


async def _run_spec(args: argparse.Namespace) -> tuple[dict, int]:
    run = await load_spec(args.spec)
    bench = _workbench(run, args)
    if args.command == "invariants":
        return _command_invariants(bench)
    if args.command == "tau":
        return _command_tau(bench)
    if args.command == "syzygy-ideal":
        return _command_syzygy_ideal(bench)
    if args.command == "betti":
        return _command_betti(bench, args.imax or run.i_max)
    if args.command == "molien":
        return _command_molien(bench)
    return _command_verify(bench, run.digest)


async def _sweep_one(path: str, i_max: int | None, budget: float | None) -> dict:
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        run = await load_spec(path)
        bench = InvariantWorkbench(
            run.group,
            degree_cap=run.degree_cap,
            i_max=i_max or run.i_max,
            budget_seconds=budget,
            group_cap=common.group_cap(),
        )
        report = bench.verify_bounds()
    except InvariantSyzygyError as err:
        return {"name": name, "exit_code": exit_code_for(err), "error": str(err)}
    return {
        "name": name,
        "order": report.order,
        "degrees": report.degrees,
        "tau": report.tau,
        "beta1": report.details["beta1"],
        "k": report.k,
        "a_invariant": report.a_invariant,
        "exit_code": report.exit_code,
    }


def sweep_one(path: str, i_max: int | None, budget: float | None) -> dict:
    """Verify one spec file in isolation and summarize it; entry point of the worker processes."""
    return asyncio.run(_sweep_one(path, i_max, budget))


def worst_exit_code(codes: list[int]) -> int:
    """Most severe code: 70, then 65, 64, 3, 0."""
    for code in (ExitCode.BOUND_VIOLATION, ExitCode.UNSUPPORTED, ExitCode.USAGE, ExitCode.CONJECTURE_COUNTEREXAMPLE):
        if int(code) in codes:
            return int(code)
    return int(ExitCode.OK)


async def sweep(directory: str, jobs: int = 1, i_max: int | None = None, budget: float | None = None) -> list[dict]:
    """Verify every *.json spec in a directory, fanning out across worker processes."""
    if not os.path.isdir(directory):
        raise UsageError(f"Not a directory: {directory}")
    paths = sorted(glob.glob(os.path.join(directory, "*.json")))
    if jobs <= 1:
        return [await _sweep_one(path, i_max, budget) for path in paths]
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(await asyncio.gather(*(loop.run_in_executor(pool, sweep_one, path, i_max, budget) for path in paths)))


async def async_run_cli(argv: list[str]) -> int:
    """Parse argv, dispatch, write the result and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            logging.getLogger("invariant_syzygies").setLevel(logging.DEBUG)
        if args.command == "sweep":
            budget = args.budget_seconds if args.budget_seconds is not None else common.budget_seconds()
            rows = await sweep(args.dir, args.jobs or common.jobs(), args.imax, budget)
            common.print_summary(rows)
            data, code = {"specs": rows}, worst_exit_code([row["exit_code"] for row in rows])
        else:
            data, code = await _run_spec(args)
        if args.out and not await save_json(args.out, data):
            raise UsageError(f"Cannot write {args.out}")
    except InvariantSyzygyError as err:
        code = exit_code_for(err)
        CONSOLE.error("%s (exit %s)", err, code)
        return code
    if code == ExitCode.CONJECTURE_COUNTEREXAMPLE:
        CONSOLE.warning("CONJECTURE-COUNTEREXAMPLE found, see the report")
    return code


def run_cli(argv: list[str]) -> int:
    """Synchronous entry point."""
    return asyncio.run(async_run_cli(argv))
