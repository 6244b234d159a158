"""Command-line entry point: `python cli.py solve ...` and `python cli.py gen ...`."""

import argparse
import json
import logging
import sys
from typing import List, Optional

import config
from errors import InputError, NumericalError
from generators import generate_text, get_all_generators
from linalg import Rng
from oneshot import solve_total_degree
from polynomial import PolySystem, parse_system
from report import dumps_result, format_report, write_text
from solver import EquationOrder, Mode, SolverConfig, solve
from tracker import TrackOptions
from witness import Tolerances

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2

TOLERANCE_NAMES = ("zero", "dup", "slice", "rank", "res")


def configure_logging(verbose: int = 0, quiet: bool = False):
    level = getattr(logging, str(config.LOG_LEVEL).upper(), logging.INFO)
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqbyeq", description="Equation-by-equation witness set solver")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("solve", help="compute witness sets of a polynomial system")
    run.add_argument("input", help="system file, or - for standard input")
    run.add_argument("--seed", type=int, default=config.SEED)
    run.add_argument("--mode", choices=[m.value for m in Mode], default=config.MODE)
    run.add_argument("--ignore", metavar="FILE", help="system Q whose zeros are excluded")
    run.add_argument("--order", choices=[o.value for o in EquationOrder], default=config.ORDER)
    run.add_argument("--threads", type=int, default=config.THREADS)
    run.add_argument("--method", choices=["eqbyeq", "total-degree"], default="eqbyeq")
    run.add_argument("--json", metavar="PATH", help="write the result as JSON (- for stdout)")
    run.add_argument("--report", metavar="PATH", help="write the stage report (- for stdout)")
    run.add_argument("--timings", action="store_true", default=config.REPORT_TIMINGS,
                     help="include wall-clock columns")
    defaults = Tolerances()
    for name in TOLERANCE_NAMES:
        run.add_argument(f"--tol-{name}", type=float, default=getattr(defaults, name))

    gen = commands.add_parser("gen", help="print a built-in system")
    gen.add_argument("name", choices=[g["name"] for g in get_all_generators()])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--rows", type=int, default=2)
    gen.add_argument("--cols", type=int, default=9)
    gen.add_argument("--size", type=int, default=6)
    gen.add_argument("--hyperplane", action="store_true", help="eigen: append one random linear equation")
    gen.add_argument("--n", dest="n_equations", type=int, default=2, help="randomdense: equations")
    gen.add_argument("--N", dest="n_vars", type=int, default=2, help="randomdense: variables")
    gen.add_argument("--degrees", type=int, nargs="+", default=[2], help="randomdense: one degree, or one per equation")
    gen.add_argument("-o", "--output", default="-")
    return parser


def read_system(path: str) -> PolySystem:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_system(text)


def solver_config(args) -> SolverConfig:
    try:
        tolerances = Tolerances(**{name: getattr(args, f"tol_{name}") for name in TOLERANCE_NAMES})
        return SolverConfig(seed=args.seed, mode=Mode(args.mode), tolerances=tolerances,
                            track_options=TrackOptions(), worker_count=args.threads,
                            equation_order=EquationOrder(args.order))
    except ValueError as e:
        raise InputError(str(e)) from e


def cmd_solve(args) -> int:
    system = read_system(args.input)
    Q = read_system(args.ignore) if args.ignore else None
    if Q is not None and Q.n_vars != system.n_vars:
        raise InputError(f"ignore system has {Q.n_vars} variables, input has {system.n_vars}")
    cfg = solver_config(args)
    if args.method == "total-degree":
        return _solve_total_degree(system, cfg, args)

    result = solve(system, Q, cfg)
    if args.json:
        write_text(dumps_result(result, args.timings), args.json)
    if args.report or not args.json:
        write_text(format_report(result, args.timings), args.report or "-")
    if result.incomplete:
        print("eqbyeq: error[numerical]: some paths failed; results may be incomplete", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _solve_total_degree(system: PolySystem, cfg: SolverConfig, args) -> int:
    outcome = solve_total_degree(system, Rng(cfg.seed), cfg.track_options, cfg.tolerances, cfg.worker_count)
    stats = outcome.stats
    if args.json:
        payload = {
            "method": "total-degree",
            "n_vars": system.n_vars,
            "n_equations": len(system),
            "seed": cfg.seed,
            "stats": stats,
            "points": [[[float(c.real), float(c.imag)] for c in x] for x in outcome.points],
        }
        write_text(json.dumps(payload, indent=2) + "\n", args.json)
    if args.report or not args.json:
        text = (f"total-degree homotopy: {stats['tracked']} paths, {stats['diverged']} diverged, "
                f"{stats['converged']} converged, {stats['failed']} failed\n"
                f"nonsingular solutions: {len(outcome.points)} "
                f"(singular dropped {outcome.singular_dropped}, duplicates {outcome.duplicates})\n")
        write_text(text, args.report or "-")
    return EXIT_NUMERICAL if stats["failed"] else EXIT_OK


def cmd_gen(args) -> int:
    params = {"seed": args.seed}
    if args.name == "minors":
        params.update(rows=args.rows, cols=args.cols)
    elif args.name == "eigen":
        params.update(size=args.size, hyperplane=args.hyperplane)
    elif args.name == "randomdense":
        degrees = args.degrees[0] if len(args.degrees) == 1 else args.degrees
        params.update(n_equations=args.n_equations, n_vars=args.n_vars, degrees=degrees)
    write_text(generate_text(args.name, **params), args.output)
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config.validate_config()
        if args.command == "gen":
            return cmd_gen(args)
        return cmd_solve(args)
    except InputError as e:
        print(f"eqbyeq: error[input]: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as e:
        print(f"eqbyeq: error[numerical]: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as e:
        # configuration problems
        print(f"eqbyeq: error[input]: {e}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
