# project_root/src/main.py
"""
Main entry point of the application.

Subcommands:
- solve: run an SMT-LIB script (a file, or "-" for stdin) and print the
  SMT-LIB responses on stdout.
- bench: run engine configurations over a directory of instances, check
  every answer against the oracle, write a CSV and a Markdown summary.
- gen: write seeded random instances.

Diagnostics go to stderr through the application logger. A user error
prints `(error "<message>")` and exits with status 1; anything unexpected
is logged with its traceback and exits with status 2.

Usage:
  python -m src.main solve instance.smt2 --engine ofp-bs --pi --stats
  python -m src.main gen --seed 7 --sort "(3 5)" --count 20 --out instances
  python -m src.main bench --dir instances --configs ofp-bs,omt-bin --jobs 4 --out runs.csv
"""

import argparse
import sys
from typing import List, Optional

from src.engines.config import EngineConfig
from src.harness.bench import load_bench_configs, run_bench, write_csv
from src.harness.generator import parse_sort_spec, write_instances
from src.smtlib.interpreter import Interpreter
from src.smtlib.parser import parse
from src.utils.config import (DEFAULT_BENCH_CONFIGS, DEFAULT_ENGINE, DEFAULT_PROFILE, DEFAULT_RHO,
                              ENGINE_NAMES, GENERATOR_PROFILES)
from src.utils.errors import OmtBitsError
from src.utils.instance_handler import fetch_instances, read_source
from src.utils.logger import logger, setup_logger
from src.utils.report_generator import (default_csv_filename, generate_report, get_report_filename,
                                        write_report)


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omt-bits",
                                     description="Optimization modulo bit-vectors and floating-point.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="Only warnings and errors")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="Run an SMT-LIB script")
    solve.add_argument("file", help="Instance path, or - for stdin")
    solve.add_argument("--engine", choices=ENGINE_NAMES, default=DEFAULT_ENGINE)
    solve.add_argument("--bp", action="store_true", help="Branch on the objective bits first")
    solve.add_argument("--pi", action="store_true", help="Polarity hints from the attractor")
    solve.add_argument("--so", action="store_true", help="Restrict bp/pi to safe objective bits")
    solve.add_argument("--rho", default=str(DEFAULT_RHO), help="Binary search pivot ratio, e.g. 1/2")
    solve.add_argument("--timeout", type=_positive_float, help="Seconds per check-sat")
    solve.add_argument("--stats", action="store_true", help="Print smt_calls and wall_ms after each check-sat")
    solve.add_argument("--dump-cnf", metavar="PATH", help="Write the clause database in DIMACS")

    bench = sub.add_parser("bench", parents=[common], help="Compare engine configurations")
    bench.add_argument("--dir", required=True, help="Directory (or single file) of .smt2 instances")
    bench.add_argument("--configs", default=",".join(DEFAULT_BENCH_CONFIGS),
                       help="Comma-separated labels such as ofp-bs+pi, or a .toml file")
    bench.add_argument("--seed", type=int, help="Generate --count instances with this seed into --dir first")
    bench.add_argument("--count", type=int, default=20)
    bench.add_argument("--sort", default="(3 5)", help="Sort of generated instances")
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--timeout", type=_positive_float, help="Seconds per run, overrides the configs")
    bench.add_argument("--out", help="CSV path (default: reports/bench_<timestamp>.csv)")

    gen = sub.add_parser("gen", parents=[common], help="Write random instances")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--sort", default="(3 5)", help='"(e s)" for FP, "(w)" for BV')
    gen.add_argument("--count", type=int, default=20)
    gen.add_argument("--profile", choices=GENERATOR_PROFILES, default=DEFAULT_PROFILE)
    gen.add_argument("--out", required=True, help="Output directory")
    return parser


def run_solve(args) -> None:
    config = EngineConfig(engine=args.engine, bp=args.bp, pi=args.pi, so=args.so,
                          rho=args.rho, timeout=args.timeout)
    logger.info(f"Solving {args.file} with {config.label}")
    script = parse(read_source(args.file))
    interpreter = Interpreter(config, show_stats=args.stats, dump_cnf=args.dump_cnf)
    for line in interpreter.run(script):
        print(line, flush=True)


def run_gen(args) -> None:
    sort = parse_sort_spec(args.sort)
    write_instances(args.out, args.seed, sort, args.count, args.profile)


def run_bench_command(args) -> None:
    configs = load_bench_configs(args.configs)
    if args.seed is not None:
        write_instances(args.dir, args.seed, parse_sort_spec(args.sort), args.count, DEFAULT_PROFILE)
    instances = fetch_instances(args.dir)
    rows = run_bench(instances, configs, jobs=args.jobs, timeout=args.timeout)

    out_csv = args.out or default_csv_filename()
    write_csv(rows, out_csv)
    report = generate_report(rows, [c.label for c in configs], out_csv)
    write_report(report, get_report_filename(out_csv))
    logger.info("Bench complete.")


COMMANDS = {"solve": run_solve, "bench": run_bench_command, "gen": run_gen}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger(args.verbose, args.quiet)
    try:
        COMMANDS[args.command](args)
    except OmtBitsError as e:
        message = str(e).replace('"', '""')
        print(f'(error "{message}")', flush=True)
        return 1
    except Exception:
        logger.exception("Unexpected failure")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
