"""Command-line entry point.

Exit codes: 0 success, 1 usage or config error, 2 solver non-convergence,
3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import checks, report
from .config import ConfigError, RunConfig, format_lambda, make_config, parse_lambda, read_config_file
from .model import Potential
from .optimize import NoInteriorMinimum, OptimizationError, solve_howf, solve_ppewf
from .oracle import JacobiConvergenceError, OracleConvergenceError, exact_spectrum

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_IO = 0, 1, 2, 3
SOLVER_ERRORS = (NoInteriorMinimum, OptimizationError, OracleConvergenceError, JacobiConvergenceError)
QUIET_ENV = "ANHARMONIC_QUIET"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; we reserve 2 for the solvers
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _lambda_arg(text: str):
    try:
        return parse_lambda(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _table_arg(text: str):
    if text == "all":
        return "all"
    if text.isdigit() and int(text) in report.TABLE_IDS:
        return int(text)
    raise argparse.ArgumentTypeError(f"table must be 1..8 or 'all', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="key = value file with RunConfig fields")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")
    common.add_argument("--out", metavar="PATH", help="output directory (table) or file (wavefunction)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--jobs", type=int, help="parallel workers for table rows")
    common.add_argument("--g2", type=float, dest="g_squared", help="quadratic coefficient g^2")
    common.add_argument("--restarts", type=int, help="random restarts for the PPEWF optimizer")
    common.add_argument("--seed", type=int, dest="rng_seed", help="RNG seed for the restarts")
    common.add_argument("--even-odd-only", action="store_true", default=None,
                        help="hold the parity-breaking PPEWF coefficients a, c at zero")

    parser = _Parser(prog="anharmonic", description="Variational energies of anharmonic oscillators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", parents=[common], help="reproduce a table (1..8 or all)")
    p.add_argument("table", type=_table_arg)

    p = sub.add_parser("solve", parents=[common], help="optimize one trial function")
    p.add_argument("--family", choices=("howf", "ppewf"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)

    p = sub.add_parser("oracle", parents=[common], help="oscillator-basis reference spectrum")
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--tol", type=float, dest="oracle_tol")

    p = sub.add_parser("wavefunction", parents=[common], help="sample an optimized trial function")
    p.add_argument("--family", choices=("howf", "ppewf"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_lambda_arg, required=True)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--xmax", type=float, default=5.0)

    sub.add_parser("selfcheck", parents=[common], help="run the internal consistency checks")
    return parser


def _config(args) -> RunConfig:
    file_values = read_config_file(args.config) if args.config else {}
    overrides = {k: getattr(args, k, None)
                 for k in ("g_squared", "restarts", "rng_seed", "even_odd_only", "format", "jobs",
                           "levels", "oracle_tol")}
    if args.command == "table" and args.out:
        overrides["output_dir"] = args.out
    return make_config(file_values, overrides)


class _Console:
    def __init__(self, quiet: bool):
        self.quiet = quiet or bool(os.environ.get(QUIET_ENV))
        self.color = sys.stdout.isatty() and "NO_COLOR" not in os.environ

    def info(self, msg: str):
        if not self.quiet:
            print(msg, file=sys.stderr)

    def status(self, ok: bool) -> str:
        word = "PASS" if ok else "FAIL"
        if not self.color:
            return word
        return f"\033[{32 if ok else 31}m{word}\033[0m"


def _solve(config: RunConfig, family: str, n: int, lam):
    if n < 0:
        raise UsageError(f"--n must be >= 0, got {n}")
    pot = Potential(config.g_squared, float(lam))
    if family == "howf":
        return solve_howf(n, pot)
    return solve_ppewf(n, pot, seeds=list(config.seeds) or None, restarts=config.restarts,
                       rng_seed=config.rng_seed, parity=config.even_odd_only)


def _format_params(res) -> str:
    p = res.params
    if res.family == "howf":
        return f"alpha={p.alpha:.6f}"
    return (f"alpha_prime={p.alpha_prime:.6f} a={p.a:.6f} b={p.b:.6f} "
            f"c={p.c:.6f} d={p.d:.6f}")


def cmd_solve(args, config, console) -> int:
    res = _solve(config, args.family, args.n, args.lam)
    print(f"family={res.family} n={res.n} lambda={format_lambda(args.lam)} g2={config.g_squared:g} "
          f"{_format_params(res)} E={res.energy:.6f}")
    if not res.converged:
        console.info("warning: optimizer hit its evaluation budget")
        return EXIT_SOLVER
    return EXIT_OK


def cmd_oracle(args, config, console) -> int:
    pot = Potential(config.g_squared, float(args.lam))
    res = exact_spectrum(pot, config.levels if args.levels is None else args.levels, config.oracle_tol)
    console.info(f"basis size {res.basis_size}, omega {res.basis_scale:.6g}, drift {res.drift:.2e}")
    for k, e in enumerate(res.eigenvalues):
        print(f"E_{k} = {e:.6f}")
    return EXIT_OK


def cmd_wavefunction(args, config, console) -> int:
    res = _solve(config, args.family, args.n, args.lam)
    samples = report.sample_wavefunction(res, args.xmax, args.samples)
    console.info(f"E={res.energy:.6f} nodes={samples.nodes} rms_width={samples.rms_width:.6f}")
    if args.out:
        report.emit(samples, config.format, args.out)
    else:
        sys.stdout.write("x,psi\n")
        for x, y in zip(samples.x, samples.psi):
            sys.stdout.write(f"{x:.6g},{y:.6g}\n")
    return EXIT_OK


def cmd_table(args, config, console) -> int:
    ids = list(report.TABLE_IDS) if args.table == "all" else [args.table]
    out_dir = Path(config.output_dir)
    start = time.perf_counter()
    tables = {}
    failed = 0
    for tid in ids:
        console.info(f"table {tid} ...")
        rows = report.reproduce_table(tid, config)
        path = report.emit(rows, config.format, out_dir / f"table{tid}.{config.format}")
        console.info(f"  wrote {path}")
        tables[str(tid)] = [r.record() for r in rows]
        failed += sum(r.error is not None for r in rows)
        for r in rows:
            if r.error:
                console.info(f"  row {r.values} failed: {r.error}")
    if args.table == "all":
        payload = {
            "config": config.to_dict(),
            "wall_clock_seconds": time.perf_counter() - start,
            "tables": tables,
            "printed_ppewf_comparison": checks.printed_ppewf_diagnostic(),
        }
        console.info(f"  wrote {report.write_run_record(out_dir / 'run.json', payload)}")
    return EXIT_SOLVER if failed else EXIT_OK


def cmd_selfcheck(args, config, console) -> int:
    results = checks.run_all()
    for r in results:
        print(f"[{console.status(r.passed)}] {r.name}: {r.detail}")
    print("printed PPEWF formula vs Rayleigh quotient (diagnostic, not asserted):")
    for row in checks.printed_ppewf_diagnostic():
        print(f"  n={row['n']} lambda={row['lambda']:g} printed={row['printed']:.6g} "
              f"rayleigh={row['rayleigh']:.6g} difference={row['difference']:.3g}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_SOLVER


COMMANDS = {"table": cmd_table, "solve": cmd_solve, "oracle": cmd_oracle,
            "wavefunction": cmd_wavefunction, "selfcheck": cmd_selfcheck}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _config(args)
        console = _Console(args.quiet)
        return COMMANDS[args.command](args, config, console)
    except (UsageError, ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SOLVER_ERRORS as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (report.ReportError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())
