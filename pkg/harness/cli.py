"""
delay-dd command line: run experiment specs, list them, evaluate symbols.
"""
import argparse
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence
import numpy as np
from tabulate import tabulate
from config.config_manager import SpecManager
from config.settings import settings
from discretization.problem import FamilyFactory
from harness.plot_script import write_plot_script
from harness.runner import run_experiment
from harness.spec import load_spec
from harness.writer import format_parameter, history_tag, write_experiment
from theory.symbols import SymbolQuery, contraction_profile, contraction_symbol
from utils.logger import get_logger, set_log_level
from utils.exceptions import DelayDDError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2

# symbol defaults per family: coefficients and delay
SYMBOL_DEFAULTS = {
    "parabolic": ({"a1": 1.0, "a2": 2.3, "nu": 1.0}, 1.5),
    "wave": ({"c": 1.0, "lam": 0.5}, 3.0),
    "neutral": ({"mu": 1.0, "c": 0.1, "r": 0.05, "d": 0.0025}, 1.0),
}


def _parse_complex(text: str) -> complex:
    try:
        parts = [float(part) for part in text.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got '{text}'") from e
    if len(parts) == 1:
        return complex(parts[0], 0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got '{text}'")
    return complex(parts[0], parts[1])


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with EXIT_ERROR."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog="delay-dd",
        description="Waveform-relaxation domain decomposition for 1D delay PDEs",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at debug level")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one or more experiment specs")
    run.add_argument("specs", nargs="+", help="spec names or YAML files")
    run.add_argument("--out", help="output directory (default: spec output.directory or DELAY_DD_OUTPUT_DIR)")
    run.add_argument("--spec-dir", help="directory of named specs (default: DELAY_DD_SPEC_DIR)")
    run.add_argument("--workers", type=int, help="concurrent runs per spec")
    run.add_argument("--phase-workers", type=int, help="threads per iteration phase")
    run.add_argument("--plot", action="store_true", help="also write a gnuplot script")

    listing = commands.add_parser("list-specs", help="list the available specs")
    listing.add_argument("--spec-dir", help="directory of named specs (default: DELAY_DD_SPEC_DIR)")

    symbol = commands.add_parser("symbol", help="evaluate a contraction symbol")
    symbol.add_argument("--method", required=True, choices=["dnwr", "nnwr"])
    symbol.add_argument("--family", required=True, choices=FamilyFactory.list_supported())
    symbol.add_argument("--a", type=float, required=True, help="width of the first subdomain")
    symbol.add_argument("--b", type=float, required=True, help="width of the second subdomain")
    symbol.add_argument("--theta", type=float, required=True)
    symbol.add_argument("--s", type=_parse_complex, default=complex(1.0, 0.0), help="Laplace variable RE,IM")
    symbol.add_argument("--tau", type=float)
    for name in ("a1", "a2", "nu", "c", "lam", "mu", "r", "d"):
        symbol.add_argument(f"--{name}", type=float)
    symbol.add_argument("--bounded", action="store_true", help="finite-interval parabolic symbol")
    symbol.add_argument("--profile", action="store_true", help="tabulate |symbol| along Re(s) = Re(--s)")
    symbol.add_argument("--omega-max", type=float, default=10.0)
    symbol.add_argument("--points", type=int, default=11)
    return parser


def _run(args: argparse.Namespace) -> int:
    exit_code = EXIT_OK
    for name in args.specs:
        spec = load_spec(name, args.spec_dir)
        result = run_experiment(spec, workers=args.workers, phase_workers=args.phase_workers)
        directory = Path(args.out or spec.output_dir or settings.OUTPUT_DIR)
        write_experiment(spec.name, result.histories, directory)
        if args.plot or spec.plot_script:
            write_plot_script(spec.name, result.histories, directory, title=spec.description)

        rows = [
            [history_tag(h), format_parameter(h.parameter), h.iterations_run, h.converged, f"{h.final_relative_error:.3e}"]
            for h in result.histories
        ]
        print(f"{spec.name} -> {directory}")
        print(tabulate(rows, headers=["method", "parameter", "iterations", "converged", "relative error"]))
        if not result.all_converged:
            logger.warning("experiment_not_converged", spec_name=spec.name, runs=len(result.non_converged))
            exit_code = EXIT_NOT_CONVERGED
    return exit_code


def _list_specs(args: argparse.Namespace) -> int:
    manager = SpecManager(args.spec_dir)
    rows = []
    for name in manager.list_specs():
        spec = load_spec(name, args.spec_dir)
        methods = ", ".join(sorted({plan.tag for plan in spec.runs()}))
        rows.append([name, spec.family.name, methods, spec.description])
    print(tabulate(rows, headers=["name", "family", "methods", "description"]))
    return EXIT_OK


def symbol_family(args: argparse.Namespace):
    """Family and delay for the symbol command, CLI values over defaults."""
    defaults, tau = SYMBOL_DEFAULTS[args.family]
    coefficients: Dict[str, float] = {}
    for key, value in defaults.items():
        given = getattr(args, key)
        coefficients[key] = value if given is None else given
    return FamilyFactory.create(args.family, coefficients), (tau if args.tau is None else args.tau)


def _symbol(args: argparse.Namespace) -> int:
    family, tau = symbol_family(args)
    query = SymbolQuery(
        method=args.method, family=family, a=args.a, b=args.b, theta=args.theta, s=args.s, tau=tau, bounded=args.bounded
    )
    if args.profile:
        omegas = np.linspace(-args.omega_max, args.omega_max, args.points)
        magnitudes = contraction_profile(query, args.s.real, omegas)
        rows = [[f"{omega:g}", f"{magnitude:.12g}"] for omega, magnitude in zip(omegas, magnitudes)]
        print(tabulate(rows, headers=["omega", "|symbol|"]))
        print(f"max |symbol| = {magnitudes.max():.12g}")
        return EXIT_OK

    value = contraction_symbol(query)
    rows = [[args.method, family.name, args.a, args.b, args.theta, f"{args.s}", f"{value.real:.15g}", f"{value.imag:.15g}", f"{abs(value):.15g}"]]
    print(tabulate(rows, headers=["method", "family", "a", "b", "theta", "s", "re", "im", "abs"]))
    return EXIT_OK


COMMANDS = {
    "run": _run,
    "list-specs": _list_specs,
    "symbol": _symbol,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Returns:
        0 if every run converged, 2 if some run hit max_iters, 1 on errors
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        set_log_level("DEBUG")

    try:
        return COMMANDS[args.command](args)
    except DelayDDError as e:
        logger.error("command_failed", command=args.command, error=str(e), error_type=type(e).__name__)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
