"""
Command-line interface for tropnev.

Every subcommand builds a check request from the expression flags, runs the registered check of
the same name and writes its table as CSV or JSON:

- eval, classify, slice: pointwise values, root/pole classification and exact line slices
- charfun, jensen, inequalities, fmt, identity, poisson, growth: one-function functionals
- ldl, qldl: logarithmic difference ratios
- cartan, hyperfmt, defect, casorati, smt, qsmt: maps and hypersurfaces
- det: tropical determinant of a matrix
"""

import argparse
import importlib.metadata
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .checks import CheckRequest, registry
from .core.config import RunConfig, load_config, parse_r_spec
from .core.exceptions import TropNevException, ValidationError
from .formats.expr import parse_expr, parse_hypersurface, parse_map
from .formats.output import FORMATS, write_output
from .formats.schemas import load_functions, load_hypersurfaces, load_json_document, load_map
from .maxplus.matrix import TropicalMatrix
from .plfun.rational import TropicalRational
from .projective.hypersurface import HomogeneousPolynomial
from .projective.space import ProjectiveMap
from .utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

USAGE_ERROR = 2

COMMANDS = (
    "eval",
    "classify",
    "slice",
    "charfun",
    "jensen",
    "inequalities",
    "fmt",
    "ldl",
    "qldl",
    "cartan",
    "hyperfmt",
    "defect",
    "casorati",
    "det",
    "smt",
    "qsmt",
    "growth",
    "identity",
    "poisson",
)


def get_version() -> str:
    """Get package version."""
    try:
        return importlib.metadata.version("tropnev")
    except importlib.metadata.PackageNotFoundError:
        from ._version import __version__

        return __version__


def create_parser() -> argparse.ArgumentParser:
    """Create command-line argument parser."""
    parser = argparse.ArgumentParser(
        description="tropnev - tropical Nevanlinna functionals and theorem checks",
        prog="tropnev",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  tropnev charfun -f '0:1|0:0/0:1|1:0' --r 1:100:100
  tropnev jensen -f corpus2d.txt --K 4096 --seed 7
  tropnev classify -f '0:1,0|0:-1,0/0:0,1|0:0,-1' --x 0,0
  tropnev smt -f '0:1|0:0/0:1|1:0' -a -0.25 -a -0.5 -a -0.75 --r 1:100:100
  tropnev det -A '[[1,2],[3,4]]'
        """,
    )

    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    descriptions = registry.describe()
    for name in COMMANDS:
        sub = subparsers.add_parser(name, help=descriptions.get(name, ""))
        if name == "det":
            sub.add_argument(
                "-A", "--matrix", required=True, help="Matrix as a JSON array or a JSON file"
            )
        else:
            _add_input_arguments(sub)
        _add_run_arguments(sub)

    return parser


def _add_input_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the function, map and parameter flags."""
    parser.add_argument(
        "-f",
        "--function",
        action="append",
        default=[],
        help="Expression, or a corpus file (JSON or one expression per line); repeatable",
    )
    parser.add_argument("--map", help="Projective map as '[f0 ; f1 ; ...]' or a JSON file")
    parser.add_argument(
        "--hyper",
        action="append",
        default=[],
        help="Homogeneous polynomial or a JSON file; repeatable",
    )
    parser.add_argument(
        "-a",
        "--value",
        action="append",
        type=float,
        default=[],
        help="Value a for f (+) a; repeatable",
    )
    parser.add_argument("--dim", type=int, default=1, help="Dimension for constants and corpora")
    parser.add_argument(
        "--x", action="append", default=[], help="Point as comma-separated coordinates"
    )
    parser.add_argument("--theta", help="Line direction as comma-separated coordinates")
    parser.add_argument("--c", help="Shift vector as comma-separated coordinates")
    parser.add_argument("--q", type=float, help="Scale factor of q-differences")
    parser.add_argument(
        "--alpha", type=float, default=2.0, help="Radius factor alpha > 1 of the shift bound"
    )


def _add_run_arguments(parser: argparse.ArgumentParser) -> None:
    """Add the run configuration flags."""
    parser.add_argument("--r", help="Radius grid min:max:count[:log]")
    parser.add_argument("--K", type=int, help="Quadrature nodes (even)")
    parser.add_argument("--seed", type=int, help="Random seed (falls back to TROPNEV_SEED)")
    parser.add_argument("--tol", type=float, help="Equality tolerance")
    parser.add_argument("--workers", type=int, help="Worker threads for per-node slicing")
    parser.add_argument("--format", choices=list(FORMATS), help="Output format")
    parser.add_argument("--out", "-o", type=Path, help="Output file (stdout when omitted)")
    parser.add_argument("--config", type=Path, help="Configuration file (JSON or TOML)")


def parse_vector(text: str) -> Tuple[float, ...]:
    """Comma-separated coordinates."""
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as e:
        raise ValidationError(f"Bad coordinate list {text!r}: {e}") from e


def build_settings(args: argparse.Namespace) -> RunConfig:
    """Configuration file and environment, overridden by the flags that were given."""
    overrides: Dict[str, Any] = {
        "quad_size": args.K,
        "seed": args.seed,
        "tol": args.tol,
        "workers": args.workers,
        "output_format": args.format,
    }
    if args.r:
        r_min, r_max, count, spacing = parse_r_spec(args.r)
        overrides.update(r_min=r_min, r_max=r_max, r_count=count, r_spacing=spacing)
    settings = load_config(args.config, **overrides)
    settings.validate()
    return settings


def is_file(source: str) -> bool:
    """True when the flag value names an existing file rather than inline text."""
    try:
        return Path(source).is_file()
    except OSError:
        return False


def read_functions(sources: List[str], dim: int) -> List[TropicalRational]:
    functions: List[TropicalRational] = []
    for source in sources:
        if is_file(source):
            functions.extend(load_functions(source, dim))
        else:
            functions.append(parse_expr(source, dim))
    return functions


def read_map(source: Optional[str], dim: int) -> Optional[ProjectiveMap]:
    if source is None:
        return None
    if is_file(source):
        return load_map(source, dim)
    return parse_map(source, dim)


def read_hypersurfaces(sources: List[str]) -> List[HomogeneousPolynomial]:
    out: List[HomogeneousPolynomial] = []
    for source in sources:
        if is_file(source):
            out.extend(load_hypersurfaces(source))
        else:
            out.append(parse_hypersurface(source))
    return out


def read_matrix(source: str) -> TropicalMatrix:
    text = Path(source).read_text(encoding="utf-8") if is_file(source) else source
    rows = load_json_document(text)
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ValidationError("A matrix must be a JSON array of rows")
    return TropicalMatrix.from_rows(rows)


def build_request(args: argparse.Namespace, settings: RunConfig) -> CheckRequest:
    """Check request from the parsed flags."""
    request = CheckRequest(r_grid=settings.r_grid())
    if args.command == "det":
        request.matrix = read_matrix(args.matrix)
        return request
    request.functions = read_functions(args.function, args.dim)
    request.projective_map = read_map(args.map, args.dim)
    request.hypersurfaces = read_hypersurfaces(args.hyper)
    request.values = list(args.value)
    request.points = [parse_vector(x) for x in args.x]
    request.theta = parse_vector(args.theta) if args.theta else None
    request.c = parse_vector(args.c) if args.c else None
    request.q = args.q
    request.alpha = args.alpha
    return request


def handle_check_command(args: argparse.Namespace) -> int:
    """Run the check named by the subcommand and write its table."""
    try:
        settings = build_settings(args)
        if not args.verbose:
            setup_logging(settings.log_level)
        request = build_request(args, settings)
        check = registry.create(args.command, settings)
        result = check.run(request)
        write_output(result.render(settings.output_format), args.out)
        if result.message:
            logger.warning(f"{result.name}: {result.message}")
        return result.exit_code

    except TropNevException as e:
        logger.error(f"Command '{args.command}' failed: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return USAGE_ERROR
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        print(f"Unexpected error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback

            traceback.print_exc()
        return USAGE_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main CLI entry point.

    Returns 0 when the check passed or was skipped, 1 when it failed and 2 on usage, parse or
    input errors.
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE_ERROR

    setup_logging("DEBUG" if args.verbose else "WARNING")

    if args.command in COMMANDS:
        return handle_check_command(args)
    else:
        parser.print_help()
        return 0


if __name__ == "__main__":
    sys.exit(main())
