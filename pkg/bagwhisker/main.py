#!/usr/bin/env python3
"""
Bag-and-whisker plot command line

Reads two numeric columns from a CSV file, computes the bag-and-whisker
model (or the classic bagplot) and writes an SVG figure and/or a JSON
document with every intermediate quantity.
"""

import argparse
import json
import logging
import sys
from functools import partial
from pathlib import Path
from typing import List, Optional

from . import __version__, config
from .analysis.calculator import BagplotCalculator
from .data.dataset import load_csv
from .data.models import DepthMode, McdConfig, RunConfig
from .data.serialization import comparison_to_document, dumps, model_to_document
from .errors import BadDirectionCount, BagplotError, InputError
from .svg.generator import render_comparison_svg, render_svg

logger = logging.getLogger(__name__)

METHODS = ("fwer", "fdr", "pfer", "classic")
FORMATS = ("svg", "json", "both")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bagwhisker",
        description="Bag-and-whisker plots with outlier fences calibrated by multiple testing.",
    )
    parser.add_argument("--input", required=True, help="CSV file with the observations")
    parser.add_argument("--x", default="0", help="x column name or 0-based index (default 0)")
    parser.add_argument("--y", default="1", help="y column name or 0-based index (default 1)")
    parser.add_argument("--method", choices=METHODS, default=None,
                        help="error criterion for the fence, or the classic factor-3 bagplot "
                             "(default fwer)")
    parser.add_argument("--level", type=float, default=None,
                        help="level q (defaults: fwer 0.1, fdr 0.01, pfer 0.5)")
    parser.add_argument("--depth-mode", default="auto",
                        help="auto, exact, approx or approx:K (default auto)")
    parser.add_argument("--directions", type=int, default=config.DEFAULT_DIRECTIONS,
                        help="directions for the approximate depth (default %(default)s)")
    parser.add_argument("--seed", type=int, default=None,
                        help=f"MCD seed; {config.SEED_ENV_VAR} overrides it")
    parser.add_argument("--format", choices=FORMATS, default="svg", dest="output_format")
    parser.add_argument("--output", default=None,
                        help="output file; stdout when omitted (single format only)")
    parser.add_argument("--compare", action="store_true",
                        help="2x2 figure: classic, FWER, FDR and PFER")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for a run summary, -vv for step diagnostics")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def _column(selector: str):
    selector = selector.strip()
    return int(selector) if selector.isdigit() else selector


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed arguments; the seed follows config.get_seed."""
    return RunConfig(
        input_path=args.input,
        x_column=_column(args.x),
        y_column=_column(args.y),
        method=args.method or "fwer",
        level=args.level,
        depth_mode=args.depth_mode,
        directions=args.directions,
        seed=config.get_seed(args.seed),
        output_format=args.output_format,
        output_path=args.output,
        compare=args.compare,
    )


def parse_depth_mode(text: str, directions: int, n: int) -> DepthMode:
    """
    Resolve a --depth-mode value.

    Args:
        text: auto, exact, approx or approx:K
        directions: K used by auto and approx
        n: Dataset size, for auto

    Returns:
        DepthMode
    """
    kind, _, count = text.strip().partition(":")
    if count:
        try:
            directions = int(count)
        except ValueError:
            raise BadDirectionCount(f"bad direction count in depth mode {text!r}", module="cli",
                                    context={"depth_mode": text})
    if directions < 2:
        raise BadDirectionCount(f"need at least 2 directions, got {directions}", module="cli",
                                context={"directions": directions})

    if kind == "auto" and not count:
        return DepthMode.auto(n, directions)
    if kind == "exact" and not count:
        return DepthMode.exact()
    if kind == "approx":
        return DepthMode.approx(directions)
    raise InputError(f"unknown depth mode {text!r}", module="cli", context={"depth_mode": text})


def _write(text: str, path: Optional[Path]):
    if path is None:
        sys.stdout.write(text)
        return
    path.write_text(text, encoding="utf-8")
    logger.info("Wrote %s", path)


def run(run_config: RunConfig) -> int:
    """
    Execute one run end to end and write its artifacts.

    Args:
        run_config: RunConfig

    Returns:
        Exit status: 0 success, 2 input error, 3 numeric error
    """
    try:
        if run_config.output_format == "both" and not run_config.output_path:
            raise InputError("--format both needs --output", module="cli")
        try:
            data = load_csv(run_config.input_path, run_config.x_column, run_config.y_column)
        except (OSError, UnicodeDecodeError) as e:
            raise InputError(f"cannot read {run_config.input_path}: {e}", module="cli",
                             context={"input": str(run_config.input_path)})

        mode = parse_depth_mode(run_config.depth_mode, run_config.directions, data.n)
        calculator = BagplotCalculator(depth_mode=mode, search=McdConfig(seed=run_config.seed))
        logger.debug("Run on %d points, depth %s, seed %d", data.n, mode.label, run_config.seed)

        if run_config.compare:
            models = calculator.calculate_comparison(data)
            svg = partial(render_comparison_svg, models)
            document = partial(comparison_to_document, models)
        else:
            if run_config.method == "classic":
                model = calculator.calculate_classic(data)
            else:
                model = calculator.calculate_model(data, run_config.method, run_config.resolved_level)
            svg = partial(render_svg, model)
            document = partial(model_to_document, model)

        output = Path(run_config.output_path) if run_config.output_path else None
        if run_config.output_format == "both":
            _write(svg(), output.with_suffix(".svg"))
            _write(dumps(document()), output.with_suffix(".json"))
        elif run_config.output_format == "json":
            _write(dumps(document()), output)
        else:
            _write(svg(), output)
        return 0

    except BagplotError as e:
        print(json.dumps(e.to_record(), default=str), file=sys.stderr)
        return e.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the command line."""
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.compare and (args.method is not None or args.level is not None):
        logger.warning("--compare draws every method at its default level; --method/--level ignored")
    try:
        return run(config_from_args(args))
    except BagplotError as e:
        print(json.dumps(e.to_record(), default=str), file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print("Terminated by user.", file=sys.stderr)
        return 130
    except Exception as e:
        logger.debug("Unexpected failure", exc_info=True)
        print(json.dumps({"error": type(e).__name__, "module": "cli", "message": str(e),
                          "context": {}}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
