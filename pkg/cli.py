"""
Command-line front end for the forecast triptych.

    python cli.py decompose --score brier data.csv
    python cli.py triptych --forecasters NOAA,SIDC data.csv -o out/
    python cli.py simulate --scenario B --n 100000 --seed 7 | python cli.py crossings --cols X1,X2

Exit status: 0 success, 1 usage error, 2 data or I/O error, 3 numeric or degenerate-input error.
"""
import os
import sys
import json
import logging
import argparse
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

sys.path.insert(0, os.path.dirname(__file__))

from config.settings import Settings
from main import (
    build_triptych,
    categorize_error,
    compare_pair,
    decompose,
    load_dataset,
    recalibrated_records,
    select_forecasters,
    setup_logging,
    simulate,
    summarize,
)
from src.analysis import murphy_difference, roc_difference
from src.data import Dataset
from src.exceptions import FigureError, ScoringError
from src.figures import FigureSpec, render_mcbdsc, render_murphy, render_reliability, render_roc, render_triptych
from src.murphy import murphy_curve
from src.scoring import parse_rule

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

CATEGORY_EXIT = {
    "usage": EXIT_USAGE,
    "data": EXIT_DATA,
    "numeric": EXIT_NUMERIC,
    "internal": EXIT_NUMERIC,
}

SINGLE_PANEL_SIZE = (520, 440)


class UsageError(Exception):
    pass


class CommandFailed(Exception):
    """A library call returned an unsuccessful result"""

    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad arguments"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _split(value: Optional[str]) -> List[str]:
    return [v.strip() for v in value.split(",") if v.strip()] if value else []


def _pair(value: str, flag: str) -> List[str]:
    names = _split(value)
    if len(names) != 2:
        raise UsageError(f"{flag} expects two comma-separated forecaster names, got '{value}'")
    return names


def _check(result):
    if not result.success:
        raise CommandFailed(result.error_category or "internal", result.error or "unknown error")
    return result


def write_atomic(path: Path, text: str) -> None:
    """Write text to path through a temporary file in the same directory"""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info(f"Wrote {path}")


def _to_json(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def _to_csv(rows: Sequence[dict]) -> str:
    return pd.DataFrame(list(rows)).to_csv(index=False, na_rep="NA", lineterminator="\n")


def _is_directory_target(out: Optional[str]) -> bool:
    return bool(out) and (out.endswith(("/", os.sep)) or Path(out).is_dir())


def _emit(args, artifacts: Dict[str, str], stem: str) -> None:
    """
        Write one rendering per format. With --out pointing at a directory every
        artifact lands there as <stem>.<format>; otherwise the one selected by
        --format goes to --out or stdout.
    """
    if _is_directory_target(args.out):
        for fmt, text in artifacts.items():
            write_atomic(Path(args.out) / f"{stem}.{fmt}", text)
        return
    fmt = args.format or next(iter(artifacts))
    if fmt not in artifacts:
        raise UsageError(f"'{args.command}' cannot write --format {fmt} (choose from {', '.join(artifacts)})")
    if args.out and args.out != "-":
        write_atomic(Path(args.out), artifacts[fmt])
    else:
        sys.stdout.write(artifacts[fmt])


def _rule(text: str):
    try:
        return parse_rule(text)
    except ScoringError as e:
        raise UsageError(str(e)) from e


def _load(args) -> Dataset:
    result = _check(load_dataset(args.input, args.input_format, _split(args.forecasters) or None))
    if result.dropped_rows:
        logger.info(f"Using {result.rows} jointly complete rows ({result.dropped_rows} dropped)")
    return result.dataset


def _spec(kind: str, names: Sequence[str], args, **kwargs) -> FigureSpec:
    settings = Settings()
    width, height = (settings.FIGURE_WIDTH, settings.FIGURE_HEIGHT) if kind == "triptych" else SINGLE_PANEL_SIZE
    try:
        return FigureSpec.for_series(kind, names, width=width, height=height, **kwargs)
    except FigureError as e:
        raise UsageError(str(e)) from e


def _band_options(args) -> dict:
    return {
        "level": args.level,
        "replicates": args.resamples,
        "seed": args.seed,
        "workers": args.workers,
        "bands": args.resamples != 0,
    }


# ---------------------------------------------------------------- subcommands

def cmd_decompose(args) -> int:
    dataset = _load(args)
    rule = _rule(args.score)
    result = _check(decompose(dataset, rule))
    payload = {
        "score": rule.name,
        "n": dataset.n_rows,
        "unc": result.plot.unc,
        "forecasters": [d.to_json() for d in result.decompositions],
    }
    _emit(args, {
        "json": _to_json(payload),
        "csv": _to_csv([d.to_json() for d in result.decompositions]),
    }, "decompose")
    return EXIT_OK


def cmd_mcbdsc(args) -> int:
    dataset = _load(args)
    rule = _rule(args.score)
    result = _check(decompose(dataset, rule))
    plot = result.plot
    spec = _spec("mcbdsc", [p.name for p in plot.points], args, x_range=args.x_range, y_range=args.y_range)
    _emit(args, {"json": _to_json(plot.to_json()), "svg": render_mcbdsc(spec, plot)}, "mcbdsc")
    return EXIT_OK


def cmd_murphy(args) -> int:
    dataset = _load(args)
    if args.diff:
        first, second = _pair(args.diff, "--diff")
        rec1, rec2 = dataset.records([first, second])
        diff = murphy_difference(murphy_curve(rec1), murphy_curve(rec2))
        payload = {"first": first, "second": second, "difference": diff.to_json()}
        rows = [{"theta": t, "difference": v} for t, v in zip(diff.breakpoints.tolist(), diff(diff.breakpoints).tolist())]
        _emit(args, {"json": _to_json(payload), "csv": _to_csv(rows)}, "murphy_diff")
        return EXIT_OK

    result = _check(build_triptych(dataset, bands=False, panels=("murphy",)))
    spec = _spec("murphy", [c.name for c in result.murphy], args, y_range=args.y_range)
    rows = [
        {"name": c.name, **segment}
        for c in result.murphy
        for segment in c.to_json()["segments"]
    ]
    _emit(args, {
        "json": _to_json({"curves": [c.to_json() for c in result.murphy]}),
        "csv": _to_csv(rows),
        "svg": render_murphy(spec, result.murphy),
    }, "murphy")
    return EXIT_OK


def cmd_reliability(args) -> int:
    dataset = _load(args)
    result = _check(build_triptych(dataset, histogram_bins=args.bins, panels=("reliability",), **_band_options(args)))
    diagrams = result.reliability
    spec = _spec("reliability", [d.name for d in diagrams], args, support_range=args.support_range)
    rows = [{"name": d.name, "x": x, "cep": c} for d in diagrams for x, c in d.curve_points]
    _emit(args, {
        "json": _to_json({"diagrams": [d.to_json() for d in diagrams], "metadata": result.metadata}),
        "csv": _to_csv(rows),
        "svg": render_reliability(spec, diagrams),
    }, "reliability")
    return EXIT_OK


def cmd_roc(args) -> int:
    dataset = _load(args)
    if args.diff:
        first, second = _pair(args.diff, "--diff")
        records = recalibrated_records(dataset, [first, second]) if args.concave else dataset.records([first, second])
        diff = roc_difference(*records)
        payload = {"first": first, "second": second, "concave": args.concave, "difference": diff.to_json()}
        rows = [{"c": c, "difference": v} for c, v in zip(diff.breakpoints.tolist(), diff(diff.breakpoints).tolist())]
        _emit(args, {"json": _to_json(payload), "csv": _to_csv(rows)}, "roc_diff")
        return EXIT_OK

    result = _check(build_triptych(dataset, concave=args.concave, bands=False, panels=("roc",)))
    spec = _spec("roc", [c.name for c in result.roc], args)
    rows = [{"name": c.name, "far": f, "hr": h} for c in result.roc for f, h in c.vertices]
    _emit(args, {
        "json": _to_json({"curves": [c.to_json() for c in result.roc]}),
        "csv": _to_csv(rows),
        "svg": render_roc(spec, result.roc),
    }, "roc")
    return EXIT_OK


def cmd_triptych(args) -> int:
    dataset = _load(args)
    names = dataset.names
    if args.top:
        names = select_forecasters(dataset, _rule(args.score), args.top, args.by)
        logger.info(f"Top {args.top} forecasters by {args.by}: {', '.join(names)}")

    result = _check(build_triptych(
        dataset, names, concave=args.concave, histogram_bins=args.bins, **_band_options(args)
    ))
    spec = _spec("triptych", names, args, support_range=args.support_range)
    payload = {
        "forecasters": list(names),
        "metadata": result.metadata,
        "murphy": [c.to_json() for c in result.murphy],
        "reliability": [d.to_json() for d in result.reliability],
        "roc": [c.to_json() for c in result.roc],
    }
    _emit(args, {
        "json": _to_json(payload),
        "svg": render_triptych(spec, result.murphy, result.reliability, result.roc),
    }, "triptych")
    return EXIT_OK


def cmd_crossings(args) -> int:
    args.forecasters = args.forecasters or args.cols
    dataset = _load(args)
    first, second = _pair(args.cols, "--cols")
    rec1, rec2 = dataset.records([first, second])
    report = _check(compare_pair(rec1, rec2, tol=args.tol, recalibrate_first=not args.no_recalibrate)).report
    _emit(args, {"json": _to_json(report.model_dump()), "csv": _to_csv([report.model_dump()])}, "crossings")
    return EXIT_OK


def cmd_simulate(args) -> int:
    sample = _check(simulate(args.scenario, args.n, args.seed, args.workers)).sample
    _emit(args, {"csv": sample.to_csv()}, f"scenario_{sample.scenario.lower()}")
    return EXIT_OK


def cmd_scores(args) -> int:
    dataset = _load(args)
    rules = [_rule(name) for name in _split(args.score)]
    if not rules:
        raise UsageError("--score needs at least one scoring rule")
    summaries = _check(summarize(dataset, rules)).summaries
    _emit(args, {
        "json": _to_json({"n": dataset.n_rows, "forecasters": [s.to_json() for s in summaries]}),
        "csv": _to_csv([s.to_row() for s in summaries]),
    }, "scores")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _range(text: str):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got '{text}'")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    settings = Settings()

    common = _Parser(add_help=False)
    common.add_argument("-o", "--out", help="Output file, or a directory for every artifact")
    common.add_argument("--format", choices=["json", "csv", "svg"], help="Output format (default: first available)")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")

    data = _Parser(add_help=False)
    data.add_argument("input", nargs="?", default=None, help="CSV file (default or '-': stdin)")
    data.add_argument("--input-format", choices=["wide", "long"], default="wide", help="Input CSV layout")
    data.add_argument("--forecasters", help="Comma-separated forecaster columns to use")

    bands = _Parser(add_help=False)
    bands.add_argument("--level", type=float, default=settings.LEVEL, help="Consistency band level")
    bands.add_argument("--resamples", type=int, default=settings.RESAMPLES, help="Band resamples (0 disables bands)")
    bands.add_argument("--seed", type=int, default=settings.SEED, help="Random seed")
    bands.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker processes")
    bands.add_argument("--bins", type=int, default=settings.HISTOGRAM_BINS, help="Histogram bins")
    bands.add_argument("--support-range", action="store_true", help="Restrict reliability x-range to the forecast support")

    roc = _Parser(add_help=False)
    roc_kind = roc.add_mutually_exclusive_group()
    roc_kind.add_argument("--concave", dest="concave", action="store_true", default=True, help="Concave ROC curves (default)")
    roc_kind.add_argument("--raw", dest="concave", action="store_false", help="Raw ROC curves")

    parser = _Parser(prog="triptych", description="Forecast evaluation: Murphy curves, reliability diagrams and ROC curves")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("decompose", parents=[common, data], help="CORP MCB/DSC/UNC decomposition")
    p.add_argument("--score", default="brier", help="Scoring rule")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("mcbdsc", parents=[common, data], help="MCB-DSC plot")
    p.add_argument("--score", default="brier", help="Scoring rule")
    p.add_argument("--x-range", type=_range, help="LO,HI of the MCB axis")
    p.add_argument("--y-range", type=_range, help="LO,HI of the DSC axis")
    p.set_defaults(handler=cmd_mcbdsc)

    p = sub.add_parser("murphy", parents=[common, data], help="Murphy curves")
    p.add_argument("--diff", help="A,B: emit the difference curve of two forecasters")
    p.add_argument("--y-range", type=_range, help="LO,HI of the vertical axis")
    p.set_defaults(handler=cmd_murphy)

    p = sub.add_parser("reliability", parents=[common, data, bands], help="CORP reliability diagrams")
    p.set_defaults(handler=cmd_reliability)

    p = sub.add_parser("roc", parents=[common, data, roc], help="ROC curves and AUC")
    p.add_argument("--diff", help="A,B: emit the ROC gap function of two forecasters")
    p.set_defaults(handler=cmd_roc)

    p = sub.add_parser("triptych", parents=[common, data, bands, roc], help="Three-panel diagnostic figure")
    p.add_argument("--top", type=int, help="Keep the K best forecasters of the MCB-DSC ranking")
    p.add_argument("--by", choices=["mean", "dsc", "mcb"], default="mean", help="Ranking key for --top")
    p.add_argument("--score", default="brier", help="Scoring rule for --top")
    p.set_defaults(handler=cmd_triptych)

    p = sub.add_parser("crossings", parents=[common, data], help="Sign changes and dominance of two forecasts")
    p.add_argument("--cols", required=True, help="A,B: the two forecasters to compare")
    p.add_argument("--tol", type=float, default=settings.SIGN_TOL, help="Sign-change tolerance")
    p.add_argument("--no-recalibrate", action="store_true", help="Compare the forecasts as given")
    p.set_defaults(handler=cmd_crossings)

    p = sub.add_parser("simulate", parents=[common], help="Sample Scenario A, B or C as wide CSV")
    p.add_argument("--scenario", required=True, type=str.upper, choices=["A", "B", "C"])
    p.add_argument("--n", type=int, default=settings.SIM_N, help="Number of cases")
    p.add_argument("--seed", type=int, default=settings.SEED, help="Random seed")
    p.add_argument("--workers", type=int, default=settings.WORKERS, help="Worker processes")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("scores", parents=[common, data], help="Performance summary table")
    p.add_argument("--score", default="brier,log,misclass", help="Comma-separated scoring rules")
    p.set_defaults(handler=cmd_scores)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand and return its exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    settings = Settings()
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else settings.log_level
    setup_logging(level=level, log_to_file=settings.LOG_TO_FILE)

    try:
        return args.handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CommandFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return CATEGORY_EXIT.get(e.category, EXIT_NUMERIC)
    except Exception as e:
        # library calls made directly from handlers raise instead of returning a result
        category = categorize_error(e)
        if category == "internal":
            logger.error(f"{args.command} failed: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return CATEGORY_EXIT[category]


if __name__ == "__main__":
    sys.exit(run())
