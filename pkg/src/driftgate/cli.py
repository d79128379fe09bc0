"""Command-line interface: ``driftgate <subcommand>``.

Exit codes: 0 on success (and on an all-safe gate run), 2 when the gate
marks any frame unsafe, 1 for operational failures (bad arguments, missing
files, malformed inputs).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .dataset import NamingConfig, load_dataset, read_predictions_csv
from .distances import DEFAULT_EPSILON, distance_report, write_distance_csv
from .exceptions import DriftGateError
from .experiments import (
    DEFAULT_PAIR_SHIFTS,
    DEFAULT_SWEEP_RANGE,
    METRIC_NAMES,
    evaluate_errors,
    pair_table,
    sweep,
)
from .gate import (
    SafetyThresholds,
    calibrate,
    first_unsafe_frame,
    gate_stream,
    load_thresholds,
    save_thresholds,
)
from .histogram import build_histogram, write_histogram_csv
from .image import PreprocessSpec, load_image, preprocess, save_image, shift_image, to_space
from .report import (
    write_decisions_csv,
    write_error_summary_json,
    write_pair_csv,
    write_residuals_csv,
    write_sweep_csv,
    write_sweep_svg,
)


class _Parser(argparse.ArgumentParser):
    """argparse reserves exit code 2 for usage errors; here 2 means gate-unsafe."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--space", choices=("rgb", "yuv"), default="rgb", help="color space to histogram in"
    )
    common.add_argument(
        "--epsilon",
        type=float,
        default=DEFAULT_EPSILON,
        help="additive smoothing for the divergence metric (default %(default)s)",
    )
    common.add_argument(
        "--seed", type=int, default=0, help="seed for randomized selections (default 0)"
    )
    common.add_argument("--out", type=Path, help="output file path")

    parser = _Parser(prog="driftgate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = sub.add_parser("shift", parents=[common], help="apply a saturating intensity shift")
    p.add_argument("image", type=Path, help="input image (JPEG/PNG)")
    p.add_argument("-s", "--shift", type=int, required=True, help="signed shift in [-255, 255]")

    p = sub.add_parser("preprocess", parents=[common], help="crop/resize a frame for a model")
    p.add_argument("image", type=Path)
    p.add_argument("--crop-top", type=int, default=60, help="rows to drop from the top")
    p.add_argument("--crop-bottom", type=int, default=25, help="rows to drop from the bottom")
    p.add_argument("--width", type=int, default=200, help="output width")
    p.add_argument("--height", type=int, default=66, help="output height")

    p = sub.add_parser("hist", parents=[common], help="write an intensity histogram CSV")
    p.add_argument("image", type=Path)

    p = sub.add_parser("dist", parents=[common], help="distances between two images")
    p.add_argument("image1", type=Path)
    p.add_argument("image2", type=Path)

    p = sub.add_parser("sweep", parents=[common], help="distances to shifted copies of an image")
    p.add_argument("image", type=Path)
    p.add_argument(
        "--from",
        dest="from_shift",
        type=int,
        default=DEFAULT_SWEEP_RANGE[0],
        help="first shift (default %(default)s)",
    )
    p.add_argument(
        "--to",
        dest="to_shift",
        type=int,
        default=DEFAULT_SWEEP_RANGE[1],
        help="last shift (default %(default)s)",
    )
    p.add_argument("--step", type=int, default=1, help="shift increment (default 1)")
    p.add_argument("--svg", type=Path, help="also plot the curves to this SVG file")
    p.add_argument(
        "--safe-shift",
        type=int,
        default=40,
        help="where to draw the safe-band verticals in the SVG (default 40)",
    )

    p = sub.add_parser("pairs", parents=[common], help="metric table over random frame pairs")
    p.add_argument("dataset", type=Path, help="drive-log directory")
    p.add_argument("--n-pairs", type=int, default=50, help="pairs to sample (default 50)")
    p.add_argument("--metric", choices=METRIC_NAMES, default="hi", help="metric to tabulate")
    p.add_argument(
        "--shifts",
        type=str,
        default=",".join(str(s) for s in DEFAULT_PAIR_SHIFTS),
        help="comma-separated shift columns (default %(default)s)",
    )
    p.add_argument("--naming", type=Path, help="JSON file overriding dataset naming")

    p = sub.add_parser("calibrate", parents=[common], help="derive gate thresholds")
    p.add_argument("references", type=Path, nargs="*", help="reference images")
    p.add_argument(
        "--safe-shift", type=int, default=40, help="declared safe shift sr (default 40)"
    )
    p.add_argument("--hi-min", type=float, help="override the intersection floor")
    p.add_argument("--kl-max", type=float, help="override the divergence ceiling")
    p.add_argument("--db-max", type=float, help="override the distance ceiling")

    p = sub.add_parser("gate", parents=[common], help="gate query frames against a reference")
    p.add_argument("reference", type=Path, help="reference image")
    p.add_argument("queries", type=Path, nargs="+", help="query images, gated in order")
    p.add_argument("--thresholds", type=Path, required=True, help="thresholds JSON from calibrate")
    p.add_argument("--policy", choices=("any", "all"), default="any", help="gate policy")

    p = sub.add_parser("errors", parents=[common], help="prediction error vs. logged steering")
    p.add_argument("dataset", type=Path, help="drive-log directory")
    p.add_argument("predictions", type=Path, help="CSV with header frame,prediction")
    p.add_argument("--shift", type=int, default=0, help="shift condition tag (default 0)")
    p.add_argument("--naming", type=Path, help="JSON file overriding dataset naming")
    p.add_argument("--residuals", type=Path, help="also write per-frame residuals CSV here")

    return parser


def _require_out(args) -> Path:
    if args.out is None:
        raise DriftGateError("this subcommand needs --out")
    return args.out


def _naming(args) -> NamingConfig:
    return NamingConfig.from_file(args.naming) if args.naming else NamingConfig()


def _cmd_shift(args) -> int:
    save_image(shift_image(load_image(args.image), args.shift), _require_out(args))
    return 0


def _cmd_preprocess(args) -> int:
    spec = PreprocessSpec(
        crop_top_rows=args.crop_top,
        crop_bottom_rows=args.crop_bottom,
        target_width=args.width,
        target_height=args.height,
        output_space=args.space,
    )
    save_image(preprocess(load_image(args.image), spec), _require_out(args))
    return 0


def _cmd_hist(args) -> int:
    hist = build_histogram(to_space(load_image(args.image), args.space))
    write_histogram_csv(hist, _require_out(args))
    return 0


def _cmd_dist(args) -> int:
    p = build_histogram(to_space(load_image(args.image1), args.space))
    q = build_histogram(to_space(load_image(args.image2), args.space))
    report = distance_report(p, q, args.space, args.epsilon)
    print(f"hi={report.hi} kl={report.kl} db={report.db} space={report.space}")
    if args.out is not None:
        write_distance_csv(report, args.out)
    return 0


def _cmd_sweep(args) -> int:
    results = sweep(
        load_image(args.image),
        args.from_shift,
        args.to_shift,
        args.step,
        args.space,
        args.epsilon,
    )
    write_sweep_csv(results, _require_out(args))
    if args.svg is not None:
        write_sweep_svg(results, args.svg, args.safe_shift)
    print(f"{len(results)} shifts -> {args.out}")
    return 0


def _cmd_pairs(args) -> int:
    records = load_dataset(args.dataset, _naming(args))
    shifts = tuple(int(s) for s in args.shifts.split(","))
    rows = pair_table(
        records, args.n_pairs, shifts, args.metric, args.space, args.epsilon, args.seed
    )
    write_pair_csv(rows, _require_out(args))
    # Display copy rounds to two decimals; the CSV keeps full precision.
    print(",".join(["ID1", "ID2"] + [str(s) for s in shifts]))
    for row in rows:
        cells = [str(row.id1), str(row.id2)] + [f"{row.values[s]:.2f}" for s in shifts]
        print(",".join(cells))
    print(f"{len(rows)} pairs -> {args.out}")
    return 0


def _cmd_calibrate(args) -> int:
    overrides = {"hi_min": args.hi_min, "kl_max": args.kl_max, "db_max": args.db_max}
    if args.references:
        thresholds = calibrate(
            [load_image(path) for path in args.references],
            args.safe_shift,
            args.space,
            args.epsilon,
        )
        for name, value in overrides.items():
            if value is not None:
                thresholds = dataclasses.replace(thresholds, **{name: value})
    elif all(value is not None for value in overrides.values()):
        thresholds = SafetyThresholds(
            hi_min=args.hi_min,
            kl_max=args.kl_max,
            db_max=args.db_max,
            safe_shift=args.safe_shift,
            space=args.space,
            epsilon=args.epsilon,
        )
    else:
        raise DriftGateError(
            "calibrate needs reference images, or all of --hi-min/--kl-max/--db-max"
        )
    save_thresholds(thresholds, _require_out(args))
    print(
        f"hi_min={thresholds.hi_min} kl_max={thresholds.kl_max} "
        f"db_max={thresholds.db_max} -> {args.out}"
    )
    return 0


def _cmd_gate(args) -> int:
    thresholds = load_thresholds(args.thresholds)
    reference = load_image(args.reference)
    queries = (load_image(path) for path in args.queries)
    decisions = list(gate_stream(thresholds, reference, queries, args.policy))
    for decision, path in zip(decisions, args.queries):
        verdict = "safe" if decision.safe else "UNSAFE"
        detail = decision.error or f"hi={decision.hi} kl={decision.kl} db={decision.db}"
        print(f"frame {decision.frame} ({path.name}): {verdict} {detail}")
    if args.out is not None:
        write_decisions_csv(decisions, args.out)
    unsafe = first_unsafe_frame(decisions)
    if unsafe is not None:
        print(f"first unsafe frame: {unsafe}")
        return 2
    return 0


def _cmd_errors(args) -> int:
    records = load_dataset(args.dataset, _naming(args))
    predictions = read_predictions_csv(args.predictions)
    summary, residuals = evaluate_errors(records, predictions, args.shift)
    mape = "n/a (zero targets)" if summary.mape is None else summary.mape
    print(
        f"n={summary.n_frames} shift={summary.shift} mae={summary.mae} "
        f"mse={summary.mse} rmse={summary.rmse} mape={mape}"
    )
    if args.out is not None:
        write_error_summary_json(summary, args.out)
    if args.residuals is not None:
        write_residuals_csv(residuals, args.residuals)
    return 0


_COMMANDS = {
    "shift": _cmd_shift,
    "preprocess": _cmd_preprocess,
    "hist": _cmd_hist,
    "dist": _cmd_dist,
    "sweep": _cmd_sweep,
    "pairs": _cmd_pairs,
    "calibrate": _cmd_calibrate,
    "gate": _cmd_gate,
    "errors": _cmd_errors,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (DriftGateError, OSError, ValueError) as exc:
        print(f"driftgate: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
