"""Report emission: CSV tables, JSON summaries, and SVG sweep plots.

Every writer is deterministic — identical inputs produce byte-identical
files — and every CSV has a matching reader so emitted artifacts round-trip.
CSV conventions: comma-separated, one header row, LF line endings, floats at
full precision (shortest round-trip form).
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .exceptions import EmptyResultsError, UnwritablePathError
from .experiments import ErrorSummary, PairTableRow, ResidualRow, SweepResult
from .gate import GateDecision

SVG_WIDTH, SVG_HEIGHT = 800, 500
_PLOT = {"left": 60.0, "right": 780.0, "top": 20.0, "bottom": 460.0}
_METRIC_COLORS = {"hi": "#1f77b4", "kl": "#d62728", "db": "#2ca02c"}


def _open_for_write(path: str | Path) -> TextIO:
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise UnwritablePathError(f"cannot write {path}: {exc}")


def _write_text(path: str | Path, text: str) -> None:
    fh = _open_for_write(path)
    with fh:
        fh.write(text)


def _require_rows(rows: Sequence, kind: str) -> Sequence:
    if not rows:
        raise EmptyResultsError(f"refusing to emit an empty {kind} report")
    return rows


def write_sweep_csv(results: Sequence[SweepResult], path: str | Path) -> None:
    """Emit sweep rows as ``shift,hi,kl,db,space``."""
    _require_rows(results, "sweep")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["shift", "hi", "kl", "db", "space"])
        for row in results:
            writer.writerow([row.shift, row.hi, row.kl, row.db, row.space])


def read_sweep_csv(path: str | Path) -> list[SweepResult]:
    """Load rows written by :func:`write_sweep_csv`."""
    with open(path, newline="") as fh:
        return [
            SweepResult(
                shift=int(row["shift"]),
                hi=float(row["hi"]),
                kl=float(row["kl"]),
                db=float(row["db"]),
                space=row["space"],
            )
            for row in csv.DictReader(fh)
        ]


def write_pair_csv(rows: Sequence[PairTableRow], path: str | Path) -> None:
    """Emit pair-table rows as ``ID1,ID2,<shift columns>``.

    The shift columns come from the rows' value keys, in their stored order.
    """
    _require_rows(rows, "pair-table")
    shifts = list(rows[0].values)
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["ID1", "ID2", *shifts])
        for row in rows:
            writer.writerow([row.id1, row.id2, *(row.values[s] for s in shifts)])


def read_pair_csv(path: str | Path) -> list[PairTableRow]:
    """Load rows written by :func:`write_pair_csv`."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        shifts = [int(column) for column in header[2:]]
        return [
            PairTableRow(
                id1=int(row[0]),
                id2=int(row[1]),
                values={s: float(v) for s, v in zip(shifts, row[2:])},
            )
            for row in reader
        ]


@dataclass(frozen=True)
class DecisionRow:
    """Flat form of a gate decision as it appears in CSV."""

    frame: int
    hi: float
    kl: float
    db: float
    safe: bool
    policy: str


def write_decisions_csv(decisions: Sequence[GateDecision | DecisionRow], path: str | Path) -> None:
    """Emit gate decisions as ``frame,hi,kl,db,safe,policy``."""
    _require_rows(decisions, "decisions")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["frame", "hi", "kl", "db", "safe", "policy"])
        for d in decisions:
            writer.writerow(
                [d.frame, d.hi, d.kl, d.db, "true" if d.safe else "false", d.policy]
            )


def read_decisions_csv(path: str | Path) -> list[DecisionRow]:
    """Load rows written by :func:`write_decisions_csv`."""
    with open(path, newline="") as fh:
        return [
            DecisionRow(
                frame=int(row["frame"]),
                hi=float(row["hi"]),
                kl=float(row["kl"]),
                db=float(row["db"]),
                safe=row["safe"] == "true",
                policy=row["policy"],
            )
            for row in csv.DictReader(fh)
        ]


def write_residuals_csv(residuals: Sequence[ResidualRow], path: str | Path) -> None:
    """Emit per-frame residuals as ``frame,actual,predicted,residual``."""
    _require_rows(residuals, "residuals")
    with _open_for_write(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["frame", "actual", "predicted", "residual"])
        for row in residuals:
            writer.writerow([row.frame, row.actual, row.predicted, row.residual])


def read_residuals_csv(path: str | Path) -> list[ResidualRow]:
    """Load rows written by :func:`write_residuals_csv`."""
    with open(path, newline="") as fh:
        return [
            ResidualRow(
                frame=int(row["frame"]),
                actual=float(row["actual"]),
                predicted=float(row["predicted"]),
                residual=float(row["residual"]),
            )
            for row in csv.DictReader(fh)
        ]


def write_error_summary_json(summary: ErrorSummary, path: str | Path) -> None:
    """Persist an error summary; ``mape`` is null when zero targets blocked it."""
    payload = {
        "shift": summary.shift,
        "n_frames": summary.n_frames,
        "mae": summary.mae,
        "mse": summary.mse,
        "rmse": summary.rmse,
        "mape": summary.mape,
        "zero_target_frames": list(summary.zero_target_frames),
    }
    _write_text(path, json.dumps(payload, indent=2) + "\n")


def read_error_summary_json(path: str | Path) -> ErrorSummary:
    """Load a summary written by :func:`write_error_summary_json`."""
    payload = json.loads(Path(path).read_text())
    return ErrorSummary(
        shift=payload["shift"],
        n_frames=payload["n_frames"],
        mae=payload["mae"],
        mse=payload["mse"],
        rmse=payload["rmse"],
        mape=payload["mape"],
        zero_target_frames=tuple(payload["zero_target_frames"]),
    )


def write_sweep_svg(
    results: Sequence[SweepResult], path: str | Path, safe_shift: int = 40
) -> None:
    """Plot the three metric curves over shift, marking the safe band.

    One polyline per metric, plus two cyan verticals at ``±safe_shift``
    (clamped to the plot edges when the sweep range is narrower).  Points
    with non-finite values are dropped from their polyline.
    """
    _require_rows(results, "sweep-plot")
    left, right = _PLOT["left"], _PLOT["right"]
    top, bottom = _PLOT["top"], _PLOT["bottom"]
    x_lo = min(r.shift for r in results)
    x_hi = max(r.shift for r in results)
    x_span = (x_hi - x_lo) or 1
    finite = [
        v for r in results for v in (r.hi, r.kl, r.db) if math.isfinite(v)
    ]
    y_hi = max(1.0, max(finite)) if finite else 1.0

    def x_px(shift: float) -> float:
        return min(right, max(left, left + (shift - x_lo) / x_span * (right - left)))

    def y_px(value: float) -> float:
        return bottom - value / y_hi * (bottom - top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for mark in (-safe_shift, safe_shift):
        px = f"{x_px(mark):.2f}"
        parts.append(
            f'<line x1="{px}" y1="{top}" x2="{px}" y2="{bottom}" '
            'stroke="cyan" stroke-width="2"/>'
        )
    parts.append(
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>'
    )
    parts.append(f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>')
    ticks = {x_lo, x_hi}
    if x_lo <= 0 <= x_hi:
        ticks.add(0)
    for shift in sorted(ticks):
        parts.append(
            f'<text x="{x_px(shift):.2f}" y="{bottom + 20:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle">{shift}</text>'
        )
    for value in (0.0, y_hi):
        parts.append(
            f'<text x="{left - 8:.2f}" y="{y_px(value) + 4:.2f}" font-family="sans-serif" '
            f'font-size="12" text-anchor="end">{value:g}</text>'
        )
    for offset, (name, color) in enumerate(_METRIC_COLORS.items()):
        points = " ".join(
            f"{x_px(r.shift):.2f},{y_px(getattr(r, name)):.2f}"
            for r in results
            if math.isfinite(getattr(r, name))
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )
        parts.append(
            f'<text x="{right - 60:.2f}" y="{top + 16 + 16 * offset:.2f}" '
            f'font-family="sans-serif" font-size="12" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    _write_text(path, "\n".join(parts) + "\n")
