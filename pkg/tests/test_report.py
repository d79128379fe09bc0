"""CSV/JSON/SVG emission: layouts, round-trips, determinism."""

import math
import xml.etree.ElementTree as ET

import pytest

from driftgate import (
    EmptyResultsError,
    UnwritablePathError,
    calibrate,
    gate_stream,
    shift_image,
    sweep,
)
from driftgate.experiments import ErrorSummary, PairTableRow, ResidualRow, SweepResult
from driftgate.report import (
    DecisionRow,
    read_decisions_csv,
    read_pair_csv,
    read_residuals_csv,
    read_sweep_csv,
    read_error_summary_json,
    write_decisions_csv,
    write_error_summary_json,
    write_pair_csv,
    write_residuals_csv,
    write_sweep_csv,
    write_sweep_svg,
)


@pytest.fixture
def sweep_rows(uniform_block):
    return sweep(uniform_block, -60, 60, step=10)


class TestSweepCsv:
    def test_round_trip(self, tmp_path, sweep_rows):
        path = tmp_path / "sweep.csv"
        write_sweep_csv(sweep_rows, path)
        assert read_sweep_csv(path) == sweep_rows

    def test_header_and_line_endings(self, tmp_path, sweep_rows):
        path = tmp_path / "sweep.csv"
        write_sweep_csv(sweep_rows, path)
        raw = path.read_bytes()
        assert raw.startswith(b"shift,hi,kl,db,space\n")
        assert b"\r" not in raw
        assert raw.count(b"\n") == len(sweep_rows) + 1

    def test_full_precision_floats_survive(self, tmp_path):
        row = SweepResult(shift=3, hi=1 / 3, kl=2 / 7, db=math.pi, space="rgb")
        path = tmp_path / "sweep.csv"
        write_sweep_csv([row], path)
        back = read_sweep_csv(path)[0]
        assert back.hi == row.hi and back.kl == row.kl and back.db == row.db

    def test_identical_inputs_identical_bytes(self, tmp_path, sweep_rows):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_sweep_csv(sweep_rows, a)
        write_sweep_csv(sweep_rows, b)
        assert a.read_bytes() == b.read_bytes()

    def test_empty_results_rejected(self, tmp_path):
        with pytest.raises(EmptyResultsError):
            write_sweep_csv([], tmp_path / "sweep.csv")

    def test_unwritable_path_rejected(self, tmp_path, sweep_rows):
        with pytest.raises(UnwritablePathError):
            write_sweep_csv(sweep_rows, tmp_path / "missing-dir" / "sweep.csv")


class TestPairCsv:
    def test_round_trip_and_header_order(self, tmp_path):
        rows = [
            PairTableRow(id1=3, id2=8, values={-120: 0.1, 0: 1.0, 120: 0.2}),
            PairTableRow(id1=8, id2=3, values={-120: 0.3, 0: 0.9, 120: 0.4}),
        ]
        path = tmp_path / "pairs.csv"
        write_pair_csv(rows, path)
        assert path.read_text().splitlines()[0] == "ID1,ID2,-120,0,120"
        assert read_pair_csv(path) == rows

    def test_default_shift_columns_match_published_layout(self, tmp_path, drive_dir):
        from driftgate import load_dataset, pair_table

        rows = pair_table(load_dataset(drive_dir), n_pairs=2, seed=1)
        path = tmp_path / "pairs.csv"
        write_pair_csv(rows, path)
        assert path.read_text().splitlines()[0] == "ID1,ID2,-120,-80,-40,0,40,80,120"

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(EmptyResultsError):
            write_pair_csv([], tmp_path / "pairs.csv")


class TestDecisionsCsv:
    def test_round_trip_through_loader(self, tmp_path, uniform_block):
        thresholds = calibrate([uniform_block], safe_shift=40)
        queries = [shift_image(uniform_block, s) for s in (0, 30, 90)]
        decisions = list(gate_stream(thresholds, uniform_block, queries))
        path = tmp_path / "decisions.csv"
        write_decisions_csv(decisions, path)
        rows = read_decisions_csv(path)
        assert [r.frame for r in rows] == [0, 1, 2]
        assert [r.safe for r in rows] == [True, True, False]
        assert rows[0].hi == decisions[0].hi
        # Writing the loaded rows again reproduces the bytes exactly.
        again = tmp_path / "again.csv"
        write_decisions_csv(rows, again)
        assert again.read_bytes() == path.read_bytes()

    def test_layout(self, tmp_path):
        rows = [DecisionRow(frame=0, hi=0.5, kl=0.25, db=0.125, safe=True, policy="any")]
        path = tmp_path / "decisions.csv"
        write_decisions_csv(rows, path)
        assert path.read_bytes() == (
            b"frame,hi,kl,db,safe,policy\n0,0.5,0.25,0.125,true,any\n"
        )


class TestResidualsCsv:
    def test_round_trip(self, tmp_path):
        rows = [
            ResidualRow(frame=0, actual=0.5, predicted=0.25, residual=0.25),
            ResidualRow(frame=1, actual=-1.0, predicted=0.0, residual=-1.0),
        ]
        path = tmp_path / "residuals.csv"
        write_residuals_csv(rows, path)
        assert read_residuals_csv(path) == rows
        assert path.read_text().splitlines()[0] == "frame,actual,predicted,residual"


class TestErrorSummaryJson:
    def test_round_trip_with_mape(self, tmp_path):
        summary = ErrorSummary(
            shift=40, n_frames=3, mae=0.1, mse=0.01, rmse=0.1, mape=12.5
        )
        path = tmp_path / "summary.json"
        write_error_summary_json(summary, path)
        assert read_error_summary_json(path) == summary

    def test_round_trip_with_blocked_mape(self, tmp_path):
        summary = ErrorSummary(
            shift=0, n_frames=2, mae=0.5, mse=0.25, rmse=0.5, mape=None,
            zero_target_frames=(0, 1),
        )
        path = tmp_path / "summary.json"
        write_error_summary_json(summary, path)
        assert read_error_summary_json(path) == summary


class TestSweepSvg:
    def test_well_formed_with_metric_polylines_and_safe_verticals(
        self, tmp_path, sweep_rows
    ):
        path = tmp_path / "sweep.svg"
        write_sweep_svg(sweep_rows, path, safe_shift=40)
        root = ET.fromstring(path.read_text())
        ns = "{http://www.w3.org/2000/svg}"
        polylines = root.findall(f"{ns}polyline")
        assert len(polylines) == 3
        cyan = [
            line for line in root.findall(f"{ns}line") if line.get("stroke") == "cyan"
        ]
        assert len(cyan) == 2
        assert cyan[0].get("x1") != cyan[1].get("x1")

    def test_single_row_is_valid_degenerate_plot(self, tmp_path, uniform_block):
        path = tmp_path / "point.svg"
        write_sweep_svg(sweep(uniform_block, 0, 0), path)
        root = ET.fromstring(path.read_text())
        assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 3

    def test_deterministic_bytes(self, tmp_path, sweep_rows):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        write_sweep_svg(sweep_rows, a)
        write_sweep_svg(sweep_rows, b)
        assert a.read_bytes() == b.read_bytes()

    def test_infinite_values_are_dropped_from_polylines(self, tmp_path):
        rows = [
            SweepResult(shift=0, hi=1.0, kl=0.0, db=0.0, space="rgb"),
            SweepResult(shift=1, hi=0.0, kl=2.0, db=math.inf, space="rgb"),
        ]
        path = tmp_path / "inf.svg"
        write_sweep_svg(rows, path)
        root = ET.fromstring(path.read_text())
        polylines = root.findall("{http://www.w3.org/2000/svg}polyline")
        points = [p.get("points").split() for p in polylines]
        assert len(points[0]) == 2 and len(points[1]) == 2
        assert len(points[2]) == 1  # the infinite db point vanished

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(EmptyResultsError):
            write_sweep_svg([], tmp_path / "sweep.svg")
