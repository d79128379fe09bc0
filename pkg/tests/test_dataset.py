"""Drive-log directory ingestion and prediction alignment."""

import json

import numpy as np
import pytest

from driftgate import (
    CoverageGapError,
    MalformedRecordError,
    MissingRecordError,
    NamingConfig,
    load_dataset,
    read_predictions_csv,
)
from driftgate.dataset import match_predictions
from conftest import write_drive_log


class TestLoadDataset:
    def test_records_sorted_by_frame_index(self, drive_dir):
        records = load_dataset(drive_dir)
        assert [r.frame_index for r in records] == [0, 1, 2, 3]
        assert [r.steering for r in records] == [0.5, -0.25, 0.125, 1.0]
        assert all(r.throttle == 0.3 for r in records)
        assert all(r.image_path.exists() for r in records)

    def test_empty_directory_gives_empty_list(self, tmp_path):
        assert load_dataset(tmp_path) == []

    def test_unrelated_files_ignored(self, drive_dir):
        (drive_dir / "notes.txt").write_text("calibration day")
        assert len(load_dataset(drive_dir)) == 4

    def test_image_without_record_rejected(self, drive_dir):
        (drive_dir / "record_2.json").unlink()
        with pytest.raises(MissingRecordError, match="frame 2"):
            load_dataset(drive_dir)

    def test_record_without_image_rejected(self, drive_dir):
        (drive_dir / "2_cam-image_array_.jpg").unlink()
        with pytest.raises(MissingRecordError, match="2"):
            load_dataset(drive_dir)

    def test_invalid_json_rejected(self, drive_dir):
        (drive_dir / "record_1.json").write_text("{steering:")
        with pytest.raises(MalformedRecordError, match="frame 1"):
            load_dataset(drive_dir)

    def test_missing_keys_rejected(self, drive_dir):
        (drive_dir / "record_3.json").write_text(json.dumps({"angle": 0.5}))
        with pytest.raises(MalformedRecordError, match="frame 3"):
            load_dataset(drive_dir)

    def test_indices_need_not_be_contiguous(self, tmp_path, rng):
        directory = tmp_path / "gappy"
        directory.mkdir()
        image = rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8)
        for index in (5, 900, 31):
            from driftgate import save_image

            save_image(image, directory / f"{index}_cam-image_array_.jpg")
            (directory / f"record_{index}.json").write_text(
                json.dumps({"steering": 0.0, "throttle": 0.0})
            )
        assert [r.frame_index for r in load_dataset(directory)] == [5, 31, 900]


class TestNamingConfig:
    def test_custom_patterns(self, tmp_path, rng):
        images = [rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8) for _ in range(2)]
        directory = write_drive_log(
            tmp_path / "alt",
            images,
            steering=[0.1, 0.2],
            image_suffix="_frame.png",
            record_template="meta_{index}.json",
        )
        naming = NamingConfig(image_suffix="_frame.png", record_template="meta_{index}.json")
        records = load_dataset(directory, naming)
        assert [r.frame_index for r in records] == [0, 1]

    def test_custom_json_keys(self, tmp_path, rng):
        directory = tmp_path / "keys"
        directory.mkdir()
        from driftgate import save_image

        save_image(rng.integers(0, 256, size=(8, 8, 3), dtype=np.uint8),
                   directory / "0_cam-image_array_.jpg")
        (directory / "record_0.json").write_text(json.dumps({"angle": 0.7, "speed": 0.2}))
        naming = NamingConfig(steering_key="angle", throttle_key="speed")
        record = load_dataset(directory, naming)[0]
        assert record.steering == 0.7 and record.throttle == 0.2

    def test_from_file_overrides_and_defaults(self, tmp_path):
        path = tmp_path / "naming.json"
        path.write_text(json.dumps({"steering_key": "angle"}))
        naming = NamingConfig.from_file(path)
        assert naming.steering_key == "angle"
        assert naming.image_suffix == "_cam-image_array_.jpg"

    def test_from_file_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "naming.json"
        path.write_text(json.dumps({"steering": "angle"}))
        with pytest.raises(MalformedRecordError):
            NamingConfig.from_file(path)


class TestPredictions:
    def test_read_predictions_csv(self, tmp_path):
        path = tmp_path / "preds.csv"
        path.write_text("frame,prediction\n0,0.5\n2,-0.25\n")
        assert read_predictions_csv(path) == {0: 0.5, 2: -0.25}

    def test_match_predictions_aligns_by_frame(self, drive_dir):
        records = load_dataset(drive_dir)
        predictions = {0: 0.0, 1: 0.1, 2: 0.2, 3: 0.3}
        actual, predicted = match_predictions(records, predictions)
        assert actual == [0.5, -0.25, 0.125, 1.0]
        assert predicted == [0.0, 0.1, 0.2, 0.3]

    def test_coverage_gap_lists_missing_frames(self, drive_dir):
        records = load_dataset(drive_dir)
        with pytest.raises(CoverageGapError) as excinfo:
            match_predictions(records, {0: 0.0, 2: 0.2})
        assert excinfo.value.missing == [1, 3]
