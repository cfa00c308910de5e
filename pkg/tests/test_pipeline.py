import hashlib

import numpy as np
import pytest

from pseudo3d.depth_filtering import FilterConfig
from pseudo3d.io import load_image, save_image
from pseudo3d.packing import StereoFormat
from pseudo3d.pipeline import (
    CSV_HEADER,
    INTERMEDIATE_FILES,
    PipelineConfig,
    convert,
    convert_batch,
    convert_detailed,
    write_intermediates,
    write_timings_csv,
)
from pseudo3d.stereo import StereoConfig
from pseudo3d.synthetic import landscape


def test_uniform_zero_basis_full_sbs():
    img = np.full((20, 30, 3), 123, np.uint8)
    cfg = PipelineConfig(stereo=StereoConfig(basis=0), format=StereoFormat("full-sbs"), workers=1)
    frame, pair, timings = convert(img, cfg)
    assert np.array_equal(frame, np.concatenate([img, img], axis=1))
    assert not pair.left_damage.any() and not pair.right_damage.any()
    assert timings.width == 30 and timings.height == 20


def test_timings_shape(scene):
    _, _, t = convert(scene, PipelineConfig(workers=1))
    stages = [t.segmentation, t.depth_estimation, t.filtering, t.stereo_synthesis,
              t.inpainting, t.packing]
    assert all(s >= 0 for s in stages)
    assert t.total >= sum(stages) - 1e-6
    row = t.as_row("f")
    assert tuple(row) == CSV_HEADER


def test_worker_invariance(scene):
    base = convert(scene, PipelineConfig(workers=1))[0]
    for w in (2, 3, 6):
        assert convert(scene, PipelineConfig(workers=w))[0].tobytes() == base.tobytes()


def test_intermediates(scene, tmp_path):
    result = convert_detailed(scene, PipelineConfig(stereo=StereoConfig(basis=12), workers=2))
    assert result.raw_pair.left_damage.any()
    assert not result.pair.left_damage.any()
    paths = write_intermediates(result, tmp_path / "dump")
    assert sorted(p.name for p in (tmp_path / "dump").iterdir()) == sorted(INTERMEDIATE_FILES)
    assert all(p.exists() for p in paths)


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(workers=0)
    with pytest.raises(ValueError):
        PipelineConfig(depth_anchor="left")


def _write_frames(directory, frames):
    directory.mkdir()
    for name, img in frames.items():
        save_image(img, directory / name)


def test_batch_empty(tmp_path):
    (tmp_path / "in").mkdir()
    assert convert_batch(tmp_path / "in", tmp_path / "out", PipelineConfig(workers=1)) == []


def test_batch_three_frames(tmp_path):
    frames = {f"f{i}.png": landscape(48, 32, seed=i) for i in range(3)}
    _write_frames(tmp_path / "in", frames)
    results = convert_batch(tmp_path / "in", tmp_path / "out", PipelineConfig(workers=1))
    assert [r.frame for r in results] == ["f0.png", "f1.png", "f2.png"]
    assert all(r.ok for r in results)
    for name, img in frames.items():
        expected = convert(img, PipelineConfig(workers=1))[0]
        assert np.array_equal(load_image(tmp_path / "out" / name), expected)
    write_timings_csv([r.timings.as_row(r.frame) for r in results], tmp_path / "t.csv")
    lines = (tmp_path / "t.csv").read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER) and len(lines) == 4


def test_batch_identical_copies(tmp_path):
    img = landscape(40, 30, seed=9)
    _write_frames(tmp_path / "in", {f"copy{i}.ppm": img for i in range(5)})
    results = convert_batch(
        tmp_path / "in", tmp_path / "out", PipelineConfig(workers=1), frame_workers=3
    )
    assert len(results) == 5 and all(r.ok for r in results)
    digests = {
        hashlib.sha256((tmp_path / "out" / f"copy{i}.ppm").read_bytes()).hexdigest()
        for i in range(5)
    }
    assert len(digests) == 1


def test_batch_reports_bad_frame(tmp_path):
    _write_frames(tmp_path / "in", {"a.png": landscape(24, 16, seed=1)})
    (tmp_path / "in" / "b.ppm").write_bytes(b"P6\n3")
    results = convert_batch(
        tmp_path / "in", tmp_path / "out", PipelineConfig(workers=1), dump_dir=tmp_path / "dump"
    )
    assert [r.ok for r in results] == [True, False]
    assert "malformed header" in results[1].error
    assert (tmp_path / "dump" / "a" / "packed.png").exists()


def test_filter_changes_depth(scene):
    res = convert_detailed(scene, PipelineConfig(filter=FilterConfig(blend_alpha=1.0), workers=1))
    assert not np.array_equal(res.filtered_depth, res.primary_depth)
