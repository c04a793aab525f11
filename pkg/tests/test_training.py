import numpy as np
import pytest

from conftest import make_overfit_fixture, write_manifest
from photocoach.errors import EmptyDatasetError, ShapeError
from photocoach.imagecore import RasterImage, save_ppm
from photocoach.model import (
    ATTRIBUTES,
    ManifestRecord,
    NetworkConfig,
    ScoringNetwork,
    evaluate_manifest,
    load_manifest,
    prepare_example,
    split_records,
    train_network,
)

TINY = dict(stage_channels=(2, 4), shared_dim=8, head_hidden=4)


def _save_noise(path, side, seed):
    rng = np.random.default_rng(seed)
    save_ppm(RasterImage(rng.random((side, side, 3))), path)


def test_load_manifest_parses_and_resolves_paths(tmp_path):
    _save_noise(tmp_path / "a.ppm", 20, 1)
    manifest = write_manifest(tmp_path, [("a.ppm", [0.5] * 7)])
    records = load_manifest(manifest)
    assert len(records) == 1
    assert records[0].path == tmp_path / "a.ppm"
    assert records[0].overall == 0.5
    assert records[0].attributes.shape == (6,)


def test_load_manifest_rejects_bad_header(tmp_path):
    bad = tmp_path / "m.csv"
    bad.write_text("path,overall,wrong\nx.ppm,0.5,0.5\n")
    with pytest.raises(ShapeError):
        load_manifest(bad)


def test_load_manifest_rejects_out_of_range_labels(tmp_path):
    lines = ["path,overall," + ",".join(ATTRIBUTES)]
    lines.append("x.ppm,1.5," + ",".join(["0.5"] * 6))
    bad = tmp_path / "m.csv"
    bad.write_text("\n".join(lines) + "\n")
    with pytest.raises(ShapeError):
        load_manifest(bad)


def test_load_manifest_rejects_non_numeric_and_short_rows(tmp_path):
    header = "path,overall," + ",".join(ATTRIBUTES)
    bad = tmp_path / "m.csv"
    bad.write_text(header + "\nx.ppm,abc," + ",".join(["0.5"] * 6) + "\n")
    with pytest.raises(ShapeError):
        load_manifest(bad)
    bad.write_text(header + "\nx.ppm,0.5,0.5\n")
    with pytest.raises(ShapeError):
        load_manifest(bad)


def test_load_manifest_empty_cases(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(EmptyDatasetError):
        load_manifest(empty)
    header_only = tmp_path / "h.csv"
    header_only.write_text("path,overall," + ",".join(ATTRIBUTES) + "\n")
    with pytest.raises(EmptyDatasetError):
        load_manifest(header_only)


def test_split_uses_floor_and_partitions():
    records = [ManifestRecord(f"p{i}", 0.5, np.full(6, 0.5)) for i in range(10)]
    rng = np.random.default_rng(0)
    train, val = split_records(records, rng, 0.9)
    assert len(train) == 9 and len(val) == 1
    got = sorted(r.path for r in train + val)
    assert got == sorted(r.path for r in records)
    # fraction that does not divide evenly still floors
    train, val = split_records(records[:7], np.random.default_rng(1), 0.9)
    assert len(train) == 6 and len(val) == 1


def test_split_is_seed_deterministic():
    records = [ManifestRecord(f"p{i}", 0.5, np.full(6, 0.5)) for i in range(20)]
    t1, v1 = split_records(records, np.random.default_rng(5), 0.9)
    t2, v2 = split_records(records, np.random.default_rng(5), 0.9)
    assert [r.path for r in t1] == [r.path for r in t2]
    assert [r.path for r in v1] == [r.path for r in v2]


def test_prepare_example_feature_map_path(tmp_path):
    cfg = NetworkConfig(**TINY)
    net = ScoringNetwork(cfg)
    fm = np.random.default_rng(3).random((cfg.feature_channels, 5, 5))
    np.save(tmp_path / "fm.npy", fm)
    rec = ManifestRecord(tmp_path / "fm.npy", 0.7, np.full(6, 0.4))
    ex = prepare_example(rec, net)
    assert ex.is_features
    assert np.array_equal(ex.x, fm)

    wrong = np.zeros((cfg.feature_channels + 1, 5, 5))
    np.save(tmp_path / "bad.npy", wrong)
    with pytest.raises(ShapeError):
        prepare_example(ManifestRecord(tmp_path / "bad.npy", 0.7, np.full(6, 0.4)), net)


def test_training_skips_unreadable_rows(tmp_path):
    _save_noise(tmp_path / "ok1.ppm", 20, 1)
    _save_noise(tmp_path / "ok2.ppm", 20, 2)
    _save_noise(tmp_path / "ok3.ppm", 20, 3)
    (tmp_path / "broken.ppm").write_bytes(b"P6 not really")
    rows = [(f"ok{i}.ppm", [0.5] * 7) for i in (1, 2, 3)]
    rows.append(("broken.ppm", [0.5] * 7))
    rows.append(("missing.ppm", [0.5] * 7))
    manifest = write_manifest(tmp_path, rows)

    cfg = NetworkConfig(epochs=1, train_fraction=0.8, **TINY)
    net, report = train_network(manifest, cfg)
    assert len(report.skipped) == 2
    assert report.train_size + report.val_size == 3
    assert report.epochs_run == 1


def test_training_raises_when_nothing_readable(tmp_path):
    (tmp_path / "broken.ppm").write_bytes(b"junk")
    manifest = write_manifest(tmp_path, [("broken.ppm", [0.5] * 7)])
    with pytest.raises(EmptyDatasetError):
        train_network(manifest, NetworkConfig(epochs=1, **TINY))


def test_training_is_seed_deterministic(tmp_path):
    manifest = make_overfit_fixture(tmp_path, n=6, side=16, seed=3)
    cfg = NetworkConfig(epochs=3, seed=11, **TINY)
    net1, rep1 = train_network(manifest, cfg)
    net2, rep2 = train_network(manifest, cfg)
    assert rep1.epoch_losses == rep2.epoch_losses
    for name in net1.params:
        assert np.array_equal(net1.params[name].weights, net2.params[name].weights)

    net3, rep3 = train_network(manifest, NetworkConfig(epochs=3, seed=12, **TINY))
    assert rep1.epoch_losses != rep3.epoch_losses


def test_training_loss_decreases_and_stop_loss_halts(tmp_path):
    manifest = make_overfit_fixture(tmp_path, n=5, side=16, seed=7)
    cfg = NetworkConfig(epochs=120, seed=0, **TINY)
    epochs_seen = []
    net, report = train_network(manifest, cfg, stop_loss=0.2,
                                on_epoch=lambda e, l: epochs_seen.append(e))
    assert report.epoch_losses[-1] <= 0.2
    assert report.epochs_run < 120
    assert epochs_seen == list(range(1, report.epochs_run + 1))
    assert report.final_loss == report.epoch_losses[-1]
    assert report.epoch_losses[-1] < report.epoch_losses[0]


def test_validation_report_present_when_split_leaves_rows(tmp_path):
    manifest = make_overfit_fixture(tmp_path, n=10, side=16, seed=9)
    cfg = NetworkConfig(epochs=1, train_fraction=0.9, **TINY)
    net, report = train_network(manifest, cfg)
    assert report.val_size == 1
    assert report.validation is not None
    assert 0.0 <= report.validation.agreement_overall <= 1.0


def test_evaluate_manifest_round_trip(tmp_path):
    manifest = make_overfit_fixture(tmp_path, n=6, side=16, seed=21)
    cfg = NetworkConfig(epochs=1, **TINY)
    net, _ = train_network(manifest, cfg)
    report, skipped = evaluate_manifest(net, manifest)
    assert skipped == []
    d = report.to_dict()
    assert "spearman_overall" in d and "agreement_overall" in d
