import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

import clustan

ROOT = Path(__file__).resolve().parents[2]
WBC = ROOT / "data" / "wbc.csv"


def two_groups():
    return np.array([[0.0], [1.0], [2.0], [10.0], [11.0], [12.0]])


def test_load_dataset():
    ds = clustan.load_dataset(str(WBC))
    assert ds["features"].shape == (683, 9)
    assert ds["rows_dropped"] == 16
    assert ds["features"].min() == 0.0 and ds["features"].max() == 1.0
    assert ds["labels"].count("Benign") == 444


def test_kmeans_and_pam_on_two_groups():
    x = two_groups()
    km = clustan.kmeans(x, 2)
    assert km["objective"] == 4.0
    assert sorted(km["centroids"][:, 0]) == [1.0, 11.0]
    pm = clustan.pam(x, 2)
    assert pm["medoids"] == [1, 4]
    assert pm["cost"] == 4.0
    sil = clustan.silhouette(x, pm["labels"])
    assert sil["widths"][0] == pytest.approx((11 - 1.5) / 11)


def test_distance_matrix_matches_numpy():
    rng = np.random.default_rng(0)
    x = rng.random((30, 4))
    d = clustan.distance_matrix(x)
    ref = np.sqrt(((x[:, None, :] - x[None, :, :]) ** 2).sum(-1))
    assert np.allclose(d, ref, atol=1e-14)


def test_hopkins_and_sweep():
    rng = np.random.default_rng(1)
    blobs = np.vstack([rng.normal(0, 0.2, (50, 2)), rng.normal(5, 0.2, (50, 2))])
    assert clustan.hopkins(blobs, seed=3)["h"] > 0.75
    sw = clustan.sweep_k(blobs, 2, 5)
    assert sw["best_k"] == 2


def test_pca_and_plots():
    x = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    p = clustan.pca_2d(x)
    assert np.allclose(p["coords"][:, 0], [-1.5, -0.5, 0.5, 1.5])
    svg = clustan.scatter_svg(x, np.array([0, 0, 1, 1]))
    assert svg.count('class="point"') == 4
    assert clustan.silhouette_svg(x, np.array([0, 0, 1, 1])).count('class="bar"') == 4


def test_errors():
    with pytest.raises(clustan.ClustanError) as info:
        clustan.kmeans(two_groups(), 10)
    assert info.value.kind == "TooFewPoints"
    with pytest.raises(ValueError):
        clustan.load_dataset("/nonexistent/file.csv")


def test_analyze_report_matches_schema(tmp_path):
    report = clustan.analyze(WBC, tmp_path, seed=7)
    schema = json.loads((ROOT / "schema" / "report.schema.json").read_text())
    jsonschema.validate(report, schema)
    assert report == json.loads((tmp_path / "report.json").read_text())
    assert report["dataset"]["rows"] == 683
    assert (tmp_path / "sweep.svg").exists()
    assert clustan.report_schema() == schema
