"""Clustering analysis toolkit (C++ core)."""

import json

from ._clustan import (
    ClustanError,
    __version__,
    distance_matrix,
    hopkins,
    kmeans,
    load_dataset,
    pam,
    pca_2d,
    scatter_svg,
    silhouette,
    silhouette_svg,
    sweep_k,
)
from ._clustan import analyze as _analyze
from ._clustan import report_schema as _report_schema


def analyze(path, out_dir=None, **kwargs):
    """Run the full pipeline and return the report as a dict."""
    return json.loads(_analyze(str(path), None if out_dir is None else str(out_dir), **kwargs))


def report_schema():
    return json.loads(_report_schema())


__all__ = [
    "ClustanError",
    "__version__",
    "analyze",
    "distance_matrix",
    "hopkins",
    "kmeans",
    "load_dataset",
    "pam",
    "pca_2d",
    "report_schema",
    "scatter_svg",
    "silhouette",
    "silhouette_svg",
    "sweep_k",
]
