#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "clustan/dataset.hpp"
#include "clustan/error.hpp"
#include "clustan/kmeans.hpp"
#include "clustan/metrics.hpp"
#include "clustan/pam.hpp"
#include "clustan/pipeline.hpp"
#include "clustan/plots.hpp"
#include "clustan/projection.hpp"
#include "clustan/report.hpp"
#include "clustan/tendency.hpp"
#include "clustan/validation.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace clustan;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::DimensionMismatch, "expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return Matrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  std::copy(m.values().begin(), m.values().end(), out.mutable_data());
  return out;
}

std::vector<int> to_labels(const IntArray& a) { return std::vector<int>(a.data(), a.data() + a.size()); }

py::array_t<int> labels_array(const std::vector<int>& labels) { return py::array_t<int>(labels.size(), labels.data()); }

py::array_t<double> square(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  py::array_t<double> out({n, n});
  auto* p = out.mutable_data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[i * n + j] = d(i, j);
  return out;
}

KMeansInit init_from_string(const std::string& s) {
  if (s == "kmeans++") return KMeansInit::KMeansPP;
  if (s == "random") return KMeansInit::Random;
  throw Error(ErrorKind::InvalidArgument, "unknown init '" + s + "'");
}

SweepAlgorithm algorithm_from_string(const std::string& s) {
  if (s == "kmeans") return SweepAlgorithm::KMeans;
  if (s == "pam") return SweepAlgorithm::Pam;
  throw Error(ErrorKind::InvalidArgument, "unknown algorithm '" + s + "'");
}

py::dict partition_dict(const Partition& p) {
  py::dict d("labels"_a = labels_array(p.labels), "k"_a = p.k, "objective"_a = p.objective,
             "iterations"_a = p.iterations, "converged"_a = p.converged, "history"_a = p.history,
             "restart"_a = p.restart, "sizes"_a = p.sizes());
  d["centroids"] = p.centroids ? py::object(to_array(*p.centroids)) : py::none();
  return d;
}

py::dict silhouette_dict(const SilhouetteReport& s) {
  return py::dict("widths"_a = s.widths, "cluster_means"_a = s.cluster_means, "cluster_sizes"_a = s.cluster_sizes,
                  "overall"_a = s.overall, "order"_a = s.order);
}

py::dict projection_dict(const Projection2D& p) {
  return py::dict("coords"_a = to_array(p.coords), "components"_a = to_array(p.components), "mean"_a = p.mean,
                  "eigenvalues"_a = p.eigenvalues, "axis_variance"_a = p.axis_variance,
                  "total_variance"_a = p.total_variance, "degenerate"_a = p.degenerate);
}

py::dict sweep_dict(const KSweepResult& r) {
  return py::dict("ks"_a = r.ks, "avg_silhouette"_a = r.avg_silhouette, "wss"_a = r.wss, "best_k"_a = r.best_k);
}

}  // namespace

PYBIND11_MODULE(_clustan, m) {
  m.doc() = "Clustering analysis: preprocessing, Hopkins tendency, K-means, PAM, silhouette, PCA plots";
  m.attr("__version__") = std::string(kVersion);

  // Raised for every library error; `kind` carries the error category name.
  static PyObject* error_type = py::exception<Error>(m, "ClustanError", PyExc_ValueError).inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  m.def(
      "load_dataset",
      [](const std::string& path, const std::string& format, bool has_header, const std::string& missing,
         const std::string& id_column, const std::string& label_column, bool normalize) {
        CsvConfig csv;
        csv.has_header = has_header;
        csv.missing_marker = missing;
        const auto table = load_table(path, format, csv);
        PreprocessOptions opts{resolve_id_column(table, id_column), resolve_label_column(table, label_column),
                               normalize};
        const auto [ds, rep] = preprocess(table, opts);
        py::object labels = py::none();
        if (ds.labels) {
          py::list names;
          for (auto l : *ds.labels) names.append(std::string(to_string(l)));
          labels = names;
        }
        py::dict norm;
        for (const auto& [col, p] : rep.norm_params) norm[py::str(col)] = py::make_tuple(p.min, p.max);
        return py::dict("features"_a = to_array(ds.features), "row_ids"_a = ds.row_ids, "labels"_a = labels,
                        "feature_names"_a = ds.feature_names, "rows_before"_a = rep.rows_before,
                        "rows_dropped"_a = rep.rows_dropped, "dropped_row_ids"_a = rep.dropped_row_ids,
                        "normalization"_a = norm);
      },
      "path"_a, "format"_a = "auto", "has_header"_a = true, "missing"_a = "?", "id_column"_a = "auto",
      "label_column"_a = "auto", "normalize"_a = true,
      "Read a CSV or ARFF table, drop incomplete rows, split id/class columns, and min-max normalize.");

  m.def(
      "distance_matrix",
      [](const Array& x, const std::string& metric) { return square(pairwise(to_matrix(x), metric_from_string(metric))); },
      "x"_a, "metric"_a = "euclidean", "Full n x n distance matrix.");

  m.def(
      "hopkins",
      [](const Array& x, std::size_t sample, std::size_t trials, std::uint64_t seed, bool dimension_power) {
        HopkinsOptions o;
        o.m = sample;
        o.trials = trials;
        o.seed = seed;
        o.dimension_power = dimension_power;
        const auto r = hopkins(to_matrix(x), o);
        return py::dict("h"_a = r.h, "m"_a = r.m, "trials"_a = r.trials, "per_trial"_a = r.per_trial,
                        "degenerate"_a = r.degenerate);
      },
      "x"_a, "m"_a = 0, "trials"_a = 30, "seed"_a = 0, "dimension_power"_a = false,
      "Hopkins statistic averaged over seeded trials (m = 0 picks floor(n / 10)).");

  m.def(
      "kmeans",
      [](const Array& x, std::size_t k, const std::string& init, std::size_t restarts, std::size_t max_iter,
         double tol, std::uint64_t seed) {
        KMeansConfig c;
        c.k = k;
        c.init = init_from_string(init);
        c.restarts = restarts;
        c.max_iter = max_iter;
        c.tol = tol;
        c.seed = seed;
        return partition_dict(kmeans(to_matrix(x), c));
      },
      "x"_a, "k"_a, "init"_a = "kmeans++", "restarts"_a = 25, "max_iter"_a = 100, "tol"_a = 1e-9, "seed"_a = 0);

  m.def(
      "pam",
      [](const Array& x, std::size_t k, const std::string& metric, std::size_t max_swap_iters) {
        PamConfig c;
        c.k = k;
        c.metric = metric_from_string(metric);
        c.max_swap_iters = max_swap_iters;
        const auto r = pam(pairwise(to_matrix(x), c.metric), c);
        return py::dict("medoids"_a = r.medoid_indices, "labels"_a = labels_array(r.labels), "cost"_a = r.cost,
                        "swaps"_a = r.swaps_performed, "converged"_a = r.converged, "history"_a = r.history);
      },
      "x"_a, "k"_a, "metric"_a = "euclidean", "max_swap_iters"_a = 200);

  m.def(
      "silhouette",
      [](const Array& x, const IntArray& labels, const std::string& metric) {
        return silhouette_dict(silhouette(pairwise(to_matrix(x), metric_from_string(metric)), to_labels(labels)));
      },
      "x"_a, "labels"_a, "metric"_a = "euclidean");

  m.def(
      "sweep_k",
      [](const Array& x, std::size_t k_min, std::size_t k_max, const std::string& algorithm,
         const std::string& metric, std::uint64_t seed) {
        SweepConfig c;
        c.k_min = k_min;
        c.k_max = k_max;
        c.algorithm = algorithm_from_string(algorithm);
        c.metric = metric_from_string(metric);
        c.seed = seed;
        return sweep_dict(sweep_k(to_matrix(x), c));
      },
      "x"_a, "k_min"_a = 2, "k_max"_a = 10, "algorithm"_a = "kmeans", "metric"_a = "euclidean", "seed"_a = 0);

  m.def("pca_2d", [](const Array& x) { return projection_dict(pca_2d(to_matrix(x))); }, "x"_a);

  m.def(
      "scatter_svg",
      [](const Array& x, const IntArray& labels, const std::string& title) {
        return emit_scatter_svg(pca_2d(to_matrix(x)), to_labels(labels), std::nullopt, title);
      },
      "x"_a, "labels"_a, "title"_a = "Cluster plot");

  m.def(
      "silhouette_svg",
      [](const Array& x, const IntArray& labels, const std::string& title) {
        return emit_silhouette_svg(silhouette(pairwise(to_matrix(x)), to_labels(labels)), title);
      },
      "x"_a, "labels"_a, "title"_a = "Silhouette plot");

  m.def(
      "analyze",
      [](const std::string& path, const std::optional<std::string>& out_dir, std::uint64_t seed, std::size_t k,
         const std::string& id_column, const std::string& label_column, bool normalize) {
        const auto table = load_table(path, "auto");
        AnalysisConfig cfg;
        cfg.input = path;
        cfg.format = resolve_format(path, "auto");
        cfg.id_column = resolve_id_column(table, id_column);
        cfg.label_column = resolve_label_column(table, label_column);
        cfg.normalize = normalize;
        cfg.seed = seed;
        cfg.hopkins.seed = seed;
        cfg.kmeans.seed = seed;
        cfg.sweep.seed = seed;
        cfg.k = k;
        const auto artifacts = run_analysis(table, cfg);
        if (out_dir) write_outputs(artifacts, *out_dir);
        return emit_report(artifacts.report, ReportFormat::Json);
      },
      "path"_a, "out_dir"_a = py::none(), "seed"_a = 42, "k"_a = 2, "id_column"_a = "auto",
      "label_column"_a = "auto", "normalize"_a = true,
      "Full pipeline; returns the JSON report text and optionally writes all artifacts.");

  m.def("report_schema", []() { return report_schema().dump(); });
}
