#include "clustan/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "clustan/error.hpp"
#include "clustan/parallel.hpp"

namespace clustan {

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::Euclidean: return "euclidean";
    case Metric::SquaredEuclidean: return "sqeuclidean";
    case Metric::Manhattan: return "manhattan";
  }
  return "euclidean";
}

Metric metric_from_string(std::string_view name) {
  if (name == "euclidean") return Metric::Euclidean;
  if (name == "sqeuclidean") return Metric::SquaredEuclidean;
  if (name == "manhattan") return Metric::Manhattan;
  throw Error(ErrorKind::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "vectors of length " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double acc = 0.0;
  switch (metric) {
    case Metric::Euclidean:
    case Metric::SquaredEuclidean:
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
      }
      return metric == Metric::Euclidean ? std::sqrt(acc) : acc;
    case Metric::Manhattan:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
  }
  return acc;
}

DistanceMatrix::DistanceMatrix(std::size_t n, Metric metric, std::vector<double> values)
    : n_(n), metric_(metric), values_(std::move(values)) {
  if (values_.size() != (n_ < 2 ? 0 : n_ * (n_ - 1) / 2)) {
    throw Error(ErrorKind::DimensionMismatch, "condensed matrix for n=" + std::to_string(n_) + " given " +
                                                  std::to_string(values_.size()) + " values");
  }
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  auto values = values_;
  for (auto& v : values) v *= factor;
  return DistanceMatrix(n_, metric_, std::move(values));
}

DistanceMatrix pairwise(const Matrix& data, Metric metric, unsigned threads) {
  const std::size_t n = data.rows();
  std::vector<double> values(n < 2 ? 0 : n * (n - 1) / 2);
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      values[DistanceMatrix::condensed_index(n, i, j)] = distance(data.row(i), data.row(j), metric);
    }
  });
  return DistanceMatrix(n, metric, std::move(values));
}

std::pair<std::size_t, double> nearest_neighbor(std::span<const double> query, const Matrix& data,
                                                std::optional<std::size_t> exclude, Metric metric) {
  std::size_t best = data.rows();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.rows(); ++i) {
    if (exclude && *exclude == i) continue;
    const double d = distance(query, data.row(i), metric);
    if (best == data.rows() || d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  if (best == data.rows()) throw Error(ErrorKind::EmptyCandidateSet, "no candidate rows left after exclusion");
  return {best, best_dist};
}

}  // namespace clustan
