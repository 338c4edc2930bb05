#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "clustan/dataset.hpp"
#include "clustan/matrix.hpp"

namespace clustan {

/// Euclidean and Manhattan are metrics; SquaredEuclidean violates the triangle
/// inequality and is only meant for argmin-style comparisons.
enum class Metric { Euclidean, SquaredEuclidean, Manhattan };

std::string_view to_string(Metric metric) noexcept;
Metric metric_from_string(std::string_view name);

/// Coordinates are accumulated left to right, so every caller gets bit-identical values.
double distance(std::span<const double> a, std::span<const double> b, Metric metric = Metric::Euclidean);

/// Condensed upper-triangular store of all pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, Metric metric, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Position of pair (i, j), i < j, in values().
  static std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return values_[condensed_index(n_, i, j)];
  }

  /// Copy with every entry multiplied by factor (> 0).
  DistanceMatrix scaled(double factor) const;

 private:
  std::size_t n_ = 0;
  Metric metric_ = Metric::Euclidean;
  std::vector<double> values_;
};

DistanceMatrix pairwise(const Matrix& data, Metric metric = Metric::Euclidean, unsigned threads = 1);
inline DistanceMatrix pairwise(const Dataset& data, Metric metric = Metric::Euclidean, unsigned threads = 1) {
  return pairwise(data.features, metric, threads);
}

/// Closest row to `query`, skipping `exclude`; ties go to the lowest index.
std::pair<std::size_t, double> nearest_neighbor(std::span<const double> query, const Matrix& data,
                                                std::optional<std::size_t> exclude = std::nullopt,
                                                Metric metric = Metric::Euclidean);

}  // namespace clustan
