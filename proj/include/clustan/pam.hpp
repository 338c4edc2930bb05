#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clustan/kmeans.hpp"
#include "clustan/metrics.hpp"

namespace clustan {

struct PamConfig {
  std::size_t k = 2;
  std::size_t max_swap_iters = 200;
  Metric metric = Metric::Euclidean;
};

struct PamResult {
  /// Ascending row indices; cluster id c is medoid_indices[c].
  std::vector<std::size_t> medoid_indices;
  Labels labels;
  double cost = 0.0;
  std::size_t swaps_performed = 0;
  bool converged = false;
  /// Cost after BUILD followed by the cost after each applied swap.
  std::vector<double> history;

  Partition to_partition() const;
};

/// Sum over all points of the distance to the nearest medoid.
double pam_cost(const DistanceMatrix& dist, std::span<const std::size_t> medoids);

/// Nearest-medoid labels; ties go to the lower cluster id.
Labels assign_to_medoids(const DistanceMatrix& dist, std::span<const std::size_t> medoids);

/// Greedy BUILD initialisation alone.
std::vector<std::size_t> pam_build(const DistanceMatrix& dist, std::size_t k);

/// Partitioning Around Medoids: BUILD, then best-improvement SWAP until no exchange
/// lowers the cost. Equal-gain swaps go to the lowest (medoid row, candidate row) pair.
/// config.metric is informational; the distances come from `dist`.
PamResult pam(const DistanceMatrix& dist, const PamConfig& config);

}  // namespace clustan
