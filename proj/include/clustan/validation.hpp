#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clustan/dataset.hpp"
#include "clustan/kmeans.hpp"
#include "clustan/metrics.hpp"
#include "clustan/pam.hpp"

namespace clustan {

struct SilhouetteReport {
  /// s(i) per point, in [-1, 1]; 0 for members of singleton clusters.
  std::vector<double> widths;
  /// Indexed by cluster id; 0 for ids with no members.
  std::vector<double> cluster_means;
  std::vector<std::size_t> cluster_sizes;
  double overall = 0.0;
  /// Point indices grouped by cluster id, widths descending within each cluster.
  std::vector<std::size_t> order;
  std::vector<int> labels;
};

/// Silhouette widths from a precomputed distance matrix.
/// a(i) is the mean distance to the rest of i's cluster, b(i) the smallest mean
/// distance to another cluster, s(i) = (b - a) / max(a, b).
SilhouetteReport silhouette(const DistanceMatrix& dist, std::span<const int> labels, unsigned threads = 1);

enum class SweepAlgorithm { KMeans, Pam };

struct SweepConfig {
  std::size_t k_min = 2;
  std::size_t k_max = 10;
  SweepAlgorithm algorithm = SweepAlgorithm::KMeans;
  /// k and seed are overridden per sweep entry.
  KMeansConfig kmeans;
  PamConfig pam;
  Metric metric = Metric::Euclidean;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct KSweepResult {
  std::vector<std::size_t> ks;
  std::vector<double> avg_silhouette;
  /// K-means WSS, or PAM cost when the sweep ran PAM.
  std::vector<double> wss;
  std::size_t best_k = 0;
  SweepAlgorithm algorithm = SweepAlgorithm::KMeans;
};

/// Clusters once per k and scores each result by average silhouette over a single
/// shared distance matrix. best_k maximizes the average silhouette; ties go to the
/// smaller k.
KSweepResult sweep_k(const Matrix& data, const SweepConfig& config);
KSweepResult sweep_k(const Matrix& data, const DistanceMatrix& dist, const SweepConfig& config);
inline KSweepResult sweep_k(const Dataset& data, const SweepConfig& config) { return sweep_k(data.features, config); }

}  // namespace clustan
