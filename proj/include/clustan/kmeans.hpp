#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "clustan/dataset.hpp"
#include "clustan/matrix.hpp"

namespace clustan {

using Labels = std::vector<int>;

enum class KMeansInit { KMeansPP, Random };

struct KMeansConfig {
  std::size_t k = 2;
  KMeansInit init = KMeansInit::KMeansPP;
  std::size_t max_iter = 100;
  std::size_t restarts = 25;
  /// Stop once no centroid moves farther than this.
  double tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// A hard clustering. K-means fills centroids, PAM fills medoid_indices.
struct Partition {
  Labels labels;
  std::size_t k = 0;
  /// WSS for K-means, total medoid distance for PAM.
  double objective = 0.0;
  std::optional<Matrix> centroids;
  std::optional<std::vector<std::size_t>> medoid_indices;
  std::size_t iterations = 0;
  bool converged = false;
  /// Objective after each Lloyd update (winning restart only).
  std::vector<double> history;
  /// Restart that produced this result.
  std::size_t restart = 0;

  std::vector<std::size_t> sizes() const;
};

/// Sum over points of squared Euclidean distance to their cluster's center.
double wss(const Matrix& data, std::span<const int> labels, const Matrix& centers);

/// Initial center row indices for one restart.
std::vector<std::size_t> initial_centers(const Matrix& data, std::size_t k, KMeansInit init, std::uint64_t seed);

/// Lloyd iterations from the given starting centers.
Partition lloyd(const Matrix& data, Matrix centers, std::size_t max_iter, double tol);

/// Best of config.restarts Lloyd runs, restart r seeded with seed + r. Ties in
/// objective go to the lower restart index.
Partition kmeans(const Matrix& data, const KMeansConfig& config);
inline Partition kmeans(const Dataset& data, const KMeansConfig& config) { return kmeans(data.features, config); }

}  // namespace clustan
