#include "clustan/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clustan/error.hpp"
#include "clustan/metrics.hpp"
#include "clustan/parallel.hpp"
#include "clustan/random.hpp"

namespace clustan {

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> counts(k, 0);
  for (int l : labels) ++counts.at(static_cast<std::size_t>(l));
  return counts;
}

double wss(const Matrix& data, std::span<const int> labels, const Matrix& centers) {
  if (labels.size() != data.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "labels length " + std::to_string(labels.size()) + " for " +
                                                  std::to_string(data.rows()) + " points");
  }
  if (centers.rows() > 0 && centers.cols() != data.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "center dimension differs from data dimension");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const int l = labels[i];
    if (l < 0 || static_cast<std::size_t>(l) >= centers.rows()) {
      throw Error(ErrorKind::MissingCenter, "no center for cluster " + std::to_string(l));
    }
    total += distance(data.row(i), centers.row(static_cast<std::size_t>(l)), Metric::SquaredEuclidean);
  }
  return total;
}

std::vector<std::size_t> initial_centers(const Matrix& data, std::size_t k, KMeansInit init, std::uint64_t seed) {
  const std::size_t n = data.rows();
  Rng rng(seed);
  if (init == KMeansInit::Random) return sample_without_replacement(rng, n, k);

  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  std::vector<char> taken(n, 0);
  chosen.push_back(static_cast<std::size_t>(uniform_index(rng, n)));
  taken[chosen.back()] = 1;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < k) {
    const auto last = data.row(chosen.back());
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], distance(data.row(i), last, Metric::SquaredEuclidean));
      total += nearest[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = uniform01(rng) * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        cumulative += nearest[i];
        pick = i;
        if (cumulative > target) break;
      }
    } else {
      // Every remaining point coincides with a chosen center.
      const auto offset = static_cast<std::size_t>(uniform_index(rng, n - chosen.size()));
      std::size_t seen = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i]) continue;
        if (seen++ == offset) {
          pick = i;
          break;
        }
      }
    }
    chosen.push_back(pick);
    taken[pick] = 1;
  }
  return chosen;
}

namespace {

/// Nearest center under squared Euclidean distance; ties go to the lowest id.
void assign(const Matrix& data, const Matrix& centers, Labels& labels, std::vector<double>& dist) {
  for (std::size_t i = 0; i < data.rows(); ++i) {
    int best = 0;
    double best_d = distance(data.row(i), centers.row(0), Metric::SquaredEuclidean);
    for (std::size_t c = 1; c < centers.rows(); ++c) {
      const double d = distance(data.row(i), centers.row(c), Metric::SquaredEuclidean);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    labels[i] = best;
    dist[i] = best_d;
  }
}

/// Moves the point farthest from its center into each empty cluster.
void repair_empty(const Matrix& data, Matrix& centers, Labels& labels, std::vector<double>& dist) {
  const std::size_t k = centers.rows();
  std::vector<std::size_t> counts(k, 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t victim = data.rows();
    for (std::size_t i = 0; i < data.rows(); ++i) {
      if (counts[static_cast<std::size_t>(labels[i])] < 2) continue;
      if (victim == data.rows() || dist[i] > dist[victim]) victim = i;
    }
    --counts[static_cast<std::size_t>(labels[victim])];
    ++counts[c];
    labels[victim] = static_cast<int>(c);
    dist[victim] = 0.0;
    std::copy(data.row(victim).begin(), data.row(victim).end(), centers.row(c).begin());
  }
}

Matrix cluster_means(const Matrix& data, const Labels& labels, std::size_t k) {
  Matrix means(k, data.cols(), 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    auto row = means.row(c);
    const auto x = data.row(i);
    for (std::size_t j = 0; j < data.cols(); ++j) row[j] += x[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& v : means.row(c)) v /= static_cast<double>(counts[c]);
  }
  return means;
}

}  // namespace

Partition lloyd(const Matrix& data, Matrix centers, std::size_t max_iter, double tol) {
  const std::size_t n = data.rows();
  const std::size_t k = centers.rows();
  if (k == 0 || k > n) throw Error(ErrorKind::TooFewPoints, "need 1 <= k <= n");
  Partition result;
  result.k = k;
  result.labels.assign(n, 0);
  std::vector<double> dist(n, 0.0);

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    assign(data, centers, result.labels, dist);
    repair_empty(data, centers, result.labels, dist);
    Matrix updated = cluster_means(data, result.labels, k);
    double shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      shift = std::max(shift, distance(updated.row(c), centers.row(c), Metric::Euclidean));
    }
    centers = std::move(updated);
    result.iterations = iter + 1;
    result.history.push_back(wss(data, result.labels, centers));
    if (shift <= tol) {
      result.converged = true;
      break;
    }
  }
  result.objective = result.history.empty() ? wss(data, result.labels, centers) : result.history.back();
  result.centroids = std::move(centers);
  return result;
}

Partition kmeans(const Matrix& data, const KMeansConfig& config) {
  const std::size_t n = data.rows();
  if (n == 0) throw Error(ErrorKind::EmptyDataset, "no points to cluster");
  if (config.k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (n < config.k) {
    throw Error(ErrorKind::TooFewPoints, std::to_string(n) + " points for k=" + std::to_string(config.k));
  }
  if (config.max_iter < 1 || config.restarts < 1 || !(config.tol >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "max_iter and restarts must be >= 1 and tol >= 0");
  }

  std::vector<Partition> runs(config.restarts);
  parallel_for(config.restarts, config.threads, [&](std::size_t r) {
    const auto seeds = initial_centers(data, config.k, config.init, config.seed + r);
    Matrix centers(config.k, data.cols());
    for (std::size_t c = 0; c < config.k; ++c) {
      std::copy(data.row(seeds[c]).begin(), data.row(seeds[c]).end(), centers.row(c).begin());
    }
    runs[r] = lloyd(data, std::move(centers), config.max_iter, config.tol);
    runs[r].restart = r;
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return std::move(runs[best]);
}

}  // namespace clustan
