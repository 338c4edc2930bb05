#include "clustan/validation.hpp"

#include <algorithm>
#include <string>

#include "clustan/error.hpp"
#include "clustan/parallel.hpp"

namespace clustan {

SilhouetteReport silhouette(const DistanceMatrix& dist, std::span<const int> labels, unsigned threads) {
  const std::size_t n = dist.size();
  if (labels.size() != n) {
    throw Error(ErrorKind::DimensionMismatch,
                "labels length " + std::to_string(labels.size()) + " for " + std::to_string(n) + " points");
  }
  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw Error(ErrorKind::InvalidArgument, "negative cluster id");
    max_label = std::max(max_label, l);
  }
  const std::size_t k = static_cast<std::size_t>(max_label + 1);
  SilhouetteReport report;
  report.labels.assign(labels.begin(), labels.end());
  report.cluster_sizes.assign(k, 0);
  for (int l : labels) ++report.cluster_sizes[static_cast<std::size_t>(l)];
  const auto present = std::count_if(report.cluster_sizes.begin(), report.cluster_sizes.end(),
                                     [](std::size_t s) { return s > 0; });
  if (present < 2) throw Error(ErrorKind::SingleCluster, "silhouette needs at least two clusters");

  report.widths.assign(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<double> sums(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sums[static_cast<std::size_t>(labels[j])] += dist(i, j);
    }
    const auto own = static_cast<std::size_t>(labels[i]);
    if (report.cluster_sizes[own] < 2) return;
    const double a = sums[own] / static_cast<double>(report.cluster_sizes[own] - 1);
    double b = 0.0;
    bool have_b = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || report.cluster_sizes[c] == 0) continue;
      const double mean = sums[c] / static_cast<double>(report.cluster_sizes[c]);
      if (!have_b || mean < b) {
        b = mean;
        have_b = true;
      }
    }
    const double denom = std::max(a, b);
    report.widths[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  });

  report.cluster_means.assign(k, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    report.cluster_means[static_cast<std::size_t>(labels[i])] += report.widths[i];
    total += report.widths[i];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (report.cluster_sizes[c] > 0) report.cluster_means[c] /= static_cast<double>(report.cluster_sizes[c]);
  }
  report.overall = total / static_cast<double>(n);

  report.order.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.order[i] = i;
  std::sort(report.order.begin(), report.order.end(), [&](std::size_t x, std::size_t y) {
    if (labels[x] != labels[y]) return labels[x] < labels[y];
    if (report.widths[x] != report.widths[y]) return report.widths[x] > report.widths[y];
    return x < y;
  });
  return report;
}

KSweepResult sweep_k(const Matrix& data, const SweepConfig& config) {
  return sweep_k(data, pairwise(data, config.metric, config.threads), config);
}

KSweepResult sweep_k(const Matrix& data, const DistanceMatrix& dist, const SweepConfig& config) {
  const std::size_t n = data.rows();
  if (dist.size() != n) throw Error(ErrorKind::DimensionMismatch, "distance matrix does not match data");
  if (config.k_min < 2 || config.k_max < config.k_min || n < 2 || config.k_max > n - 1) {
    throw Error(ErrorKind::InvalidArgument, "k range " + std::to_string(config.k_min) + ".." +
                                                std::to_string(config.k_max) + " must lie within [2, n-1]");
  }
  KSweepResult result;
  result.algorithm = config.algorithm;
  for (std::size_t k = config.k_min; k <= config.k_max; ++k) result.ks.push_back(k);
  const std::size_t count = result.ks.size();
  result.avg_silhouette.assign(count, 0.0);
  result.wss.assign(count, 0.0);

  // Per-k jobs take the sweep's threads; nested loops inside stay single-threaded.
  parallel_for(count, config.threads, [&](std::size_t idx) {
    const std::size_t k = result.ks[idx];
    Labels labels;
    if (config.algorithm == SweepAlgorithm::KMeans) {
      KMeansConfig kc = config.kmeans;
      kc.k = k;
      kc.seed = config.seed;
      kc.threads = 1;
      auto part = kmeans(data, kc);
      result.wss[idx] = part.objective;
      labels = std::move(part.labels);
    } else {
      PamConfig pc = config.pam;
      pc.k = k;
      auto res = pam(dist, pc);
      result.wss[idx] = res.cost;
      labels = std::move(res.labels);
    }
    result.avg_silhouette[idx] = silhouette(dist, labels).overall;
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (result.avg_silhouette[i] > result.avg_silhouette[best]) best = i;
  }
  result.best_k = result.ks[best];
  return result;
}

}  // namespace clustan
