#include "clustan/pam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "clustan/error.hpp"

namespace clustan {

namespace {

void check_medoids(const DistanceMatrix& dist, std::span<const std::size_t> medoids) {
  if (medoids.empty()) throw Error(ErrorKind::InvalidMedoid, "medoid set is empty");
  std::vector<char> seen(dist.size(), 0);
  for (auto m : medoids) {
    if (m >= dist.size()) throw Error(ErrorKind::InvalidMedoid, "medoid index " + std::to_string(m) + " out of range");
    if (seen[m]) throw Error(ErrorKind::InvalidMedoid, "medoid index " + std::to_string(m) + " repeated");
    seen[m] = 1;
  }
}

/// Relative slack below which a cost change counts as no change.
constexpr double kImprovementEps = 1e-12;

}  // namespace

Partition PamResult::to_partition() const {
  Partition p;
  p.labels = labels;
  p.k = medoid_indices.size();
  p.objective = cost;
  p.medoid_indices = medoid_indices;
  p.iterations = swaps_performed;
  p.converged = converged;
  p.history = history;
  return p;
}

double pam_cost(const DistanceMatrix& dist, std::span<const std::size_t> medoids) {
  check_medoids(dist, medoids);
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (auto m : medoids) best = std::min(best, dist(i, m));
    total += best;
  }
  return total;
}

Labels assign_to_medoids(const DistanceMatrix& dist, std::span<const std::size_t> medoids) {
  check_medoids(dist, medoids);
  Labels labels(dist.size(), 0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    double best = dist(i, medoids[0]);
    for (std::size_t c = 1; c < medoids.size(); ++c) {
      const double d = dist(i, medoids[c]);
      if (d < best) {
        best = d;
        labels[i] = static_cast<int>(c);
      }
    }
  }
  return labels;
}

std::vector<std::size_t> pam_build(const DistanceMatrix& dist, std::size_t k) {
  const std::size_t n = dist.size();
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (n < k) throw Error(ErrorKind::TooFewPoints, std::to_string(n) + " points for k=" + std::to_string(k));

  std::vector<std::size_t> medoids;
  std::vector<char> is_medoid(n, 0);
  std::size_t first = 0;
  double first_total = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += dist(i, c);
    if (total < first_total) {
      first_total = total;
      first = c;
    }
  }
  medoids.push_back(first);
  is_medoid[first] = 1;
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = dist(i, first);

  while (medoids.size() < k) {
    std::size_t pick = n;
    double pick_gain = -1.0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t i = 0; i < n; ++i) gain += std::max(nearest[i] - dist(i, c), 0.0);
      if (gain > pick_gain) {
        pick_gain = gain;
        pick = c;
      }
    }
    medoids.push_back(pick);
    is_medoid[pick] = 1;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, pick));
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

PamResult pam(const DistanceMatrix& dist, const PamConfig& config) {
  const std::size_t n = dist.size();
  const std::size_t k = config.k;
  PamResult result;
  result.medoid_indices = pam_build(dist, k);
  result.cost = pam_cost(dist, result.medoid_indices);
  result.history.push_back(result.cost);

  std::vector<char> is_medoid(n, 0);
  for (auto m : result.medoid_indices) is_medoid[m] = 1;
  std::vector<double> nearest(n), second(n);
  std::vector<std::size_t> nearest_pos(n);

  while (true) {
    auto& medoids = result.medoid_indices;
    // Distance to the closest and second-closest medoid for every point.
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = second[i] = std::numeric_limits<double>::infinity();
      nearest_pos[i] = 0;
      for (std::size_t p = 0; p < k; ++p) {
        const double d = dist(i, medoids[p]);
        if (d < nearest[i]) {
          second[i] = nearest[i];
          nearest[i] = d;
          nearest_pos[i] = p;
        } else if (d < second[i]) {
          second[i] = d;
        }
      }
    }

    double best_delta = 0.0;
    std::size_t best_pos = k;
    std::size_t best_candidate = n;
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double d_jh = dist(j, h);
          if (nearest_pos[j] == p) {
            delta += std::min(d_jh, second[j]) - nearest[j];
          } else if (d_jh < nearest[j]) {
            delta += d_jh - nearest[j];
          }
        }
        // Medoids are visited in ascending row order, so strict < keeps the lowest pair on ties.
        if (delta < best_delta) {
          best_delta = delta;
          best_pos = p;
          best_candidate = h;
        }
      }
    }

    if (best_pos == k || best_delta >= -kImprovementEps * std::max(result.cost, 1.0)) {
      result.converged = true;
      break;
    }
    if (result.swaps_performed >= config.max_swap_iters) break;

    is_medoid[medoids[best_pos]] = 0;
    is_medoid[best_candidate] = 1;
    medoids[best_pos] = best_candidate;
    std::sort(medoids.begin(), medoids.end());
    const double updated = pam_cost(dist, medoids);
    ++result.swaps_performed;
    result.cost = updated;
    result.history.push_back(updated);
  }

  result.labels = assign_to_medoids(dist, result.medoid_indices);
  return result;
}

}  // namespace clustan
