#include "clustan/tendency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clustan/error.hpp"
#include "clustan/metrics.hpp"
#include "clustan/parallel.hpp"
#include "clustan/random.hpp"

namespace clustan {

std::size_t default_hopkins_sample(std::size_t n) noexcept {
  return std::max<std::size_t>(1, n / 10);
}

HopkinsResult hopkins(const Matrix& data, const HopkinsOptions& options) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "Hopkins statistic needs at least 2 points");
  if (options.trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  const std::size_t m = options.m == 0 ? default_hopkins_sample(n) : options.m;
  if (m > n - 1) {
    throw Error(ErrorKind::SampleTooLarge, "m=" + std::to_string(m) + " exceeds n-1=" + std::to_string(n - 1));
  }

  std::vector<double> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = data(0, j);
    for (std::size_t i = 1; i < n; ++i) {
      lo[j] = std::min(lo[j], data(i, j));
      hi[j] = std::max(hi[j], data(i, j));
    }
  }

  const double exponent = options.dimension_power ? static_cast<double>(d) : 1.0;
  auto weigh = [&](double dist) { return options.dimension_power ? std::pow(dist, exponent) : dist; };

  HopkinsResult result;
  result.m = m;
  result.trials = options.trials;
  result.seed = options.seed;
  result.dimension_power = options.dimension_power;
  result.per_trial.assign(options.trials, 0.0);
  std::vector<char> degenerate(options.trials, 0);

  parallel_for(options.trials, options.threads, [&](std::size_t t) {
    Rng rng = substream(options.seed, t);
    std::vector<double> point(d);
    double sum_u = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < d; ++j) point[j] = lo[j] + (hi[j] - lo[j]) * uniform01(rng);
      sum_u += weigh(nearest_neighbor(point, data, std::nullopt, Metric::Euclidean).second);
    }
    double sum_w = 0.0;
    for (auto idx : sample_without_replacement(rng, n, m)) {
      sum_w += weigh(nearest_neighbor(data.row(idx), data, idx, Metric::Euclidean).second);
    }
    const double denom = sum_u + sum_w;
    result.per_trial[t] = denom > 0.0 ? sum_u / denom : 1.0;
    degenerate[t] = sum_w == 0.0 ? 1 : 0;
  });

  double total = 0.0;
  for (double v : result.per_trial) total += v;
  result.h = total / static_cast<double>(options.trials);
  result.degenerate = std::any_of(degenerate.begin(), degenerate.end(), [](char c) { return c != 0; });
  return result;
}

}  // namespace clustan
