#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "clustan/dataset.hpp"

namespace clustan {

struct HopkinsOptions {
  /// Sample size per trial; 0 selects floor(0.1 * n), at least 1.
  std::size_t m = 0;
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  /// Raise distances to the data dimension before summing.
  bool dimension_power = false;
  unsigned threads = 1;
};

struct HopkinsResult {
  /// Mean of per_trial. Values near 1 indicate clustered data, near 0.5 uniform.
  double h = 0.0;
  std::size_t m = 0;
  std::size_t trials = 0;
  std::vector<double> per_trial;
  std::uint64_t seed = 0;
  bool dimension_power = false;
  /// Set when some trial's sampled rows all had zero nearest-neighbour distance
  /// (e.g. every point identical); such trials evaluate to 1.
  bool degenerate = false;
};

std::size_t default_hopkins_sample(std::size_t n) noexcept;

/// Hopkins clustering-tendency statistic, averaged over independent seeded trials.
///
/// Each trial draws m points uniformly in the data's bounding box and m distinct data
/// rows. With u the synthetic-to-data nearest distances and w the real-to-other-data
/// nearest distances, the trial value is sum(u) / (sum(u) + sum(w)). Trial t uses
/// the stream seeded with seed + t.
HopkinsResult hopkins(const Matrix& data, const HopkinsOptions& options);
inline HopkinsResult hopkins(const Dataset& data, const HopkinsOptions& options) {
  return hopkins(data.features, options);
}

}  // namespace clustan
