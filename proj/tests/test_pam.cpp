#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "clustan/error.hpp"
#include "clustan/pam.hpp"

using namespace clustan;

namespace {

std::vector<std::vector<double>> dense(const DistanceMatrix& d) {
  std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) out[i][j] = d(i, j);
  return out;
}

Matrix separable(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  Matrix m(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double cx = 10.0 * static_cast<double>(i % k);
    m(i, 0) = cx + jitter(rng);
    m(i, 1) = (i % k == 1 ? 10.0 : 0.0) + jitter(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("pam on two 1-D groups") {
  const auto d = pairwise(Matrix(6, 1, {0.0, 1.0, 2.0, 10.0, 11.0, 12.0}));
  CHECK(oracle::best_medoid_cost(dense(d), 2) == 4.0);
  PamConfig cfg;
  cfg.k = 2;
  const auto r = pam(d, cfg);
  CHECK(r.medoid_indices == std::vector<std::size_t>{1, 4});
  CHECK(r.cost == 4.0);
  CHECK(r.converged);
  CHECK(r.labels == Labels{0, 0, 0, 1, 1, 1});
}

TEST_CASE("pam with k = n") {
  const auto d = pairwise(oracle::random_matrix(7, 2, 1));
  PamConfig cfg;
  cfg.k = 7;
  const auto r = pam(d, cfg);
  CHECK(r.cost == 0.0);
  CHECK(r.medoid_indices.size() == 7);
}

TEST_CASE("pam matches exhaustive medoid search") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t k = 2 + seed % 2;
    const std::size_t n = 8 + seed % 5;
    const auto d = pairwise(separable(n, k, seed));
    PamConfig cfg;
    cfg.k = k;
    const auto r = pam(d, cfg);
    REQUIRE(r.cost == doctest::Approx(oracle::best_medoid_cost(dense(d), k)).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("pam result is 1-swap optimal and internally consistent") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::size_t n = 60 + 40 * seed;
    const auto d = pairwise(oracle::random_matrix(n, 3, 50 + seed));
    PamConfig cfg;
    cfg.k = 2 + seed;
    const auto r = pam(d, cfg);
    REQUIRE(r.converged);
    for (std::size_t i = 1; i < r.history.size(); ++i) REQUIRE(r.history[i] < r.history[i - 1]);
    CHECK(r.swaps_performed + 1 == r.history.size());
    CHECK(r.cost == pam_cost(d, r.medoid_indices));
    for (std::size_t c = 0; c < r.medoid_indices.size(); ++c) {
      CHECK(r.labels[r.medoid_indices[c]] == static_cast<int>(c));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double own = d(i, r.medoid_indices[static_cast<std::size_t>(r.labels[i])]);
      for (auto m : r.medoid_indices) REQUIRE(own <= d(i, m));
    }
    for (std::size_t p = 0; p < r.medoid_indices.size(); ++p) {
      for (std::size_t h = 0; h < n; ++h) {
        if (std::find(r.medoid_indices.begin(), r.medoid_indices.end(), h) != r.medoid_indices.end()) continue;
        auto swapped = r.medoid_indices;
        swapped[p] = h;
        REQUIRE(pam_cost(d, swapped) >= r.cost * (1.0 - 1e-12));
      }
    }
  }
}

TEST_CASE("pam respects the swap bound") {
  const auto d = pairwise(oracle::random_matrix(80, 2, 4));
  PamConfig cfg;
  cfg.k = 4;
  cfg.max_swap_iters = 0;
  const auto r = pam(d, cfg);
  CHECK(r.swaps_performed == 0);
  CHECK(r.history.size() == 1);
}

TEST_CASE("pam_cost") {
  const auto x = oracle::random_matrix(30, 3, 8);
  const auto d = pairwise(x);
  std::vector<std::size_t> all(30);
  for (std::size_t i = 0; i < 30; ++i) all[i] = i;
  CHECK(pam_cost(d, all) == 0.0);

  const std::vector<std::size_t> one = {4};
  double row_sum = 0.0;
  for (std::size_t i = 0; i < 30; ++i) row_sum += d(i, 4);
  CHECK(pam_cost(d, one) == row_sum);

  const auto dd = oracle::full_distances(x);
  const std::vector<std::size_t> some = {3, 17, 22};
  double naive = 0.0;
  for (std::size_t i = 0; i < 30; ++i) naive += std::min({dd[i][3], dd[i][17], dd[i][22]});
  CHECK(pam_cost(d, some) == doctest::Approx(naive).epsilon(1e-14));

  for (const std::vector<std::size_t>& bad : {std::vector<std::size_t>{}, {30}, {2, 2}}) {
    try {
      pam_cost(d, bad);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidMedoid);
    }
  }
}

TEST_CASE("pam needs k <= n") {
  PamConfig cfg;
  cfg.k = 5;
  try {
    pam(pairwise(oracle::random_matrix(3, 2, 1)), cfg);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewPoints);
  }
}
