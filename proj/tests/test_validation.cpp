#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "clustan/error.hpp"
#include "clustan/validation.hpp"

using namespace clustan;

namespace {

std::vector<std::vector<double>> dense(const DistanceMatrix& d) {
  std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) out[i][j] = d(i, j);
  return out;
}

Matrix blobs(std::size_t per, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.3);
  Matrix m(2 * per, 2);
  for (std::size_t i = 0; i < 2 * per; ++i) {
    const double c = i < per ? 0.0 : 8.0;
    m(i, 0) = c + g(rng);
    m(i, 1) = c + g(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("silhouette of a 1-D split") {
  const auto d = pairwise(Matrix(6, 1, {0.0, 1.0, 2.0, 10.0, 11.0, 12.0}));
  const std::vector<int> labels = {0, 0, 0, 1, 1, 1};
  const auto s = silhouette(d, labels);
  // a(0) = 1.5, b(0) = 11
  CHECK(s.widths[0] == doctest::Approx((11.0 - 1.5) / 11.0).epsilon(1e-15));
  CHECK(s.cluster_sizes == std::vector<std::size_t>{3, 3});
  double mean = 0.0;
  for (double w : s.widths) mean += w / 6.0;
  CHECK(s.overall == doctest::Approx(mean).epsilon(1e-15));
}

TEST_CASE("singleton clusters get width zero") {
  const auto d = pairwise(Matrix(2, 1, {0.0, 5.0}));
  const std::vector<int> labels = {0, 1};
  const auto s = silhouette(d, labels);
  CHECK(s.widths == std::vector<double>{0.0, 0.0});
  CHECK(s.overall == 0.0);
}

TEST_CASE("silhouette matches the naive computation") {
  for (std::size_t n : {5u, 40u, 300u}) {
    const auto x = oracle::random_matrix(n, 3, n);
    const auto d = pairwise(x);
    std::mt19937_64 rng(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 3);
    std::shuffle(labels.begin(), labels.end(), rng);
    const auto s = silhouette(d, labels);
    const auto expected = oracle::silhouette_widths(dense(d), labels);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(s.widths[i] == doctest::Approx(expected[i]).epsilon(1e-12));
      REQUIRE(s.widths[i] >= -1.0);
      REQUIRE(s.widths[i] <= 1.0);
    }
    const auto threaded = silhouette(d, labels, 4);
    CHECK(threaded.widths == s.widths);
    CHECK(threaded.overall == s.overall);
  }
}

TEST_CASE("silhouette order groups clusters and sorts descending") {
  const auto x = oracle::random_matrix(50, 2, 6);
  const auto d = pairwise(x);
  std::vector<int> labels(50);
  for (std::size_t i = 0; i < 50; ++i) labels[i] = static_cast<int>((i * 7) % 4);
  const auto s = silhouette(d, labels);
  REQUIRE(s.order.size() == 50);
  auto sorted = s.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  for (std::size_t i = 1; i < 50; ++i) {
    const auto a = s.order[i - 1];
    const auto b = s.order[i];
    REQUIRE(labels[a] <= labels[b]);
    if (labels[a] == labels[b]) REQUIRE(s.widths[a] >= s.widths[b]);
  }
}

TEST_CASE("silhouette is scale invariant") {
  const auto x = oracle::random_matrix(80, 3, 11);
  const auto d = pairwise(x);
  std::vector<int> labels(80);
  for (std::size_t i = 0; i < 80; ++i) labels[i] = static_cast<int>(i % 2);
  const auto a = silhouette(d, labels);
  const auto b = silhouette(d.scaled(7.5), labels);
  for (std::size_t i = 0; i < 80; ++i) CHECK(a.widths[i] == doctest::Approx(b.widths[i]).epsilon(1e-12));
}

TEST_CASE("silhouette needs two clusters") {
  const auto d = pairwise(oracle::random_matrix(5, 2, 1));
  const std::vector<int> labels(5, 0);
  try {
    silhouette(d, labels);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingleCluster);
  }
  const std::vector<int> short_labels(4, 0);
  CHECK_THROWS_AS(silhouette(d, short_labels), Error);
}

TEST_CASE("sweep finds two blobs") {
  const auto x = blobs(40, 3);
  for (auto algo : {SweepAlgorithm::KMeans, SweepAlgorithm::Pam}) {
    SweepConfig cfg;
    cfg.k_min = 2;
    cfg.k_max = 6;
    cfg.algorithm = algo;
    cfg.seed = 5;
    const auto r = sweep_k(x, cfg);
    CHECK(r.ks == std::vector<std::size_t>{2, 3, 4, 5, 6});
    CHECK(r.best_k == 2);
    CHECK(r.avg_silhouette[0] > 0.8);
    for (std::size_t i = 1; i < r.wss.size(); ++i) CHECK(r.wss[i] <= r.wss[i - 1] * (1.0 + 1e-9));

    const auto again = sweep_k(x, cfg);
    CHECK(again.avg_silhouette == r.avg_silhouette);
    CHECK(again.wss == r.wss);
    cfg.threads = 3;
    const auto threaded = sweep_k(x, cfg);
    CHECK(threaded.avg_silhouette == r.avg_silhouette);
  }
}

TEST_CASE("sweep range checks") {
  const auto x = oracle::random_matrix(6, 2, 2);
  SweepConfig cfg;
  cfg.k_min = 1;
  cfg.k_max = 3;
  CHECK_THROWS_AS(sweep_k(x, cfg), Error);
  cfg.k_min = 2;
  cfg.k_max = 6;
  CHECK_THROWS_AS(sweep_k(x, cfg), Error);
  cfg.k_min = 4;
  cfg.k_max = 3;
  CHECK_THROWS_AS(sweep_k(x, cfg), Error);
  cfg.k_min = 2;
  cfg.k_max = 5;
  CHECK(sweep_k(x, cfg).ks.size() == 4);
}
