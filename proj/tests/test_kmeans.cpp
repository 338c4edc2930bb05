#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "clustan/error.hpp"
#include "clustan/kmeans.hpp"
#include "clustan/random.hpp"

using namespace clustan;

namespace {

const Matrix kLine(6, 1, {0.0, 1.0, 2.0, 10.0, 11.0, 12.0});

}  // namespace

TEST_CASE("kmeans k = 1 is the column mean") {
  const auto x = oracle::random_matrix(40, 3, 2);
  KMeansConfig cfg;
  cfg.k = 1;
  const auto p = kmeans(x, cfg);
  std::vector<double> mean(3, 0.0);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 3; ++j) mean[j] += x(i, j) / 40.0;
  double expected = 0.0;
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < 3; ++j) expected += (x(i, j) - mean[j]) * (x(i, j) - mean[j]);
  for (std::size_t j = 0; j < 3; ++j) CHECK((*p.centroids)(0, j) == doctest::Approx(mean[j]).epsilon(1e-12));
  CHECK(p.objective == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kmeans k = n gives zero objective") {
  const auto x = oracle::random_matrix(12, 2, 3);
  KMeansConfig cfg;
  cfg.k = 12;
  cfg.restarts = 3;
  const auto p = kmeans(x, cfg);
  CHECK(p.objective == 0.0);
  for (auto s : p.sizes()) CHECK(s == 1);
}

TEST_CASE("kmeans on two 1-D groups") {
  CHECK(oracle::best_two_means_wss(kLine) == 4.0);
  KMeansConfig cfg;
  cfg.k = 2;
  const auto p = kmeans(kLine, cfg);
  CHECK(p.objective == 4.0);
  CHECK(p.labels[0] == p.labels[1]);
  CHECK(p.labels[1] == p.labels[2]);
  CHECK(p.labels[3] == p.labels[4]);
  CHECK(p.labels[0] != p.labels[3]);
  std::vector<double> centers = {(*p.centroids)(0, 0), (*p.centroids)(1, 0)};
  std::sort(centers.begin(), centers.end());
  CHECK(centers == std::vector<double>{1.0, 11.0});
}

TEST_CASE("kmeans reaches the exhaustive optimum on small instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const auto x = oracle::random_matrix(n, 2, 1000 + seed);
    KMeansConfig cfg;
    cfg.k = 2;
    cfg.restarts = 50;
    cfg.seed = seed;
    const auto p = kmeans(x, cfg);
    REQUIRE(p.objective == doctest::Approx(oracle::best_two_means_wss(x)).epsilon(1e-12));
  }
}

TEST_CASE("kmeans invariants") {
  const auto x = oracle::random_matrix(150, 4, 21);
  for (auto init : {KMeansInit::KMeansPP, KMeansInit::Random}) {
    KMeansConfig cfg;
    cfg.k = 5;
    cfg.init = init;
    cfg.seed = 9;
    const auto p = kmeans(x, cfg);
    for (std::size_t i = 1; i < p.history.size(); ++i) {
      REQUIRE(p.history[i] <= p.history[i - 1] * (1.0 + 1e-12));
    }
    CHECK(p.objective == wss(x, p.labels, *p.centroids));
    for (auto s : p.sizes()) CHECK(s >= 1);
    CHECK(p.objective >= 0.0);

    const auto again = kmeans(x, cfg);
    CHECK(again.labels == p.labels);
    CHECK(again.objective == p.objective);
    CHECK(*again.centroids == *p.centroids);
    cfg.threads = 4;
    const auto threaded = kmeans(x, cfg);
    CHECK(threaded.labels == p.labels);
    CHECK(threaded.objective == p.objective);
  }
}

TEST_CASE("empty clusters are repaired") {
  // Every start center sits on the same duplicated point, so some clusters start empty.
  const Matrix x(5, 1, {0.0, 0.0, 0.0, 5.0, 9.0});
  Matrix start(3, 1, {0.0, 0.0, 0.0});
  const auto p = lloyd(x, start, 50, 0.0);
  std::vector<std::size_t> sizes(3, 0);
  for (int l : p.labels) ++sizes[static_cast<std::size_t>(l)];
  for (auto s : sizes) CHECK(s >= 1);
  CHECK(p.objective == 0.0);
}

TEST_CASE("kmeans++ seeding follows the D^2 distribution") {
  // First center is uniform; the second is drawn proportionally to squared distance.
  const Matrix x(4, 1, {0.0, 1.0, 2.0, 4.0});
  std::map<std::size_t, std::map<std::size_t, int>> counts;
  std::map<std::size_t, int> first_counts;
  const int draws = 40000;
  for (int s = 0; s < draws; ++s) {
    const auto c = initial_centers(x, 2, KMeansInit::KMeansPP, static_cast<std::uint64_t>(s));
    ++first_counts[c[0]];
    ++counts[c[0]][c[1]];
  }
  // Chi-square over first-center choices (3 dof, 0.999 quantile 16.27).
  double chi = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double e = draws / 4.0;
    chi += (first_counts[i] - e) * (first_counts[i] - e) / e;
  }
  CHECK(chi < 16.27);
  // Given first center 0, second-center probabilities are 1/21, 4/21, 16/21.
  const double total = first_counts[0];
  const std::vector<double> p = {1.0 / 21, 4.0 / 21, 16.0 / 21};
  chi = 0.0;
  for (std::size_t j = 1; j < 4; ++j) {
    const double e = total * p[j - 1];
    chi += (counts[0][j] - e) * (counts[0][j] - e) / e;
  }
  CHECK(chi < 13.82);  // 2 dof, 0.999 quantile
  CHECK(counts[0][0] == 0);
}

TEST_CASE("wss") {
  const Matrix x(2, 2, {0.0, 0.0, 2.0, 0.0});
  const Matrix centers(1, 2, {0.0, 0.0});
  const std::vector<int> labels = {0, 0};
  CHECK(wss(x, labels, centers) == 4.0);
  CHECK(wss(Matrix(2, 2, 1.0), labels, Matrix(1, 2, 1.0)) == 0.0);
  const std::vector<int> bad = {0, 1};
  try {
    wss(x, bad, centers);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingCenter);
  }

  const auto r = oracle::random_matrix(60, 3, 4);
  const auto c = oracle::random_matrix(4, 3, 5);
  std::vector<int> lab(60);
  for (std::size_t i = 0; i < 60; ++i) lab[i] = static_cast<int>(i % 4);
  double naive = 0.0;
  for (std::size_t i = 0; i < 60; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const double diff = r(i, j) - c(static_cast<std::size_t>(lab[i]), j);
      naive += diff * diff;
    }
  }
  CHECK(wss(r, lab, c) == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("kmeans argument errors") {
  KMeansConfig cfg;
  cfg.k = 7;
  try {
    kmeans(oracle::random_matrix(5, 2, 1), cfg);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooFewPoints);
  }
  try {
    kmeans(Matrix(), cfg);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyDataset);
  }
}
