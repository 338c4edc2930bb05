// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "clustan/dataset.hpp"
#include "clustan/kmeans.hpp"
#include "clustan/metrics.hpp"
#include "clustan/pam.hpp"
#include "clustan/pipeline.hpp"
#include "clustan/projection.hpp"
#include "clustan/report.hpp"
#include "clustan/tendency.hpp"
#include "clustan/validation.hpp"

namespace fs = std::filesystem;
using namespace clustan;

namespace {

const fs::path kDataDir = CLUSTAN_DATA_DIR;
const fs::path kCli = CLUSTAN_CLI_PATH;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failed;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failed += " [failed: " + what + "]";
    }
  }
};

std::pair<Dataset, PreprocessReport> load_wbc() {
  CsvConfig csv;
  csv.has_header = false;
  const auto table = load_table(kDataDir / "breast-cancer-wisconsin.data", "csv", csv);
  PreprocessOptions opts;
  opts.id_column = "col1";
  opts.label_column = "col11";
  return preprocess(table, opts);
}

Outcome criterion1() {
  Outcome o;
  const auto [ds, rep] = load_wbc();
  o.require(rep.rows_before == 699, "699 input rows");
  o.require(ds.n() == 683, "683 rows");
  o.require(rep.rows_dropped == 16, "16 dropped");
  o.require(ds.d() == 9, "9 features");
  bool in_range = true;
  for (double v : ds.features.values()) in_range = in_range && v >= 0.0 && v <= 1.0;
  o.require(in_range, "values in [0,1]");
  o.detail << "rows=" << ds.n() << " dropped=" << rep.rows_dropped << " d=" << ds.d();
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto [ds, rep] = load_wbc();
  HopkinsOptions opts;
  opts.m = 68;
  opts.trials = 30;
  opts.seed = 42;
  const auto h = hopkins(ds.features, opts);
  const auto uniform = oracle::random_matrix(ds.n(), ds.d(), 42);
  const auto hu = hopkins(uniform, opts);
  o.require(h.h >= 0.75 && h.h <= 0.85, "WBC H in [0.75, 0.85]");
  o.require(hu.h >= 0.45 && hu.h <= 0.55, "uniform H in [0.45, 0.55]");
  o.detail << "H=" << h.h << " uniform H=" << hu.h;
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto [ds, rep] = load_wbc();
  KMeansConfig cfg;
  cfg.k = 2;
  cfg.restarts = 25;
  cfg.seed = 42;
  const auto p = kmeans(ds.features, cfg);
  auto sizes = p.sizes();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  const auto pct = whole_percentages(sizes);
  const auto naming = name_clusters(p.labels, *ds.labels);
  o.require(std::abs(static_cast<long>(sizes[0]) - 402) <= 15 && std::abs(static_cast<long>(sizes[1]) - 281) <= 15,
            "sizes within 15 of 402/281");
  o.require(pct[0] == 59 && pct[1] == 41, "percentages 59/41");
  double min_purity = 1.0;
  for (const auto& c : naming.clusters) min_purity = std::min(min_purity, c.purity);
  o.require(min_purity >= 0.9, "purity >= 0.9");
  o.detail << "sizes=" << sizes[0] << "/" << sizes[1] << " pct=" << pct[0] << "/" << pct[1]
           << " min purity=" << min_purity;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto [ds, rep] = load_wbc();
  const auto d = pairwise(ds.features);
  PamConfig cfg;
  cfg.k = 2;
  const auto r = pam(d, cfg);
  const auto s = silhouette(d, r.labels);
  o.require(s.overall >= 0.55 && s.overall <= 0.59, "silhouette in [0.55, 0.59]");
  o.detail << "silhouette=" << s.overall << " cost=" << r.cost;
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto [ds, rep] = load_wbc();
  SweepConfig cfg;
  cfg.k_min = 2;
  cfg.k_max = 10;
  cfg.seed = 42;
  const auto r = sweep_k(ds.features, cfg);
  const double peak = r.avg_silhouette.front();
  o.require(r.best_k == 2, "best k = 2");
  o.require(peak >= 0.56 && peak <= 0.60, "peak in [0.56, 0.60]");
  o.detail << "best_k=" << r.best_k << " silhouette(k=2)=" << peak;
  return o;
}

std::vector<std::vector<double>> dense(const DistanceMatrix& d) {
  std::vector<std::vector<double>> out(d.size(), std::vector<double>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) out[i][j] = d(i, j);
  return out;
}

Outcome criterion6() {
  Outcome o;
  int km_ok = 0, pam_ok = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto x = oracle::random_matrix(6 + t % 5, 2, 500 + t);
    KMeansConfig cfg;
    cfg.k = 2;
    cfg.restarts = 50;
    cfg.seed = t;
    const double got = kmeans(x, cfg).objective;
    const double best = oracle::best_two_means_wss(x);
    if (std::abs(got - best) <= 1e-12 * std::max(1.0, best)) ++km_ok;
  }
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::size_t k = 2 + t % 2;
    const auto x = oracle::random_matrix(8 + t % 5, 2, 900 + t);
    const auto d = pairwise(x);
    PamConfig cfg;
    cfg.k = k;
    const double got = pam(d, cfg).cost;
    const double best = oracle::best_medoid_cost(dense(d), k);
    if (std::abs(got - best) <= 1e-12 * std::max(1.0, best)) ++pam_ok;
  }
  o.require(km_ok == 20, "kmeans exhaustive optimum");
  o.require(pam_ok == 20, "pam exhaustive optimum");

  bool sil_ok = true;
  for (std::size_t n : {10u, 100u, 300u}) {
    const auto x = oracle::random_matrix(n, 4, n);
    const auto d = pairwise(x);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>((i * 5 + i / 7) % 3);
    const auto got = silhouette(d, labels).widths;
    const auto want = oracle::silhouette_widths(dense(d), labels);
    for (std::size_t i = 0; i < n; ++i) sil_ok = sil_ok && std::abs(got[i] - want[i]) <= 1e-12;
  }
  o.require(sil_ok, "silhouette oracle");

  bool dist_ok = true;
  const auto x = oracle::random_matrix(120, 5, 77);
  const auto d = pairwise(x);
  for (std::size_t i = 0; i < 120; ++i)
    for (std::size_t j = 0; j < 120; ++j) dist_ok = dist_ok && d(i, j) == (i == j ? 0.0 : oracle::euclid(x, i, j));
  o.require(dist_ok, "pairwise oracle");
  o.detail << "kmeans " << km_ok << "/20, pam " << pam_ok << "/20";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion7() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / ("clustan_acceptance_" + std::to_string(std::random_device{}()));
  std::vector<fs::path> dirs = {base / "a", base / "b"};
  for (const auto& dir : dirs) {
    const std::string cmd = "\"" + kCli.string() + "\" analyze \"" + (kDataDir / "wbc.csv").string() +
                            "\" --seed 7 --out \"" + dir.string() + "\" > /dev/null";
    o.require(std::system(cmd.c_str()) == 0, "analyze exit status");
  }
  std::size_t compared = 0;
  for (const char* name : {"report.json", "scatter_kmeans.svg", "scatter_pam.svg", "silhouette_pam.svg", "sweep.svg"}) {
    const auto a = slurp(dirs[0] / name);
    const auto b = slurp(dirs[1] / name);
    o.require(!a.empty() && a == b, std::string(name) + " identical");
    ++compared;
  }
  fs::remove_all(base);
  o.detail << compared << " files compared";
  return o;
}

Outcome criterion8() {
  Outcome o;
  double worst_trace = 0.0, worst_value = 0.0, worst_vector = 0.0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    std::mt19937_64 rng(t);
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix x(100, 5);
    for (std::size_t i = 0; i < 100; ++i)
      for (std::size_t j = 0; j < 5; ++j) x(i, j) = g(rng) * static_cast<double>(5 - j);
    const auto cov = covariance(x);
    const auto p = pca_2d(x);
    double trace = 0.0, sum = 0.0;
    for (std::size_t j = 0; j < 5; ++j) trace += cov(j, j);
    for (double v : p.eigenvalues) sum += v;
    worst_trace = std::max(worst_trace, std::abs(sum - trace) / trace);

    std::vector<std::vector<double>> rows(5, std::vector<double>(5));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) rows[i][j] = cov(i, j);
    const auto ref = oracle::power_iteration(rows, 2);
    for (std::size_t c = 0; c < 2; ++c) {
      worst_value = std::max(worst_value, std::abs(p.eigenvalues[c] - ref[c].value) / ref[c].value);
      double dot = 0.0;
      for (std::size_t j = 0; j < 5; ++j) dot += p.components(c, j) * ref[c].vector[j];
      const double sign = dot < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < 5; ++j)
        worst_vector = std::max(worst_vector, std::abs(p.components(c, j) - sign * ref[c].vector[j]));
    }
  }
  o.require(worst_trace <= 1e-10, "trace");
  o.require(worst_value <= 1e-8 && worst_vector <= 1e-8, "top-2 components");
  o.detail << "trace err=" << worst_trace << " eigenvalue err=" << worst_value << " vector err=" << worst_vector;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 preprocessing exactness", 0.1, criterion1},
      {"2 hopkins reproduction", 1.0, criterion2},
      {"3 kmeans table reproduction", 1.0, criterion3},
      {"4 pam silhouette reproduction", 5.0, criterion4},
      {"5 sweep reproduction", 10.0, criterion5},
      {"6 oracle equivalence", 0.0, criterion6},
      {"7 determinism", 0.0, criterion7},
      {"8 pca correctness", 0.0, criterion8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.pass = false;
      o.failed += " [failed: runtime over " + std::to_string(c.budget_seconds) + " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %s (%.3f s): %s%s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.str().c_str(),
                o.failed.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
