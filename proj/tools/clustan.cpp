// clustan: command-line front end for the cluster-analysis library.
//
// Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 analysis error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "clustan/error.hpp"
#include "clustan/metrics.hpp"
#include "clustan/pipeline.hpp"
#include "clustan/plots.hpp"
#include "clustan/report.hpp"

namespace fs = std::filesystem;
using namespace clustan;

namespace {

struct CommonOptions {
  std::string input;
  std::string format = "auto";
  std::string metric = "euclidean";
  std::uint64_t seed = 42;
  bool no_normalize = false;
  bool no_header = false;
  std::string missing = "?";
  std::string id_column = "auto";
  std::string label_column = "auto";
  std::string out;
  bool json = false;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("input", o.input, "Input table (CSV or ARFF)")->required();
  cmd->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"auto", "csv", "arff"}));
  cmd->add_option("--metric", o.metric, "Distance metric")
      ->check(CLI::IsMember({"euclidean", "sqeuclidean", "manhattan"}));
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_flag("--no-normalize", o.no_normalize, "Skip min-max normalization");
  cmd->add_flag("--no-header", o.no_header, "CSV has no header row (columns become col1..colN)");
  cmd->add_option("--missing", o.missing, "Missing-value marker in CSV");
  cmd->add_option("--id-column", o.id_column, "Identifier column name, 'auto' or 'none'");
  cmd->add_option("--label-column", o.label_column, "Class column name, 'auto' or 'none'");
  cmd->add_option("--out", o.out, "Output path or directory");
  cmd->add_flag("--json", o.json, "Print machine-readable JSON");
  cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on it)");
}

RawTable load(const CommonOptions& o) {
  CsvConfig csv;
  csv.has_header = !o.no_header;
  csv.missing_marker = o.missing;
  return load_table(o.input, o.format, csv);
}

AnalysisConfig base_config(const CommonOptions& o, const RawTable& table) {
  AnalysisConfig cfg;
  cfg.input = o.input;
  cfg.format = resolve_format(o.input, o.format);
  cfg.id_column = resolve_id_column(table, o.id_column);
  cfg.label_column = resolve_label_column(table, o.label_column);
  cfg.normalize = !o.no_normalize;
  cfg.metric = metric_from_string(o.metric);
  cfg.seed = o.seed;
  cfg.hopkins.seed = o.seed;
  cfg.kmeans.seed = o.seed;
  cfg.sweep.seed = o.seed;
  return cfg;
}

std::pair<Dataset, PreprocessReport> load_dataset(const CommonOptions& o, AnalysisConfig& cfg) {
  const auto table = load(o);
  cfg = base_config(o, table);
  return preprocess(table, {cfg.id_column, cfg.label_column, cfg.normalize});
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
  return buf;
}

void print_cluster_table(const std::vector<std::size_t>& sizes, const std::optional<ClusterNaming>& naming) {
  const auto percentages = whole_percentages(sizes);
  std::cout << "cluster  name       instances  share  purity\n";
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const ClusterName* named = nullptr;
    if (naming) {
      for (const auto& cn : naming->clusters) {
        if (static_cast<std::size_t>(cn.cluster) == c) named = &cn;
      }
    }
    char line[128];
    std::snprintf(line, sizeof line, "%-8zu %-10s %9zu  %4d%%  %s\n", c + 1, named ? named->name.c_str() : "-",
                  sizes[c], percentages[c], named ? pct(named->purity).c_str() : "-");
    std::cout << line;
  }
  if (naming) std::cout << "label agreement: " << pct(naming->agreement) << '\n';
}

fs::path out_dir(const CommonOptions& o, const char* fallback) { return o.out.empty() ? fs::path(fallback) : fs::path(o.out); }

int cmd_inspect(const CommonOptions& o) {
  const auto table = load(o);
  std::vector<std::size_t> missing(table.n_cols(), 0);
  std::size_t incomplete = 0;
  for (const auto& row : table.rows) {
    bool any = false;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c]) {
        ++missing[c];
        any = true;
      }
    }
    incomplete += any ? 1 : 0;
  }
  const auto id = resolve_id_column(table, o.id_column);
  const auto label = resolve_label_column(table, o.label_column);
  if (o.json) {
    nlohmann::ordered_json j;
    j["rows"] = table.n_rows();
    j["columns"] = table.n_cols();
    j["rows_with_missing"] = incomplete;
    j["column_names"] = table.column_names;
    j["missing_per_column"] = missing;
    j["id_column"] = id ? nlohmann::ordered_json(*id) : nlohmann::ordered_json(nullptr);
    j["label_column"] = label ? nlohmann::ordered_json(*label) : nlohmann::ordered_json(nullptr);
    print_json(j);
    return 0;
  }
  std::cout << "rows: " << table.n_rows() << "\ncolumns: " << table.n_cols() << "\nrows with missing values: " << incomplete
            << "\nid column: " << id.value_or("-") << "\nlabel column: " << label.value_or("-") << "\n\n";
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    std::cout << "  " << table.column_names[c] << (table.is_nominal(c) ? " (nominal)" : "") << ": " << missing[c]
              << " missing\n";
  }
  return 0;
}

int cmd_preprocess(const CommonOptions& o) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  AnalysisReport report;
  report.config = cfg;
  report.preprocessing = pre;
  report.dataset = summarize(ds, cfg.input);
  if (!o.out.empty()) {
    RawTable cleaned;
    cleaned.column_names = ds.feature_names;
    for (std::size_t i = 0; i < ds.n(); ++i) {
      const auto row = ds.features.row(i);
      cleaned.rows.emplace_back(row.begin(), row.end());
    }
    const fs::path path(o.out);
    write_file(path, path.extension() == ".arff" ? write_arff(cleaned, path.stem().string()) : write_csv(cleaned));
  }
  if (o.json) {
    const auto doc = report_to_json(report);
    print_json({{"dataset", doc["dataset"]}, {"preprocessing", doc["preprocessing"]}});
    return 0;
  }
  std::cout << "rows before: " << pre.rows_before << "\nrows dropped: " << pre.rows_dropped
            << "\nrows after: " << pre.rows_after << "\nfeatures: " << ds.d() << "\n";
  if (report.dataset.benign) {
    std::cout << "classes: " << *report.dataset.benign << " benign, " << *report.dataset.malignant << " malignant\n";
  }
  if (!pre.columns_dropped.empty()) {
    std::cout << "columns removed:";
    for (const auto& c : pre.columns_dropped) std::cout << " '" << c << "'";
    std::cout << '\n';
  }
  return 0;
}

int cmd_tendency(const CommonOptions& o, std::size_t m, std::size_t trials, bool power) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  HopkinsOptions opts;
  opts.m = m;
  opts.trials = trials;
  opts.seed = o.seed;
  opts.dimension_power = power;
  opts.threads = o.threads;
  AnalysisReport report;
  report.hopkins = hopkins(ds.features, opts);
  const auto j = report_to_json(report)["hopkins"];
  if (o.json) {
    print_json(j);
    return 0;
  }
  const auto& h = *report.hopkins;
  std::printf("Hopkins H = %.7f\n", h.h);
  std::printf("m = %zu, trials = %zu, seed = %llu\n", h.m, h.trials, static_cast<unsigned long long>(h.seed));
  std::printf("per-trial min %.4f, max %.4f, sd %.4f\n", j["per_trial_min"].get<double>(),
              j["per_trial_max"].get<double>(), j["per_trial_sd"].get<double>());
  if (h.degenerate) std::printf("warning: degenerate data (zero nearest-neighbour distances)\n");
  std::printf("%s\n", h.h > 0.75 ? "data shows strong clustering tendency"
                      : h.h > 0.6 ? "data shows some clustering tendency"
                                  : "data looks spatially random");
  return 0;
}

int cmd_kmeans(const CommonOptions& o, KMeansConfig kc) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  kc.seed = o.seed;
  kc.threads = o.threads;
  const auto part = kmeans(ds.features, kc);
  std::optional<ClusterNaming> naming;
  if (ds.labels) naming = name_clusters(part.labels, *ds.labels);
  std::optional<double> sil;
  if (kc.k >= 2) sil = silhouette(pairwise(ds.features, cfg.metric, o.threads), part.labels, o.threads).overall;

  if (!o.out.empty() && ds.d() >= 2) {
    const auto dir = fs::path(o.out);
    fs::create_directories(dir);
    const auto proj = pca_2d(ds.features);
    write_file(dir / "scatter_kmeans.svg",
               emit_scatter_svg(proj, part.labels, project(proj, *part.centroids), "K-means clusters (PCA plane)"));
    write_file(dir / "scatter_kmeans.csv", scatter_csv(proj, part.labels, ds.row_ids));
  }
  if (o.json) {
    AnalysisReport report;
    report.kmeans = KMeansSection{kc, part, naming, sil};
    print_json(report_to_json(report)["kmeans"]);
    return 0;
  }
  std::printf("k = %zu, WSS = %.6f, iterations = %zu, converged = %s, best restart = %zu\n", part.k, part.objective,
              part.iterations, part.converged ? "yes" : "no", part.restart);
  if (sil) std::printf("average silhouette = %.4f\n", *sil);
  print_cluster_table(part.sizes(), naming);
  return 0;
}

int cmd_pam(const CommonOptions& o, PamConfig pc) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  pc.metric = cfg.metric;
  const auto dist = pairwise(ds.features, cfg.metric, o.threads);
  const auto res = pam(dist, pc);
  std::optional<ClusterNaming> naming;
  if (ds.labels) naming = name_clusters(res.labels, *ds.labels);
  std::optional<SilhouetteReport> sil;
  if (pc.k >= 2) sil = silhouette(dist, res.labels, o.threads);

  if (!o.out.empty() && ds.d() >= 2) {
    const auto dir = fs::path(o.out);
    fs::create_directories(dir);
    const auto proj = pca_2d(ds.features);
    Matrix medoids(res.medoid_indices.size(), ds.d());
    for (std::size_t c = 0; c < res.medoid_indices.size(); ++c) {
      const auto row = ds.features.row(res.medoid_indices[c]);
      std::copy(row.begin(), row.end(), medoids.row(c).begin());
    }
    write_file(dir / "scatter_pam.svg",
               emit_scatter_svg(proj, res.labels, project(proj, medoids), "PAM clusters (PCA plane)"));
    write_file(dir / "scatter_pam.csv", scatter_csv(proj, res.labels, ds.row_ids));
    if (sil) {
      write_file(dir / "silhouette_pam.svg", emit_silhouette_svg(*sil, "Silhouette plot, PAM"));
      write_file(dir / "silhouette_pam.csv", silhouette_csv(*sil, ds.row_ids));
    }
  }
  if (o.json) {
    AnalysisReport report;
    PamSection section{pc, res, naming, sil ? sil->overall : 0.0, {}};
    for (auto m : res.medoid_indices) section.medoid_row_ids.push_back(ds.row_ids[m]);
    report.pam = section;
    print_json(report_to_json(report)["pam"]);
    return 0;
  }
  std::printf("k = %zu, cost = %.6f, swaps = %zu, converged = %s\n", res.medoid_indices.size(), res.cost,
              res.swaps_performed, res.converged ? "yes" : "no");
  std::printf("medoids (row ids):");
  for (auto m : res.medoid_indices) std::printf(" %s", ds.row_ids[m].c_str());
  std::printf("\n");
  if (sil) std::printf("average silhouette = %.4f\n", sil->overall);
  std::vector<std::size_t> sizes(res.medoid_indices.size(), 0);
  for (int l : res.labels) ++sizes[static_cast<std::size_t>(l)];
  print_cluster_table(sizes, naming);
  return 0;
}

int cmd_silhouette(const CommonOptions& o, std::size_t k, const std::string& algorithm, KMeansConfig kc, PamConfig pc) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  const auto dist = pairwise(ds.features, cfg.metric, o.threads);
  Labels labels;
  if (algorithm == "pam") {
    pc.k = k;
    labels = pam(dist, pc).labels;
  } else {
    kc.k = k;
    kc.seed = o.seed;
    kc.threads = o.threads;
    labels = kmeans(ds.features, kc).labels;
  }
  const auto rep = silhouette(dist, labels, o.threads);
  if (!o.out.empty()) {
    const auto dir = fs::path(o.out);
    fs::create_directories(dir);
    write_file(dir / ("silhouette_" + algorithm + ".svg"), emit_silhouette_svg(rep, "Silhouette plot, " + algorithm));
    write_file(dir / ("silhouette_" + algorithm + ".csv"), silhouette_csv(rep, ds.row_ids));
  }
  if (o.json) {
    print_json({{"algorithm", algorithm},
                {"k", k},
                {"overall", rep.overall},
                {"cluster_means", rep.cluster_means},
                {"cluster_sizes", rep.cluster_sizes}});
    return 0;
  }
  std::printf("%s, k = %zu: average silhouette = %.4f\n", algorithm.c_str(), k, rep.overall);
  for (std::size_t c = 0; c < rep.cluster_means.size(); ++c) {
    std::printf("  cluster %zu: n = %zu, mean width = %.4f\n", c + 1, rep.cluster_sizes[c], rep.cluster_means[c]);
  }
  return 0;
}

int cmd_sweep(const CommonOptions& o, SweepConfig sc) {
  AnalysisConfig cfg;
  const auto [ds, pre] = load_dataset(o, cfg);
  sc.metric = cfg.metric;
  sc.seed = o.seed;
  sc.threads = o.threads;
  const auto sw = sweep_k(ds.features, sc);
  if (!o.out.empty()) {
    const auto dir = fs::path(o.out);
    fs::create_directories(dir);
    write_file(dir / "sweep.svg", emit_sweep_svg(sw));
    write_file(dir / "sweep.csv", sweep_csv(sw));
  }
  if (o.json) {
    AnalysisReport report;
    report.sweep = sw;
    print_json(report_to_json(report)["sweep"]);
    return 0;
  }
  std::printf("%-4s %-18s %s\n", "k", "avg silhouette", sc.algorithm == SweepAlgorithm::Pam ? "cost" : "wss");
  for (std::size_t i = 0; i < sw.ks.size(); ++i) {
    std::printf("%-4zu %-18.4f %.4f%s\n", sw.ks[i], sw.avg_silhouette[i], sw.wss[i], sw.ks[i] == sw.best_k ? "  <- best" : "");
  }
  return 0;
}

int cmd_analyze(const CommonOptions& o, AnalysisConfig tuned) {
  const auto table = load(o);
  auto cfg = base_config(o, table);
  cfg.k = tuned.k;
  cfg.hopkins.m = tuned.hopkins.m;
  cfg.hopkins.trials = tuned.hopkins.trials;
  cfg.hopkins.dimension_power = tuned.hopkins.dimension_power;
  cfg.kmeans.init = tuned.kmeans.init;
  cfg.kmeans.restarts = tuned.kmeans.restarts;
  cfg.kmeans.max_iter = tuned.kmeans.max_iter;
  cfg.kmeans.tol = tuned.kmeans.tol;
  cfg.pam.max_swap_iters = tuned.pam.max_swap_iters;
  cfg.sweep.algorithm = tuned.sweep.algorithm;
  cfg.sweep.k_min = tuned.sweep.k_min;
  cfg.sweep.k_max = tuned.sweep.k_max;
  const auto artifacts = run_analysis(table, cfg, o.threads);
  const auto dir = out_dir(o, "results");
  const auto written = write_outputs(artifacts, dir);
  if (o.json) {
    std::cout << emit_report(artifacts.report, ReportFormat::Json);
    return 0;
  }
  std::cout << emit_report(artifacts.report, ReportFormat::Markdown);
  std::cout << "Wrote " << written.size() << " files to " << dir.string() << "\n";
  return 0;
}

KMeansInit parse_init(const std::string& s) { return s == "random" ? KMeansInit::Random : KMeansInit::KMeansPP; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster analysis toolkit: preprocessing, Hopkins tendency, K-means, PAM, silhouette, k sweep"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  std::size_t k = 2;
  std::size_t m = 0;
  std::size_t trials = 30;
  bool power = false;
  std::string init = "kmeans++";
  KMeansConfig kc;
  PamConfig pc;
  SweepConfig sc;
  std::string algorithm = "kmeans";

  auto add_kmeans_opts = [&](CLI::App* cmd) {
    cmd->add_option("--init", init, "Seeding")->check(CLI::IsMember({"kmeans++", "random"}));
    cmd->add_option("--restarts", kc.restarts, "Independent restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", kc.max_iter, "Lloyd iterations per restart")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", kc.tol, "Centroid-shift convergence threshold")->check(CLI::NonNegativeNumber);
  };
  auto add_pam_opts = [&](CLI::App* cmd) {
    cmd->add_option("--max-swaps", pc.max_swap_iters, "Upper bound on applied swaps");
  };
  auto add_hopkins_opts = [&](CLI::App* cmd) {
    cmd->add_option("--m", m, "Hopkins sample size (0 = floor(0.1 n))");
    cmd->add_option("--trials", trials, "Hopkins trials")->check(CLI::PositiveNumber);
    cmd->add_flag("--power", power, "Use distances raised to the data dimension");
  };
  auto add_sweep_opts = [&](CLI::App* cmd) {
    cmd->add_option("--kmin", sc.k_min, "Smallest k");
    cmd->add_option("--kmax", sc.k_max, "Largest k");
  };

  auto* inspect = app.add_subcommand("inspect", "Summarize a raw table");
  add_common(inspect, common);
  auto* pre = app.add_subcommand("preprocess", "Drop incomplete rows, split id/label, normalize");
  add_common(pre, common);
  auto* tend = app.add_subcommand("tendency", "Hopkins clustering-tendency statistic");
  add_common(tend, common);
  add_hopkins_opts(tend);
  auto* km = app.add_subcommand("kmeans", "K-means clustering");
  add_common(km, common);
  km->add_option("--k", k, "Number of clusters")->check(CLI::PositiveNumber);
  add_kmeans_opts(km);
  auto* pm = app.add_subcommand("pam", "Partitioning Around Medoids");
  add_common(pm, common);
  pm->add_option("--k", k, "Number of clusters")->check(CLI::PositiveNumber);
  add_pam_opts(pm);
  auto* sil = app.add_subcommand("silhouette", "Silhouette analysis of a clustering");
  add_common(sil, common);
  sil->add_option("--k", k, "Number of clusters")->check(CLI::Range(2, 1 << 20));
  sil->add_option("--algorithm", algorithm, "Clustering to score")->check(CLI::IsMember({"kmeans", "pam"}));
  add_kmeans_opts(sil);
  add_pam_opts(sil);
  auto* sw = app.add_subcommand("sweep", "Average silhouette and WSS over a range of k");
  add_common(sw, common);
  sw->add_option("--algorithm", algorithm, "Clustering algorithm")->check(CLI::IsMember({"kmeans", "pam"}));
  add_sweep_opts(sw);
  add_kmeans_opts(sw);
  add_pam_opts(sw);
  auto* an = app.add_subcommand("analyze", "Full pipeline: report.json, report.md, SVG plots and CSV data");
  add_common(an, common);
  an->add_option("--k", k, "Number of clusters for K-means and PAM")->check(CLI::PositiveNumber);
  an->add_option("--sweep-algorithm", algorithm, "Algorithm for the k sweep")->check(CLI::IsMember({"kmeans", "pam"}));
  add_hopkins_opts(an);
  add_kmeans_opts(an);
  add_pam_opts(an);
  add_sweep_opts(an);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  kc.init = parse_init(init);
  kc.k = k;
  pc.k = k;
  sc.algorithm = algorithm == "pam" ? SweepAlgorithm::Pam : SweepAlgorithm::KMeans;
  sc.kmeans = kc;
  sc.pam = pc;

  try {
    if (*inspect) return cmd_inspect(common);
    if (*pre) return cmd_preprocess(common);
    if (*tend) return cmd_tendency(common, m, trials, power);
    if (*km) return cmd_kmeans(common, kc);
    if (*pm) return cmd_pam(common, pc);
    if (*sil) return cmd_silhouette(common, k, algorithm, kc, pc);
    if (*sw) return cmd_sweep(common, sc);
    if (*an) {
      AnalysisConfig tuned;
      tuned.k = k;
      tuned.hopkins.m = m;
      tuned.hopkins.trials = trials;
      tuned.hopkins.dimension_power = power;
      tuned.kmeans = kc;
      tuned.pam = pc;
      tuned.sweep = sc;
      return cmd_analyze(common, tuned);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_input_error(e.kind()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
