#include "clustan/pipeline.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "clustan/error.hpp"
#include "clustan/metrics.hpp"
#include "clustan/plots.hpp"

namespace clustan {

namespace {

constexpr std::array<std::string_view, 5> kIdNames = {"Sample code number", "Sample_code_number", "id", "ID", "Id"};
constexpr std::array<std::string_view, 3> kLabelNames = {"Class", "class", "CLASS"};

template <std::size_t N>
std::optional<std::string> resolve(const RawTable& table, std::string_view requested,
                                   const std::array<std::string_view, N>& known) {
  if (requested == "none") return std::nullopt;
  if (requested != "auto") return std::string(requested);
  for (auto name : known) {
    if (table.column_index(name)) return std::string(name);
  }
  return std::nullopt;
}

}  // namespace

std::string resolve_format(const std::filesystem::path& path, std::string_view requested) {
  if (requested == "csv" || requested == "arff") return std::string(requested);
  if (requested != "auto") throw Error(ErrorKind::InvalidArgument, "unknown input format '" + std::string(requested) + "'");
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".arff" ? "arff" : "csv";
}

RawTable load_table(const std::filesystem::path& path, std::string_view format, const CsvConfig& csv) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open input file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto text = buffer.str();
  return resolve_format(path, format) == "arff" ? parse_arff(text) : parse_csv(text, csv);
}

std::optional<std::string> resolve_id_column(const RawTable& table, std::string_view requested) {
  return resolve(table, requested, kIdNames);
}

std::optional<std::string> resolve_label_column(const RawTable& table, std::string_view requested) {
  return resolve(table, requested, kLabelNames);
}

DatasetSummary summarize(const Dataset& ds, std::string source) {
  DatasetSummary s;
  s.source = std::move(source);
  s.rows = ds.n();
  s.features = ds.d();
  s.feature_names = ds.feature_names;
  if (ds.labels) {
    s.benign = static_cast<std::size_t>(std::count(ds.labels->begin(), ds.labels->end(), ClassLabel::Benign));
    s.malignant = ds.labels->size() - *s.benign;
  }
  return s;
}

AnalysisArtifacts run_analysis(const RawTable& table, const AnalysisConfig& config, unsigned threads) {
  AnalysisArtifacts out;
  auto& report = out.report;
  report.config = config;

  auto [ds, pre] = preprocess(table, {config.id_column, config.label_column, config.normalize});
  out.dataset = std::move(ds);
  const auto& data = out.dataset;
  report.preprocessing = std::move(pre);
  report.dataset = summarize(data, config.input);
  if (data.n() < 3) throw Error(ErrorKind::TooFewPoints, "analysis needs at least 3 complete rows");

  auto hopkins_opts = config.hopkins;
  hopkins_opts.threads = threads;
  report.hopkins = hopkins(data.features, hopkins_opts);

  const auto dist = pairwise(data.features, config.metric, threads);

  KMeansConfig kc = config.kmeans;
  kc.k = config.k;
  kc.threads = threads;
  out.kmeans = kmeans(data.features, kc);
  KMeansSection km{kc, out.kmeans, std::nullopt, std::nullopt};
  if (data.labels) km.naming = name_clusters(out.kmeans.labels, *data.labels);
  if (config.k >= 2) km.silhouette = silhouette(dist, out.kmeans.labels, threads).overall;
  report.kmeans = std::move(km);

  PamConfig pc = config.pam;
  pc.k = config.k;
  pc.metric = config.metric;
  out.pam = pam(dist, pc);
  PamSection ps{pc, out.pam, std::nullopt, 0.0, {}};
  for (auto m : out.pam.medoid_indices) ps.medoid_row_ids.push_back(data.row_ids[m]);
  if (data.labels) ps.naming = name_clusters(out.pam.labels, *data.labels);
  if (config.k >= 2) {
    out.pam_silhouette = silhouette(dist, out.pam.labels, threads);
    ps.silhouette = out.pam_silhouette.overall;
    report.silhouette = out.pam_silhouette;
  }
  report.pam = std::move(ps);

  SweepConfig sc = config.sweep;
  sc.kmeans = config.kmeans;
  sc.pam = config.pam;
  sc.metric = config.metric;
  sc.seed = config.kmeans.seed;
  sc.threads = threads;
  sc.k_max = std::min(sc.k_max, data.n() - 1);
  out.sweep = sweep_k(data.features, dist, sc);
  report.sweep = out.sweep;

  out.projection = pca_2d(data.features);
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

std::vector<std::filesystem::path> write_outputs(const AnalysisArtifacts& a, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + out_dir.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const char* name, const std::string& content) {
    write_file(out_dir / name, content);
    written.push_back(out_dir / name);
  };
  emit("report.json", emit_report(a.report, ReportFormat::Json));
  emit("report.md", emit_report(a.report, ReportFormat::Markdown));

  const auto& ids = a.dataset.row_ids;
  const auto km_centers = project(a.projection, *a.kmeans.centroids);
  emit("scatter_kmeans.svg", emit_scatter_svg(a.projection, a.kmeans.labels, km_centers, "K-means clusters (PCA plane)"));
  emit("scatter_kmeans.csv", scatter_csv(a.projection, a.kmeans.labels, ids));

  Matrix medoid_points(a.pam.medoid_indices.size(), a.dataset.d());
  for (std::size_t c = 0; c < a.pam.medoid_indices.size(); ++c) {
    const auto row = a.dataset.features.row(a.pam.medoid_indices[c]);
    std::copy(row.begin(), row.end(), medoid_points.row(c).begin());
  }
  emit("scatter_pam.svg", emit_scatter_svg(a.projection, a.pam.labels, project(a.projection, medoid_points),
                                           "PAM clusters (PCA plane)"));
  emit("scatter_pam.csv", scatter_csv(a.projection, a.pam.labels, ids));

  if (!a.pam_silhouette.widths.empty()) {
    emit("silhouette_pam.svg", emit_silhouette_svg(a.pam_silhouette, "Silhouette plot, PAM"));
    emit("silhouette_pam.csv", silhouette_csv(a.pam_silhouette, ids));
  }
  emit("sweep.svg", emit_sweep_svg(a.sweep));
  emit("sweep.csv", sweep_csv(a.sweep));
  return written;
}

}  // namespace clustan
