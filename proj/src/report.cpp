#include "clustan/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clustan/error.hpp"

namespace clustan {

namespace detail {
extern const char* const kReportSchemaText;
}

using nlohmann::ordered_json;

ClusterNaming name_clusters(std::span<const int> labels, std::span<const ClassLabel> classes) {
  if (classes.empty() || classes.size() != labels.size()) {
    throw Error(ErrorKind::NoLabels, "class labels are required for every clustered point");
  }
  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw Error(ErrorKind::InvalidArgument, "negative cluster id");
    max_label = std::max(max_label, l);
  }
  ClusterNaming naming;
  std::vector<ClusterName> all(static_cast<std::size_t>(max_label + 1));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& c = all[static_cast<std::size_t>(labels[i])];
    ++c.size;
    if (classes[i] == ClassLabel::Benign) ++c.benign;
    else ++c.malignant;
  }
  std::size_t agreeing = 0;
  for (std::size_t id = 0; id < all.size(); ++id) {
    auto& c = all[id];
    if (c.size == 0) continue;
    c.cluster = static_cast<int>(id);
    c.majority = c.malignant > c.benign ? ClassLabel::Malignant : ClassLabel::Benign;
    c.name = std::string(to_string(c.majority));
    const std::size_t majority_count = std::max(c.benign, c.malignant);
    c.purity = static_cast<double>(majority_count) / static_cast<double>(c.size);
    agreeing += majority_count;
    naming.clusters.push_back(c);
  }
  naming.agreement = static_cast<double>(agreeing) / static_cast<double>(labels.size());
  return naming;
}

std::vector<int> whole_percentages(std::span<const std::size_t> sizes) {
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  std::vector<int> out;
  for (auto s : sizes) {
    out.push_back(total == 0 ? 0 : static_cast<int>(std::lround(100.0 * static_cast<double>(s) / static_cast<double>(total))));
  }
  return out;
}

namespace {

std::string_view init_name(KMeansInit init) { return init == KMeansInit::KMeansPP ? "kmeans++" : "random"; }
std::string_view algorithm_name(SweepAlgorithm a) { return a == SweepAlgorithm::KMeans ? "kmeans" : "pam"; }

ordered_json optional_string(const std::optional<std::string>& s) { return s ? ordered_json(*s) : ordered_json(nullptr); }

ordered_json clusters_json(std::span<const std::size_t> sizes, const std::optional<ClusterNaming>& naming) {
  const auto pct = whole_percentages(sizes);
  ordered_json arr = ordered_json::array();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    ordered_json entry;
    entry["cluster"] = c + 1;
    entry["size"] = sizes[c];
    entry["percent"] = pct[c];
    const ClusterName* named = nullptr;
    if (naming) {
      for (const auto& cn : naming->clusters) {
        if (static_cast<std::size_t>(cn.cluster) == c) named = &cn;
      }
    }
    entry["name"] = named ? ordered_json(named->name) : ordered_json(nullptr);
    entry["purity"] = named ? ordered_json(named->purity) : ordered_json(nullptr);
    entry["benign"] = named ? ordered_json(named->benign) : ordered_json(nullptr);
    entry["malignant"] = named ? ordered_json(named->malignant) : ordered_json(nullptr);
    arr.push_back(std::move(entry));
  }
  return arr;
}

std::vector<std::size_t> label_sizes(const Labels& labels, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (int l : labels) ++sizes.at(static_cast<std::size_t>(l));
  return sizes;
}

}  // namespace

ordered_json report_to_json(const AnalysisReport& report) {
  ordered_json doc;

  const auto& ds = report.dataset;
  ordered_json dataset;
  dataset["source"] = ds.source;
  dataset["rows"] = ds.rows;
  dataset["features"] = ds.features;
  dataset["feature_names"] = ds.feature_names;
  if (ds.benign && ds.malignant) {
    dataset["class_distribution"] = {{"benign", *ds.benign}, {"malignant", *ds.malignant}};
  } else {
    dataset["class_distribution"] = nullptr;
  }
  doc["dataset"] = std::move(dataset);

  const auto& pre = report.preprocessing;
  ordered_json preprocessing;
  preprocessing["rows_before"] = pre.rows_before;
  preprocessing["rows_after"] = pre.rows_after;
  preprocessing["rows_dropped"] = pre.rows_dropped;
  preprocessing["dropped_row_ids"] = pre.dropped_row_ids;
  preprocessing["columns_dropped"] = pre.columns_dropped;
  preprocessing["normalization"] = ordered_json::array();
  for (const auto& [column, p] : pre.norm_params) {
    preprocessing["normalization"].push_back({{"column", column}, {"min", p.min}, {"max", p.max}});
  }
  doc["preprocessing"] = std::move(preprocessing);

  if (report.hopkins) {
    const auto& h = *report.hopkins;
    const auto [mn, mx] = std::minmax_element(h.per_trial.begin(), h.per_trial.end());
    double var = 0.0;
    for (double v : h.per_trial) var += (v - h.h) * (v - h.h);
    const double sd = h.per_trial.size() > 1 ? std::sqrt(var / static_cast<double>(h.per_trial.size() - 1)) : 0.0;
    doc["hopkins"] = {{"h", h.h},
                      {"m", h.m},
                      {"trials", h.trials},
                      {"seed", h.seed},
                      {"dimension_power", h.dimension_power},
                      {"degenerate", h.degenerate},
                      {"per_trial", h.per_trial},
                      {"per_trial_min", *mn},
                      {"per_trial_max", *mx},
                      {"per_trial_sd", sd}};
  } else {
    doc["hopkins"] = nullptr;
  }

  if (report.kmeans) {
    const auto& km = *report.kmeans;
    const auto& part = km.partition;
    const auto sizes = label_sizes(part.labels, part.k);
    ordered_json j;
    j["k"] = part.k;
    j["objective"] = part.objective;
    j["iterations"] = part.iterations;
    j["converged"] = part.converged;
    j["restart"] = part.restart;
    j["sizes"] = sizes;
    j["percentages"] = whole_percentages(sizes);
    j["centroids"] = ordered_json::array();
    if (part.centroids) {
      for (std::size_t c = 0; c < part.centroids->rows(); ++c) {
        const auto row = part.centroids->row(c);
        j["centroids"].push_back(std::vector<double>(row.begin(), row.end()));
      }
    }
    j["clusters"] = clusters_json(sizes, km.naming);
    j["agreement"] = km.naming ? ordered_json(km.naming->agreement) : ordered_json(nullptr);
    j["silhouette"] = km.silhouette ? ordered_json(*km.silhouette) : ordered_json(nullptr);
    doc["kmeans"] = std::move(j);
  } else {
    doc["kmeans"] = nullptr;
  }

  if (report.pam) {
    const auto& pm = *report.pam;
    const auto& res = pm.result;
    const auto sizes = label_sizes(res.labels, res.medoid_indices.size());
    ordered_json j;
    j["k"] = res.medoid_indices.size();
    j["cost"] = res.cost;
    j["medoids"] = res.medoid_indices;
    j["medoid_row_ids"] = pm.medoid_row_ids;
    j["swaps"] = res.swaps_performed;
    j["converged"] = res.converged;
    j["sizes"] = sizes;
    j["percentages"] = whole_percentages(sizes);
    j["clusters"] = clusters_json(sizes, pm.naming);
    j["agreement"] = pm.naming ? ordered_json(pm.naming->agreement) : ordered_json(nullptr);
    j["silhouette"] = pm.silhouette;
    doc["pam"] = std::move(j);
  } else {
    doc["pam"] = nullptr;
  }

  if (report.silhouette) {
    const auto& s = *report.silhouette;
    doc["silhouette"] = {{"partition", "pam"},
                         {"overall", s.overall},
                         {"cluster_means", s.cluster_means},
                         {"cluster_sizes", s.cluster_sizes}};
  } else {
    doc["silhouette"] = nullptr;
  }

  if (report.sweep) {
    const auto& sw = *report.sweep;
    const auto best = std::find(sw.ks.begin(), sw.ks.end(), sw.best_k) - sw.ks.begin();
    doc["sweep"] = {{"algorithm", algorithm_name(sw.algorithm)},
                    {"ks", sw.ks},
                    {"avg_silhouette", sw.avg_silhouette},
                    {"wss", sw.wss},
                    {"best_k", sw.best_k},
                    {"best_silhouette", sw.avg_silhouette.at(static_cast<std::size_t>(best))}};
  } else {
    doc["sweep"] = nullptr;
  }

  const auto& cfg = report.config;
  ordered_json config;
  config["input"] = cfg.input;
  config["format"] = cfg.format;
  config["id_column"] = optional_string(cfg.id_column);
  config["label_column"] = optional_string(cfg.label_column);
  config["normalize"] = cfg.normalize;
  config["metric"] = to_string(cfg.metric);
  config["seed"] = cfg.seed;
  config["k"] = cfg.k;
  config["hopkins"] = {{"m", cfg.hopkins.m},
                       {"trials", cfg.hopkins.trials},
                       {"seed", cfg.hopkins.seed},
                       {"dimension_power", cfg.hopkins.dimension_power}};
  config["kmeans"] = {{"init", init_name(cfg.kmeans.init)},
                      {"restarts", cfg.kmeans.restarts},
                      {"max_iter", cfg.kmeans.max_iter},
                      {"tol", cfg.kmeans.tol},
                      {"seed", cfg.kmeans.seed}};
  config["pam"] = {{"max_swap_iters", cfg.pam.max_swap_iters}};
  config["sweep"] = {{"algorithm", algorithm_name(cfg.sweep.algorithm)},
                     {"k_min", cfg.sweep.k_min},
                     {"k_max", cfg.sweep.k_max}};
  doc["config"] = std::move(config);
  doc["version"] = kVersion;
  return doc;
}

namespace {

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

void cluster_table(std::ostringstream& md, const ordered_json& clusters) {
  md << "| Cluster | Name | Instances | Share | Purity |\n|---|---|---|---|---|\n";
  for (const auto& c : clusters) {
    md << "| " << c["cluster"].get<int>() << " | " << (c["name"].is_null() ? "-" : c["name"].get<std::string>())
       << " | " << c["size"].get<std::size_t>() << " | " << c["percent"].get<int>() << "% | "
       << (c["purity"].is_null() ? "-" : fmt(c["purity"].get<double>(), 3)) << " |\n";
  }
}

std::string to_markdown(const AnalysisReport& report, const ordered_json& doc) {
  std::ostringstream md;
  md << "# Cluster analysis report\n\n";
  md << "Input: `" << report.config.input << "` (" << report.config.format << "), tool version " << kVersion << "\n\n";

  md << "## Dataset\n\n";
  const auto& pre = report.preprocessing;
  md << "- Rows before preprocessing: " << pre.rows_before << "\n";
  md << "- Rows dropped (missing values): " << pre.rows_dropped << "\n";
  md << "- Rows after preprocessing: " << pre.rows_after << "\n";
  md << "- Feature columns: " << report.dataset.features << "\n";
  if (!pre.columns_dropped.empty()) {
    md << "- Columns removed from features:";
    for (const auto& c : pre.columns_dropped) md << " `" << c << "`";
    md << "\n";
  }
  md << "- Min-max normalized: " << (report.config.normalize ? "yes" : "no") << "\n";
  if (report.dataset.benign && report.dataset.malignant) {
    md << "- Classes: " << *report.dataset.benign << " benign, " << *report.dataset.malignant << " malignant\n";
  }
  if (!pre.dropped_row_ids.empty()) {
    md << "- Dropped row ids:";
    for (const auto& id : pre.dropped_row_ids) md << ' ' << id;
    md << "\n";
  }
  md << "\n";

  md << "## Clustering tendency\n\n";
  if (report.hopkins) {
    const auto& h = doc["hopkins"];
    md << "Hopkins statistic H = " << fmt(report.hopkins->h) << " (m = " << report.hopkins->m << ", "
       << report.hopkins->trials << " trials, seed " << report.hopkins->seed << "; per-trial range "
       << fmt(h["per_trial_min"].get<double>()) << " to " << fmt(h["per_trial_max"].get<double>()) << ", sd "
       << fmt(h["per_trial_sd"].get<double>()) << ").\n";
    md << "Values near 1 indicate clustered data; values near 0.5 indicate spatially uniform data.\n\n";
  } else {
    md << "Not computed.\n\n";
  }

  md << "## K-means\n\n";
  if (report.kmeans) {
    const auto& j = doc["kmeans"];
    md << "k = " << j["k"].get<std::size_t>() << ", WSS = " << fmt(j["objective"].get<double>()) << ", "
       << j["iterations"].get<std::size_t>() << " iterations (best restart " << j["restart"].get<std::size_t>() << ")";
    if (!j["silhouette"].is_null()) md << ", average silhouette " << fmt(j["silhouette"].get<double>());
    md << ".\n\n";
    cluster_table(md, j["clusters"]);
    if (!j["agreement"].is_null()) md << "\nLabel agreement under majority naming: " << fmt(j["agreement"].get<double>(), 3) << "\n";
    md << "\n";
  } else {
    md << "Not computed.\n\n";
  }

  md << "## PAM (k-medoids)\n\n";
  if (report.pam) {
    const auto& j = doc["pam"];
    md << "k = " << j["k"].get<std::size_t>() << ", total distance to medoids = " << fmt(j["cost"].get<double>()) << ", "
       << j["swaps"].get<std::size_t>() << " swaps, average silhouette " << fmt(j["silhouette"].get<double>()) << ".\n\n";
    md << "Medoid rows:";
    for (const auto& m : j["medoids"]) md << ' ' << m.get<std::size_t>();
    md << "\n\n";
    cluster_table(md, j["clusters"]);
    md << "\n";
  } else {
    md << "Not computed.\n\n";
  }

  md << "## Silhouette (PAM partition)\n\n";
  if (report.silhouette) {
    const auto& s = *report.silhouette;
    md << "Average silhouette width: " << fmt(s.overall) << "\n\n| Cluster | Size | Mean width |\n|---|---|---|\n";
    for (std::size_t c = 0; c < s.cluster_means.size(); ++c) {
      md << "| " << c + 1 << " | " << s.cluster_sizes[c] << " | " << fmt(s.cluster_means[c]) << " |\n";
    }
    md << "\n";
  } else {
    md << "Not computed.\n\n";
  }

  md << "## k sweep\n\n";
  if (report.sweep) {
    const auto& sw = *report.sweep;
    md << "Algorithm: " << algorithm_name(sw.algorithm) << "; best k = " << sw.best_k << "\n\n";
    md << "| k | Average silhouette | " << (sw.algorithm == SweepAlgorithm::Pam ? "Cost" : "WSS") << " |\n|---|---|---|\n";
    for (std::size_t i = 0; i < sw.ks.size(); ++i) {
      md << "| " << sw.ks[i] << (sw.ks[i] == sw.best_k ? " *" : "") << " | " << fmt(sw.avg_silhouette[i]) << " | "
         << fmt(sw.wss[i]) << " |\n";
    }
    md << "\n";
  } else {
    md << "Not computed.\n\n";
  }
  return md.str();
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  const auto doc = report_to_json(report);
  const auto violations = schema_violations(nlohmann::json::parse(doc.dump()), report_schema());
  if (!violations.empty()) {
    throw Error(ErrorKind::InvalidArgument, "report does not match its schema: " + violations.front());
  }
  if (format == ReportFormat::Json) return doc.dump(2) + "\n";
  return to_markdown(report, doc);
}

const nlohmann::json& report_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(detail::kReportSchemaText);
  return schema;
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  return false;
}

void check(const nlohmann::json& value, const nlohmann::json& schema, const nlohmann::json& root,
           const std::string& path, std::vector<std::string>& out) {
  if (schema.contains("$ref")) {
    const auto ref = schema["$ref"].get<std::string>();
    if (ref.rfind("#/", 0) != 0) {
      out.push_back(path + ": unsupported $ref " + ref);
      return;
    }
    check(value, root.at(nlohmann::json::json_pointer(ref.substr(1))), root, path, out);
    return;
  }
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
    }
    if (!ok) {
      out.push_back(path + ": expected type " + t.dump() + ", got " + value.type_name());
      return;
    }
  }
  if (schema.contains("enum")) {
    const auto& options = schema["enum"];
    if (std::find(options.begin(), options.end(), value) == options.end()) {
      out.push_back(path + ": value " + value.dump() + " not in enum");
    }
  }
  if (value.is_number()) {
    const double v = value.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>()) out.push_back(path + ": below minimum");
    if (schema.contains("maximum") && v > schema["maximum"].get<double>()) out.push_back(path + ": above maximum");
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) out.push_back(path + ": missing key '" + key.get<std::string>() + "'");
      }
    }
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (const auto& [key, child] : value.items()) {
      if (schema.contains("properties") && schema["properties"].contains(key)) {
        check(child, schema["properties"][key], root, path + "/" + key, out);
      } else if (closed) {
        out.push_back(path + ": unexpected key '" + key + "'");
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
      out.push_back(path + ": fewer than minItems entries");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check(value[i], schema["items"], root, path + "/" + std::to_string(i), out);
      }
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& doc, const nlohmann::json& schema) {
  std::vector<std::string> out;
  check(doc, schema, schema, "", out);
  return out;
}

}  // namespace clustan
