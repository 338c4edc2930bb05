#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "clustan/dataset.hpp"
#include "clustan/kmeans.hpp"
#include "clustan/pam.hpp"
#include "clustan/tendency.hpp"
#include "clustan/validation.hpp"

namespace clustan {

inline constexpr std::string_view kVersion = "1.0.0";

struct ClusterName {
  int cluster = 0;
  ClassLabel majority = ClassLabel::Benign;
  std::string name;
  /// Fraction of members carrying the majority class.
  double purity = 0.0;
  std::size_t size = 0;
  std::size_t benign = 0;
  std::size_t malignant = 0;
};

struct ClusterNaming {
  std::vector<ClusterName> clusters;
  /// Fraction of points whose class matches their cluster's name.
  double agreement = 0.0;
};

/// Names each cluster after the class most of its members carry; a tie names it Benign.
ClusterNaming name_clusters(std::span<const int> labels, std::span<const ClassLabel> classes);

/// Percentages rounded to the nearest whole percent, e.g. 402 of 683 -> 59.
std::vector<int> whole_percentages(std::span<const std::size_t> sizes);

struct DatasetSummary {
  std::string source;
  std::size_t rows = 0;
  std::size_t features = 0;
  std::vector<std::string> feature_names;
  std::optional<std::size_t> benign;
  std::optional<std::size_t> malignant;
};

struct KMeansSection {
  KMeansConfig config;
  Partition partition;
  std::optional<ClusterNaming> naming;
  std::optional<double> silhouette;
};

struct PamSection {
  PamConfig config;
  PamResult result;
  std::optional<ClusterNaming> naming;
  double silhouette = 0.0;
  std::vector<std::string> medoid_row_ids;
};

/// Echo of every parameter that influences the numbers in a report.
struct AnalysisConfig {
  std::string input;
  std::string format = "csv";
  std::optional<std::string> id_column;
  std::optional<std::string> label_column;
  bool normalize = true;
  Metric metric = Metric::Euclidean;
  std::uint64_t seed = 0;
  std::size_t k = 2;
  HopkinsOptions hopkins;
  KMeansConfig kmeans;
  PamConfig pam;
  SweepConfig sweep;
};

struct AnalysisReport {
  DatasetSummary dataset;
  PreprocessReport preprocessing;
  std::optional<HopkinsResult> hopkins;
  std::optional<KMeansSection> kmeans;
  std::optional<PamSection> pam;
  /// Silhouette detail for the PAM partition.
  std::optional<SilhouetteReport> silhouette;
  std::optional<KSweepResult> sweep;
  AnalysisConfig config;
};

enum class ReportFormat { Json, Markdown };

nlohmann::ordered_json report_to_json(const AnalysisReport& report);

/// Serialized report. JSON output is validated against the report schema first.
std::string emit_report(const AnalysisReport& report, ReportFormat format);

/// The JSON Schema document the report follows.
const nlohmann::json& report_schema();

/// Validates `doc` against `schema` (the subset of JSON Schema the report schema uses:
/// type, required, properties, additionalProperties, items, enum, minimum, maximum,
/// minItems). Returns one message per violation; empty means valid.
std::vector<std::string> schema_violations(const nlohmann::json& doc, const nlohmann::json& schema);

}  // namespace clustan
