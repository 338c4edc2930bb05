#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clustan/dataset.hpp"
#include "clustan/projection.hpp"
#include "clustan/report.hpp"

namespace clustan {

/// "csv" or "arff"; "auto" picks by file extension (.arff, anything else csv).
std::string resolve_format(const std::filesystem::path& path, std::string_view requested);

/// Reads and parses a table; a missing or unreadable file raises an Io error naming it.
RawTable load_table(const std::filesystem::path& path, std::string_view format, const CsvConfig& csv = {});

/// Column selection. "auto" picks the first column whose name is a known id (or
/// class) header such as "Sample code number" or "Class"; "none" selects nothing.
std::optional<std::string> resolve_id_column(const RawTable& table, std::string_view requested);
std::optional<std::string> resolve_label_column(const RawTable& table, std::string_view requested);

DatasetSummary summarize(const Dataset& ds, std::string source);

/// Everything one analysis run produces.
struct AnalysisArtifacts {
  AnalysisReport report;
  Dataset dataset;
  Projection2D projection;
  Partition kmeans;
  PamResult pam;
  SilhouetteReport pam_silhouette;
  KSweepResult sweep;
};

/// Preprocess, Hopkins, K-means, PAM, silhouette, and k sweep on one table.
/// `threads` affects speed only.
AnalysisArtifacts run_analysis(const RawTable& table, const AnalysisConfig& config, unsigned threads = 1);

/// Writes report.json, report.md, the four SVG plots, and their CSV data files.
/// Returns the written paths in a fixed order.
std::vector<std::filesystem::path> write_outputs(const AnalysisArtifacts& artifacts, const std::filesystem::path& out_dir);

void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace clustan
