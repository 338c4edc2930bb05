#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clustan/matrix.hpp"

namespace clustan {

/// A table cell: a number, or std::nullopt for a missing value.
using Cell = std::optional<double>;

/// Untyped numeric table as read from CSV or ARFF.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<Cell>> rows;
  /// Per-column nominal levels (empty vector for numeric columns). Either empty or one
  /// entry per column. Nominal cells hold the level's declaration index.
  std::vector<std::vector<std::string>> nominal_levels;

  std::size_t n_rows() const noexcept { return rows.size(); }
  std::size_t n_cols() const noexcept { return column_names.size(); }
  std::optional<std::size_t> column_index(std::string_view name) const;
  bool is_nominal(std::size_t col) const {
    return col < nominal_levels.size() && !nominal_levels[col].empty();
  }

  /// Throws MalformedRow when a row's width differs from the header, or
  /// InvalidArgument on duplicate column names.
  void validate() const;

  bool operator==(const RawTable&) const = default;
};

struct CsvConfig {
  bool has_header = true;
  char delimiter = ',';
  std::string missing_marker = "?";
};

RawTable parse_csv(std::string_view input, const CsvConfig& config = {});
RawTable parse_arff(std::string_view input);
std::string write_arff(const RawTable& table, std::string_view relation_name);
std::string write_csv(const RawTable& table, char delimiter = ',', std::string_view missing_marker = "?");

/// Rows free of missing cells, original order kept. The second element lists the
/// input row indices that were removed.
std::pair<RawTable, std::vector<std::size_t>> drop_missing_rows(const RawTable& table);

enum class ClassLabel { Benign, Malignant };

std::string_view to_string(ClassLabel label) noexcept;

struct Dataset {
  Matrix features;
  std::vector<std::string> row_ids;
  std::optional<std::vector<ClassLabel>> labels;
  std::vector<std::string> feature_names;
  bool normalized = false;

  std::size_t n() const noexcept { return features.rows(); }
  std::size_t d() const noexcept { return features.cols(); }

  /// Dataset over a plain matrix: ids are row positions, no labels.
  static Dataset from_matrix(Matrix features);
};

struct NormParams {
  double min = 0.0;
  double max = 0.0;
};

struct PreprocessReport {
  std::size_t rows_before = 0;
  std::size_t rows_after = 0;
  std::size_t rows_dropped = 0;
  std::vector<std::string> dropped_row_ids;
  std::vector<std::string> columns_dropped;
  /// One entry per feature column; empty when normalization is off.
  std::vector<std::pair<std::string, NormParams>> norm_params;
};

/// Splits id/label columns off a complete table and optionally min-max normalizes
/// each feature column into [0, 1] using its observed extremes. Constant columns map
/// to 0. Labels 2 and 4 become Benign and Malignant.
std::pair<Dataset, PreprocessReport> build_dataset(const RawTable& table,
                                                   const std::optional<std::string>& id_column,
                                                   const std::optional<std::string>& label_column,
                                                   bool normalize);

struct PreprocessOptions {
  std::optional<std::string> id_column;
  std::optional<std::string> label_column;
  bool normalize = true;
};

/// drop_missing_rows followed by build_dataset, with a report covering both steps.
/// Dropped rows are identified by their id-column value when one is configured.
std::pair<Dataset, PreprocessReport> preprocess(const RawTable& table, const PreprocessOptions& options);

/// Shortest round-trip decimal text for a double ("5", "0.25", "1000025").
std::string format_number(double value);

}  // namespace clustan
