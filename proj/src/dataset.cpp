#include "clustan/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "clustan/error.hpp"

namespace clustan {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

/// Splits one delimited line; quotes (single or double) protect delimiters.
std::vector<std::string> split_fields(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  char quote = 0;
  for (char c : line) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else {
        current.push_back(c);
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == delimiter) {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

std::vector<std::string_view> lines_of(std::string_view input) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= input.size()) {
    auto end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    lines.push_back(input.substr(start, end - start));
    if (end == input.size()) break;
    start = end + 1;
  }
  return lines;
}

std::string quote_arff_name(const std::string& name) {
  const bool needs_quotes = name.empty() ||
                            name.find_first_of(" \t,{}%'\"") != std::string::npos;
  if (!needs_quotes) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out += "\\'";
    else out.push_back(c);
  }
  return out + "'";
}

/// Reads an ARFF name token (optionally quoted) from the front of `s`; advances `s`.
std::string take_arff_name(std::string_view& s, std::size_t line_no) {
  s = trim(s);
  if (s.empty()) throw Error(ErrorKind::ArffSyntax, "missing name on line " + std::to_string(line_no));
  std::string name;
  if (s.front() == '\'' || s.front() == '"') {
    const char q = s.front();
    std::size_t i = 1;
    for (; i < s.size(); ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) {
        name.push_back(s[++i]);
      } else if (s[i] == q) {
        break;
      } else {
        name.push_back(s[i]);
      }
    }
    if (i >= s.size()) throw Error(ErrorKind::ArffSyntax, "unterminated quote on line " + std::to_string(line_no));
    s.remove_prefix(i + 1);
  } else {
    const auto end = s.find_first_of(" \t{");
    name = std::string(s.substr(0, end));
    s.remove_prefix(end == std::string_view::npos ? s.size() : end);
  }
  return name;
}

}  // namespace

std::optional<std::size_t> RawTable::column_index(std::string_view name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - column_names.begin());
}

void RawTable::validate() const {
  std::set<std::string> seen;
  for (const auto& name : column_names) {
    if (!seen.insert(name).second) throw Error(ErrorKind::InvalidArgument, "duplicate column name '" + name + "'");
  }
  if (!nominal_levels.empty() && nominal_levels.size() != n_cols()) {
    throw Error(ErrorKind::InvalidArgument, "nominal level list does not match column count");
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n_cols()) {
      throw Error(ErrorKind::MalformedRow, "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                                               " cells, expected " + std::to_string(n_cols()));
    }
  }
}

RawTable parse_csv(std::string_view input, const CsvConfig& config) {
  RawTable table;
  bool header_pending = config.has_header;
  std::size_t line_no = 0;
  for (const auto raw_line : lines_of(input)) {
    ++line_no;
    const auto line = trim(raw_line);
    if (line.empty()) continue;
    auto fields = split_fields(line, config.delimiter);
    if (header_pending) {
      table.column_names = std::move(fields);
      header_pending = false;
      continue;
    }
    if (table.column_names.empty()) {
      for (std::size_t c = 0; c < fields.size(); ++c) table.column_names.push_back("col" + std::to_string(c + 1));
    }
    if (fields.size() != table.n_cols()) {
      throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": " + std::to_string(fields.size()) +
                                               " fields, expected " + std::to_string(table.n_cols()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == config.missing_marker) {
        row.emplace_back(std::nullopt);
        continue;
      }
      const auto value = parse_double(fields[c]);
      if (!value) {
        throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column " +
                                                   std::to_string(c + 1) + ": '" + fields[c] + "'");
      }
      row.emplace_back(*value);
    }
    table.rows.push_back(std::move(row));
  }
  table.validate();
  return table;
}

RawTable parse_arff(std::string_view input) {
  RawTable table;
  bool seen_relation = false;
  bool in_data = false;
  bool any_nominal = false;
  std::size_t line_no = 0;
  for (const auto raw_line : lines_of(input)) {
    ++line_no;
    auto line = trim(raw_line);
    if (line.empty() || line.front() == '%') continue;

    if (!in_data) {
      if (line.front() != '@') {
        throw Error(ErrorKind::ArffSyntax, "unexpected content before @data on line " + std::to_string(line_no));
      }
      const auto keyword_end = line.find_first_of(" \t");
      const auto keyword = lower(line.substr(0, keyword_end));
      auto rest = keyword_end == std::string_view::npos ? std::string_view{} : line.substr(keyword_end);
      if (keyword == "@relation") {
        seen_relation = true;
      } else if (keyword == "@attribute") {
        if (!seen_relation) throw Error(ErrorKind::ArffSyntax, "@attribute before @relation on line " + std::to_string(line_no));
        auto name = take_arff_name(rest, line_no);
        rest = trim(rest);
        std::vector<std::string> levels;
        if (!rest.empty() && rest.front() == '{') {
          const auto close = rest.find('}');
          if (close == std::string_view::npos) throw Error(ErrorKind::ArffSyntax, "unterminated nominal list on line " + std::to_string(line_no));
          levels = split_fields(rest.substr(1, close - 1), ',');
          if (levels.empty() || (levels.size() == 1 && levels[0].empty())) {
            throw Error(ErrorKind::ArffSyntax, "empty nominal list on line " + std::to_string(line_no));
          }
          any_nominal = true;
        } else {
          const auto type = lower(rest.substr(0, rest.find_first_of(" \t")));
          if (type == "string" || type == "date" || type == "relational") {
            throw Error(ErrorKind::UnsupportedAttributeType, "attribute '" + name + "' has type " + type);
          }
          if (type != "numeric" && type != "real" && type != "integer") {
            throw Error(ErrorKind::ArffSyntax, "unknown attribute type '" + type + "' on line " + std::to_string(line_no));
          }
        }
        table.column_names.push_back(std::move(name));
        table.nominal_levels.push_back(std::move(levels));
      } else if (keyword == "@data") {
        if (!seen_relation) throw Error(ErrorKind::ArffSyntax, "@data before @relation");
        if (table.column_names.empty()) throw Error(ErrorKind::ArffSyntax, "no @attribute declarations");
        in_data = true;
      } else {
        throw Error(ErrorKind::ArffSyntax, "unknown section '" + std::string(keyword) + "' on line " + std::to_string(line_no));
      }
      continue;
    }

    if (line.front() == '{') throw Error(ErrorKind::ArffSyntax, "sparse ARFF rows are not supported (line " + std::to_string(line_no) + ")");
    const auto fields = split_fields(line, ',');
    if (fields.size() != table.n_cols()) {
      throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line_no) + ": " + std::to_string(fields.size()) +
                                               " fields, expected " + std::to_string(table.n_cols()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "?") {
        row.emplace_back(std::nullopt);
      } else if (table.is_nominal(c)) {
        const auto& levels = table.nominal_levels[c];
        const auto it = std::find(levels.begin(), levels.end(), fields[c]);
        if (it == levels.end()) {
          throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                                     ": '" + fields[c] + "' is not a declared nominal value");
        }
        row.emplace_back(static_cast<double>(it - levels.begin()));
      } else {
        const auto value = parse_double(fields[c]);
        if (!value) {
          throw Error(ErrorKind::NonNumericCell, "line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                                                     ": '" + fields[c] + "'");
        }
        row.emplace_back(*value);
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!seen_relation) throw Error(ErrorKind::ArffSyntax, "missing @relation");
  if (!in_data) throw Error(ErrorKind::ArffSyntax, "missing @data");
  if (!any_nominal) table.nominal_levels.clear();
  return table;
}

std::string write_arff(const RawTable& table, std::string_view relation_name) {
  table.validate();
  std::ostringstream out;
  out << "@relation " << quote_arff_name(std::string(relation_name)) << "\n\n";
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    out << "@attribute " << quote_arff_name(table.column_names[c]) << ' ';
    if (table.is_nominal(c)) {
      out << '{';
      const auto& levels = table.nominal_levels[c];
      for (std::size_t i = 0; i < levels.size(); ++i) out << (i ? "," : "") << quote_arff_name(levels[i]);
      out << "}\n";
    } else {
      out << "numeric\n";
    }
  }
  out << "\n@data\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (!row[c]) {
        out << '?';
      } else if (table.is_nominal(c)) {
        out << quote_arff_name(table.nominal_levels[c].at(static_cast<std::size_t>(*row[c])));
      } else {
        out << format_number(*row[c]);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string write_csv(const RawTable& table, char delimiter, std::string_view missing_marker) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c) out << delimiter;
    out << table.column_names[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << delimiter;
      if (row[c]) out << format_number(*row[c]);
      else out << missing_marker;
    }
    out << '\n';
  }
  return out.str();
}

std::pair<RawTable, std::vector<std::size_t>> drop_missing_rows(const RawTable& table) {
  RawTable kept;
  kept.column_names = table.column_names;
  kept.nominal_levels = table.nominal_levels;
  std::vector<std::size_t> dropped;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    const auto& row = table.rows[r];
    if (std::all_of(row.begin(), row.end(), [](const Cell& c) { return c.has_value(); })) {
      kept.rows.push_back(row);
    } else {
      dropped.push_back(r);
    }
  }
  return {std::move(kept), std::move(dropped)};
}

std::string_view to_string(ClassLabel label) noexcept {
  return label == ClassLabel::Benign ? "Benign" : "Malignant";
}

Dataset Dataset::from_matrix(Matrix features) {
  Dataset ds;
  ds.row_ids.reserve(features.rows());
  for (std::size_t i = 0; i < features.rows(); ++i) ds.row_ids.push_back(std::to_string(i));
  for (std::size_t c = 0; c < features.cols(); ++c) ds.feature_names.push_back("x" + std::to_string(c + 1));
  ds.features = std::move(features);
  return ds;
}

namespace {

ClassLabel class_from_cell(const RawTable& table, std::size_t col, double value, std::size_t row) {
  if (table.is_nominal(col)) {
    const auto& levels = table.nominal_levels[col];
    const auto& level = levels.at(static_cast<std::size_t>(value));
    const auto key = lower(level);
    if (key == "benign") return ClassLabel::Benign;
    if (key == "malignant") return ClassLabel::Malignant;
    const auto numeric = parse_double(level);
    if (!numeric) throw Error(ErrorKind::InvalidClassValue, "row " + std::to_string(row) + ": class '" + level + "'");
    value = *numeric;
  }
  if (value == 2.0) return ClassLabel::Benign;
  if (value == 4.0) return ClassLabel::Malignant;
  throw Error(ErrorKind::InvalidClassValue,
              "row " + std::to_string(row) + ": class value " + format_number(value) + " is not 2 or 4");
}

std::size_t require_column(const RawTable& table, const std::string& name) {
  const auto idx = table.column_index(name);
  if (!idx) throw Error(ErrorKind::UnknownColumn, "no column named '" + name + "'");
  return *idx;
}

}  // namespace

std::pair<Dataset, PreprocessReport> build_dataset(const RawTable& table,
                                                   const std::optional<std::string>& id_column,
                                                   const std::optional<std::string>& label_column,
                                                   bool normalize) {
  table.validate();
  const auto id_idx = id_column ? std::optional(require_column(table, *id_column)) : std::nullopt;
  const auto label_idx = label_column ? std::optional(require_column(table, *label_column)) : std::nullopt;

  PreprocessReport report;
  report.rows_before = report.rows_after = table.n_rows();
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < table.n_cols(); ++c) {
    if (c == id_idx || c == label_idx) {
      report.columns_dropped.push_back(table.column_names[c]);
    } else {
      feature_cols.push_back(c);
    }
  }

  const std::size_t n = table.n_rows();
  Dataset ds;
  ds.features = Matrix(n, feature_cols.size());
  ds.row_ids.reserve(n);
  if (label_idx) ds.labels.emplace().reserve(n);
  for (auto c : feature_cols) ds.feature_names.push_back(table.column_names[c]);

  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
      const auto& cell = row[feature_cols[j]];
      if (!cell) {
        throw Error(ErrorKind::MissingValue, "row " + std::to_string(r) + ", column '" +
                                                 table.column_names[feature_cols[j]] + "' is missing");
      }
      ds.features(r, j) = *cell;
    }
    if (id_idx) {
      const auto& cell = row[*id_idx];
      ds.row_ids.push_back(cell ? format_number(*cell) : "?");
    } else {
      ds.row_ids.push_back(std::to_string(r));
    }
    if (label_idx) {
      const auto& cell = row[*label_idx];
      if (!cell) throw Error(ErrorKind::MissingValue, "row " + std::to_string(r) + " has no class label");
      ds.labels->push_back(class_from_cell(table, *label_idx, *cell, r));
    }
  }

  if (normalize) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      NormParams p{0.0, 0.0};
      if (n > 0) {
        p.min = p.max = ds.features(0, j);
        for (std::size_t r = 1; r < n; ++r) {
          p.min = std::min(p.min, ds.features(r, j));
          p.max = std::max(p.max, ds.features(r, j));
        }
      }
      const double range = p.max - p.min;
      for (std::size_t r = 0; r < n; ++r) {
        ds.features(r, j) = range > 0.0 ? (ds.features(r, j) - p.min) / range : 0.0;
      }
      report.norm_params.emplace_back(ds.feature_names[j], p);
    }
    ds.normalized = true;
  }
  return {std::move(ds), std::move(report)};
}

std::pair<Dataset, PreprocessReport> preprocess(const RawTable& table, const PreprocessOptions& options) {
  auto [kept, dropped] = drop_missing_rows(table);
  auto [ds, report] = build_dataset(kept, options.id_column, options.label_column, options.normalize);
  report.rows_before = table.n_rows();
  report.rows_dropped = dropped.size();
  report.rows_after = kept.n_rows();
  const auto id_idx = options.id_column ? table.column_index(*options.id_column) : std::nullopt;
  for (auto r : dropped) {
    const auto& cell = id_idx ? table.rows[r][*id_idx] : Cell{};
    report.dropped_row_ids.push_back(cell ? format_number(*cell) : std::to_string(r));
  }
  return {std::move(ds), std::move(report)};
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace clustan
