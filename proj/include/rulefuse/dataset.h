/*
 * Copyright 2026 The rulefuse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RULEFUSE_DATASET_H_
#define RULEFUSE_DATASET_H_

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rulefuse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV, predictions, unknown rows).
class DataError : public Error {
 public:
  using Error::Error;
};

// Bad flags, missing or malformed configuration files (orderings, rules).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class AttributeKind { kNominal, kNumeric };

std::string_view to_string(AttributeKind kind);
AttributeKind parse_attribute_kind(std::string_view text);

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double cell) { return std::isnan(cell); }

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  // Nominal: sorted distinct observed values. Cells hold indices into it.
  std::vector<std::string> values;
  // Numeric: range over non-missing cells (0/0 when every cell is missing).
  double min = 0.0;
  double max = 0.0;

  bool is_numeric() const { return kind == AttributeKind::kNumeric; }
  // Index of `value` in the nominal domain, or -1.
  int code_of(std::string_view value) const;
};

// One cell per attribute. Numeric cells hold the value, nominal cells the
// domain index; missing cells are NaN.
using Instance = std::vector<double>;

using Schema = std::vector<std::pair<std::string, AttributeKind>>;

// Examples over typed attributes plus a class-valued target. Immutable after
// construction; storage is column-major.
class DecisionTable {
 public:
  DecisionTable(std::vector<Attribute> attributes,
                std::vector<std::vector<double>> columns,
                std::vector<int> target, std::vector<std::string> classes,
                std::vector<std::string> row_ids);

  std::size_t num_rows() const { return target_.size(); }
  std::size_t num_attributes() const { return attributes_.size(); }

  const std::vector<Attribute>& attributes() const { return attributes_; }
  const Attribute& attribute(std::size_t index) const {
    return attributes_[index];
  }
  std::optional<std::size_t> attribute_index(std::string_view name) const;

  double value(std::size_t row, std::size_t attr) const {
    return columns_[attr][row];
  }
  std::span<const double> column(std::size_t attr) const {
    return columns_[attr];
  }
  Instance instance(std::size_t row) const;

  int target(std::size_t row) const { return target_[row]; }
  std::span<const int> targets() const { return target_; }
  const std::string& target_label(std::size_t row) const {
    return classes_[target_[row]];
  }

  const std::vector<std::string>& classes() const { return classes_; }
  int class_index(std::string_view label) const;
  std::vector<std::size_t> class_counts() const;

  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::string& row_id(std::size_t row) const { return row_ids_[row]; }
  std::optional<std::size_t> row_index(std::string_view id) const;

  Schema schema() const;

  // Rows in the given order; attribute metadata and class list are kept.
  DecisionTable subset(std::span<const std::size_t> rows) const;

  // Cell rendered as text ("" for missing).
  std::string format_cell(std::size_t attr, double cell) const;

 private:
  std::vector<Attribute> attributes_;
  std::vector<std::vector<double>> columns_;
  std::vector<int> target_;
  std::vector<std::string> classes_;
  std::vector<std::string> row_ids_;
  std::map<std::string, std::size_t, std::less<>> row_lookup_;
};

struct LoadOptions {
  std::map<std::string, AttributeKind> schema_override;
  // Target column name; the last column when unset.
  std::optional<std::string> target;
  // Column holding row identifiers; 0-based row positions when unset.
  std::optional<std::string> id_column;
};

DecisionTable parse_table(std::istream& in, const LoadOptions& options = {});
DecisionTable load_table(const std::string& path,
                         const LoadOptions& options = {});

// Writes the table as CSV (row ids are not written; target is last).
void write_table(const DecisionTable& table, std::ostream& out);
void save_table(const DecisionTable& table, const std::string& path);

// Sidecar schema: one `name,kind` line per attribute.
std::map<std::string, AttributeKind> load_schema(const std::string& path);

// Predictions CSV: header then `row_id,label` lines.
std::map<std::string, std::string> parse_predictions(std::istream& in);
std::map<std::string, std::string> load_predictions(const std::string& path);
void write_predictions(std::span<const std::string> row_ids,
                       std::span<const std::string> labels, std::ostream& out);

// Same table with the target column taken from `predictions` (keyed by row
// id); the class set is recomputed.
DecisionTable replace_target(
    const DecisionTable& table,
    const std::map<std::string, std::string>& predictions);

// Deterministic train/test partition, stratified by class when every class
// has at least two rows. Train size is round(n * train_fraction).
std::pair<DecisionTable, DecisionTable> split(const DecisionTable& table,
                                              double train_fraction,
                                              std::uint64_t seed);

// Splits one CSV record (RFC 4180 quoting).
std::vector<std::string> split_csv_line(std::string_view line);

// Locale-independent number parsing of a whole cell.
std::optional<double> parse_number(std::string_view text);
std::string format_number(double value);

}  // namespace rulefuse

#endif  // RULEFUSE_DATASET_H_
