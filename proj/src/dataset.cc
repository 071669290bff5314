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

#include "rulefuse/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace rulefuse {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_missing_token(std::string_view cell) {
  return cell.empty() || cell == "?";
}

// Reads one CSV record, joining physical lines while a quote is open.
bool read_record(std::istream& in, std::string& record) {
  record.clear();
  std::string line;
  bool open = false;
  bool any = false;
  while (std::getline(in, line)) {
    any = true;
    if (!record.empty() || open) record += '\n';
    record += line;
    for (char c : line) {
      if (c == '"') open = !open;
    }
    if (!open) break;
  }
  if (!record.empty() && record.back() == '\r') record.pop_back();
  return any;
}

bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos ||
         (!s.empty() && (s.front() == ' ' || s.back() == ' '));
}

void write_csv_cell(std::ostream& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::vector<std::string> sorted_labels(std::span<const std::string> labels) {
  std::set<std::string> distinct(labels.begin(), labels.end());
  return {distinct.begin(), distinct.end()};
}

void require_two_classes(std::span<const std::string> classes) {
  if (classes.size() < 2) throw DataError("single-class target");
}

// Unbiased integer in [0, bound) drawn from a 64-bit engine.
std::uint64_t bounded(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % bound;
}

void shuffle(std::vector<std::size_t>& items, std::mt19937_64& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[bounded(engine, i)]);
  }
}

}  // namespace

std::string_view to_string(AttributeKind kind) {
  return kind == AttributeKind::kNumeric ? "numeric" : "nominal";
}

AttributeKind parse_attribute_kind(std::string_view text) {
  const auto t = trim(text);
  if (t == "numeric") return AttributeKind::kNumeric;
  if (t == "nominal") return AttributeKind::kNominal;
  throw ConfigError("unknown attribute kind '" + std::string(t) + "'");
}

int Attribute::code_of(std::string_view value) const {
  const auto it = std::lower_bound(values.begin(), values.end(), value);
  if (it == values.end() || *it != value) return -1;
  return static_cast<int>(it - values.begin());
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string format_number(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cell : std::string(trim(cell)));
      cell.clear();
      was_quoted = false;
    } else {
      cell += c;
    }
  }
  if (quoted) throw DataError("unterminated quote in CSV record");
  cells.push_back(was_quoted ? cell : std::string(trim(cell)));
  return cells;
}

DecisionTable::DecisionTable(std::vector<Attribute> attributes,
                             std::vector<std::vector<double>> columns,
                             std::vector<int> target,
                             std::vector<std::string> classes,
                             std::vector<std::string> row_ids)
    : attributes_(std::move(attributes)),
      columns_(std::move(columns)),
      target_(std::move(target)),
      classes_(std::move(classes)),
      row_ids_(std::move(row_ids)) {
  if (columns_.size() != attributes_.size()) {
    throw DataError("column count does not match attribute count");
  }
  std::set<std::string, std::less<>> names;
  for (const auto& a : attributes_) {
    if (a.name.empty()) throw DataError("empty attribute name");
    if (!names.insert(a.name).second) {
      throw DataError("duplicate attribute name '" + a.name + "'");
    }
    if (a.is_numeric() && a.min > a.max) {
      throw DataError("numeric range inverted for '" + a.name + "'");
    }
  }
  for (const auto& c : columns_) {
    if (c.size() != target_.size()) throw DataError("ragged columns");
  }
  if (row_ids_.size() != target_.size()) {
    throw DataError("row id count does not match row count");
  }
  require_two_classes(classes_);
  for (int t : target_) {
    if (t < 0 || static_cast<std::size_t>(t) >= classes_.size()) {
      throw DataError("target label outside the class set");
    }
  }
  for (std::size_t r = 0; r < row_ids_.size(); ++r) {
    if (!row_lookup_.emplace(row_ids_[r], r).second) {
      throw DataError("duplicate row id '" + row_ids_[r] + "'");
    }
  }
}

std::optional<std::size_t> DecisionTable::attribute_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

Instance DecisionTable::instance(std::size_t row) const {
  Instance x(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) x[a] = columns_[a][row];
  return x;
}

int DecisionTable::class_index(std::string_view label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i] == label) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::size_t> DecisionTable::class_counts() const {
  std::vector<std::size_t> counts(classes_.size(), 0);
  for (int t : target_) ++counts[t];
  return counts;
}

std::optional<std::size_t> DecisionTable::row_index(std::string_view id) const {
  const auto it = row_lookup_.find(id);
  if (it == row_lookup_.end()) return std::nullopt;
  return it->second;
}

Schema DecisionTable::schema() const {
  Schema s;
  for (const auto& a : attributes_) s.emplace_back(a.name, a.kind);
  return s;
}

DecisionTable DecisionTable::subset(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols(columns_.size());
  for (std::size_t a = 0; a < columns_.size(); ++a) {
    cols[a].reserve(rows.size());
    for (std::size_t r : rows) cols[a].push_back(columns_[a][r]);
  }
  std::vector<int> target;
  std::vector<std::string> ids;
  target.reserve(rows.size());
  ids.reserve(rows.size());
  for (std::size_t r : rows) {
    target.push_back(target_[r]);
    ids.push_back(row_ids_[r]);
  }
  return DecisionTable(attributes_, std::move(cols), std::move(target),
                       classes_, std::move(ids));
}

std::string DecisionTable::format_cell(std::size_t attr, double cell) const {
  if (is_missing(cell)) return {};
  const auto& a = attributes_[attr];
  if (a.is_numeric()) return format_number(cell);
  return a.values.at(static_cast<std::size_t>(cell));
}

DecisionTable parse_table(std::istream& in, const LoadOptions& options) {
  std::string record;
  if (!read_record(in, record) || trim(record).empty()) {
    throw DataError("empty table: missing header row");
  }
  const auto header = split_csv_line(record);

  std::vector<std::vector<std::string>> raw;
  std::size_t line_no = 1;
  while (read_record(in, record)) {
    ++line_no;
    if (trim(record).empty()) continue;
    auto cells = split_csv_line(record);
    if (cells.size() != header.size()) {
      throw DataError("ragged row at line " + std::to_string(line_no) +
                      ": expected " + std::to_string(header.size()) +
                      " cells, got " + std::to_string(cells.size()));
    }
    raw.push_back(std::move(cells));
  }
  if (raw.empty()) throw DataError("empty table: no data rows");

  auto find_column = [&](const std::string& name) -> std::size_t {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw DataError("column '" + name + "' not found in header");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t target_col =
      options.target ? find_column(*options.target) : header.size() - 1;
  std::optional<std::size_t> id_col;
  if (options.id_column) {
    id_col = find_column(*options.id_column);
    if (*id_col == target_col) {
      throw DataError("id column and target column coincide");
    }
  }

  for (const auto& [name, kind] : options.schema_override) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ConfigError("schema names unknown attribute '" + name + "'");
    }
  }

  std::vector<Attribute> attributes;
  std::vector<std::vector<double>> columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == target_col || (id_col && c == *id_col)) continue;
    Attribute attr;
    attr.name = header[c];
    bool all_numeric = true;
    for (const auto& row : raw) {
      if (!is_missing_token(row[c]) && !parse_number(row[c])) {
        all_numeric = false;
        break;
      }
    }
    attr.kind = all_numeric ? AttributeKind::kNumeric : AttributeKind::kNominal;
    if (const auto it = options.schema_override.find(attr.name);
        it != options.schema_override.end()) {
      attr.kind = it->second;
    }

    std::vector<double> column;
    column.reserve(raw.size());
    if (attr.is_numeric()) {
      bool seen = false;
      for (const auto& row : raw) {
        if (is_missing_token(row[c])) {
          column.push_back(kMissing);
          continue;
        }
        const auto v = parse_number(row[c]);
        if (!v) {
          throw DataError("non-numeric value '" + row[c] +
                          "' in numeric attribute '" + attr.name + "'");
        }
        column.push_back(*v);
        attr.min = seen ? std::min(attr.min, *v) : *v;
        attr.max = seen ? std::max(attr.max, *v) : *v;
        seen = true;
      }
    } else {
      std::set<std::string> domain;
      for (const auto& row : raw) {
        if (!is_missing_token(row[c])) domain.insert(row[c]);
      }
      attr.values.assign(domain.begin(), domain.end());
      for (const auto& row : raw) {
        column.push_back(is_missing_token(row[c])
                             ? kMissing
                             : static_cast<double>(attr.code_of(row[c])));
      }
    }
    attributes.push_back(std::move(attr));
    columns.push_back(std::move(column));
  }

  std::vector<std::string> labels;
  labels.reserve(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (is_missing_token(raw[r][target_col])) {
      throw DataError("missing target label in data row " + std::to_string(r));
    }
    labels.push_back(raw[r][target_col]);
  }
  auto classes = sorted_labels(labels);
  require_two_classes(classes);
  std::vector<int> target;
  target.reserve(labels.size());
  for (const auto& l : labels) {
    target.push_back(static_cast<int>(
        std::lower_bound(classes.begin(), classes.end(), l) - classes.begin()));
  }

  std::vector<std::string> ids;
  ids.reserve(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    ids.push_back(id_col ? raw[r][*id_col] : std::to_string(r));
  }
  return DecisionTable(std::move(attributes), std::move(columns),
                       std::move(target), std::move(classes), std::move(ids));
}

DecisionTable load_table(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read dataset file '" + path + "'");
  return parse_table(in, options);
}

void write_table(const DecisionTable& table, std::ostream& out) {
  for (std::size_t a = 0; a < table.num_attributes(); ++a) {
    write_csv_cell(out, table.attribute(a).name);
    out << ',';
  }
  out << "class\n";
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    for (std::size_t a = 0; a < table.num_attributes(); ++a) {
      const double cell = table.value(r, a);
      if (is_missing(cell)) {
        out << '?';
      } else {
        write_csv_cell(out, table.format_cell(a, cell));
      }
      out << ',';
    }
    write_csv_cell(out, table.target_label(r));
    out << '\n';
  }
}

void save_table(const DecisionTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_table(table, out);
}

std::map<std::string, AttributeKind> load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read schema file '" + path + "'");
  std::map<std::string, AttributeKind> schema;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 2) {
      throw ConfigError("schema line must be 'name,kind': " + line);
    }
    schema[cells[0]] = parse_attribute_kind(cells[1]);
  }
  return schema;
}

std::map<std::string, std::string> parse_predictions(std::istream& in) {
  std::string record;
  if (!read_record(in, record)) throw DataError("empty predictions file");
  const auto header = split_csv_line(record);
  if (header.size() != 2) {
    throw DataError("predictions header must have two columns");
  }
  std::map<std::string, std::string> predictions;
  while (read_record(in, record)) {
    if (trim(record).empty()) continue;
    const auto cells = split_csv_line(record);
    if (cells.size() != 2 || cells[0].empty() || is_missing_token(cells[1])) {
      throw DataError("malformed predictions line: " + record);
    }
    if (!predictions.emplace(cells[0], cells[1]).second) {
      throw DataError("duplicate row id '" + cells[0] + "' in predictions");
    }
  }
  return predictions;
}

std::map<std::string, std::string> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read predictions file '" + path + "'");
  return parse_predictions(in);
}

void write_predictions(std::span<const std::string> row_ids,
                       std::span<const std::string> labels,
                       std::ostream& out) {
  out << "row_id,label\n";
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    write_csv_cell(out, row_ids[i]);
    out << ',';
    write_csv_cell(out, labels[i]);
    out << '\n';
  }
}

DecisionTable replace_target(
    const DecisionTable& table,
    const std::map<std::string, std::string>& predictions) {
  std::vector<std::string> labels;
  labels.reserve(table.num_rows());
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const auto it = predictions.find(table.row_id(r));
    if (it == predictions.end()) {
      throw DataError("predictions missing row id '" + table.row_id(r) + "'");
    }
    labels.push_back(it->second);
  }
  auto classes = sorted_labels(labels);
  require_two_classes(classes);
  std::vector<int> target;
  target.reserve(labels.size());
  for (const auto& l : labels) {
    target.push_back(static_cast<int>(
        std::lower_bound(classes.begin(), classes.end(), l) - classes.begin()));
  }
  std::vector<std::vector<double>> columns;
  for (std::size_t a = 0; a < table.num_attributes(); ++a) {
    const auto col = table.column(a);
    columns.emplace_back(col.begin(), col.end());
  }
  return DecisionTable(table.attributes(), std::move(columns),
                       std::move(target), std::move(classes), table.row_ids());
}

std::pair<DecisionTable, DecisionTable> split(const DecisionTable& table,
                                              double train_fraction,
                                              std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = table.num_rows();
  const auto train_size =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) *
                                            train_fraction));
  std::mt19937_64 engine(seed);

  const auto counts = table.class_counts();
  const bool stratify = std::all_of(counts.begin(), counts.end(),
                                    [](std::size_t c) { return c >= 2; });
  std::vector<std::size_t> train;
  if (stratify) {
    // Largest-remainder allocation of the train quota across classes.
    std::vector<std::size_t> quota(counts.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const double exact = static_cast<double>(counts[c]) *
                           static_cast<double>(train_size) /
                           static_cast<double>(n);
      quota[c] = static_cast<std::size_t>(std::floor(exact));
      assigned += quota[c];
      remainders.emplace_back(exact - std::floor(exact), c);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& l, const auto& r) {
                       return l.first > r.first;
                     });
    for (std::size_t i = 0; assigned < train_size; ++i) {
      const std::size_t c = remainders[i % remainders.size()].second;
      if (quota[c] < counts[c]) {
        ++quota[c];
        ++assigned;
      }
    }
    for (std::size_t c = 0; c < counts.size(); ++c) {
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < n; ++r) {
        if (table.target(r) == static_cast<int>(c)) rows.push_back(r);
      }
      shuffle(rows, engine);
      train.insert(train.end(), rows.begin(),
                   rows.begin() + static_cast<std::ptrdiff_t>(quota[c]));
    }
  } else {
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    shuffle(rows, engine);
    train.assign(rows.begin(),
                 rows.begin() + static_cast<std::ptrdiff_t>(train_size));
  }
  std::sort(train.begin(), train.end());
  std::vector<std::size_t> test;
  std::vector<char> in_train(n, 0);
  for (std::size_t r : train) in_train[r] = 1;
  for (std::size_t r = 0; r < n; ++r) {
    if (!in_train[r]) test.push_back(r);
  }
  return {table.subset(train), table.subset(test)};
}

}  // namespace rulefuse
