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

#ifndef RULEFUSE_RULE_H_
#define RULEFUSE_RULE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulefuse/dataset.h"
#include "rulefuse/quality.h"

namespace rulefuse {

enum class Relation {
  kEquals,        // nominal a = v
  kLess,          // numeric a < v
  kGreaterEqual,  // numeric a >= v
  kInterval,      // numeric lower <= a < upper; produced only by merging
};

// Elementary condition on one attribute. Numeric conditions use the
// half-open range [lower, upper); the unused side is infinite.
struct Condition {
  std::size_t attribute = 0;
  std::string attribute_name;
  Relation relation = Relation::kEquals;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::string value;  // nominal label
  int code = -1;      // index of `value` in the bound table's domain

  static Condition equals(const DecisionTable& table, std::size_t attribute,
                          int code);
  static Condition less(const DecisionTable& table, std::size_t attribute,
                        double threshold);
  static Condition greater_equal(const DecisionTable& table,
                                 std::size_t attribute, double threshold);
  static Condition interval(const DecisionTable& table, std::size_t attribute,
                            double lower, double upper);

  bool is_numeric() const { return relation != Relation::kEquals; }

  // Missing cells never satisfy a condition.
  bool holds(double cell) const {
    if (cell != cell) return false;
    if (relation == Relation::kEquals) return cell == code;
    return cell >= lower && cell < upper;
  }

  friend bool operator==(const Condition&, const Condition&) = default;
};

// IF premise THEN target = conclusion.
struct Rule {
  std::vector<Condition> premise;  // in order of addition during growth
  std::string conclusion;
  Contingency stats;
  double quality = 0.0;
  std::vector<std::string> addition_order;
  // Row id of the example an object-related rule was grown for.
  std::optional<std::string> anchor;
};

bool covers(const Rule& rule, std::span<const double> example);
bool covers(const Rule& rule, const DecisionTable& table, std::size_t row);
std::vector<std::size_t> covered_rows(const Rule& rule,
                                      const DecisionTable& table);

Contingency contingency(const Rule& rule, const DecisionTable& table);

// Fills stats, quality and addition_order from the table.
void evaluate_rule(Rule& rule, const DecisionTable& table, Measure measure);

// Replaces all conditions on each numeric attribute with their intersection,
// placed where the attribute first occurred. Throws on an empty intersection.
Rule merge_conditions(const Rule& rule);

// Distinct premise attributes in addition order.
std::vector<std::string> premise_features(const Rule& rule);

// Re-resolves attribute indices and nominal codes against `table`.
Condition bind(const Condition& condition, const DecisionTable& table);
Rule bind(const Rule& rule, const DecisionTable& table);

// "a = x", "a < 2.5", ... With a table, numeric bounds are snapped to the
// attained values in its column, e.g. [3, 10.5) renders as "a ∈ [3,10]".
std::string render(const Condition& condition,
                   const DecisionTable* table = nullptr);
// IF c1 AND c2 THEN class = L (p=…, n=…, prec=…, cov=…)
std::string render(const Rule& rule, const DecisionTable* table = nullptr);

enum class InductionMode { kSeparateAndConquer, kObjectRelated };
enum class OrderingMode { kNone, kGlobal, kLocal };

std::string_view to_string(InductionMode mode);
InductionMode parse_induction_mode(std::string_view text);
std::string_view to_string(OrderingMode mode);
OrderingMode parse_ordering_mode(std::string_view text);

struct InductionMetadata {
  InductionMode mode = InductionMode::kSeparateAndConquer;
  Measure measure = Measure::kPrecision;
  std::size_t mincov = 5;
  OrderingMode ordering = OrderingMode::kNone;
  bool prefix_strict = false;
  bool filtered = false;
  std::uint64_t seed = 0;
  double train_fraction = 1.0;
};

// Unordered rule collection acting as a voting classifier.
struct RuleSet {
  std::vector<Rule> rules;
  std::vector<std::string> classes;
  std::string default_class;
  InductionMetadata metadata;
  Schema schema;  // attribute kinds of the training table
};

RuleSet bind(const RuleSet& rules, const DecisionTable& table);

// Majority class; ties go to the earlier class.
std::string majority_class(const DecisionTable& table);

}  // namespace rulefuse

#endif  // RULEFUSE_RULE_H_
