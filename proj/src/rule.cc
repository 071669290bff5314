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

#include "rulefuse/rule.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rulefuse {
namespace {

std::string format_ratio(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

// Largest attained value strictly below `bound`.
std::optional<double> attained_below(const DecisionTable& table,
                                     std::size_t attr, double bound) {
  std::optional<double> best;
  for (double v : table.column(attr)) {
    if (!is_missing(v) && v < bound && (!best || v > *best)) best = v;
  }
  return best;
}

// Smallest attained value at or above `bound`.
std::optional<double> attained_from(const DecisionTable& table,
                                    std::size_t attr, double bound) {
  std::optional<double> best;
  for (double v : table.column(attr)) {
    if (!is_missing(v) && v >= bound && (!best || v < *best)) best = v;
  }
  return best;
}

const Attribute& numeric_attribute(const DecisionTable& table,
                                   std::size_t attribute) {
  const auto& attr = table.attribute(attribute);
  if (!attr.is_numeric()) {
    throw Error("numeric relation on nominal attribute '" + attr.name + "'");
  }
  return attr;
}

}  // namespace

Condition Condition::equals(const DecisionTable& table, std::size_t attribute,
                            int code) {
  const auto& attr = table.attribute(attribute);
  if (attr.is_numeric()) {
    throw Error("equality relation on numeric attribute '" + attr.name + "'");
  }
  Condition c;
  c.attribute = attribute;
  c.attribute_name = attr.name;
  c.relation = Relation::kEquals;
  c.code = code;
  c.value = attr.values.at(static_cast<std::size_t>(code));
  return c;
}

Condition Condition::less(const DecisionTable& table, std::size_t attribute,
                          double threshold) {
  Condition c;
  c.attribute = attribute;
  c.attribute_name = numeric_attribute(table, attribute).name;
  c.relation = Relation::kLess;
  c.upper = threshold;
  return c;
}

Condition Condition::greater_equal(const DecisionTable& table,
                                   std::size_t attribute, double threshold) {
  Condition c;
  c.attribute = attribute;
  c.attribute_name = numeric_attribute(table, attribute).name;
  c.relation = Relation::kGreaterEqual;
  c.lower = threshold;
  return c;
}

Condition Condition::interval(const DecisionTable& table, std::size_t attribute,
                              double lower, double upper) {
  if (!(lower <= upper)) throw Error("interval with lower > upper");
  Condition c;
  c.attribute = attribute;
  c.attribute_name = numeric_attribute(table, attribute).name;
  c.relation = Relation::kInterval;
  c.lower = lower;
  c.upper = upper;
  return c;
}

bool covers(const Rule& rule, std::span<const double> example) {
  for (const auto& c : rule.premise) {
    if (c.attribute >= example.size()) {
      throw Error("premise references unknown attribute '" +
                  c.attribute_name + "'");
    }
    if (!c.holds(example[c.attribute])) return false;
  }
  return true;
}

bool covers(const Rule& rule, const DecisionTable& table, std::size_t row) {
  for (const auto& c : rule.premise) {
    if (c.attribute >= table.num_attributes()) {
      throw Error("premise references unknown attribute '" +
                  c.attribute_name + "'");
    }
    if (!c.holds(table.value(row, c.attribute))) return false;
  }
  return true;
}

std::vector<std::size_t> covered_rows(const Rule& rule,
                                      const DecisionTable& table) {
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    if (covers(rule, table, r)) rows.push_back(r);
  }
  return rows;
}

Contingency contingency(const Rule& rule, const DecisionTable& table) {
  const int cls = table.class_index(rule.conclusion);
  Contingency c;
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const bool positive = table.target(r) == cls;
    (positive ? c.P : c.N) += 1;
    if (covers(rule, table, r)) (positive ? c.p : c.n) += 1;
  }
  return c;
}

void evaluate_rule(Rule& rule, const DecisionTable& table, Measure measure) {
  rule.stats = contingency(rule, table);
  rule.quality = evaluate(measure, rule.stats);
  rule.addition_order = premise_features(rule);
}

Rule merge_conditions(const Rule& rule) {
  Rule merged = rule;
  merged.premise.clear();
  std::vector<std::size_t> slot_of;  // attribute -> index in merged.premise
  std::vector<std::size_t> attrs;
  for (const auto& c : rule.premise) {
    if (!c.is_numeric()) {
      if (std::find(merged.premise.begin(), merged.premise.end(), c) ==
          merged.premise.end()) {
        merged.premise.push_back(c);
      }
      continue;
    }
    const auto it = std::find(attrs.begin(), attrs.end(), c.attribute);
    if (it == attrs.end()) {
      attrs.push_back(c.attribute);
      slot_of.push_back(merged.premise.size());
      merged.premise.push_back(c);
      continue;
    }
    auto& target = merged.premise[slot_of[it - attrs.begin()]];
    target.lower = std::max(target.lower, c.lower);
    target.upper = std::min(target.upper, c.upper);
    if (!(target.lower < target.upper)) {
      throw Error("empty intersection when merging conditions on '" +
                  c.attribute_name + "'");
    }
  }
  for (auto& c : merged.premise) {
    if (!c.is_numeric()) continue;
    const bool has_lower = std::isfinite(c.lower);
    const bool has_upper = std::isfinite(c.upper);
    c.relation = has_lower && has_upper ? Relation::kInterval
                 : has_lower            ? Relation::kGreaterEqual
                                        : Relation::kLess;
  }
  merged.addition_order = premise_features(merged);
  return merged;
}

std::vector<std::string> premise_features(const Rule& rule) {
  std::vector<std::string> features;
  for (const auto& c : rule.premise) {
    if (std::find(features.begin(), features.end(), c.attribute_name) ==
        features.end()) {
      features.push_back(c.attribute_name);
    }
  }
  return features;
}

Condition bind(const Condition& condition, const DecisionTable& table) {
  Condition bound = condition;
  const auto index = table.attribute_index(condition.attribute_name);
  if (!index) {
    throw DataError("rule references unknown attribute '" +
                    condition.attribute_name + "'");
  }
  bound.attribute = *index;
  const auto& attr = table.attribute(*index);
  if (attr.is_numeric() != condition.is_numeric()) {
    throw DataError("attribute '" + attr.name +
                    "' has a different kind than the rule expects");
  }
  if (!condition.is_numeric()) bound.code = attr.code_of(condition.value);
  return bound;
}

Rule bind(const Rule& rule, const DecisionTable& table) {
  Rule bound = rule;
  for (auto& c : bound.premise) c = bind(c, table);
  return bound;
}

RuleSet bind(const RuleSet& rules, const DecisionTable& table) {
  RuleSet bound = rules;
  for (auto& r : bound.rules) r = bind(r, table);
  return bound;
}

std::string render(const Condition& c, const DecisionTable* table) {
  const std::string& name = c.attribute_name;
  if (c.relation == Relation::kEquals) return name + " = " + c.value;

  std::optional<double> lo;
  std::optional<double> hi;
  const bool snap = table != nullptr && c.attribute < table->num_attributes() &&
                    table->attribute(c.attribute).name == name;
  if (snap) {
    if (std::isfinite(c.lower)) lo = attained_from(*table, c.attribute, c.lower);
    if (std::isfinite(c.upper)) hi = attained_below(*table, c.attribute, c.upper);
  }
  switch (c.relation) {
    case Relation::kLess:
      return hi ? name + " ≤ " + format_number(*hi)
                : name + " < " + format_number(c.upper);
    case Relation::kGreaterEqual:
      return name + " ≥ " + format_number(lo ? *lo : c.lower);
    case Relation::kInterval:
      if (lo && hi) {
        return name + " ∈ [" + format_number(*lo) + "," + format_number(*hi) +
               "]";
      }
      return name + " ∈ [" + format_number(c.lower) + "," +
             format_number(c.upper) + ")";
    case Relation::kEquals:
      break;
  }
  return name;
}

std::string render(const Rule& rule, const DecisionTable* table) {
  std::string out = "IF ";
  if (rule.premise.empty()) out += "TRUE";
  for (std::size_t i = 0; i < rule.premise.size(); ++i) {
    if (i > 0) out += " AND ";
    out += render(rule.premise[i], table);
  }
  const auto& s = rule.stats;
  out += " THEN class = " + rule.conclusion;
  out += " (p=" + std::to_string(s.p) + ", n=" + std::to_string(s.n) +
         ", prec=" + format_ratio(precision(s)) + ", cov=" +
         format_ratio(s.P == 0 ? 0.0 : coverage(s)) + ")";
  return out;
}

std::string_view to_string(InductionMode mode) {
  return mode == InductionMode::kSeparateAndConquer ? "sc" : "or";
}

InductionMode parse_induction_mode(std::string_view text) {
  if (text == "sc") return InductionMode::kSeparateAndConquer;
  if (text == "or") return InductionMode::kObjectRelated;
  throw ConfigError("unknown induction mode '" + std::string(text) + "'");
}

std::string_view to_string(OrderingMode mode) {
  switch (mode) {
    case OrderingMode::kNone:
      return "none";
    case OrderingMode::kGlobal:
      return "global";
    case OrderingMode::kLocal:
      return "local";
  }
  return "none";
}

OrderingMode parse_ordering_mode(std::string_view text) {
  if (text == "none") return OrderingMode::kNone;
  if (text == "global") return OrderingMode::kGlobal;
  if (text == "local") return OrderingMode::kLocal;
  throw ConfigError("unknown ordering mode '" + std::string(text) + "'");
}

std::string majority_class(const DecisionTable& table) {
  const auto counts = table.class_counts();
  const auto it = std::max_element(counts.begin(), counts.end());
  return table.classes()[static_cast<std::size_t>(it - counts.begin())];
}

}  // namespace rulefuse
