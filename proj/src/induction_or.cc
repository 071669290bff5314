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

#include "rulefuse/induction_or.h"

#include <algorithm>
#include <numeric>

#include "growth.h"
#include "rulefuse/consistency.h"

namespace rulefuse {
namespace {

std::vector<char> positives_of(const DecisionTable& table, int cls) {
  std::vector<char> mask(table.num_rows(), 0);
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    mask[r] = table.target(r) == cls ? 1 : 0;
  }
  return mask;
}

Rule grow_and_prune(std::span<const double> x, const std::string& conclusion,
                    const DecisionTable& table, std::span<const char> positives,
                    const GrowthConfig& config, const FeatureOrdering& fo) {
  Rule rule = grow_fo(x, conclusion, table, positives, config, fo);
  return prune(std::move(rule), table, config.measure, x);
}

ExplainedRule describe(Rule rule, const std::optional<FeatureOrdering>& fo) {
  ExplainedRule out;
  out.precision = precision(rule.stats);
  out.coverage = coverage(rule.stats);
  if (fo && !rule.premise.empty()) {
    out.average_rank = average_rank(premise_features(rule), *fo);
  }
  out.rule = std::move(rule);
  return out;
}

}  // namespace

Rule grow_fo(std::span<const double> x, const std::string& conclusion,
             const DecisionTable& table, std::span<const char> uncovered,
             const GrowthConfig& config, const FeatureOrdering& fo,
             GrowTrace* trace) {
  if (x.size() != table.num_attributes()) {
    throw DataError("instance has " + std::to_string(x.size()) +
                    " cells, table has " +
                    std::to_string(table.num_attributes()) + " attributes");
  }
  internal::GrowRequest req;
  req.table = &table;
  req.cls = table.class_index(conclusion);
  if (req.cls < 0) throw DataError("unknown class '" + conclusion + "'");
  req.uncovered = uncovered;
  req.mincov = config.mincov;
  req.measure = config.measure;
  req.attributes = attribute_indices(fo, table);
  req.anchor = x;
  req.prefix_strict = config.prefix_strict;
  req.trace = trace;
  Rule rule;
  rule.conclusion = conclusion;
  return internal::grow_rule(std::move(rule), req);
}

RuleSet induce_or(const DecisionTable& table, const GrowthConfig& config,
                  const OrderingSource& orderings) {
  if (config.mincov < 1) throw ConfigError("mincov must be at least 1");
  const FeatureOrdering columns = column_ordering(table);
  auto ordering_for = [&](std::size_t row) -> const FeatureOrdering& {
    switch (config.ordering_mode) {
      case OrderingMode::kNone:
        return columns;
      case OrderingMode::kGlobal:
        if (!orderings.global()) {
          throw ConfigError("global ordering mode without a global ordering");
        }
        return *orderings.global();
      case OrderingMode::kLocal: {
        const auto it = orderings.local().find(table.row_id(row));
        if (it == orderings.local().end()) {
          throw ConfigError("no local ordering for row '" + table.row_id(row) +
                            "'");
        }
        return it->second;
      }
    }
    return columns;
  };

  // Validate every ordering up front so errors do not surface mid-run.
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    validate_ordering(ordering_for(r), table);
  }

  std::vector<std::vector<char>> positives;
  for (std::size_t c = 0; c < table.classes().size(); ++c) {
    positives.push_back(positives_of(table, static_cast<int>(c)));
  }
  // Class by class, rows in table order.
  std::vector<std::size_t> tasks;
  for (std::size_t c = 0; c < table.classes().size(); ++c) {
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      if (table.target(r) == static_cast<int>(c)) tasks.push_back(r);
    }
  }

  std::vector<Rule> rules(tasks.size());
  internal::parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const std::size_t row = tasks[i];
    const Instance x = table.instance(row);
    const int cls = table.target(row);
    Rule rule = grow_and_prune(x, table.classes()[cls], table, positives[cls],
                               config, ordering_for(row));
    rule.anchor = table.row_id(row);
    rules[i] = std::move(rule);
  });

  RuleSet out;
  out.rules = std::move(rules);
  out.classes = table.classes();
  out.default_class = majority_class(table);
  out.metadata.mode = InductionMode::kObjectRelated;
  out.metadata.measure = config.measure;
  out.metadata.mincov = config.mincov;
  out.metadata.ordering = config.ordering_mode;
  out.metadata.prefix_strict = config.prefix_strict;
  out.schema = table.schema();
  if (config.filtering) out = filter_rules(out, table);
  return out;
}

RuleSet filter_rules(const RuleSet& rules, const DecisionTable& table) {
  std::vector<std::size_t> order(rules.rules.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Rule& ra = rules.rules[a];
    const Rule& rb = rules.rules[b];
    if (ra.quality != rb.quality) return ra.quality > rb.quality;
    return ra.stats.p > rb.stats.p;
  });

  std::vector<char> claimed(table.num_rows(), 0);
  std::size_t remaining = table.num_rows();
  std::vector<char> keep(rules.rules.size(), 0);
  for (std::size_t idx : order) {
    if (remaining == 0) break;
    const Rule& rule = rules.rules[idx];
    const int cls = table.class_index(rule.conclusion);
    std::vector<std::size_t> fresh;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      if (!claimed[r] && table.target(r) == cls && covers(rule, table, r)) {
        fresh.push_back(r);
      }
    }
    if (fresh.empty()) continue;
    keep[idx] = 1;
    for (std::size_t r : fresh) claimed[r] = 1;
    remaining -= fresh.size();
  }

  RuleSet out = rules;
  out.rules.clear();
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    if (keep[i]) out.rules.push_back(rules.rules[i]);
  }
  out.metadata.filtered = true;
  return out;
}

Explanation explain_instance(std::span<const double> x,
                             const std::string& predicted,
                             const DecisionTable& table,
                             const GrowthConfig& config,
                             const std::optional<FeatureOrdering>& fo,
                             bool contradictory) {
  const int predicted_cls = table.class_index(predicted);
  if (predicted_cls < 0) {
    throw DataError("predicted class '" + predicted + "' not in the table");
  }
  const FeatureOrdering ordering = fo ? *fo : column_ordering(table);
  const auto counts = table.class_counts();
  if (counts[predicted_cls] == 0) {
    throw DataError("no training examples of class '" + predicted + "'");
  }

  Explanation out;
  out.predicted = predicted;
  out.confirmatory = describe(
      grow_and_prune(x, predicted, table, positives_of(table, predicted_cls),
                     config, ordering),
      fo);
  if (contradictory) {
    for (std::size_t c = 0; c < table.classes().size(); ++c) {
      if (static_cast<int>(c) == predicted_cls || counts[c] == 0) continue;
      out.contradictory.push_back(describe(
          grow_and_prune(x, table.classes()[c], table,
                         positives_of(table, static_cast<int>(c)), config,
                         ordering),
          fo));
    }
    std::stable_sort(out.contradictory.begin(), out.contradictory.end(),
                     [](const ExplainedRule& a, const ExplainedRule& b) {
                       return a.rule.quality > b.rule.quality;
                     });
  }
  return out;
}

}  // namespace rulefuse
