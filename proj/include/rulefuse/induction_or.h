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

// Object-related induction: one rule grown per training example, anchored so
// that it always covers that example, with candidate attributes searched in
// importance order.

#ifndef RULEFUSE_INDUCTION_OR_H_
#define RULEFUSE_INDUCTION_OR_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulefuse/induction_sc.h"
#include "rulefuse/ranking.h"
#include "rulefuse/rule.h"

namespace rulefuse {

struct GrowthConfig {
  std::size_t mincov = 5;
  Measure measure = Measure::kPrecision;
  OrderingMode ordering_mode = OrderingMode::kNone;
  // Commit to the best condition of the smallest ordering prefix that has
  // any admissible condition, instead of using the ordering only to break
  // ties.
  bool prefix_strict = false;
  bool filtering = false;
  std::size_t threads = 1;
};

// Grows a rule concluding `conclusion` that covers `x` after every step.
// Only attributes listed in `fo` are used; among equal quality and coverage,
// the attribute earlier in `fo` wins. `uncovered` flags the positives that
// count toward mincov.
Rule grow_fo(std::span<const double> x, const std::string& conclusion,
             const DecisionTable& table, std::span<const char> uncovered,
             const GrowthConfig& config, const FeatureOrdering& fo,
             GrowTrace* trace = nullptr);

// One rule per example of every class (grow_fo, prune, merge), optionally
// filtered. Orderings: unused for kNone (column order), the global ordering
// for kGlobal, the row's local ordering for kLocal.
RuleSet induce_or(const DecisionTable& table, const GrowthConfig& config,
                  const OrderingSource& orderings = {});

// Keeps, in descending quality order (then coverage, then position), each
// rule that still covers an unclaimed example of its own class.
RuleSet filter_rules(const RuleSet& rules, const DecisionTable& table);

struct ExplainedRule {
  Rule rule;
  double precision = 0.0;
  double coverage = 0.0;
  std::optional<double> average_rank;  // set when an ordering was supplied
};

struct Explanation {
  std::string predicted;
  ExplainedRule confirmatory;
  // One per other class, best quality first.
  std::vector<ExplainedRule> contradictory;
};

// Confirmatory rule for `predicted` and, optionally, contradictory rules for
// the other classes, all anchored at `x`. `x` need not be a table row.
// Without an ordering, attributes are searched in column order.
Explanation explain_instance(std::span<const double> x,
                             const std::string& predicted,
                             const DecisionTable& table,
                             const GrowthConfig& config,
                             const std::optional<FeatureOrdering>& fo,
                             bool contradictory = true);

}  // namespace rulefuse

#endif  // RULEFUSE_INDUCTION_OR_H_
