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

// Agreement between a rule-based surrogate and the black box it mimics:
// decisions (kappa, balanced accuracy), feature sets (mutual inclusion) and
// feature rankings (Kendall's tau).

#ifndef RULEFUSE_CONSISTENCY_H_
#define RULEFUSE_CONSISTENCY_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "rulefuse/ranking.h"
#include "rulefuse/rule.h"

namespace rulefuse {

// (p_o - p_e) / (1 - p_e); 1 when both raters are the same constant.
double cohen_kappa(std::span<const std::string> a,
                   std::span<const std::string> b);

// |A ∩ B| / |A ∪ B| over distinct names. Throws when both are empty.
double mutual_inclusion(std::span<const std::string> a,
                        std::span<const std::string> b);

// Tau over the elements the two orderings share; 0 with fewer than two.
double kendall_tau(std::span<const std::string> a,
                   std::span<const std::string> b);

// Mean 1-based rank of `features` in `fo`. Throws if one is not ranked.
double average_rank(std::span<const std::string> features,
                    const FeatureOrdering& fo);

// Mean per-class recall over the classes present in `truth`.
double balanced_accuracy(std::span<const std::string> truth,
                         std::span<const std::string> predicted);

struct Quartiles {
  double q1 = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

// Linear interpolation between order statistics at position (n - 1) q.
double quantile(std::vector<double> values, double q);
Quartiles summarize(std::span<const double> values);

struct InstanceConsistency {
  std::string row_id;
  double inclusion = 0.0;
  double correlation = 0.0;
  std::optional<double> avg_rank;  // unset when a rule feature is unranked
  double rule_precision = 0.0;
  double rule_coverage = 0.0;
};

struct ConsistencyReport {
  std::vector<InstanceConsistency> per_instance;
  Quartiles inclusion;
  Quartiles correlation;
  Quartiles avg_rank;
  Quartiles rule_precision;
  Quartiles rule_coverage;
  std::vector<std::string> unexplained;  // rows without a usable rule
};

// Rule explaining `row`: the rule anchored at it when one exists, else the
// highest-quality covering rule concluding the row's label. Null if none.
const Rule* explaining_rule(const RuleSet& rules, const DecisionTable& table,
                            std::size_t row);

// Per row: k = distinct features of its explaining rule, compared with the
// top-k prefix of the row's ordering. `rules` must be bound to `table`.
ConsistencyReport consistency_report(const RuleSet& rules,
                                     const DecisionTable& table,
                                     const OrderingSource& orderings);

nlohmann::json to_json(const Quartiles& q);
nlohmann::json to_json(const ConsistencyReport& report);

}  // namespace rulefuse

#endif  // RULEFUSE_CONSISTENCY_H_
