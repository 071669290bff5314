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

// Rule growth engine shared by separate-and-conquer and object-related
// induction.

#ifndef RULEFUSE_SRC_GROWTH_H_
#define RULEFUSE_SRC_GROWTH_H_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rulefuse/induction_sc.h"
#include "rulefuse/rule.h"

namespace rulefuse::internal {

struct Candidate {
  Condition condition;
  Contingency stats;
  std::size_t new_positives = 0;  // covered rows still flagged uncovered
};

// Emits every candidate condition on `attribute` built from the `covered`
// rows, in value order, with its contingency against class `cls`. Numeric
// split points are midpoints of consecutive distinct values. When `anchor`
// is set only conditions it satisfies are emitted.
void enumerate_candidates(const DecisionTable& table,
                          std::span<const std::size_t> covered,
                          std::size_t attribute, int cls,
                          std::span<const char> uncovered,
                          std::optional<std::span<const double>> anchor,
                          const std::function<void(Candidate&&)>& sink);

struct GrowRequest {
  const DecisionTable* table = nullptr;
  int cls = 0;
  std::span<const char> uncovered;
  std::size_t mincov = 1;
  Measure measure = Measure::kPrecision;
  // Attributes searched, in preference order.
  std::vector<std::size_t> attributes;
  std::optional<std::span<const double>> anchor;
  bool prefix_strict = false;
  GrowTrace* trace = nullptr;
};

// Greedily appends the best admissible condition until the rule covers no
// negatives or no condition is admissible. Admissible: the extended rule
// covers at least `mincov` uncovered rows and strictly fewer rows than the
// current rule. Ties on quality go to the larger coverage, then to the
// earlier candidate.
Rule grow_rule(Rule rule, const GrowRequest& request);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace rulefuse::internal

#endif  // RULEFUSE_SRC_GROWTH_H_
