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

// Separate-and-conquer rule induction: grow, prune, cover, repeat.

#ifndef RULEFUSE_INDUCTION_SC_H_
#define RULEFUSE_INDUCTION_SC_H_

#include <optional>
#include <span>
#include <vector>

#include "rulefuse/rule.h"

namespace rulefuse {

// One accepted growth step.
struct GrowStep {
  std::vector<Condition> premise_before;
  Condition chosen;
  double quality = 0.0;
  std::size_t coverage = 0;  // rows covered by the extended rule
};
using GrowTrace = std::vector<GrowStep>;

// All conditions on `attributes` built from the `covered` rows: one a = v per
// nominal value present, and a < v, a >= v per numeric split point (midpoint
// of consecutive distinct values). Attribute order, then value order.
std::vector<Condition> candidate_conditions(
    const DecisionTable& table, std::span<const std::size_t> covered,
    std::span<const std::size_t> attributes);

// Grows `rule` toward its conclusion class. `uncovered` flags, per row, the
// positives not yet covered by earlier rules; each added condition must keep
// at least `mincov` of them covered.
Rule grow(Rule rule, const DecisionTable& table, std::span<const char> uncovered,
          std::size_t mincov, Measure measure, GrowTrace* trace = nullptr);

// Repeatedly drops the condition whose removal gives the highest quality, as
// long as quality does not decrease and more than one condition remains;
// then merges numeric conditions. With `anchor`, removals never uncover it.
Rule prune(Rule rule, const DecisionTable& table, Measure measure,
           std::optional<std::span<const double>> anchor = std::nullopt);

// Per class: grow + prune until fewer than `mincov` positives are uncovered.
RuleSet induce_sc(const DecisionTable& table, std::size_t mincov,
                  Measure measure, std::size_t threads = 1);

}  // namespace rulefuse

#endif  // RULEFUSE_INDUCTION_SC_H_
