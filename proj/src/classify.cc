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

#include "rulefuse/classify.h"

#include <algorithm>
#include <optional>

#include "growth.h"

namespace rulefuse {

std::string predict(const RuleSet& rules, std::span<const double> example) {
  std::vector<double> votes(rules.classes.size(), 0.0);
  std::vector<char> voted(rules.classes.size(), 0);
  for (const auto& rule : rules.rules) {
    if (!covers(rule, example)) continue;
    const auto it =
        std::find(rules.classes.begin(), rules.classes.end(), rule.conclusion);
    if (it == rules.classes.end()) {
      throw Error("rule concludes unknown class '" + rule.conclusion + "'");
    }
    const auto cls = static_cast<std::size_t>(it - rules.classes.begin());
    votes[cls] += rule.quality;
    voted[cls] = 1;
  }
  std::optional<std::size_t> best;
  for (std::size_t c = 0; c < votes.size(); ++c) {
    if (voted[c] && (!best || votes[c] > votes[*best])) best = c;
  }
  return best ? rules.classes[*best] : rules.default_class;
}

std::vector<std::string> predict_all(const RuleSet& rules,
                                     const DecisionTable& table,
                                     std::size_t threads) {
  std::vector<std::string> out(table.num_rows());
  internal::parallel_for(table.num_rows(), threads, [&](std::size_t r) {
    out[r] = predict(rules, table.instance(r));
  });
  return out;
}

}  // namespace rulefuse
