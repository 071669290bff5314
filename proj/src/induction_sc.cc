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

#include "rulefuse/induction_sc.h"

#include <numeric>

#include "growth.h"

namespace rulefuse {

std::vector<Condition> candidate_conditions(
    const DecisionTable& table, std::span<const std::size_t> covered,
    std::span<const std::size_t> attributes) {
  std::vector<Condition> out;
  const std::vector<char> none(table.num_rows(), 0);
  for (std::size_t attr : attributes) {
    internal::enumerate_candidates(
        table, covered, attr, 0, none, std::nullopt,
        [&](internal::Candidate&& c) { out.push_back(std::move(c.condition)); });
  }
  return out;
}

Rule grow(Rule rule, const DecisionTable& table, std::span<const char> uncovered,
          std::size_t mincov, Measure measure, GrowTrace* trace) {
  internal::GrowRequest req;
  req.table = &table;
  req.cls = table.class_index(rule.conclusion);
  if (req.cls < 0) throw Error("rule concludes unknown class " + rule.conclusion);
  req.uncovered = uncovered;
  req.mincov = mincov;
  req.measure = measure;
  req.attributes.resize(table.num_attributes());
  std::iota(req.attributes.begin(), req.attributes.end(), std::size_t{0});
  req.trace = trace;
  return internal::grow_rule(std::move(rule), req);
}

Rule prune(Rule rule, const DecisionTable& table, Measure measure,
           std::optional<std::span<const double>> anchor) {
  evaluate_rule(rule, table, measure);
  const std::size_t k_all = rule.premise.size();
  if (k_all > 1) {
    const int cls = table.class_index(rule.conclusion);
    const std::size_t rows = table.num_rows();
    // Per row: number of failed conditions and the sum of their ids, so a
    // row failing exactly one condition knows which.
    std::vector<std::size_t> fails(rows, 0), fail_sum(rows, 0);
    std::size_t anchor_fails = 0, anchor_sum = 0;
    for (std::size_t id = 0; id < k_all; ++id) {
      const Condition& c = rule.premise[id];
      for (std::size_t r = 0; r < rows; ++r) {
        if (!c.holds(table.value(r, c.attribute))) {
          ++fails[r];
          fail_sum[r] += id;
        }
      }
      if (anchor && !c.holds((*anchor)[c.attribute])) {
        ++anchor_fails;
        anchor_sum += id;
      }
    }
    std::vector<std::size_t> alive(k_all);
    std::iota(alive.begin(), alive.end(), std::size_t{0});
    Contingency base = rule.stats;
    double base_quality = rule.quality;
    std::vector<std::size_t> gain_p(k_all), gain_n(k_all);

    while (alive.size() > 1) {
      std::fill(gain_p.begin(), gain_p.end(), 0);
      std::fill(gain_n.begin(), gain_n.end(), 0);
      for (std::size_t r = 0; r < rows; ++r) {
        if (fails[r] != 1) continue;
        (table.target(r) == cls ? gain_p : gain_n)[fail_sum[r]] += 1;
      }
      std::optional<std::size_t> drop;
      double best_quality = 0.0;
      std::size_t best_coverage = 0;
      Contingency best_stats;
      // Later conditions are scanned first so that ties drop the most recent.
      for (std::size_t i = alive.size(); i-- > 0;) {
        const std::size_t id = alive[i];
        if (anchor && (anchor_fails > 1 ||
                       (anchor_fails == 1 && anchor_sum != id))) {
          continue;
        }
        const Contingency stats{base.p + gain_p[id], base.n + gain_n[id],
                                base.P, base.N};
        const double q = evaluate(measure, stats);
        const std::size_t cov = stats.p + stats.n;
        if (!drop || q > best_quality ||
            (q == best_quality && cov > best_coverage)) {
          drop = i;
          best_quality = q;
          best_coverage = cov;
          best_stats = stats;
        }
      }
      if (!drop || best_quality < base_quality) break;
      const std::size_t id = alive[*drop];
      const Condition& c = rule.premise[id];
      for (std::size_t r = 0; r < rows; ++r) {
        if (!c.holds(table.value(r, c.attribute))) {
          --fails[r];
          fail_sum[r] -= id;
        }
      }
      if (anchor && !c.holds((*anchor)[c.attribute])) {
        --anchor_fails;
        anchor_sum -= id;
      }
      alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(*drop));
      base = best_stats;
      base_quality = best_quality;
    }
    std::vector<Condition> kept;
    for (std::size_t id : alive) kept.push_back(rule.premise[id]);
    rule.premise = std::move(kept);
  }
  rule = merge_conditions(rule);
  evaluate_rule(rule, table, measure);
  return rule;
}

RuleSet induce_sc(const DecisionTable& table, std::size_t mincov,
                  Measure measure, std::size_t threads) {
  if (mincov < 1) throw ConfigError("mincov must be at least 1");
  const auto& classes = table.classes();
  std::vector<std::vector<Rule>> per_class(classes.size());

  internal::parallel_for(classes.size(), threads, [&](std::size_t cls) {
    std::vector<char> uncovered(table.num_rows(), 0);
    std::size_t remaining = 0;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      if (table.target(r) == static_cast<int>(cls)) {
        uncovered[r] = 1;
        ++remaining;
      }
    }
    while (remaining >= mincov && remaining > 0) {
      Rule rule;
      rule.conclusion = classes[cls];
      rule = grow(std::move(rule), table, uncovered, mincov, measure);
      rule = prune(std::move(rule), table, measure);
      std::size_t removed = 0;
      for (std::size_t r = 0; r < table.num_rows(); ++r) {
        if (uncovered[r] && covers(rule, table, r)) {
          uncovered[r] = 0;
          ++removed;
        }
      }
      per_class[cls].push_back(std::move(rule));
      if (removed == 0) break;
      remaining -= removed;
    }
  });

  RuleSet out;
  for (auto& rules : per_class) {
    for (auto& r : rules) out.rules.push_back(std::move(r));
  }
  out.classes = classes;
  out.default_class = majority_class(table);
  out.metadata.mode = InductionMode::kSeparateAndConquer;
  out.metadata.measure = measure;
  out.metadata.mincov = mincov;
  out.schema = table.schema();
  return out;
}

}  // namespace rulefuse
