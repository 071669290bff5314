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

#include "rulefuse/consistency.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace rulefuse {
namespace {

nlohmann::json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

double cohen_kappa(std::span<const std::string> a,
                   std::span<const std::string> b) {
  if (a.size() != b.size()) throw Error("kappa: sequences differ in length");
  if (a.empty()) throw Error("kappa: empty sequences");
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> marginals;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
    if (a[i] == b[i]) ++agree;
  }
  const double n = static_cast<double>(a.size());
  const double observed = static_cast<double>(agree) / n;
  double chance = 0.0;
  for (const auto& [label, counts] : marginals) {
    chance += (static_cast<double>(counts.first) / n) *
              (static_cast<double>(counts.second) / n);
  }
  if (chance >= 1.0) return 1.0;
  return (observed - chance) / (1.0 - chance);
}

double mutual_inclusion(std::span<const std::string> a,
                        std::span<const std::string> b) {
  const std::set<std::string> sa(a.begin(), a.end());
  const std::set<std::string> sb(b.begin(), b.end());
  std::size_t common = 0;
  for (const auto& f : sa) common += sb.count(f);
  const std::size_t all = sa.size() + sb.size() - common;
  if (all == 0) throw Error("mutual inclusion of two empty feature sets");
  return static_cast<double>(common) / static_cast<double>(all);
}

double kendall_tau(std::span<const std::string> a,
                   std::span<const std::string> b) {
  // Positions in `b` of the shared elements, taken in `a` order.
  std::vector<std::size_t> positions;
  for (const auto& f : a) {
    const auto it = std::find(b.begin(), b.end(), f);
    if (it != b.end()) positions.push_back(static_cast<std::size_t>(it - b.begin()));
  }
  const std::size_t m = positions.size();
  if (m < 2) return 0.0;
  long long concordant = 0;
  long long discordant = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      (positions[i] < positions[j] ? concordant : discordant) += 1;
    }
  }
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return static_cast<double>(concordant - discordant) / pairs;
}

double average_rank(std::span<const std::string> features,
                    const FeatureOrdering& fo) {
  if (features.empty()) throw Error("average rank of an empty feature list");
  double total = 0.0;
  for (const auto& f : features) {
    const auto rank = fo.rank_of(f);
    if (!rank) throw Error("feature '" + f + "' is not in the ordering");
    total += static_cast<double>(*rank);
  }
  return total / static_cast<double>(features.size());
}

double balanced_accuracy(std::span<const std::string> truth,
                         std::span<const std::string> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error("balanced accuracy: sequences differ in length");
  }
  if (truth.empty()) throw Error("balanced accuracy: empty sequences");
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> per_class;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [hits, total] = per_class[truth[i]];
    ++total;
    if (truth[i] == predicted[i]) ++hits;
  }
  double sum = 0.0;
  for (const auto& [label, counts] : per_class) {
    sum += static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return sum / static_cast<double>(per_class.size());
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + (values[hi] - values[lo]) * frac;
}

Quartiles summarize(std::span<const double> values) {
  Quartiles q;
  const std::vector<double> v(values.begin(), values.end());
  q.q1 = quantile(v, 0.25);
  q.median = quantile(v, 0.5);
  q.q3 = quantile(v, 0.75);
  q.mean = v.empty() ? std::numeric_limits<double>::quiet_NaN()
                     : std::accumulate(v.begin(), v.end(), 0.0) /
                           static_cast<double>(v.size());
  return q;
}

const Rule* explaining_rule(const RuleSet& rules, const DecisionTable& table,
                            std::size_t row) {
  const std::string& id = table.row_id(row);
  for (const auto& rule : rules.rules) {
    if (rule.anchor && *rule.anchor == id) return &rule;
  }
  const std::string& label = table.target_label(row);
  const Rule* best = nullptr;
  for (const auto& rule : rules.rules) {
    if (rule.conclusion != label || !covers(rule, table, row)) continue;
    if (!best || rule.quality > best->quality ||
        (rule.quality == best->quality && rule.stats.p > best->stats.p)) {
      best = &rule;
    }
  }
  return best;
}

ConsistencyReport consistency_report(const RuleSet& rules,
                                     const DecisionTable& table,
                                     const OrderingSource& orderings) {
  ConsistencyReport report;
  std::vector<double> inclusion, correlation, ranks, precisions, coverages;
  for (std::size_t row = 0; row < table.num_rows(); ++row) {
    const Rule* rule = explaining_rule(rules, table, row);
    if (rule == nullptr || rule->premise.empty()) {
      report.unexplained.push_back(table.row_id(row));
      continue;
    }
    const FeatureOrdering& fo = orderings.for_instance(table.row_id(row));
    const auto features = premise_features(*rule);
    const std::size_t k = std::min(features.size(), fo.size());
    const std::vector<std::string> top(fo.features().begin(),
                                       fo.features().begin() +
                                           static_cast<std::ptrdiff_t>(k));
    InstanceConsistency entry;
    entry.row_id = table.row_id(row);
    entry.inclusion = mutual_inclusion(features, top);
    entry.correlation = kendall_tau(rule->addition_order, top);
    const bool ranked = std::all_of(
        features.begin(), features.end(),
        [&](const std::string& f) { return fo.rank_of(f).has_value(); });
    if (ranked) entry.avg_rank = average_rank(features, fo);
    entry.rule_precision = precision(rule->stats);
    entry.rule_coverage =
        rule->stats.P == 0 ? 0.0 : coverage(rule->stats);

    inclusion.push_back(entry.inclusion);
    correlation.push_back(entry.correlation);
    if (entry.avg_rank) ranks.push_back(*entry.avg_rank);
    precisions.push_back(entry.rule_precision);
    coverages.push_back(entry.rule_coverage);
    report.per_instance.push_back(std::move(entry));
  }
  report.inclusion = summarize(inclusion);
  report.correlation = summarize(correlation);
  report.avg_rank = summarize(ranks);
  report.rule_precision = summarize(precisions);
  report.rule_coverage = summarize(coverages);
  return report;
}

nlohmann::json to_json(const Quartiles& q) {
  return {{"Q1", number_or_null(q.q1)},
          {"mean", number_or_null(q.mean)},
          {"median", number_or_null(q.median)},
          {"Q3", number_or_null(q.q3)}};
}

nlohmann::json to_json(const ConsistencyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : report.per_instance) {
    rows.push_back({{"row_id", e.row_id},
                    {"inclusion", e.inclusion},
                    {"correlation", e.correlation},
                    {"avg_rank", e.avg_rank ? nlohmann::json(*e.avg_rank)
                                            : nlohmann::json(nullptr)},
                    {"rule_precision", e.rule_precision},
                    {"rule_coverage", e.rule_coverage}});
  }
  return {{"aggregates",
           {{"inclusion", to_json(report.inclusion)},
            {"correlation", to_json(report.correlation)},
            {"avg_rank", to_json(report.avg_rank)},
            {"rule_precision", to_json(report.rule_precision)},
            {"rule_coverage", to_json(report.rule_coverage)}}},
          {"explained", report.per_instance.size()},
          {"unexplained_count", report.unexplained.size()},
          {"unexplained", report.unexplained},
          {"per_instance", std::move(rows)}};
}

}  // namespace rulefuse
