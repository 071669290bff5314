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

#include "growth.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace rulefuse::internal {
namespace {

struct Counts {
  std::size_t pos = 0;
  std::size_t neg = 0;
  std::size_t unc = 0;

  void add(bool positive, bool uncovered) {
    (positive ? pos : neg) += 1;
    if (uncovered) ++unc;
  }
};

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid > lo ? mid : hi;
}

void enumerate_nominal(const DecisionTable& table,
                       std::span<const std::size_t> covered,
                       std::size_t attribute, int cls,
                       std::span<const char> uncovered,
                       std::optional<std::span<const double>> anchor,
                       std::size_t P, std::size_t N,
                       const std::function<void(Candidate&&)>& sink) {
  const auto& attr = table.attribute(attribute);
  std::vector<Counts> counts(attr.values.size());
  std::vector<char> present(attr.values.size(), 0);
  for (std::size_t r : covered) {
    const double cell = table.value(r, attribute);
    if (is_missing(cell)) continue;
    const auto code = static_cast<std::size_t>(cell);
    present[code] = 1;
    counts[code].add(table.target(r) == cls, uncovered[r] != 0);
  }
  int only = -1;
  if (anchor) {
    const double cell = (*anchor)[attribute];
    if (is_missing(cell)) return;
    only = static_cast<int>(cell);
  }
  for (std::size_t code = 0; code < counts.size(); ++code) {
    if (!present[code]) continue;
    if (anchor && static_cast<int>(code) != only) continue;
    Candidate c;
    c.condition = Condition::equals(table, attribute, static_cast<int>(code));
    c.stats = {counts[code].pos, counts[code].neg, P, N};
    c.new_positives = counts[code].unc;
    sink(std::move(c));
  }
}

void enumerate_numeric(const DecisionTable& table,
                       std::span<const std::size_t> covered,
                       std::size_t attribute, int cls,
                       std::span<const char> uncovered,
                       std::optional<std::span<const double>> anchor,
                       std::size_t P, std::size_t N,
                       const std::function<void(Candidate&&)>& sink) {
  double anchor_value = 0.0;
  if (anchor) {
    anchor_value = (*anchor)[attribute];
    if (is_missing(anchor_value)) return;
  }
  std::vector<std::pair<double, std::size_t>> cells;
  cells.reserve(covered.size());
  for (std::size_t r : covered) {
    const double v = table.value(r, attribute);
    if (!is_missing(v)) cells.emplace_back(v, r);
  }
  if (cells.size() < 2) return;
  std::sort(cells.begin(), cells.end());

  Counts total;
  for (const auto& [v, r] : cells) {
    total.add(table.target(r) == cls, uncovered[r] != 0);
  }
  Counts below;
  std::size_t i = 0;
  while (i < cells.size()) {
    const double value = cells[i].first;
    while (i < cells.size() && cells[i].first == value) {
      const std::size_t r = cells[i].second;
      below.add(table.target(r) == cls, uncovered[r] != 0);
      ++i;
    }
    if (i == cells.size()) break;
    const double split = midpoint(value, cells[i].first);
    if (!anchor || anchor_value < split) {
      Candidate c;
      c.condition = Condition::less(table, attribute, split);
      c.stats = {below.pos, below.neg, P, N};
      c.new_positives = below.unc;
      sink(std::move(c));
    }
    if (!anchor || anchor_value >= split) {
      Candidate c;
      c.condition = Condition::greater_equal(table, attribute, split);
      c.stats = {total.pos - below.pos, total.neg - below.neg, P, N};
      c.new_positives = total.unc - below.unc;
      sink(std::move(c));
    }
  }
}

struct Best {
  std::optional<Candidate> candidate;
  double quality = -std::numeric_limits<double>::infinity();
  std::size_t coverage = 0;

  void offer(Candidate&& c, double q) {
    const std::size_t cov = c.stats.p + c.stats.n;
    if (!candidate || q > quality || (q == quality && cov > coverage)) {
      quality = q;
      coverage = cov;
      candidate = std::move(c);
    }
  }
};

}  // namespace

void enumerate_candidates(const DecisionTable& table,
                          std::span<const std::size_t> covered,
                          std::size_t attribute, int cls,
                          std::span<const char> uncovered,
                          std::optional<std::span<const double>> anchor,
                          const std::function<void(Candidate&&)>& sink) {
  std::size_t P = 0;
  for (int t : table.targets()) P += t == cls ? 1 : 0;
  const std::size_t N = table.num_rows() - P;
  if (table.attribute(attribute).is_numeric()) {
    enumerate_numeric(table, covered, attribute, cls, uncovered, anchor, P, N,
                      sink);
  } else {
    enumerate_nominal(table, covered, attribute, cls, uncovered, anchor, P, N,
                      sink);
  }
}

Rule grow_rule(Rule rule, const GrowRequest& req) {
  const DecisionTable& table = *req.table;
  std::vector<std::size_t> covered = covered_rows(rule, table);

  while (true) {
    std::size_t neg = 0;
    std::size_t pos = 0;
    for (std::size_t r : covered) (table.target(r) == req.cls ? pos : neg) += 1;
    if (neg == 0 || covered.empty()) break;

    Best best;
    for (std::size_t attr : req.attributes) {
      enumerate_candidates(
          table, covered, attr, req.cls, req.uncovered, req.anchor,
          [&](Candidate&& c) {
            const std::size_t cov = c.stats.p + c.stats.n;
            if (c.new_positives < req.mincov || cov >= covered.size()) return;
            const double q = evaluate(req.measure, c.stats);
            best.offer(std::move(c), q);
          });
      // Strict prefix mode: the first prefix holding any admissible
      // condition decides.
      if (req.prefix_strict && best.candidate) break;
    }
    if (!best.candidate) break;

    const Condition& chosen = best.candidate->condition;
    if (req.trace) {
      req.trace->push_back(
          {rule.premise, chosen, best.quality, best.coverage});
    }
    rule.premise.push_back(chosen);
    std::erase_if(covered, [&](std::size_t r) {
      return !chosen.holds(table.value(r, chosen.attribute));
    });
    if (req.anchor && !covers(rule, *req.anchor)) {
      throw Error("grown rule no longer covers its anchor example");
    }
  }
  evaluate_rule(rule, table, req.measure);
  return rule;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rulefuse::internal
