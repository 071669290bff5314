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

#ifndef RULEFUSE_QUALITY_H_
#define RULEFUSE_QUALITY_H_

#include <cstddef>
#include <limits>
#include <string_view>

namespace rulefuse {

// Contingency counts of a rule against a decision table: covered positives
// and negatives, and class totals.
struct Contingency {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t P = 0;
  std::size_t N = 0;

  friend bool operator==(const Contingency&, const Contingency&) = default;
};

enum class Measure { kPrecision, kC2 };

std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view text);

// Returned by c2 when p = 0 so that such a candidate never wins.
inline constexpr double kNoPositives = -std::numeric_limits<double>::infinity();

// p / (p + n); 0 when the rule covers nothing.
double precision(const Contingency& c);

// p / P. Throws when P = 0.
double coverage(const Contingency& c);

// ((N p - P n) / (N (p + n))) * ((P + p) / (2 p)).
// kNoPositives when p = 0. With N = 0 the first factor is taken as 1.
// The second factor exceeds 1 for p < P, so the product is neither bounded
// by 1 nor monotone in p.
double c2(const Contingency& c);

double evaluate(Measure measure, const Contingency& c);

}  // namespace rulefuse

#endif  // RULEFUSE_QUALITY_H_
