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

#include "rulefuse/quality.h"

#include <string>

#include "rulefuse/dataset.h"

namespace rulefuse {

std::string_view to_string(Measure measure) {
  return measure == Measure::kPrecision ? "precision" : "c2";
}

Measure parse_measure(std::string_view text) {
  if (text == "precision") return Measure::kPrecision;
  if (text == "c2" || text == "C2") return Measure::kC2;
  throw ConfigError("unknown quality measure '" + std::string(text) + "'");
}

double precision(const Contingency& c) {
  if (c.p + c.n == 0) return 0.0;
  return static_cast<double>(c.p) / static_cast<double>(c.p + c.n);
}

double coverage(const Contingency& c) {
  if (c.P == 0) throw Error("coverage undefined for a class with no examples");
  return static_cast<double>(c.p) / static_cast<double>(c.P);
}

double c2(const Contingency& c) {
  if (c.p == 0) return kNoPositives;
  const double p = static_cast<double>(c.p);
  const double n = static_cast<double>(c.n);
  const double P = static_cast<double>(c.P);
  const double N = static_cast<double>(c.N);
  const double agreement = c.N == 0 ? 1.0 : (N * p - P * n) / (N * (p + n));
  return agreement * ((P + p) / (2.0 * p));
}

double evaluate(Measure measure, const Contingency& c) {
  switch (measure) {
    case Measure::kPrecision:
      return precision(c);
    case Measure::kC2:
      return c2(c);
  }
  return 0.0;
}

}  // namespace rulefuse
