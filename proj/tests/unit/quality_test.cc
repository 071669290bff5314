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

#include <gtest/gtest.h>

#include <cmath>

#include "rulefuse/dataset.h"

namespace rulefuse {
namespace {

// Direct evaluation of the C2 formula in rationals.
double c2_oracle(double p, double n, double P, double N) {
  return ((N * p - P * n) / (N * (p + n))) * ((P + p) / (2 * p));
}

TEST(PrecisionTest, Examples) {
  EXPECT_EQ(precision({2, 0, 4, 4}), 1.0);
  EXPECT_EQ(precision({3, 1, 4, 4}), 0.75);
  EXPECT_EQ(precision({0, 0, 4, 4}), 0.0);
}

TEST(CoverageTest, Examples) {
  EXPECT_EQ(coverage({2, 0, 4, 4}), 0.5);
  EXPECT_EQ(coverage({4, 1, 4, 4}), 1.0);
  EXPECT_EQ(coverage({0, 3, 4, 4}), 0.0);
  EXPECT_THROW(coverage({0, 0, 0, 4}), Error);
}

TEST(C2Test, Examples) {
  EXPECT_EQ(c2({4, 0, 4, 4}), 1.0);
  EXPECT_NEAR(c2({2, 1, 4, 4}), 0.5, 1e-12);
  EXPECT_EQ(c2({0, 1, 4, 4}), kNoPositives);
  EXPECT_TRUE(std::isinf(c2({0, 1, 4, 4})));
}

TEST(C2Test, MatchesFormulaOnSweep) {
  for (std::size_t P = 1; P <= 6; ++P) {
    for (std::size_t N = 1; N <= 6; ++N) {
      for (std::size_t p = 1; p <= P; ++p) {
        for (std::size_t n = 0; n <= N; ++n) {
          EXPECT_NEAR(c2({p, n, P, N}), c2_oracle(p, n, P, N), 1e-12);
        }
      }
    }
  }
}

TEST(C2Test, PerfectRuleScoresOne) {
  for (std::size_t P = 1; P <= 6; ++P) {
    for (std::size_t N = 1; N <= 6; ++N) {
      EXPECT_DOUBLE_EQ(c2({P, 0, P, N}), 1.0);
    }
  }
}

TEST(C2Test, NoNegativesTablePinsFirstFactor) {
  EXPECT_DOUBLE_EQ(c2({2, 0, 4, 0}), 1.5);
}

TEST(MeasureTest, PrecisionAndCoverageInUnitInterval) {
  for (std::size_t P = 1; P <= 6; ++P) {
    for (std::size_t N = 0; N <= 6; ++N) {
      for (std::size_t p = 0; p <= P; ++p) {
        for (std::size_t n = 0; n <= N; ++n) {
          const Contingency c{p, n, P, N};
          EXPECT_GE(precision(c), 0.0);
          EXPECT_LE(precision(c), 1.0);
          EXPECT_GE(coverage(c), 0.0);
          EXPECT_LE(coverage(c), 1.0);
        }
      }
    }
  }
}

TEST(MeasureTest, PrecisionNondecreasingInP) {
  for (std::size_t P = 1; P <= 6; ++P) {
    for (std::size_t N = 0; N <= 6; ++N) {
      for (std::size_t n = 0; n <= N; ++n) {
        for (std::size_t p = 1; p <= P; ++p) {
          EXPECT_GE(precision({p, n, P, N}), precision({p - 1, n, P, N}));
        }
      }
    }
  }
}

TEST(C2Test, FullCoverageBoundedByOneWithEqualityIffNoNegatives) {
  for (std::size_t P = 1; P <= 6; ++P) {
    for (std::size_t N = 1; N <= 6; ++N) {
      for (std::size_t n = 0; n <= N; ++n) {
        const double q = c2({P, n, P, N});
        EXPECT_LE(q, 1.0);
        EXPECT_EQ(q == 1.0, n == 0);
      }
    }
  }
}

TEST(C2Test, PartialCoverageCanExceedOne) {
  // (P + p) / (2p) > 1 whenever p < P, so a pure but partial rule scores
  // above the perfect rule and c2 is not monotone in p.
  EXPECT_DOUBLE_EQ(c2({1, 0, 4, 4}), 2.5);
  EXPECT_GT(c2({1, 0, 4, 4}), c2({2, 0, 4, 4}));
}

TEST(C2Test, NondecreasingInPWhenNegativesDominate) {
  // With n fixed and N p < P n the first factor is negative and shrinks in
  // magnitude as p grows.
  EXPECT_LT(c2({1, 4, 4, 4}), c2({2, 4, 4, 4}));
}

TEST(MeasureTest, ParseAndNames) {
  EXPECT_EQ(parse_measure("precision"), Measure::kPrecision);
  EXPECT_EQ(parse_measure("c2"), Measure::kC2);
  EXPECT_EQ(to_string(Measure::kC2), "c2");
  EXPECT_THROW(parse_measure("lift"), ConfigError);
  EXPECT_EQ(evaluate(Measure::kPrecision, {3, 1, 4, 4}), 0.75);
}

}  // namespace
}  // namespace rulefuse
