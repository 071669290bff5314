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

#include "rulefuse/rule.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "rulefuse/induction_sc.h"
#include "unit/test_util.h"

namespace rulefuse {
namespace {

using testing::t1;
using testing::table_from_csv;

Rule rule_of(std::vector<Condition> premise, std::string conclusion) {
  Rule r;
  r.premise = std::move(premise);
  r.conclusion = std::move(conclusion);
  return r;
}

TEST(CoversTest, Examples) {
  const DecisionTable t = t1();
  const auto bx = Condition::equals(t, 1, t.attribute(1).code_of("x"));
  EXPECT_TRUE(covers(rule_of({bx}, "+"), t, 0));
  const Rule r = rule_of({Condition::less(t, 0, 2.5), bx}, "+");
  const Instance row{3.0, 0.0};  // a=3, b=x
  EXPECT_FALSE(covers(r, row));
  const Instance missing{kMissing, 0.0};
  EXPECT_FALSE(covers(rule_of({Condition::less(t, 0, 2.5)}, "+"), missing));
}

TEST(CoversTest, UnknownAttributeThrows) {
  const DecisionTable t = t1();
  Condition c = Condition::less(t, 0, 2.5);
  c.attribute = 7;
  EXPECT_THROW(covers(rule_of({c}, "+"), t, 0), Error);
}

TEST(ContingencyTest, Examples) {
  const DecisionTable t = t1();
  const auto bx = Condition::equals(t, 1, t.attribute(1).code_of("x"));
  EXPECT_EQ(contingency(rule_of({bx}, "+"), t), (Contingency{2, 0, 2, 2}));
  EXPECT_EQ(contingency(rule_of({}, "+"), t), (Contingency{2, 2, 2, 2}));
  EXPECT_EQ(contingency(rule_of({Condition::less(t, 0, 0)}, "+"), t),
            (Contingency{0, 0, 2, 2}));
}

TEST(MergeTest, Examples) {
  const DecisionTable t = table_from_csv(
      "a,class\n1,+\n3,+\n5,-\n10,-\n11,+\n");
  const Rule r = rule_of(
      {Condition::greater_equal(t, 0, 3), Condition::less(t, 0, 10.5)}, "+");
  const Rule m = merge_conditions(r);
  ASSERT_EQ(m.premise.size(), 1u);
  EXPECT_EQ(m.premise[0].relation, Relation::kInterval);
  EXPECT_EQ(m.premise[0].lower, 3.0);
  EXPECT_EQ(m.premise[0].upper, 10.5);
  EXPECT_EQ(render(m.premise[0], &t), "a ∈ [3,10]");
  EXPECT_EQ(render(m.premise[0]), "a ∈ [3,10.5)");

  const Rule single = rule_of({Condition::less(t, 0, 4)}, "+");
  EXPECT_EQ(merge_conditions(single).premise, single.premise);

  const Rule both = rule_of(
      {Condition::greater_equal(t, 0, 2), Condition::greater_equal(t, 0, 5)},
      "+");
  const Rule mb = merge_conditions(both);
  ASSERT_EQ(mb.premise.size(), 1u);
  EXPECT_EQ(mb.premise[0].relation, Relation::kGreaterEqual);
  EXPECT_EQ(mb.premise[0].lower, 5.0);
}

TEST(MergeTest, EmptyIntersectionThrows) {
  const DecisionTable t = t1();
  const Rule r = rule_of(
      {Condition::greater_equal(t, 0, 3), Condition::less(t, 0, 2)}, "+");
  EXPECT_THROW(merge_conditions(r), Error);
}

TEST(MergeTest, KeepsFirstPositionOfAttribute) {
  const DecisionTable t = t1();
  const Rule r = rule_of({Condition::greater_equal(t, 0, 1.5),
                          Condition::equals(t, 1, 0),
                          Condition::less(t, 0, 3.5)},
                         "+");
  const Rule m = merge_conditions(r);
  EXPECT_EQ(m.addition_order, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(m.premise[0].attribute_name, "a");
}

TEST(MergeTest, PreservesCoverageOnRandomRules) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTable t = testing::random_table(rng, 12, 3);
    std::vector<std::size_t> all(t.num_rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> attrs(t.num_attributes());
    for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i] = i;
    const auto pool = candidate_conditions(t, all, attrs);
    if (pool.empty()) continue;
    Rule r = rule_of({}, t.classes()[0]);
    const std::size_t len = 1 + rng() % 4;
    for (std::size_t k = 0; k < len; ++k) r.premise.push_back(pool[rng() % pool.size()]);
    Rule m;
    try {
      m = merge_conditions(r);
    } catch (const Error&) {
      // Disjoint numeric ranges: the rule covers nothing.
      EXPECT_TRUE(covered_rows(r, t).empty());
      continue;
    }
    for (std::size_t row = 0; row < t.num_rows(); ++row) {
      EXPECT_EQ(covers(r, t, row), covers(m, t, row));
    }
  }
}

TEST(CoversTest, AddingAConditionNeverEnlargesCoverage) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTable t = testing::random_table(rng, 12, 3);
    std::vector<std::size_t> all(t.num_rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> attrs(t.num_attributes());
    for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i] = i;
    const auto pool = candidate_conditions(t, all, attrs);
    Rule r = rule_of({}, t.classes()[1]);
    auto before = covered_rows(r, t);
    for (int k = 0; k < 3 && !pool.empty(); ++k) {
      r.premise.push_back(pool[rng() % pool.size()]);
      const auto after = covered_rows(r, t);
      EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(),
                                after.end()));
      before = after;
    }
  }
}

TEST(ContingencyTest, CoveredPlusUncoveredPositivesIsP) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const DecisionTable t = testing::random_table(rng, 12, 3);
    std::vector<std::size_t> all(t.num_rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> attrs(t.num_attributes());
    for (std::size_t i = 0; i < attrs.size(); ++i) attrs[i] = i;
    const auto pool = candidate_conditions(t, all, attrs);
    if (pool.empty()) continue;
    const Rule r = rule_of({pool[rng() % pool.size()]}, t.classes()[0]);
    const Contingency c = contingency(r, t);
    std::size_t uncovered_pos = 0;
    for (std::size_t row = 0; row < t.num_rows(); ++row) {
      if (t.target(row) == 0 && !covers(r, t, row)) ++uncovered_pos;
    }
    EXPECT_EQ(c.p + uncovered_pos, c.P);
    EXPECT_LE(c.n, c.N);
    EXPECT_EQ(c.P + c.N, t.num_rows());
  }
}

TEST(PremiseFeaturesTest, Examples) {
  LoadOptions options;
  options.schema_override["cd123"] = AttributeKind::kNominal;
  const DecisionTable t = table_from_csv(
      "cd123,cd9,cd10,cd22,class\n0,3,30,2,n\n1,10,40,1,a\n", options);
  const Rule r = rule_of({Condition::equals(t, 0, 0),
                          Condition::interval(t, 1, 3, 10.5),
                          Condition::less(t, 2, 34.5),
                          Condition::greater_equal(t, 3, 2)},
                         "n");
  EXPECT_EQ(premise_features(r),
            (std::vector<std::string>{"cd123", "cd9", "cd10", "cd22"}));
  EXPECT_TRUE(premise_features(rule_of({}, "n")).empty());

  const DecisionTable u = t1();
  const Rule dup = rule_of({Condition::greater_equal(u, 0, 2),
                            Condition::equals(u, 1, 0),
                            Condition::less(u, 0, 5)},
                           "+");
  EXPECT_EQ(premise_features(dup), (std::vector<std::string>{"a", "b"}));
}

TEST(RenderTest, RuleText) {
  const DecisionTable t = t1();
  Rule r = rule_of({Condition::equals(t, 1, 0)}, "+");
  evaluate_rule(r, t, Measure::kPrecision);
  EXPECT_EQ(render(r, &t), "IF b = x THEN class = + (p=2, n=0, prec=1, cov=1)");
  Rule lt = rule_of({Condition::less(t, 0, 2.5)}, "+");
  evaluate_rule(lt, t, Measure::kPrecision);
  EXPECT_EQ(render(lt, &t), "IF a ≤ 2 THEN class = + (p=2, n=0, prec=1, cov=1)");
  EXPECT_EQ(render(lt.premise[0]), "a < 2.5");
}

TEST(BindTest, ResolvesByNameAndValue) {
  const DecisionTable t = t1();
  const DecisionTable u = table_from_csv("b,a,class\nz,1,+\ny,2,-\nx,3,+\n");
  const Rule r = rule_of(
      {Condition::equals(t, 1, t.attribute(1).code_of("x")),
       Condition::less(t, 0, 2.5)},
      "+");
  const Rule bound = bind(r, u);
  EXPECT_EQ(bound.premise[0].attribute, 0u);
  EXPECT_EQ(bound.premise[0].code, u.attribute(0).code_of("x"));
  EXPECT_EQ(bound.premise[1].attribute, 1u);
  EXPECT_FALSE(covers(bound, u, 0));
  EXPECT_FALSE(covers(bound, u, 2));
  const DecisionTable v = table_from_csv("c,class\n1,+\n2,-\n");
  EXPECT_THROW(bind(r, v), DataError);
}

TEST(MajorityClassTest, TiesGoToEarlierClass) {
  EXPECT_EQ(majority_class(t1()), "+");
  EXPECT_EQ(majority_class(table_from_csv("a,class\n1,z\n2,b\n3,z\n")), "z");
}

}  // namespace
}  // namespace rulefuse
