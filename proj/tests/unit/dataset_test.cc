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

#include "rulefuse/dataset.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "unit/test_util.h"

namespace rulefuse {
namespace {

using testing::t1;
using testing::table_from_csv;

TEST(LoadTableTest, InfersKindsByParseability) {
  const DecisionTable t = t1();
  ASSERT_EQ(t.num_rows(), 4u);
  ASSERT_EQ(t.num_attributes(), 2u);
  EXPECT_EQ(t.attribute(0).kind, AttributeKind::kNumeric);
  EXPECT_EQ(t.attribute(1).kind, AttributeKind::kNominal);
  EXPECT_EQ(t.attribute(1).values, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.classes(), (std::vector<std::string>{"+", "-"}));
  EXPECT_EQ(t.attribute(0).min, 1.0);
  EXPECT_EQ(t.attribute(0).max, 4.0);
  EXPECT_EQ(t.row_id(2), "2");
}

TEST(LoadTableTest, SchemaOverrideMakesNumericNominal) {
  LoadOptions options;
  options.schema_override["a"] = AttributeKind::kNominal;
  const DecisionTable t =
      table_from_csv("a,b,class\n1,x,+\n2,x,+\n3,y,-\n4,y,-\n", options);
  EXPECT_EQ(t.attribute(0).kind, AttributeKind::kNominal);
  EXPECT_EQ(t.attribute(0).values,
            (std::vector<std::string>{"1", "2", "3", "4"}));
}

TEST(LoadTableTest, SingleClassTargetIsRejected) {
  try {
    table_from_csv("a,class\n1,+\n2,+\n");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("single-class target"),
              std::string::npos);
  }
}

TEST(LoadTableTest, RaggedAndEmptyInputsAreRejected) {
  EXPECT_THROW(table_from_csv("a,b,class\n1,x,+\n2,-\n"), DataError);
  EXPECT_THROW(table_from_csv(""), DataError);
  EXPECT_THROW(table_from_csv("a,class\n"), DataError);
}

TEST(LoadTableTest, MissingCellsAreMarkers) {
  const DecisionTable t =
      table_from_csv("a,b,class\n1,?,+\n,x,-\n3,y,+\n");
  EXPECT_TRUE(is_missing(t.value(0, 1)));
  EXPECT_TRUE(is_missing(t.value(1, 0)));
  EXPECT_EQ(t.attribute(0).kind, AttributeKind::kNumeric);
  EXPECT_EQ(t.attribute(1).values, (std::vector<std::string>{"x", "y"}));
}

TEST(LoadTableTest, TargetAndIdColumnOptions) {
  LoadOptions options;
  options.target = "label";
  options.id_column = "id";
  const DecisionTable t = table_from_csv(
      "id,label,a\nr7,yes,1\nr8,no,2\nr9,yes,3\n", options);
  EXPECT_EQ(t.num_attributes(), 1u);
  EXPECT_EQ(t.attribute(0).name, "a");
  EXPECT_EQ(t.row_id(1), "r8");
  EXPECT_EQ(t.target_label(1), "no");
  EXPECT_EQ(t.row_index("r9"), std::optional<std::size_t>(2));
}

TEST(LoadTableTest, QuotedCellsAndWhitespace) {
  const DecisionTable t =
      table_from_csv("a,b,class\n1,\"x, y\",+\n2, z ,-\n");
  EXPECT_EQ(t.attribute(1).values, (std::vector<std::string>{"x, y", "z"}));
}

TEST(LoadTableTest, SerializeThenLoadIsAFixedPoint) {
  const DecisionTable t = table_from_csv(
      "a,b,c,class\n1.5,x,?,+\n-2,\"y,z\",7,-\n1e-3,?,8,+\n0.1,x,9,-\n");
  std::ostringstream once;
  write_table(t, once);
  const DecisionTable u = table_from_csv(once.str());
  std::ostringstream twice;
  write_table(u, twice);
  EXPECT_EQ(once.str(), twice.str());
  ASSERT_EQ(u.num_attributes(), t.num_attributes());
  for (std::size_t a = 0; a < t.num_attributes(); ++a) {
    EXPECT_EQ(u.attribute(a).kind, t.attribute(a).kind);
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      const double x = t.value(r, a);
      const double y = u.value(r, a);
      EXPECT_TRUE((is_missing(x) && is_missing(y)) || x == y);
    }
  }
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    EXPECT_EQ(u.target_label(r), t.target_label(r));
  }
}

TEST(LoadTableTest, FixturesLoad) {
  for (const char* name : {"wine.csv", "breast_cancer.csv", "mixed.csv",
                           "leukemia.csv"}) {
    const DecisionTable t = load_table(testing::data_path(name));
    EXPECT_GT(t.num_rows(), 100u) << name;
  }
}

TEST(ReplaceTargetTest, IdentityPredictionsGiveEqualTable) {
  const DecisionTable t = t1();
  std::map<std::string, std::string> preds;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    preds[t.row_id(r)] = t.target_label(r);
  }
  const DecisionTable u = replace_target(t, preds);
  std::ostringstream a, b;
  write_table(t, a);
  write_table(u, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ReplaceTargetTest, ConstantPredictionsAreSingleClass) {
  const DecisionTable t = t1();
  std::map<std::string, std::string> preds;
  for (std::size_t r = 0; r < t.num_rows(); ++r) preds[t.row_id(r)] = "+";
  EXPECT_THROW(replace_target(t, preds), DataError);
}

TEST(ReplaceTargetTest, FlippedLabelsDifferOnExactlyThoseRows) {
  const DecisionTable t = t1();
  std::map<std::string, std::string> preds = {
      {"0", "-"}, {"1", "+"}, {"2", "+"}, {"3", "-"}};
  const DecisionTable u = replace_target(t, preds);
  std::size_t differing = 0;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    differing += u.target_label(r) != t.target_label(r);
    for (std::size_t a = 0; a < t.num_attributes(); ++a) {
      EXPECT_EQ(u.value(r, a), t.value(r, a));
    }
  }
  EXPECT_EQ(differing, 2u);
}

TEST(ReplaceTargetTest, MissingRowIdIsAnError) {
  EXPECT_THROW(replace_target(t1(), {{"0", "+"}, {"1", "-"}}), DataError);
}

TEST(ReplaceTargetTest, NewLabelsExtendTheClassSet) {
  const DecisionTable u = replace_target(
      t1(), {{"0", "+"}, {"1", "?maybe"}, {"2", "-"}, {"3", "-"}});
  EXPECT_EQ(u.classes().size(), 3u);
}

TEST(PredictionsTest, WriteThenParseRoundTrips) {
  const std::vector<std::string> ids = {"0", "1", "x,y"};
  const std::vector<std::string> labels = {"a", "b", "a"};
  std::ostringstream out;
  write_predictions(ids, labels, out);
  std::istringstream in(out.str());
  const auto parsed = parse_predictions(in);
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_EQ(parsed.at("x,y"), "a");
  EXPECT_EQ(out.str().substr(0, 13), "row_id,label\n");
}

DecisionTable ten_rows() {
  std::ostringstream csv;
  csv << "a,class\n";
  for (int i = 0; i < 10; ++i) csv << i << ',' << (i % 2 ? "odd" : "even") << '\n';
  return table_from_csv(csv.str());
}

TEST(SplitTest, SizesAndPartition) {
  const DecisionTable t = ten_rows();
  const auto [train, test] = split(t, 0.8, 7);
  EXPECT_EQ(train.num_rows(), 8u);
  EXPECT_EQ(test.num_rows(), 2u);
  std::set<std::string> ids(train.row_ids().begin(), train.row_ids().end());
  for (const auto& id : test.row_ids()) EXPECT_TRUE(ids.insert(id).second);
  EXPECT_EQ(ids.size(), 10u);
}

TEST(SplitTest, DeterministicForSeed) {
  const DecisionTable t = ten_rows();
  const auto a = split(t, 0.8, 7);
  const auto b = split(t, 0.8, 7);
  std::ostringstream sa, sb;
  write_table(a.first, sa);
  write_table(a.second, sa);
  write_table(b.first, sb);
  write_table(b.second, sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(SplitTest, FractionBounds) {
  EXPECT_THROW(split(ten_rows(), 1.0, 0), ConfigError);
  EXPECT_THROW(split(ten_rows(), 0.0, 0), ConfigError);
}

TEST(SplitTest, StratifiedWhenEveryClassHasTwoRows) {
  const DecisionTable t = ten_rows();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [train, test] = split(t, 0.6, seed);
    const auto counts = train.class_counts();
    EXPECT_EQ(counts[0], 3u);
    EXPECT_EQ(counts[1], 3u);
    EXPECT_EQ(train.classes(), t.classes());
  }
}

TEST(SplitTest, PartitionPropertyOnRandomTables) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const DecisionTable t = testing::random_table(rng, 30, 2);
    const double f = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
    const auto [train, test] = split(t, f, rng());
    std::vector<std::string> all(train.row_ids());
    all.insert(all.end(), test.row_ids().begin(), test.row_ids().end());
    std::sort(all.begin(), all.end());
    std::vector<std::string> expected(t.row_ids());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(all, expected);
  }
}

TEST(NumberTest, ParseAndFormatAreLocaleFree) {
  EXPECT_EQ(parse_number("2.5"), std::optional<double>(2.5));
  EXPECT_EQ(parse_number("-3"), std::optional<double>(-3.0));
  EXPECT_FALSE(parse_number("2,5").has_value());
  EXPECT_FALSE(parse_number("abc").has_value());
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(3.0), "3");
}

}  // namespace
}  // namespace rulefuse
