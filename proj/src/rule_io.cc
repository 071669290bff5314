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

#include "rulefuse/rule_io.h"

#include <fstream>

namespace rulefuse {

using nlohmann::json;

json to_json(const Condition& c) {
  json j{{"attribute", c.attribute_name}};
  switch (c.relation) {
    case Relation::kEquals:
      j["relation"] = "eq";
      j["value"] = c.value;
      break;
    case Relation::kLess:
      j["relation"] = "lt";
      j["threshold"] = c.upper;
      break;
    case Relation::kGreaterEqual:
      j["relation"] = "geq";
      j["threshold"] = c.lower;
      break;
    case Relation::kInterval:
      j["relation"] = "in";
      j["lower"] = c.lower;
      j["upper"] = c.upper;
      break;
  }
  return j;
}

json to_json(const Rule& rule) {
  json conditions = json::array();
  for (const auto& c : rule.premise) conditions.push_back(to_json(c));
  json j{{"conditions", std::move(conditions)},
         {"conclusion", rule.conclusion},
         {"p", rule.stats.p},
         {"n", rule.stats.n},
         {"P", rule.stats.P},
         {"N", rule.stats.N},
         {"quality", rule.quality},
         {"addition_order", rule.addition_order}};
  if (rule.anchor) j["anchor"] = *rule.anchor;
  return j;
}

json to_json(const RuleSet& rules) {
  json rule_array = json::array();
  for (const auto& r : rules.rules) rule_array.push_back(to_json(r));
  json schema = json::array();
  for (const auto& [name, kind] : rules.schema) {
    schema.push_back({{"name", name}, {"kind", to_string(kind)}});
  }
  const auto& m = rules.metadata;
  return json{{"classes", rules.classes},
              {"default_class", rules.default_class},
              {"metadata",
               {{"mode", to_string(m.mode)},
                {"measure", to_string(m.measure)},
                {"mincov", m.mincov},
                {"ordering", to_string(m.ordering)},
                {"prefix_strict", m.prefix_strict},
                {"filtered", m.filtered},
                {"seed", m.seed},
                {"train_fraction", m.train_fraction}}},
              {"schema", std::move(schema)},
              {"rules", std::move(rule_array)}};
}

namespace {

Condition condition_from_json(const json& j, const DecisionTable& table) {
  Condition c;
  c.attribute_name = j.at("attribute").get<std::string>();
  const auto relation = j.at("relation").get<std::string>();
  if (relation == "eq") {
    c.relation = Relation::kEquals;
    c.value = j.at("value").get<std::string>();
  } else if (relation == "lt") {
    c.relation = Relation::kLess;
    c.upper = j.at("threshold").get<double>();
  } else if (relation == "geq") {
    c.relation = Relation::kGreaterEqual;
    c.lower = j.at("threshold").get<double>();
  } else if (relation == "in") {
    c.relation = Relation::kInterval;
    c.lower = j.at("lower").get<double>();
    c.upper = j.at("upper").get<double>();
    if (!(c.lower <= c.upper)) throw ConfigError("interval with lower > upper");
  } else {
    throw ConfigError("unknown relation '" + relation + "'");
  }
  return bind(c, table);
}

}  // namespace

Rule rule_from_json(const json& j, const DecisionTable& table) {
  try {
    Rule rule;
    for (const auto& c : j.at("conditions")) {
      rule.premise.push_back(condition_from_json(c, table));
    }
    rule.conclusion = j.at("conclusion").get<std::string>();
    rule.stats.p = j.at("p").get<std::size_t>();
    rule.stats.n = j.at("n").get<std::size_t>();
    rule.stats.P = j.at("P").get<std::size_t>();
    rule.stats.N = j.at("N").get<std::size_t>();
    rule.quality = j.at("quality").get<double>();
    rule.addition_order =
        j.at("addition_order").get<std::vector<std::string>>();
    if (j.contains("anchor")) rule.anchor = j.at("anchor").get<std::string>();
    if (rule.addition_order != premise_features(rule)) {
      throw ConfigError("addition_order disagrees with the premise");
    }
    return rule;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed rule: ") + e.what());
  }
}

Schema schema_from_json(const json& j) {
  Schema schema;
  try {
    for (const auto& entry : j.at("schema")) {
      schema.emplace_back(entry.at("name").get<std::string>(),
                          parse_attribute_kind(entry.at("kind").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed rule-set schema: ") + e.what());
  }
  return schema;
}

RuleSet ruleset_from_json(const json& j, const DecisionTable& table) {
  try {
    RuleSet rules;
    rules.classes = j.at("classes").get<std::vector<std::string>>();
    rules.default_class = j.at("default_class").get<std::string>();
    const auto& m = j.at("metadata");
    rules.metadata.mode = parse_induction_mode(m.at("mode").get<std::string>());
    rules.metadata.measure = parse_measure(m.at("measure").get<std::string>());
    rules.metadata.mincov = m.at("mincov").get<std::size_t>();
    rules.metadata.ordering =
        parse_ordering_mode(m.at("ordering").get<std::string>());
    rules.metadata.prefix_strict = m.at("prefix_strict").get<bool>();
    rules.metadata.filtered = m.at("filtered").get<bool>();
    rules.metadata.seed = m.at("seed").get<std::uint64_t>();
    rules.metadata.train_fraction = m.at("train_fraction").get<double>();
    rules.schema = schema_from_json(j);
    for (const auto& r : j.at("rules")) {
      rules.rules.push_back(rule_from_json(r, table));
    }
    auto known = [&](const std::string& label) {
      return std::find(rules.classes.begin(), rules.classes.end(), label) !=
             rules.classes.end();
    };
    if (!known(rules.default_class)) {
      throw ConfigError("default class not among the rule-set classes");
    }
    for (const auto& r : rules.rules) {
      if (!known(r.conclusion)) {
        throw ConfigError("rule concludes unknown class '" + r.conclusion + "'");
      }
    }
    return rules;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed rule set: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace rulefuse
