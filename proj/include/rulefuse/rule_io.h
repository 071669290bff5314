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

// JSON form of rules and rule sets.
//
// A rule is {conditions[], conclusion, p, n, P, N, quality, addition_order[]}
// plus an optional "anchor" row id. Conditions are
//   {"attribute": a, "relation": "eq",  "value": v}
//   {"attribute": a, "relation": "lt",  "threshold": t}
//   {"attribute": a, "relation": "geq", "threshold": t}
//   {"attribute": a, "relation": "in",  "lower": l, "upper": u}   [l, u)

#ifndef RULEFUSE_RULE_IO_H_
#define RULEFUSE_RULE_IO_H_

#include <string>

#include "json.hpp"
#include "rulefuse/rule.h"

namespace rulefuse {

nlohmann::json to_json(const Condition& condition);
nlohmann::json to_json(const Rule& rule);
nlohmann::json to_json(const RuleSet& rules);

// Parsed conditions are bound to `table` (attribute indices, nominal codes).
Rule rule_from_json(const nlohmann::json& j, const DecisionTable& table);
RuleSet ruleset_from_json(const nlohmann::json& j, const DecisionTable& table);

// Training schema recorded in a rule-set document.
Schema schema_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace rulefuse

#endif  // RULEFUSE_RULE_IO_H_
