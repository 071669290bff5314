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

#ifndef RULEFUSE_CLASSIFY_H_
#define RULEFUSE_CLASSIFY_H_

#include <span>
#include <string>
#include <vector>

#include "rulefuse/rule.h"

namespace rulefuse {

// Every covering rule votes for its conclusion with its quality; the class
// with the largest total among voted classes wins, ties going to the earlier
// class in `rules.classes`. No covering rule: the default class.
// `rules` must be bound to the example's attribute layout.
std::string predict(const RuleSet& rules, std::span<const double> example);

std::vector<std::string> predict_all(const RuleSet& rules,
                                     const DecisionTable& table,
                                     std::size_t threads = 1);

}  // namespace rulefuse

#endif  // RULEFUSE_CLASSIFY_H_
