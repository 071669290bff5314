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

#include "rulefuse/ranking.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "json.hpp"

namespace rulefuse {
namespace {

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

FeatureOrdering::FeatureOrdering(std::vector<std::string> features,
                                 OrderingScope scope, std::string instance_key)
    : features_(std::move(features)),
      scope_(scope),
      instance_key_(std::move(instance_key)) {
  if (features_.empty()) throw ConfigError("feature ordering is empty");
  std::set<std::string> seen;
  for (const auto& f : features_) {
    if (f.empty()) throw ConfigError("empty feature name in ordering");
    if (!seen.insert(f).second) {
      throw ConfigError("duplicate feature '" + f + "' in ordering");
    }
  }
}

std::optional<std::size_t> FeatureOrdering::rank_of(
    const std::string& feature) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i] == feature) return i + 1;
  }
  return std::nullopt;
}

FeatureOrdering parse_global_ordering(std::istream& in) {
  std::vector<std::string> features;
  std::string line;
  while (std::getline(in, line)) {
    auto name = strip(line);
    if (!name.empty()) features.push_back(std::move(name));
  }
  return FeatureOrdering(std::move(features), OrderingScope::kGlobal);
}

FeatureOrdering load_global_ordering(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read ordering file '" + path + "'");
  return parse_global_ordering(in);
}

void write_global_ordering(const FeatureOrdering& fo, std::ostream& out) {
  for (const auto& f : fo.features()) out << f << '\n';
}

LocalOrderings parse_local_orderings(std::istream& in) {
  LocalOrderings out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    std::string row_id;
    std::vector<std::string> features;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("row_id")) {
        throw ConfigError("local ordering line " + std::to_string(line_no) +
                          " has no row_id");
      }
      const auto& id = j.at("row_id");
      row_id = id.is_string() ? id.get<std::string>() : id.dump();
      features = j.at("features").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed local ordering line " +
                        std::to_string(line_no) + ": " + e.what());
    }
    FeatureOrdering fo(std::move(features), OrderingScope::kLocal, row_id);
    if (!out.emplace(row_id, std::move(fo)).second) {
      throw ConfigError("duplicate row_id '" + row_id + "' in local orderings");
    }
  }
  return out;
}

LocalOrderings load_local_orderings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read ordering file '" + path + "'");
  return parse_local_orderings(in);
}

void write_local_orderings(const LocalOrderings& orderings, std::ostream& out) {
  for (const auto& [key, fo] : orderings) {
    out << nlohmann::json{{"row_id", key}, {"features", fo.features()}}.dump()
        << '\n';
  }
}

FeatureOrdering validate_ordering(const FeatureOrdering& fo,
                                  const DecisionTable& table) {
  std::string unknown;
  for (const auto& f : fo.features()) {
    if (!table.attribute_index(f)) unknown += (unknown.empty() ? "" : ", ") + f;
  }
  if (!unknown.empty()) {
    throw ConfigError("ordering names unknown features: " + unknown);
  }
  return fo;
}

std::vector<std::size_t> attribute_indices(const FeatureOrdering& fo,
                                           const DecisionTable& table) {
  validate_ordering(fo, table);
  std::vector<std::size_t> out;
  out.reserve(fo.size());
  for (const auto& f : fo.features()) out.push_back(*table.attribute_index(f));
  return out;
}

FeatureOrdering column_ordering(const DecisionTable& table) {
  std::vector<std::string> names;
  for (const auto& a : table.attributes()) names.push_back(a.name);
  return FeatureOrdering(std::move(names), OrderingScope::kGlobal);
}

OrderingSource::OrderingSource(FeatureOrdering global)
    : global_(std::move(global)) {}

OrderingSource::OrderingSource(LocalOrderings local)
    : local_(std::move(local)) {}

const FeatureOrdering* OrderingSource::find(const std::string& key) const {
  if (const auto it = local_.find(key); it != local_.end()) return &it->second;
  if (global_) return &*global_;
  return nullptr;
}

const FeatureOrdering& OrderingSource::for_instance(
    const std::string& key) const {
  if (const auto* fo = find(key)) return *fo;
  throw ConfigError("no feature ordering for instance '" + key + "'");
}

}  // namespace rulefuse
