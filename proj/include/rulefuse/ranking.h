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

// Importance-based feature orderings exported from a black-box model.
//
// Global file: plain text, one feature per line, most important first.
// Local file: JSON lines, {"row_id": "...", "features": ["...", ...]}.

#ifndef RULEFUSE_RANKING_H_
#define RULEFUSE_RANKING_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rulefuse/dataset.h"

namespace rulefuse {

enum class OrderingScope { kGlobal, kLocal };

// Distinct feature names, most important first. Never empty.
class FeatureOrdering {
 public:
  FeatureOrdering(std::vector<std::string> features, OrderingScope scope,
                  std::string instance_key = {});

  const std::vector<std::string>& features() const { return features_; }
  OrderingScope scope() const { return scope_; }
  const std::string& instance_key() const { return instance_key_; }
  std::size_t size() const { return features_.size(); }

  // 1-based rank of `feature`, if listed.
  std::optional<std::size_t> rank_of(const std::string& feature) const;

  friend bool operator==(const FeatureOrdering&,
                         const FeatureOrdering&) = default;

 private:
  std::vector<std::string> features_;
  OrderingScope scope_;
  std::string instance_key_;
};

using LocalOrderings = std::map<std::string, FeatureOrdering>;

FeatureOrdering parse_global_ordering(std::istream& in);
FeatureOrdering load_global_ordering(const std::string& path);
void write_global_ordering(const FeatureOrdering& fo, std::ostream& out);

LocalOrderings parse_local_orderings(std::istream& in);
LocalOrderings load_local_orderings(const std::string& path);
void write_local_orderings(const LocalOrderings& orderings, std::ostream& out);

// Checks every feature names a table attribute; the error lists offenders.
FeatureOrdering validate_ordering(const FeatureOrdering& fo,
                                  const DecisionTable& table);
// Attribute indices of the ordering's features, in ordering order.
std::vector<std::size_t> attribute_indices(const FeatureOrdering& fo,
                                           const DecisionTable& table);

// The column order of `table` as a global ordering.
FeatureOrdering column_ordering(const DecisionTable& table);

// Serves one ordering per instance: the local one when keyed, else global.
class OrderingSource {
 public:
  OrderingSource() = default;
  explicit OrderingSource(FeatureOrdering global);
  explicit OrderingSource(LocalOrderings local);

  bool empty() const { return !global_ && local_.empty(); }
  bool has_local() const { return !local_.empty(); }
  const std::optional<FeatureOrdering>& global() const { return global_; }
  const LocalOrderings& local() const { return local_; }

  // Throws ConfigError when no ordering applies to `key`.
  const FeatureOrdering& for_instance(const std::string& key) const;
  const FeatureOrdering* find(const std::string& key) const;

 private:
  std::optional<FeatureOrdering> global_;
  LocalOrderings local_;
};

}  // namespace rulefuse

#endif  // RULEFUSE_RANKING_H_
