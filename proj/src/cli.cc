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

#include "rulefuse/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rulefuse/classify.h"
#include "rulefuse/consistency.h"
#include "rulefuse/dataset.h"
#include "rulefuse/induction_or.h"
#include "rulefuse/induction_sc.h"
#include "rulefuse/ranking.h"
#include "rulefuse/rule_io.h"

namespace rulefuse::cli {
namespace {

using nlohmann::json;

struct DataFlags {
  std::string input;
  std::string target;
  std::string id_column;
  std::string schema;
  std::string predictions;
};

struct OrderingFlags {
  std::string global;
  std::string local;
};

struct InduceFlags {
  DataFlags data;
  OrderingFlags fo;
  std::string mode = "sc";
  std::string measure = "precision";
  std::size_t mincov = 5;
  bool filter = false;
  bool prefix_strict = false;
  double train_fraction = 1.0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string output;
};

struct ClassifyFlags {
  DataFlags data;
  std::string rules;
  std::size_t threads = 1;
  std::string output;
};

struct ExplainFlags {
  DataFlags data;
  OrderingFlags fo;
  std::string instance;
  std::string instance_key;
  std::string predicted;
  std::string rules;
  bool contradictory = false;
  std::string measure = "precision";
  std::size_t mincov = 5;
  bool prefix_strict = false;
  std::string output;
};

struct EvaluateFlags {
  DataFlags data;
  OrderingFlags fo;
  std::string rules;
  std::size_t threads = 1;
  std::string report;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags, bool with_predictions) {
  cmd->add_option("--input", flags.input, "Dataset CSV")->required();
  cmd->add_option("--target", flags.target, "Target column (default: last)");
  cmd->add_option("--id-column", flags.id_column,
                  "Column holding row ids (default: row position)");
  cmd->add_option("--schema", flags.schema, "Sidecar schema file (name,kind)");
  if (with_predictions) {
    cmd->add_option("--predictions", flags.predictions,
                    "Black-box predictions CSV (row_id,label)");
  }
}

void add_ordering_flags(CLI::App* cmd, OrderingFlags& flags) {
  auto* global = cmd->add_option("--fo-global", flags.global,
                                 "Global feature ordering (one per line)");
  auto* local = cmd->add_option("--fo-local", flags.local,
                                "Local feature orderings (JSON lines)");
  global->excludes(local);
}

std::size_t resolve_threads(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

LoadOptions load_options(const DataFlags& flags, const Schema& schema = {}) {
  LoadOptions options;
  for (const auto& [name, kind] : schema) options.schema_override[name] = kind;
  if (!flags.schema.empty()) {
    for (const auto& [name, kind] : load_schema(flags.schema)) {
      options.schema_override[name] = kind;
    }
  }
  if (!flags.target.empty()) options.target = flags.target;
  if (!flags.id_column.empty()) options.id_column = flags.id_column;
  return options;
}

// Dataset with the target replaced by black-box predictions when given.
DecisionTable load_data(const DataFlags& flags, const Schema& schema = {}) {
  DecisionTable table = load_table(flags.input, load_options(flags, schema));
  if (!flags.predictions.empty()) {
    table = replace_target(table, load_predictions(flags.predictions));
  }
  return table;
}

OrderingSource load_orderings(const OrderingFlags& flags) {
  if (!flags.global.empty()) {
    return OrderingSource(load_global_ordering(flags.global));
  }
  if (!flags.local.empty()) {
    return OrderingSource(load_local_orderings(flags.local));
  }
  return {};
}

std::filesystem::path sibling(const std::string& path, const char* extension) {
  std::filesystem::path p(path);
  p.replace_extension(extension);
  return p;
}

int induce(const InduceFlags& f, std::ostream& out) {
  const InductionMode mode = parse_induction_mode(f.mode);
  const Measure measure = parse_measure(f.measure);
  if (f.mincov < 1) throw ConfigError("--mincov must be at least 1");
  const bool has_fo = !f.fo.global.empty() || !f.fo.local.empty();
  if (mode == InductionMode::kSeparateAndConquer &&
      (has_fo || f.filter || f.prefix_strict)) {
    throw ConfigError(
        "--fo-global, --fo-local, --filter and --prefix-strict require --mode or");
  }
  if (f.prefix_strict && !has_fo) {
    throw ConfigError("--prefix-strict requires --fo-global or --fo-local");
  }
  const OrderingSource orderings = load_orderings(f.fo);

  DecisionTable table = load_data(f.data);
  if (f.train_fraction < 1.0) {
    table = split(table, f.train_fraction, f.seed).first;
  }

  RuleSet rules;
  if (mode == InductionMode::kSeparateAndConquer) {
    rules = induce_sc(table, f.mincov, measure, resolve_threads(f.threads));
  } else {
    GrowthConfig config;
    config.mincov = f.mincov;
    config.measure = measure;
    config.ordering_mode = !f.fo.global.empty()  ? OrderingMode::kGlobal
                           : !f.fo.local.empty() ? OrderingMode::kLocal
                                                 : OrderingMode::kNone;
    config.prefix_strict = f.prefix_strict;
    config.filtering = f.filter;
    config.threads = resolve_threads(f.threads);
    rules = induce_or(table, config, orderings);
  }
  rules.metadata.seed = f.seed;
  rules.metadata.train_fraction = f.train_fraction;

  write_json_file(to_json(rules), f.output);
  std::ofstream text(sibling(f.output, ".txt"));
  for (const auto& r : rules.rules) text << render(r, &table) << '\n';

  double prec = 0.0;
  double cov = 0.0;
  for (const auto& r : rules.rules) {
    prec += precision(r.stats);
    cov += r.stats.P == 0 ? 0.0 : coverage(r.stats);
  }
  const double count = static_cast<double>(std::max<std::size_t>(1, rules.rules.size()));
  out << json{{"rules", rules.rules.size()},
              {"training_rows", table.num_rows()},
              {"mean_precision", prec / count},
              {"mean_coverage", cov / count}}
             .dump()
      << '\n';
  return kOk;
}

// Rules document plus the table loaded under its training schema.
std::pair<RuleSet, DecisionTable> load_rules_and_data(
    const std::string& rules_path, const DataFlags& data) {
  const json doc = read_json_file(rules_path);
  DecisionTable table = load_data(data, schema_from_json(doc));
  RuleSet rules = ruleset_from_json(doc, table);
  return {std::move(rules), std::move(table)};
}

int classify(const ClassifyFlags& f, std::ostream&) {
  auto [rules, table] = load_rules_and_data(f.rules, f.data);
  const auto labels = predict_all(rules, table, resolve_threads(f.threads));
  std::ofstream file(f.output);
  if (!file) throw ConfigError("cannot write '" + f.output + "'");
  write_predictions(table.row_ids(), labels, file);
  return kOk;
}

// Inline instance "name=value,name=value"; unlisted attributes are missing.
Instance parse_inline_instance(const std::string& text,
                               const DecisionTable& table) {
  Instance x(table.num_attributes(), kMissing);
  for (const auto& pair : split_csv_line(text)) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      throw DataError("inline instance expects name=value pairs: " + pair);
    }
    const std::string name = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    const auto attr = table.attribute_index(name);
    if (!attr) throw DataError("inline instance names unknown attribute " + name);
    if (value.empty() || value == "?") continue;
    if (table.attribute(*attr).is_numeric()) {
      const auto v = parse_number(value);
      if (!v) throw DataError("non-numeric value for " + name + ": " + value);
      x[*attr] = *v;
    } else {
      const int code = table.attribute(*attr).code_of(value);
      if (code >= 0) x[*attr] = code;
    }
  }
  return x;
}

json explained_to_json(const ExplainedRule& e, const DecisionTable& table) {
  return {{"rule", to_json(e.rule)},
          {"text", render(e.rule, &table)},
          {"precision", e.precision},
          {"coverage", e.coverage},
          {"average_rank", e.average_rank ? json(*e.average_rank) : json()}};
}

int explain(const ExplainFlags& f, std::ostream& out) {
  GrowthConfig config;
  config.measure = parse_measure(f.measure);
  config.mincov = f.mincov;
  if (config.mincov < 1) throw ConfigError("--mincov must be at least 1");
  config.prefix_strict = f.prefix_strict;
  if (f.predicted.empty() && f.rules.empty()) {
    throw ConfigError("explain needs --predicted or --rules");
  }
  const OrderingSource orderings = load_orderings(f.fo);

  std::optional<RuleSet> rules;
  Schema schema;
  json rules_doc;
  if (!f.rules.empty()) {
    rules_doc = read_json_file(f.rules);
    schema = schema_from_json(rules_doc);
  }
  const DecisionTable table = load_data(f.data, schema);
  if (!f.rules.empty()) rules = ruleset_from_json(rules_doc, table);

  const bool is_inline = f.instance.find('=') != std::string::npos;
  Instance x;
  std::string key;
  if (is_inline) {
    x = parse_inline_instance(f.instance, table);
    key = f.instance_key;
  } else {
    const auto row = table.row_index(f.instance);
    if (!row) throw DataError("unknown row id '" + f.instance + "'");
    x = table.instance(*row);
    key = f.instance;
  }

  std::optional<FeatureOrdering> fo;
  if (!orderings.empty()) {
    if (orderings.has_local() && key.empty()) {
      throw ConfigError("--fo-local with an inline instance needs --instance-key");
    }
    fo = validate_ordering(orderings.for_instance(key), table);
    config.ordering_mode =
        orderings.has_local() ? OrderingMode::kLocal : OrderingMode::kGlobal;
  }

  const std::string predicted =
      f.predicted.empty() ? predict(*rules, x) : f.predicted;
  const Explanation e =
      explain_instance(x, predicted, table, config, fo, f.contradictory);

  json instance = json::object();
  for (std::size_t a = 0; a < table.num_attributes(); ++a) {
    instance[table.attribute(a).name] =
        is_missing(x[a]) ? json() : json(table.format_cell(a, x[a]));
  }
  json contradictory = json::array();
  for (const auto& c : e.contradictory) {
    contradictory.push_back(explained_to_json(c, table));
  }
  const json bundle{{"instance", instance},
                    {"instance_key", key},
                    {"predicted", e.predicted},
                    {"ordering", fo ? json(fo->features()) : json()},
                    {"confirmatory", explained_to_json(e.confirmatory, table)},
                    {"contradictory", contradictory}};
  if (!f.output.empty()) write_json_file(bundle, f.output);

  out << "confirmatory: " << render(e.confirmatory.rule, &table) << '\n';
  for (const auto& c : e.contradictory) {
    out << "contradictory: " << render(c.rule, &table) << '\n';
  }
  return kOk;
}

json split_metrics(const RuleSet& rules, const DecisionTable& part,
                   std::size_t threads) {
  const auto predicted = predict_all(rules, part, threads);
  std::vector<std::string> reference;
  for (std::size_t r = 0; r < part.num_rows(); ++r) {
    reference.push_back(part.target_label(r));
  }
  return {{"rows", part.num_rows()},
          {"kappa", cohen_kappa(reference, predicted)},
          {"balanced_accuracy", balanced_accuracy(reference, predicted)}};
}

int evaluate(const EvaluateFlags& f, std::ostream& out) {
  const json doc = read_json_file(f.rules);
  const Schema schema = schema_from_json(doc);
  DataFlags truth_flags = f.data;
  truth_flags.predictions.clear();
  const DecisionTable truth = load_data(truth_flags, schema);
  const DecisionTable table = load_data(f.data, schema);
  const RuleSet rules = ruleset_from_json(doc, table);
  const OrderingSource orderings = load_orderings(f.fo);
  const std::size_t threads = resolve_threads(f.threads);

  json report;
  report["rule_count"] = rules.rules.size();
  report["reference"] = f.data.predictions.empty() ? "target" : "predictions";
  std::optional<DecisionTable> train;
  if (rules.metadata.train_fraction < 1.0) {
    auto [tr, te] =
        split(table, rules.metadata.train_fraction, rules.metadata.seed);
    report["train"] = split_metrics(rules, tr, threads);
    report["test"] = te.num_rows() > 0 ? split_metrics(rules, te, threads)
                                       : json();
    train = std::move(tr);
  } else {
    report["all"] = split_metrics(rules, table, threads);
  }
  if (!f.data.predictions.empty()) {
    std::vector<std::string> y, m;
    for (std::size_t r = 0; r < table.num_rows(); ++r) {
      y.push_back(truth.target_label(r));
      m.push_back(table.target_label(r));
    }
    report["blackbox_balanced_accuracy"] = balanced_accuracy(y, m);
  }
  if (!orderings.empty()) {
    const DecisionTable& scope = train ? *train : table;
    report["consistency"] = to_json(consistency_report(rules, scope, orderings));
  }
  write_json_file(report, f.report);

  json summary;
  for (const char* key : {"all", "train", "test"}) {
    if (report.contains(key) && !report[key].is_null()) {
      summary[key] = report[key]["kappa"];
    }
  }
  out << json{{"kappa", summary}}.dump() << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Rule induction steered by black-box feature importance"};
  app.name("rulefuse");
  app.require_subcommand(1);

  InduceFlags induce_flags;
  auto* induce_cmd = app.add_subcommand("induce", "Induce a rule set");
  add_data_flags(induce_cmd, induce_flags.data, true);
  add_ordering_flags(induce_cmd, induce_flags.fo);
  induce_cmd->add_option("--mode", induce_flags.mode, "sc or or")
      ->capture_default_str();
  induce_cmd->add_option("--measure", induce_flags.measure, "precision or c2")
      ->capture_default_str();
  induce_cmd->add_option("--mincov", induce_flags.mincov)->capture_default_str();
  induce_cmd->add_flag("--filter", induce_flags.filter, "Filter the rule set");
  induce_cmd->add_flag("--prefix-strict", induce_flags.prefix_strict,
                       "Commit to the first ordering prefix with an "
                       "admissible condition");
  induce_cmd->add_option("--train-fraction", induce_flags.train_fraction,
                         "Induce on a stratified train split of this size")
      ->capture_default_str();
  induce_cmd->add_option("--seed", induce_flags.seed)->capture_default_str();
  induce_cmd->add_option("--threads", induce_flags.threads,
                         "Worker threads (0: all cores)")
      ->capture_default_str();
  induce_cmd->add_option("--output", induce_flags.output, "Rules JSON")
      ->required();

  ClassifyFlags classify_flags;
  auto* classify_cmd = app.add_subcommand("classify", "Predict with a rule set");
  add_data_flags(classify_cmd, classify_flags.data, false);
  classify_cmd->add_option("--rules", classify_flags.rules)->required();
  classify_cmd->add_option("--threads", classify_flags.threads);
  classify_cmd->add_option("--output", classify_flags.output,
                           "Predictions CSV (row_id,label)")
      ->required();

  ExplainFlags explain_flags;
  auto* explain_cmd = app.add_subcommand("explain", "Explain one instance");
  add_data_flags(explain_cmd, explain_flags.data, true);
  add_ordering_flags(explain_cmd, explain_flags.fo);
  explain_cmd->add_option("--instance", explain_flags.instance,
                          "Row id, or inline name=value,... pairs")
      ->required();
  explain_cmd->add_option("--instance-key", explain_flags.instance_key,
                          "Local-ordering key of an inline instance");
  explain_cmd->add_option("--predicted", explain_flags.predicted,
                          "Class to explain");
  explain_cmd->add_option("--rules", explain_flags.rules,
                          "Rule set used to predict the class");
  explain_cmd->add_flag("--contradictory", explain_flags.contradictory);
  explain_cmd->add_option("--measure", explain_flags.measure)
      ->capture_default_str();
  explain_cmd->add_option("--mincov", explain_flags.mincov)
      ->capture_default_str();
  explain_cmd->add_flag("--prefix-strict", explain_flags.prefix_strict);
  explain_cmd->add_option("--output", explain_flags.output, "Bundle JSON");

  EvaluateFlags evaluate_flags;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "Fidelity and consistency report");
  add_data_flags(evaluate_cmd, evaluate_flags.data, true);
  add_ordering_flags(evaluate_cmd, evaluate_flags.fo);
  evaluate_cmd->add_option("--rules", evaluate_flags.rules)->required();
  evaluate_cmd->add_option("--threads", evaluate_flags.threads);
  evaluate_cmd->add_option("--report", evaluate_flags.report)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "rulefuse: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (induce_cmd->parsed()) return induce(induce_flags, out);
    if (classify_cmd->parsed()) return classify(classify_flags, out);
    if (explain_cmd->parsed()) return explain(explain_flags, out);
    if (evaluate_cmd->parsed()) return evaluate(evaluate_flags, out);
  } catch (const ConfigError& e) {
    err << "rulefuse: " << e.what() << '\n';
    return kConfigError;
  } catch (const DataError& e) {
    err << "rulefuse: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "rulefuse: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace rulefuse::cli
