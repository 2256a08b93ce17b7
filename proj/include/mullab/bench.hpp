#ifndef MULLAB_BENCH_HPP
#define MULLAB_BENCH_HPP

/*
 Benchmark harness: JSON run configuration, experiment execution and report
 rendering (markdown, csv, json).

 Configuration document (every key optional unless noted):

   {
     "dataset": "scene.arff",                 required unless "train"/"test" are given
     "train": "a.arff", "test": "b.arff",     pre-split file pair
     "labels": "scene.xml",                   label list file, or
     "trailing_labels": 6,                    the last q attributes are labels
     "split": "1588:819" | 0.67,              counts or train ratio
     "seed": 1, "threshold": 0.5,
     "format": "md" | "csv" | "json", "workers": 1, "out": "report.csv",
     "experiments": [
       {"name": "RAKEL/k-NN", "transform": "rakel" | {"type": "rakel", "m": 12, "k": 3},
        "learner": "k-NN" | {"type": "knn", "k": 5} | {"preset": "J48", "min_leaf": 3}},
       {"name": "EN-MLC", "ensemble": {"members": 10, "rule": "majority_vote", ...}}
     ],
     "grid": {"transforms": ["rakel", "br"], "learners": ["NB", "k-NN"]}
   }

 Seeds left unspecified inside experiments (RAKEL, trees, ensembles) inherit
 the run seed. Reports contain one row per experiment plus an AVERAGE row.
*/

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "arff.hpp"
#include "ensemble.hpp"
#include "learner.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "transforms.hpp"

namespace mullab {

using nlohmann::json;

enum class ReportFormat { markdown, csv, json };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "md" || s == "markdown") return ReportFormat::markdown;
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError("unknown output format '" + s + "'");
}

struct Experiment {
  std::string name;
  TransformSpec transform = BrSpec{};
  LearnerSpec learner = NaiveBayesParams{};
  std::optional<EnsembleSpec> ensemble;
};

struct RunConfig {
  std::string dataset;
  std::string train_path;
  std::string test_path;
  std::string label_file;
  std::size_t trailing_labels = 0;
  std::optional<std::variant<SplitCounts, double>> split;
  std::vector<Experiment> experiments;
  double threshold = 0.5;
  std::uint64_t seed = 1;
  ReportFormat format = ReportFormat::markdown;
  std::size_t workers = 1;
  std::string out;
};

// ---------------------------------------------------------------------------
// Spec <-> JSON

namespace bench_detail {

inline const char* rule_name(CombinationRule r) {
  switch (r) {
    case CombinationRule::mean: return "mean";
    case CombinationRule::weighted_mean: return "weighted_mean";
    case CombinationRule::max: return "max";
    case CombinationRule::min: return "min";
    case CombinationRule::majority_vote: return "majority_vote";
    case CombinationRule::weighted_majority_vote: return "weighted_majority_vote";
  }
  return "?";
}

inline CombinationRule parse_rule(const std::string& s) {
  for (auto r : {CombinationRule::mean, CombinationRule::weighted_mean, CombinationRule::max,
                 CombinationRule::min, CombinationRule::majority_vote,
                 CombinationRule::weighted_majority_vote})
    if (s == rule_name(r)) return r;
  throw ConfigError("unknown combination rule '" + s + "'");
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace bench_detail

inline json learner_to_json(const LearnerSpec& spec) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, KnnParams>) {
          return {{"type", "knn"}, {"k", p.k},
                  {"distance", p.distance == KnnDistance::euclidean ? "euclidean" : "manhattan"},
                  {"standardize", p.standardize}};
        } else if constexpr (std::is_same_v<P, NaiveBayesParams>) {
          return {{"type", "nb"}, {"variance_floor", p.variance_floor}};
        } else {
          json subset = p.random_subset_size == kSqrtAttributes ? json("sqrt") : json(p.random_subset_size);
          return {{"type", "tree"},
                  {"criterion", p.criterion == SplitCriterion::gain_ratio ? "gain_ratio" : "info_gain"},
                  {"random_subset_size", subset},
                  {"rep_pruning", p.rep_pruning},
                  {"prune_fraction", p.prune_fraction},
                  {"min_leaf", p.min_leaf},
                  {"max_depth", p.max_depth},
                  {"seed", p.seed}};
        }
      },
      spec);
}

// A preset name, or an object with "type" or "preset" plus field overrides.
inline LearnerSpec learner_from_json(const json& j, std::uint64_t default_seed) {
  using namespace bench_detail;
  LearnerSpec spec;
  if (j.is_string()) {
    spec = learner_preset(j.get<std::string>());
    if (auto* t = std::get_if<TreeParams>(&spec)) t->seed = default_seed;
    return spec;
  }
  if (!j.is_object()) throw ConfigError("learner must be a preset name or an object");
  if (j.contains("preset")) {
    spec = learner_preset(j.at("preset").get<std::string>());
  } else {
    const auto type = get_or<std::string>(j, "type", "");
    if (type == "knn") spec = KnnParams{};
    else if (type == "nb") spec = NaiveBayesParams{};
    else if (type == "tree") spec = TreeParams{};
    else throw ConfigError("unknown learner type '" + type + "'");
  }
  if (auto* k = std::get_if<KnnParams>(&spec)) {
    reject_unknown(j, {"type", "preset", "k", "distance", "standardize"}, "knn learner");
    k->k = get_or<std::size_t>(j, "k", k->k);
    const auto dist = get_or<std::string>(j, "distance", k->distance == KnnDistance::euclidean ? "euclidean" : "manhattan");
    if (dist != "euclidean" && dist != "manhattan") throw ConfigError("unknown distance '" + dist + "'");
    k->distance = dist == "euclidean" ? KnnDistance::euclidean : KnnDistance::manhattan;
    k->standardize = get_or<bool>(j, "standardize", k->standardize);
  } else if (auto* nb = std::get_if<NaiveBayesParams>(&spec)) {
    reject_unknown(j, {"type", "preset", "variance_floor"}, "nb learner");
    nb->variance_floor = get_or<double>(j, "variance_floor", nb->variance_floor);
  } else {
    auto& t = std::get<TreeParams>(spec);
    reject_unknown(j, {"type", "preset", "criterion", "random_subset_size", "rep_pruning", "prune_fraction",
                       "min_leaf", "max_depth", "seed"},
                   "tree learner");
    const auto crit = get_or<std::string>(j, "criterion", t.criterion == SplitCriterion::gain_ratio ? "gain_ratio" : "info_gain");
    if (crit != "gain_ratio" && crit != "info_gain") throw ConfigError("unknown criterion '" + crit + "'");
    t.criterion = crit == "gain_ratio" ? SplitCriterion::gain_ratio : SplitCriterion::info_gain;
    if (j.contains("random_subset_size")) {
      const auto& r = j.at("random_subset_size");
      t.random_subset_size = r.is_string() && r.get<std::string>() == "sqrt" ? kSqrtAttributes : r.get<std::size_t>();
    }
    t.rep_pruning = get_or<bool>(j, "rep_pruning", t.rep_pruning);
    t.prune_fraction = get_or<double>(j, "prune_fraction", t.prune_fraction);
    t.min_leaf = get_or<std::size_t>(j, "min_leaf", t.min_leaf);
    t.max_depth = get_or<std::size_t>(j, "max_depth", t.max_depth);
    t.seed = get_or<std::uint64_t>(j, "seed", default_seed);
  }
  return spec;
}

inline json transform_to_json(const TransformSpec& t) {
  if (const auto* r = std::get_if<RakelParams>(&t)) return {{"type", "rakel"}, {"m", r->m}, {"k", r->k}, {"seed", r->seed}};
  if (const auto* p = std::get_if<PruneSpec>(&t)) return {{"type", "ps"}, {"p", p->p}, {"b", p->b}};
  if (const auto* c = std::get_if<ConstantSpec>(&t)) return {{"type", "constant"}, {"scores", c->scores}};
  return {{"type", transform_name(t)}};
}

inline TransformSpec transform_from_json(const json& j, std::uint64_t default_seed) {
  using namespace bench_detail;
  const json obj = j.is_string() ? json{{"type", j.get<std::string>()}} : j;
  if (!obj.is_object()) throw ConfigError("transform must be a name or an object");
  const auto type = get_or<std::string>(obj, "type", "");
  if (type == "br") {
    reject_unknown(obj, {"type"}, "br transform");
    return BrSpec{};
  }
  if (type == "lp") {
    reject_unknown(obj, {"type"}, "lp transform");
    return LpSpec{};
  }
  if (type == "rakel") {
    reject_unknown(obj, {"type", "m", "k", "seed"}, "rakel transform");
    return RakelParams{get_or<std::size_t>(obj, "m", 0), get_or<std::size_t>(obj, "k", 0),
                       get_or<std::uint64_t>(obj, "seed", default_seed)};
  }
  if (type == "ps") {
    reject_unknown(obj, {"type", "p", "b"}, "ps transform");
    return PruneSpec{get_or<std::size_t>(obj, "p", 2), get_or<std::size_t>(obj, "b", 2)};
  }
  if (type == "constant") {
    reject_unknown(obj, {"type", "scores"}, "constant transform");
    return ConstantSpec{get_or<std::vector<double>>(obj, "scores", {})};
  }
  throw ConfigError("unknown transform '" + type + "'");
}

inline json ensemble_to_json(const EnsembleSpec& e) {
  json members = json::array();
  for (const auto& m : e.members)
    members.push_back({{"transform", transform_to_json(m.transform)}, {"learner", learner_to_json(m.learner)}});
  return {{"members", members},
          {"sample_ratio", e.sample_ratio},
          {"with_replacement", e.with_replacement},
          {"rule", bench_detail::rule_name(e.rule)},
          {"weights", e.weights},
          {"threshold", e.threshold},
          {"seed", e.seed}};
}

// "members" is either a count (round-robin over "learners", default all five
// presets, each with "transform", default ps p=2 b=2) or an explicit array.
inline EnsembleSpec ensemble_from_json(const json& j, std::uint64_t default_seed, double default_threshold) {
  using namespace bench_detail;
  if (!j.is_object()) throw ConfigError("ensemble must be an object");
  reject_unknown(j, {"members", "learners", "transform", "sample_ratio", "with_replacement", "rule", "weights",
                     "threshold", "seed"},
                 "ensemble");
  EnsembleSpec e;
  e.seed = get_or<std::uint64_t>(j, "seed", default_seed);
  e.threshold = get_or<double>(j, "threshold", default_threshold);
  e.sample_ratio = get_or<double>(j, "sample_ratio", e.sample_ratio);
  e.with_replacement = get_or<bool>(j, "with_replacement", e.with_replacement);
  e.rule = parse_rule(get_or<std::string>(j, "rule", rule_name(e.rule)));
  e.weights = get_or<std::vector<double>>(j, "weights", {});
  const json members = j.contains("members") ? j.at("members") : json(10);
  if (members.is_number_unsigned() || members.is_number_integer()) {
    const auto q = members.get<long long>();
    if (q < 1) throw ConfigError("ensemble needs at least one member");
    const TransformSpec transform = j.contains("transform") ? transform_from_json(j.at("transform"), e.seed) : TransformSpec{PruneSpec{2, 2}};
    std::vector<json> learners;
    if (j.contains("learners"))
      for (const auto& l : j.at("learners")) learners.push_back(l);
    else
      for (const auto& n : learner_preset_names()) learners.emplace_back(n);
    if (learners.empty()) throw ConfigError("ensemble learner list is empty");
    for (long long k = 0; k < q; ++k) {
      const auto& l = learners[static_cast<std::size_t>(k) % learners.size()];
      e.members.push_back({transform, learner_from_json(l, e.seed), l.is_string() ? l.get<std::string>() : ""});
    }
  } else if (members.is_array()) {
    if (j.contains("learners") || j.contains("transform"))
      throw ConfigError("'learners'/'transform' only apply when 'members' is a count");
    for (const auto& m : members) {
      reject_unknown(m, {"transform", "learner"}, "ensemble member");
      const json l = m.contains("learner") ? m.at("learner") : json("NB");
      e.members.push_back({m.contains("transform") ? transform_from_json(m.at("transform"), e.seed) : TransformSpec{PruneSpec{}},
                           learner_from_json(l, e.seed), l.is_string() ? l.get<std::string>() : ""});
    }
    if (e.members.empty()) throw ConfigError("ensemble needs at least one member");
  } else {
    throw ConfigError("ensemble 'members' must be a count or an array");
  }
  if (needs_weights(e.rule) && e.weights.size() != e.members.size())
    throw ConfigError("rule '" + std::string(rule_name(e.rule)) + "' needs one weight per member");
  return e;
}

inline std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

inline Experiment experiment_from_json(const json& j, std::uint64_t seed, double threshold) {
  using namespace bench_detail;
  if (!j.is_object()) throw ConfigError("experiment must be an object");
  reject_unknown(j, {"name", "transform", "learner", "ensemble"}, "experiment");
  Experiment e;
  if (j.contains("ensemble")) {
    if (j.contains("transform") || j.contains("learner"))
      throw ConfigError("an ensemble experiment takes no 'transform'/'learner'");
    e.ensemble = ensemble_from_json(j.at("ensemble"), seed, threshold);
    e.name = get_or<std::string>(j, "name", "EN-MLC");
    return e;
  }
  const json t = j.contains("transform") ? j.at("transform") : json("br");
  const json l = j.contains("learner") ? j.at("learner") : json("NB");
  e.transform = transform_from_json(t, seed);
  e.learner = learner_from_json(l, seed);
  std::string default_name = upper(transform_name(e.transform));
  if (!std::holds_alternative<ConstantSpec>(e.transform))
    default_name += "/" + (l.is_string() ? l.get<std::string>() : l.value("preset", l.value("type", "custom")));
  e.name = get_or<std::string>(j, "name", default_name);
  return e;
}

inline json experiment_to_json(const Experiment& e) {
  json j{{"name", e.name}};
  if (e.ensemble) {
    j["ensemble"] = ensemble_to_json(*e.ensemble);
  } else {
    j["transform"] = transform_to_json(e.transform);
    j["learner"] = learner_to_json(e.learner);
  }
  return j;
}

inline std::variant<SplitCounts, double> parse_split(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (const auto colon = s.find(':'); colon != std::string::npos) {
      std::size_t a = 0, b = 0;
      const auto lhs = s.substr(0, colon), rhs = s.substr(colon + 1);
      const auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), a);
      const auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), b);
      if (lhs.empty() || rhs.empty() || r1.ec != std::errc() || r1.ptr != lhs.data() + lhs.size() ||
          r2.ec != std::errc() || r2.ptr != rhs.data() + rhs.size())
        throw ConfigError("split '" + s + "' is not <ntrain>:<ntest>");
      return SplitCounts{a, b};
    }
    double r = 0;
    if (!arff_detail::parse_double(s, r)) throw ConfigError("split '" + s + "' is neither counts nor a ratio");
    return r;
  }
  throw ConfigError("split must be \"<ntrain>:<ntest>\" or a ratio");
}

inline RunConfig run_config_from_json(const json& j) {
  using namespace bench_detail;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"dataset", "train", "test", "labels", "trailing_labels", "split", "seed", "threshold", "format",
                     "workers", "out", "experiments", "grid"},
                 "config");
  RunConfig c;
  c.dataset = get_or<std::string>(j, "dataset", "");
  c.train_path = get_or<std::string>(j, "train", "");
  c.test_path = get_or<std::string>(j, "test", "");
  c.label_file = get_or<std::string>(j, "labels", "");
  c.trailing_labels = get_or<std::size_t>(j, "trailing_labels", 0);
  if (j.contains("split")) c.split = parse_split(j.at("split"));
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.threshold = get_or<double>(j, "threshold", c.threshold);
  c.format = parse_format(get_or<std::string>(j, "format", "md"));
  c.workers = get_or<std::size_t>(j, "workers", c.workers);
  c.out = get_or<std::string>(j, "out", "");
  return c;
}

// Experiments are parsed after flag overrides so that inherited seeds and
// thresholds see the final run values.
inline std::vector<Experiment> experiments_from_json(const json& j, std::uint64_t seed, double threshold) {
  std::vector<Experiment> out;
  if (j.contains("experiments"))
    for (const auto& e : j.at("experiments")) out.push_back(experiment_from_json(e, seed, threshold));
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    bench_detail::reject_unknown(g, {"transforms", "learners"}, "grid");
    for (const auto& t : g.at("transforms"))
      for (const auto& l : g.at("learners")) out.push_back(experiment_from_json({{"transform", t}, {"learner", l}}, seed, threshold));
  }
  return out;
}

// Full configuration from one JSON document.
inline RunConfig run_config(const json& j) {
  RunConfig c = run_config_from_json(j);
  c.experiments = experiments_from_json(j, c.seed, c.threshold);
  return c;
}

// FNV-1a over the canonical JSON of every field that can change a metric.
inline std::string config_hash(const RunConfig& c) {
  json canon{{"dataset", c.dataset}, {"train", c.train_path}, {"test", c.test_path}, {"labels", c.label_file},
             {"trailing_labels", c.trailing_labels}, {"seed", c.seed}, {"threshold", c.threshold}};
  if (c.split) {
    if (const auto* counts = std::get_if<SplitCounts>(&*c.split))
      canon["split"] = std::to_string(counts->n_train) + ":" + std::to_string(counts->n_test);
    else
      canon["split"] = std::get<double>(*c.split);
  }
  json exps = json::array();
  for (const auto& e : c.experiments) exps.push_back(experiment_to_json(e));
  canon["experiments"] = exps;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Execution

struct LoadedData {
  MLDataset train;
  MLDataset test;
};

inline MLDataset load_dataset(const std::string& path, const RunConfig& c) {
  const RawTable raw = read_arff_file(path);
  if (!c.label_file.empty()) return bind_labels(raw, LabelSpec::names(read_label_file(c.label_file)));
  if (c.trailing_labels > 0) return bind_labels(raw, LabelSpec::trailing(c.trailing_labels));
  throw ConfigError("no label specification: give a label file or a trailing label count");
}

// Evaluation-set only (no training part) when no split and no pair is given.
inline LoadedData load_data(const RunConfig& c, bool allow_unsplit = false) {
  if (!c.train_path.empty() || !c.test_path.empty()) {
    if (c.train_path.empty() || c.test_path.empty()) throw ConfigError("a pre-split run needs both train and test files");
    LoadedData d{load_dataset(c.train_path, c), load_dataset(c.test_path, c)};
    if (d.train.schema() != d.test.schema()) throw DataError("train and test files have different schemas");
    return d;
  }
  if (c.dataset.empty()) throw ConfigError("no dataset given");
  MLDataset all = load_dataset(c.dataset, c);
  if (all.empty()) throw DataError("dataset '" + c.dataset + "' has no rows");
  if (!c.split) {
    if (!allow_unsplit) throw ConfigError("no split given: use a split or a train/test pair");
    return {MLDataset(all.schema()), std::move(all)};
  }
  SplitSpec spec{*c.split, c.seed};
  auto [train, test] = split_dataset(all, spec);
  return {std::move(train), std::move(test)};
}

inline ModelPtr train_experiment(const Experiment& e, const MLDataset& train, std::size_t workers = 1) {
  if (train.empty()) throw DataError("empty training set");
  if (e.ensemble) return enmlc_fit(train, *e.ensemble, workers);
  return fit_transform(e.transform, e.learner, train, workers);
}

struct ReportRow {
  std::string experiment;
  bool ok = true;
  std::string error;
  EvaluationReport metrics;
  std::size_t uncovered_labels = 0;
};

struct BenchReport {
  std::vector<ReportRow> rows;
  std::optional<EvaluationReport> average;  // over successful rows
  std::uint64_t seed = 0;
  std::string config_hash;
  double wall_seconds = 0.0;
  std::size_t workers = 1;

  bool all_ok() const {
    for (const auto& r : rows)
      if (!r.ok) return false;
    return true;
  }
};

inline EvaluationReport average_of(const std::vector<ReportRow>& rows) {
  EvaluationReport avg;
  double n = 0;
  for (const auto& r : rows) {
    if (!r.ok) continue;
    avg.accuracy += r.metrics.accuracy;
    avg.hamming_loss += r.metrics.hamming_loss;
    avg.one_error += r.metrics.one_error;
    avg.ranking_loss += r.metrics.ranking_loss;
    avg.avg_precision += r.metrics.avg_precision;
    avg.n_evaluated += r.metrics.n_evaluated;
    avg.n_skipped_ranking += r.metrics.n_skipped_ranking;
    n += 1;
  }
  if (n > 0) {
    avg.accuracy /= n;
    avg.hamming_loss /= n;
    avg.one_error /= n;
    avg.ranking_loss /= n;
    avg.avg_precision /= n;
  }
  return avg;
}

inline BenchReport run_benchmark(const RunConfig& c, const LoadedData& data) {
  if (c.experiments.empty()) throw ConfigError("config has no experiments");
  const auto start = std::chrono::steady_clock::now();
  BenchReport rep;
  rep.seed = c.seed;
  rep.config_hash = config_hash(c);
  rep.workers = c.workers;
  rep.rows.resize(c.experiments.size());
  const std::size_t inner = c.experiments.size() == 1 ? c.workers : 1;
  parallel_for(c.experiments.size(), c.workers, [&](std::size_t i) {
    ReportRow& row = rep.rows[i];
    row.experiment = c.experiments[i].name;
    try {
      const auto model = train_experiment(c.experiments[i], data.train, inner);
      row.metrics = evaluate(*model, data.test, c.threshold);
      row.uncovered_labels = model->uncovered_labels().size();
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  bool any_ok = false;
  for (const auto& r : rep.rows) any_ok = any_ok || r.ok;
  if (any_ok) rep.average = average_of(rep.rows);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Rendering

namespace bench_detail {

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline json metrics_json(const EvaluationReport& m) {
  return {{"accuracy", m.accuracy},       {"hamming_loss", m.hamming_loss},
          {"one_error", m.one_error},     {"ranking_loss", m.ranking_loss},
          {"avg_precision", m.avg_precision}, {"n_evaluated", m.n_evaluated},
          {"n_skipped_ranking", m.n_skipped_ranking}};
}

}  // namespace bench_detail

inline std::string render_csv(const BenchReport& rep) {
  using bench_detail::fixed;
  std::string out = "experiment,accuracy,hamming_loss,one_error,ranking_loss,avg_precision\n";
  auto line = [&](const std::string& name, const EvaluationReport* m) {
    out += bench_detail::csv_field(name);
    const double vals[] = {m ? m->accuracy : 0, m ? m->hamming_loss : 0, m ? m->one_error : 0,
                           m ? m->ranking_loss : 0, m ? m->avg_precision : 0};
    for (double v : vals) out += "," + (m ? fixed(v, 6) : std::string("NA"));
    out += "\n";
  };
  for (const auto& r : rep.rows) line(r.experiment, r.ok ? &r.metrics : nullptr);
  if (rep.average) line("AVERAGE", &*rep.average);
  return out;
}

inline std::string render_markdown(const BenchReport& rep) {
  using bench_detail::fixed;
  std::string out = "seed: " + std::to_string(rep.seed) + ", config: " + rep.config_hash + "\n\n| Metric |";
  for (const auto& r : rep.rows) out += " " + r.experiment + " |";
  if (rep.average) out += " AVERAGE |";
  out += "\n|---|";
  for (std::size_t i = 0; i < rep.rows.size() + (rep.average ? 1 : 0); ++i) out += "---|";
  out += "\n";
  struct MetricRow {
    const char* label;
    double EvaluationReport::*field;
  };
  static const MetricRow metric_rows[] = {{"Acc ↑", &EvaluationReport::accuracy},
                                          {"HL ↓", &EvaluationReport::hamming_loss},
                                          {"1-Err ↓", &EvaluationReport::one_error},
                                          {"RL ↓", &EvaluationReport::ranking_loss},
                                          {"AvPre ↑", &EvaluationReport::avg_precision}};
  for (const auto& m : metric_rows) {
    out += std::string("| ") + m.label + " |";
    for (const auto& r : rep.rows) out += " " + (r.ok ? fixed(r.metrics.*m.field, 3) : std::string("failed")) + " |";
    if (rep.average) out += " " + fixed((*rep.average).*m.field, 3) + " |";
    out += "\n";
  }
  for (const auto& r : rep.rows) {
    if (!r.ok) out += "\nfailed: " + r.experiment + ": " + r.error;
    else if (r.uncovered_labels) out += "\nnote: " + r.experiment + " leaves " + std::to_string(r.uncovered_labels) + " label(s) uncovered (scored 0.5)";
  }
  if (out.back() != '\n') out += "\n";
  return out;
}

inline std::string render_json(const BenchReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) {
    json row{{"experiment", r.experiment}, {"status", r.ok ? "ok" : "failed"}};
    if (r.ok) {
      row.update(bench_detail::metrics_json(r.metrics));
      row["uncovered_labels"] = r.uncovered_labels;
    } else {
      row["error"] = r.error;
    }
    rows.push_back(row);
  }
  json doc{{"meta", {{"seed", rep.seed}, {"config_hash", rep.config_hash}, {"wall_time_s", rep.wall_seconds},
                     {"workers", rep.workers}}},
           {"rows", rows}};
  doc["average"] = rep.average ? bench_detail::metrics_json(*rep.average) : json(nullptr);
  return doc.dump(2) + "\n";
}

inline std::string render(const BenchReport& rep, ReportFormat f) {
  switch (f) {
    case ReportFormat::csv: return render_csv(rep);
    case ReportFormat::json: return render_json(rep);
    case ReportFormat::markdown: break;
  }
  return render_markdown(rep);
}

}  // namespace mullab

#endif  // MULLAB_BENCH_HPP
