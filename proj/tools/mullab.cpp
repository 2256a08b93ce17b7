// mullab: dataset inspection, single evaluations and benchmark grids for
// multi-label classifiers.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 experiment failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mullab/mullab.hpp"

namespace {

using namespace mullab;

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kExperiment = 3 };

struct CommonOptions {
  std::vector<std::string> datasets;
  std::string labels;
  std::size_t trailing_labels = 0;
  std::string split;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string format;
  std::optional<double> threshold;
  std::optional<std::size_t> workers;
  std::string out;
};

void add_data_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--dataset", o.datasets, "ARFF file; give two for a train/test pair")->expected(1, 2);
  cmd->add_option("--labels", o.labels, "label names file (one per line, or Mulan XML)");
  cmd->add_option("--trailing-labels", o.trailing_labels, "treat the last q attributes as labels");
}

void add_run_options(CLI::App* cmd, CommonOptions& o) {
  add_data_options(cmd, o);
  cmd->add_option("--split", o.split, "train/test split: <ntrain>:<ntest> or a train ratio");
  cmd->add_option("--seed", o.seed, "run seed (default: config, then $MULLAB_SEED, then 1)");
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--format", o.format, "md | csv | json");
  cmd->add_option("--threshold", o.threshold, "bipartition threshold");
  cmd->add_option("--workers", o.workers, "worker threads");
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("MULLAB_SEED");
  if (!s || !*s) return fallback;
  std::uint64_t v = 0;
  const std::string_view sv(s);
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size()) throw ConfigError("MULLAB_SEED is not an integer");
  return v;
}

// Config file first, then flags on top. Experiments are resolved last.
RunConfig build_config(const CommonOptions& o, json& doc) {
  doc = o.config.empty() ? json::object() : read_json_file(o.config);
  if (!doc.contains("seed")) doc["seed"] = env_seed(1);
  RunConfig c = run_config_from_json(doc);
  if (o.datasets.size() == 1) {
    c.dataset = o.datasets[0];
    c.train_path.clear();
    c.test_path.clear();
  } else if (o.datasets.size() == 2) {
    c.dataset.clear();
    c.train_path = o.datasets[0];
    c.test_path = o.datasets[1];
  }
  if (!o.labels.empty()) {
    c.label_file = o.labels;
    c.trailing_labels = 0;
  }
  if (o.trailing_labels > 0) {
    c.trailing_labels = o.trailing_labels;
    c.label_file.clear();
  }
  if (!o.split.empty()) {
    json split = o.split;
    if (o.split.find(':') == std::string::npos) {
      double r = 0;
      if (!arff_detail::parse_double(o.split, r)) throw ConfigError("split '" + o.split + "' is neither counts nor a ratio");
      split = r;
    }
    c.split = parse_split(split);
  }
  if (o.seed) c.seed = *o.seed;
  if (o.threshold) c.threshold = *o.threshold;
  if (!o.format.empty()) c.format = parse_format(o.format);
  if (o.workers) c.workers = *o.workers;
  if (c.workers == 0) throw ConfigError("workers must be >= 1");
  if (!o.out.empty()) c.out = o.out;
  c.experiments = experiments_from_json(doc, c.seed, c.threshold);
  return c;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + out + "'");
  f << text;
}

int cmd_info(const CommonOptions& o) {
  if (o.datasets.empty()) throw ConfigError("info needs --dataset");
  RunConfig c;
  c.label_file = o.labels;
  c.trailing_labels = o.trailing_labels;
  for (const auto& path : o.datasets) {
    const MLDataset d = load_dataset(path, c);
    if (d.empty()) throw DataError("'" + path + "' has no data rows");
    const auto st = dataset_stats(d);
    std::printf("%s: instances=%zu labels=%zu features=%zu lcard=%.4f lden=%.4f distinct_labelsets=%zu "
                "observed_labels=%zu\n",
                path.c_str(), st.n_instances, st.n_labels, d.schema().num_attributes(), st.lcard, st.lden,
                st.distinct_labelsets, st.observed_labels);
  }
  return kOk;
}

std::vector<std::vector<double>> read_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (arff_detail::trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      double v = 0;
      if (!arff_detail::parse_double(arff_detail::trim(cell), v) || !(v >= 0.0 && v <= 1.0))
        throw DataError(path + ": line " + std::to_string(n) + ": invalid score '" + cell + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_evaluate(const CommonOptions& o, const std::string& transform, const std::string& learner,
                 const std::string& predictions) {
  json doc;
  RunConfig c = build_config(o, doc);
  BenchReport rep;
  rep.seed = c.seed;
  rep.workers = c.workers;
  if (!predictions.empty()) {
    const LoadedData data = load_data(c, /*allow_unsplit=*/true);
    const auto scores = read_predictions(predictions);
    if (scores.size() != data.test.size())
      throw DataError("predictions have " + std::to_string(scores.size()) + " rows, evaluation set has " +
                      std::to_string(data.test.size()));
    rep.config_hash = config_hash(c);
    rep.rows.push_back({"predictions", true, "", evaluate_scores(data.test.labels(), scores, c.threshold), 0});
    emit(render(rep, c.format), c.out);
    return kOk;
  }
  if (!transform.empty() || !learner.empty()) {
    json e = json::object();
    if (!transform.empty()) e["transform"] = json::parse(transform[0] == '{' ? transform : "\"" + transform + "\"");
    if (!learner.empty()) e["learner"] = json::parse(learner[0] == '{' ? learner : "\"" + learner + "\"");
    c.experiments = {experiment_from_json(e, c.seed, c.threshold)};
  }
  if (c.experiments.size() != 1)
    throw ConfigError("evaluate takes exactly one experiment (use --transform/--learner or a one-experiment config)");
  const LoadedData data = load_data(c);
  const BenchReport full = run_benchmark(c, data);
  rep.config_hash = full.config_hash;
  rep.wall_seconds = full.wall_seconds;
  rep.rows = full.rows;
  emit(render(rep, c.format), c.out);
  if (!rep.all_ok()) {
    std::cerr << "mullab: experiment '" << rep.rows[0].experiment << "' failed: " << rep.rows[0].error << "\n";
    return kExperiment;
  }
  return kOk;
}

int cmd_benchmark(const CommonOptions& o) {
  json doc;
  RunConfig c = build_config(o, doc);
  const LoadedData data = load_data(c);
  const BenchReport rep = run_benchmark(c, data);
  emit(render(rep, c.format), c.out);
  for (const auto& r : rep.rows)
    if (!r.ok) std::cerr << "mullab: experiment '" << r.experiment << "' failed: " << r.error << "\n";
  return rep.all_ok() ? kOk : kExperiment;
}

int cmd_synth(const SyntheticSpec& spec, const std::string& out) {
  const MLDataset d = make_synthetic(spec);
  RawTable t;
  t.relation_name = "synthetic";
  t.attributes = d.schema().attributes;
  for (const auto& name : d.schema().label_names) t.attributes.push_back(Attribute::nominal(name, {"0", "1"}));
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto row = d.features(i);
    for (std::size_t j = 0; j < d.num_labels(); ++j) row.push_back(AttributeValue::nominal(d.labels(i).test(j) ? 1 : 0));
    t.rows.push_back(std::move(row));
  }
  emit(write_arff(t), out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-label classification toolkit and benchmark harness"};
  app.require_subcommand(1);

  CommonOptions info_opts, eval_opts, bench_opts;
  auto* info = app.add_subcommand("info", "print dataset statistics");
  add_data_options(info, info_opts);

  auto* eval = app.add_subcommand("evaluate", "train and evaluate one model, or score a predictions file");
  add_run_options(eval, eval_opts);
  std::string transform, learner, predictions;
  eval->add_option("--transform", transform, "br | lp | rakel | ps | constant, or a JSON object");
  eval->add_option("--learner", learner, "learner preset (NB, k-NN, RANDOM-T, REPTREE, J48) or a JSON object");
  eval->add_option("--predictions", predictions, "CSV of per-row label scores to evaluate instead of training");

  auto* bench = app.add_subcommand("benchmark", "run every experiment of a configuration");
  add_run_options(bench, bench_opts);

  SyntheticSpec synth_spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "write a synthetic correlated multi-label ARFF");
  synth->add_option("--rows", synth_spec.n_rows);
  synth->add_option("--labels", synth_spec.n_labels);
  synth->add_option("--features", synth_spec.n_features);
  synth->add_option("--seed", synth_spec.seed);
  synth->add_option("--out", synth_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*info) return cmd_info(info_opts);
    if (*eval) return cmd_evaluate(eval_opts, transform, learner, predictions);
    if (*bench) return cmd_benchmark(bench_opts);
    if (*synth) return cmd_synth(synth_spec, synth_out);
  } catch (const ConfigError& e) {
    std::cerr << "mullab: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "mullab: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "mullab: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
