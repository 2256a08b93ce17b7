#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "test_util.hpp"

using namespace mullab;
namespace fs = std::filesystem;

namespace {

LoadedData synthetic_split(std::uint64_t seed) {
  SyntheticSpec s;
  s.n_rows = 120;
  s.seed = seed;
  auto [train, test] = split_dataset(make_synthetic(s), SplitSpec::counts(80, 40, seed));
  return {std::move(train), std::move(test)};
}

RunConfig grid_config(std::size_t workers) {
  const json doc = {{"seed", 5},
                    {"workers", workers},
                    {"grid", {{"transforms", {"br", "lp", "rakel", "ps"}}, {"learners", {"NB", "k-NN", "RANDOM-T", "REPTREE", "J48"}}}},
                    {"experiments", {{{"ensemble", {{"members", 5}}}}}}};
  return run_config(doc);
}

std::string tmp_path(const std::string& name) { return (fs::path(::testing::TempDir()) / name).string(); }

struct RunResult {
  int code = 0;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const auto out = tmp_path("cli_stdout.txt");
  const std::string cmd = std::string(MULLAB_CLI) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = test::read_file(out);
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

}  // namespace

TEST(Bench, CsvIdenticalAcrossWorkerCounts) {
  const auto data = synthetic_split(3);
  const auto a = render_csv(run_benchmark(grid_config(1), data));
  const auto b = render_csv(run_benchmark(grid_config(8), data));
  const auto c = render_csv(run_benchmark(grid_config(1), data));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.substr(0, a.find('\n')), "experiment,accuracy,hamming_loss,one_error,ranking_loss,avg_precision");
}

TEST(Bench, AverageRowIsMeanOfRows) {
  const auto rep = run_benchmark(grid_config(2), synthetic_split(4));
  ASSERT_EQ(rep.rows.size(), 21u);
  ASSERT_TRUE(rep.average.has_value());
  double acc = 0, hl = 0;
  for (const auto& r : rep.rows) {
    ASSERT_TRUE(r.ok) << r.experiment << ": " << r.error;
    acc += r.metrics.accuracy / 21.0;
    hl += r.metrics.hamming_loss / 21.0;
  }
  EXPECT_NEAR(rep.average->accuracy, acc, 1e-9);
  EXPECT_NEAR(rep.average->hamming_loss, hl, 1e-9);
  const auto j = json::parse(render_json(rep));
  EXPECT_NEAR(j["average"]["accuracy"].get<double>(), acc, 1e-9);
  EXPECT_EQ(j["rows"].size(), 21u);
}

TEST(Bench, RowsMatchLibraryEvaluation) {
  const auto data = synthetic_split(6);
  const auto c = run_config(json{{"seed", 5}, {"experiments", {{{"transform", "br"}, {"learner", "NB"}}}}});
  const auto rep = run_benchmark(c, data);
  BinaryRelevanceModel br(data.train, NaiveBayesParams{});
  const auto ref = evaluate(br, data.test);
  EXPECT_EQ(rep.rows[0].metrics.accuracy, ref.accuracy);
  EXPECT_EQ(rep.rows[0].metrics.ranking_loss, ref.ranking_loss);
  EXPECT_EQ(rep.rows[0].experiment, "BR/NB");
}

TEST(Bench, FailedExperimentMarksRow) {
  const auto c = run_config(json{{"experiments", {{{"transform", {{"type", "rakel"}, {"k", 50}}}}, {{"transform", "br"}}}}});
  const auto rep = run_benchmark(c, synthetic_split(1));
  EXPECT_FALSE(rep.rows[0].ok);
  EXPECT_TRUE(rep.rows[1].ok);
  EXPECT_FALSE(rep.all_ok());
  const auto csv = render_csv(rep);
  EXPECT_NE(csv.find("RAKEL/NB,NA,NA,NA,NA,NA\n"), std::string::npos);
  EXPECT_NE(render_markdown(rep).find("failed: RAKEL/NB"), std::string::npos);
}

TEST(Bench, ConfigHashTracksMeaningfulFields) {
  const json base = {{"dataset", "d.arff"}, {"trailing_labels", 2}, {"split", "10:5"},
                     {"experiments", {{{"transform", "br"}, {"learner", "J48"}}}}};
  const auto h = config_hash(run_config(base));
  auto with = [&](const char* key, json v) {
    json d = base;
    d[key] = v;
    return config_hash(run_config(d));
  };
  EXPECT_EQ(h, config_hash(run_config(base)));
  EXPECT_EQ(h, with("workers", 8));
  EXPECT_EQ(h, with("format", "csv"));
  EXPECT_EQ(h, with("out", "x.csv"));
  EXPECT_NE(h, with("seed", 2));
  EXPECT_NE(h, with("threshold", 0.4));
  EXPECT_NE(h, with("split", "11:4"));
  EXPECT_NE(h, with("trailing_labels", 3));
  EXPECT_NE(h, with("experiments", json::array({{{"transform", "br"}, {"learner", {{"preset", "J48"}, {"min_leaf", 3}}}}})));
}

TEST(Bench, ConfigParsing) {
  const auto c = run_config(json{{"seed", 9},
                                 {"threshold", 0.4},
                                 {"experiments",
                                  {{{"transform", "rakel"}, {"learner", "RANDOM-T"}},
                                   {{"name", "E"}, {"ensemble", {{"members", 3}, {"rule", "mean"}}}}}}});
  ASSERT_EQ(c.experiments.size(), 2u);
  EXPECT_EQ(std::get<RakelParams>(c.experiments[0].transform).seed, 9u);
  EXPECT_EQ(std::get<TreeParams>(c.experiments[0].learner).seed, 9u);
  const auto& e = *c.experiments[1].ensemble;
  EXPECT_EQ(e.members.size(), 3u);
  EXPECT_EQ(e.seed, 9u);
  EXPECT_DOUBLE_EQ(e.threshold, 0.4);
  EXPECT_EQ(e.members[2].learner_name, "RANDOM-T");
  EXPECT_THROW(run_config(json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(run_config(json{{"experiments", {{{"learner", "SVM"}}}}}), ConfigError);
  EXPECT_THROW(run_config(json{{"experiments", {{{"learner", {{"type", "knn"}, {"kk", 3}}}}}}}), ConfigError);
  EXPECT_THROW(run_config(json{{"experiments", {{{"ensemble", {{"rule", "weighted_mean"}}}}}}}), ConfigError);
  EXPECT_THROW(parse_split("10:x"), ConfigError);
  // Round trip through the JSON form.
  const auto l = learner_preset("REPTREE");
  EXPECT_EQ(std::get<TreeParams>(learner_from_json(learner_to_json(l), 1)), std::get<TreeParams>(l));
}

// Constant scores (0.7, 0.2) on {0}, {1}, {0,1}, {}: bipartition {0}, ranks (1, 2).
TEST(Cli, ConstantModelHandValues) {
  const auto data = test::data_path("tiny4.arff");
  const auto cfg = tmp_path("const.json");
  write_text(cfg, json{{"train", data},
                       {"test", data},
                       {"trailing_labels", 2},
                       {"experiments", {{{"name", "CONST"}, {"transform", {{"type", "constant"}, {"scores", {0.7, 0.2}}}}}}}}
                      .dump());
  const auto r = run_cli("benchmark --config " + cfg + " --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "experiment,accuracy,hamming_loss,one_error,ranking_loss,avg_precision\n"
            "CONST,0.375000,0.500000,0.500000,0.500000,0.833333\n"
            "AVERAGE,0.375000,0.500000,0.500000,0.500000,0.833333\n");
}

TEST(Cli, PredictionsFileOfTruthScoresPerfectly) {
  const auto r = run_cli("evaluate --dataset " + test::data_path("tiny4.arff") + " --trailing-labels 2 --predictions " +
                         test::data_path("tiny4_scores.csv") + " --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["accuracy"].get<double>(), 1.0);
  EXPECT_EQ(j["rows"][0]["hamming_loss"].get<double>(), 0.0);
}

TEST(Cli, InfoPrintsStatistics) {
  const auto r = run_cli("info --dataset " + test::data_path("tiny4.arff") + " --trailing-labels 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("instances=4 labels=2 features=1 lcard=1.0000 lden=0.5000 distinct_labelsets=4"),
            std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 1);
  EXPECT_EQ(run_cli("info --dataset " + test::data_path("tiny4.arff")).code, 1);
  EXPECT_EQ(run_cli("info --dataset " + test::data_path("arff/09_err_arity.arff") + " --trailing-labels 1").code, 2);
  EXPECT_EQ(run_cli("evaluate --dataset " + test::data_path("tiny4.arff") + " --trailing-labels 2 --split 2:2 "
                    "--transform rakel --learner NB --seed 3")
                .code,
            0);
  // RAKEL with k > M fails inside the experiment.
  EXPECT_EQ(run_cli("evaluate --dataset " + test::data_path("tiny4.arff") + " --trailing-labels 2 --split 2:2 "
                    "--transform '{\"type\":\"rakel\",\"k\":3}'")
                .code,
            3);
  EXPECT_EQ(run_cli("evaluate --dataset " + test::data_path("tiny4.arff") + " --trailing-labels 2 --split 3:3 --transform br").code, 2);
}

TEST(Cli, BenchmarkDeterministicAcrossWorkers) {
  const auto arff = tmp_path("synth.arff");
  ASSERT_EQ(run_cli("synth --rows 90 --seed 4 --out " + arff).code, 0);
  const auto cfg = tmp_path("grid.json");
  write_text(cfg, json{{"dataset", arff},
                       {"trailing_labels", 6},
                       {"split", "60:30"},
                       {"grid", {{"transforms", {"br", "rakel"}}, {"learners", {"NB", "REPTREE"}}}},
                       {"experiments", {{{"ensemble", {{"members", 4}}}}}}}
                      .dump());
  const auto a = run_cli("benchmark --config " + cfg + " --format csv --workers 1");
  const auto b = run_cli("benchmark --config " + cfg + " --format csv --workers 8");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto seeded = run_cli("benchmark --config " + cfg + " --format csv --seed 2");
  EXPECT_NE(a.out, seeded.out);
}

TEST(Cli, SeedFallsBackToEnvironment) {
  const auto args = "evaluate --dataset " + test::data_path("tiny4.arff") +
                    " --trailing-labels 2 --split 2:2 --transform br --format md";
  const auto r = run_cli(args);
  EXPECT_NE(r.out.find("seed: 1,"), std::string::npos);
  ::setenv("MULLAB_SEED", "77", 1);
  const auto r2 = run_cli(args);
  ::unsetenv("MULLAB_SEED");
  EXPECT_NE(r2.out.find("seed: 77,"), std::string::npos);
}
