#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace mullab;
using test::numeric_row;

namespace {

MLDataset fixture20() {
  SyntheticSpec s;
  s.n_rows = 20;
  s.n_labels = 3;
  s.n_features = 4;
  s.seed = 12;
  return make_synthetic(s);
}

std::vector<std::vector<double>> random_members(Rng& rng, std::size_t q, std::size_t m) {
  std::vector<std::vector<double>> out(q, std::vector<double>(m));
  for (auto& v : out)
    for (auto& x : v) x = rng.uniform();
  return out;
}

}  // namespace

TEST(Combine, SpecExamples) {
  EXPECT_EQ(combine({{1, 0}, {0, 1}}, CombinationRule::mean), (std::vector<double>{0.5, 0.5}));
  const auto v = combine({{0.9, 0.1}, {0.8, 0.4}, {0.2, 0.6}}, CombinationRule::majority_vote, {}, 0.5);
  EXPECT_DOUBLE_EQ(v[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(v[1], 1.0 / 3.0);
  EXPECT_EQ(combine({{0.3, 0.7}}, CombinationRule::max), (std::vector<double>{0.3, 0.7}));
  const std::vector<double> w{3.0, 1.0};
  EXPECT_DOUBLE_EQ(combine({{0.6, 0.0}, {0.2, 0.0}}, CombinationRule::weighted_majority_vote, w)[0], 0.75);
  EXPECT_DOUBLE_EQ(combine({{1.0, 0.0}, {0.0, 0.0}}, CombinationRule::weighted_mean, w)[0], 0.75);
}

TEST(Combine, Errors) {
  EXPECT_THROW(combine({{0.1, 0.2}, {0.3}}, CombinationRule::mean), DataError);
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_THROW(combine({{0.1}, {0.3}}, CombinationRule::weighted_mean, zero), ConfigError);
  const std::vector<double> one{1.0};
  EXPECT_THROW(combine({{0.1}, {0.3}}, CombinationRule::weighted_mean, one), ConfigError);
  EXPECT_THROW(combine({}, CombinationRule::mean), ConfigError);
}

TEST(Combine, Properties) {
  Rng rng(31);
  const CombinationRule rules[] = {CombinationRule::mean,          CombinationRule::weighted_mean,
                                   CombinationRule::max,           CombinationRule::min,
                                   CombinationRule::majority_vote, CombinationRule::weighted_majority_vote};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t q = 1 + rng.below(6), m = 1 + rng.below(8);
    auto s = random_members(rng, q, m);
    std::vector<double> w(q);
    for (auto& x : w) x = rng.uniform() + 0.01;
    const std::vector<double> uniform(q, 2.5);

    const auto mean = combine(s, CombinationRule::mean);
    const auto wmean = combine(s, CombinationRule::weighted_mean, uniform);
    const auto lo = combine(s, CombinationRule::min), hi = combine(s, CombinationRule::max);
    for (std::size_t j = 0; j < m; ++j) {
      EXPECT_NEAR(mean[j], wmean[j], 1e-12);
      EXPECT_LE(lo[j], mean[j] + 1e-15);
      EXPECT_LE(mean[j], hi[j] + 1e-15);
    }

    // Reverse member order (and weights with it).
    auto rs = s;
    std::reverse(rs.begin(), rs.end());
    auto rw = w;
    std::reverse(rw.begin(), rw.end());
    for (auto rule : rules) {
      const auto a = combine(s, rule, w), b = combine(rs, rule, rw);
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_GE(a[j], 0.0);
        EXPECT_LE(a[j], 1.0);
        EXPECT_NEAR(a[j], b[j], 1e-12);
      }
    }
  }
}

TEST(Ensemble, SamplesAreSeededAndSized) {
  auto spec = default_ensemble_spec(10, 4);
  const auto a = ensemble_samples(100, spec), b = ensemble_samples(100, spec);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 10u);
  for (const auto& s : a) {
    EXPECT_EQ(s.size(), 67u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 67u);
  }
  EXPECT_NE(a[0], a[1]);
  spec.with_replacement = true;
  for (const auto& s : ensemble_samples(100, spec)) EXPECT_EQ(s.size(), 67u);
  spec.sample_ratio = 0.001;
  EXPECT_THROW(ensemble_samples(100, spec), DataError);
}

TEST(Ensemble, DefaultMembersCyclePresets) {
  const auto spec = default_ensemble_spec();
  ASSERT_EQ(spec.members.size(), 10u);
  EXPECT_EQ(spec.rule, CombinationRule::majority_vote);
  EXPECT_DOUBLE_EQ(spec.sample_ratio, 0.67);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(spec.members[k].learner_name, learner_preset_names()[k % 5]);
    EXPECT_EQ(std::get<PruneSpec>(spec.members[k].transform), (PruneSpec{2, 2}));
  }
}

TEST(Ensemble, SingleFullSampleMemberIsIdentity) {
  const auto d = fixture20();
  for (const auto& name : learner_preset_names()) {
    for (auto rule : {CombinationRule::mean, CombinationRule::max, CombinationRule::min}) {
      EnsembleSpec spec;
      spec.members = {{LpSpec{}, learner_preset(name), name}};
      spec.sample_ratio = 1.0;
      spec.rule = rule;
      const auto en = enmlc_fit(d, spec);
      LabelPowersetModel lp(d, learner_preset(name));
      for (const auto& x : d.features()) {
        const auto a = en->predict_scores(x), b = lp.predict_scores(x);
        for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
      }
    }
  }
}

TEST(Ensemble, MeanRuleAveragesIndependentlyTrainedMembers) {
  const auto d = fixture20();
  EnsembleSpec spec;
  spec.members = {{LpSpec{}, learner_preset("NB"), "NB"},
                  {LpSpec{}, learner_preset("k-NN"), "k-NN"},
                  {LpSpec{}, learner_preset("J48"), "J48"}};
  spec.rule = CombinationRule::mean;
  spec.seed = 8;
  const auto en = enmlc_fit(d, spec);
  const auto samples = ensemble_samples(d.size(), spec);
  std::vector<std::unique_ptr<LabelPowersetModel>> own;
  for (std::size_t k = 0; k < 3; ++k)
    own.push_back(std::make_unique<LabelPowersetModel>(d.subset(samples[k]), spec.members[k].learner));
  for (const auto& x : d.features()) {
    std::vector<double> avg(3, 0.0);
    for (const auto& m : own) {
      const auto s = m->predict_scores(x);
      for (std::size_t j = 0; j < 3; ++j) avg[j] += s[j] / 3.0;
    }
    const auto got = en->predict_scores(x);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(got[j], avg[j], 1e-12);
  }
}

TEST(Ensemble, DeterministicAcrossRunsAndWorkers) {
  const auto d = fixture20();
  const auto spec = default_ensemble_spec(10, 3);
  const auto a = enmlc_fit(d, spec, 1), b = enmlc_fit(d, spec, 1), c = enmlc_fit(d, spec, 4);
  EXPECT_EQ(a->samples(), b->samples());
  for (const auto& x : d.features()) {
    EXPECT_EQ(a->predict_scores(x), b->predict_scores(x));
    EXPECT_EQ(a->predict_scores(x), c->predict_scores(x));
  }
}

TEST(Ensemble, PredictionIsConsistentWithScores) {
  const auto d = fixture20();
  const auto en = enmlc_fit(d, default_ensemble_spec(5, 2));
  for (const auto& x : d.features()) {
    const auto p = en->predict(x);
    EXPECT_EQ(p.labels, bipartition(p.scores, 0.5));
    EXPECT_EQ(p.ranks, rank_labels(p.scores));
  }
}

TEST(Synthetic, LabelsAreCorrelated) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticSpec s;
    s.seed = seed;
    const auto d = make_synthetic(s);
    EXPECT_EQ(d.size(), 300u);
    EXPECT_EQ(d.num_labels(), 6u);
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = a + 1; b < 6; ++b) EXPECT_GE(label_correlation(d, a, b), 0.3) << a << "," << b;
  }
}
