#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace mullab;

namespace {

std::vector<LabelSet> sets(std::size_t m, const std::vector<std::vector<std::size_t>>& v) {
  std::vector<LabelSet> out;
  for (const auto& s : v) out.push_back(LabelSet::from_indices(m, s));
  return out;
}

}  // namespace

TEST(Metrics, Accuracy) {
  EXPECT_DOUBLE_EQ(accuracy(sets(4, {{1, 2}}), sets(4, {{2, 3}})), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(accuracy(sets(3, {{0}, {1, 2}}), sets(3, {{0}, {1, 2}})), 1.0);
  EXPECT_DOUBLE_EQ(accuracy(sets(3, {{0}, {1}}), sets(3, {{1}, {2}})), 0.0);
  EXPECT_DOUBLE_EQ(accuracy(sets(3, {{}}), sets(3, {{}})), 1.0);
}

TEST(Metrics, HammingLoss) {
  EXPECT_DOUBLE_EQ(hamming_loss(sets(3, {{0}, {1}}), sets(3, {{0}, {1}})), 0.0);
  EXPECT_DOUBLE_EQ(hamming_loss(sets(3, {{0}, {}}), sets(3, {{1, 2}, {0, 1, 2}})), 1.0);
  EXPECT_DOUBLE_EQ(hamming_loss(sets(3, {{0}, {1}}), sets(3, {{0, 1}, {}})), 1.0 / 3.0);
}

TEST(Metrics, OneError) {
  const auto y = sets(3, {{0}, {1}, {2}, {0, 1}});
  const std::vector<Ranking> r{{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {3, 2, 1}};
  EXPECT_DOUBLE_EQ(one_error(y, r), 0.25);
  // Full truth never misses, empty truth always does.
  EXPECT_DOUBLE_EQ(one_error(sets(2, {{0, 1}, {}}), std::vector<Ranking>{{2, 1}, {1, 2}}), 0.5);
}

TEST(Metrics, RankingLoss) {
  const auto y = sets(3, {{0}});
  EXPECT_DOUBLE_EQ(ranking_loss(y, std::vector<Ranking>{{2, 1, 3}}).value, 0.5);
  EXPECT_DOUBLE_EQ(ranking_loss(y, std::vector<Ranking>{{1, 2, 3}}).value, 0.0);
  EXPECT_DOUBLE_EQ(ranking_loss(y, std::vector<Ranking>{{3, 1, 2}}).value, 1.0);
  const auto skip = ranking_loss(sets(3, {{0}, {}, {0, 1, 2}}), std::vector<Ranking>{{2, 1, 3}, {1, 2, 3}, {1, 2, 3}});
  EXPECT_DOUBLE_EQ(skip.value, 0.5);
  EXPECT_EQ(skip.skipped, 2u);
  EXPECT_THROW(ranking_loss(sets(2, {{}, {0, 1}}), std::vector<Ranking>{{1, 2}, {1, 2}}), DataError);
}

TEST(Metrics, AveragePrecision) {
  EXPECT_DOUBLE_EQ(average_precision(sets(3, {{1}}), std::vector<Ranking>{{1, 2, 3}}).value, 0.5);
  EXPECT_DOUBLE_EQ(average_precision(sets(3, {{0, 2}}), std::vector<Ranking>{{1, 2, 3}}).value, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(average_precision(sets(3, {{0, 1}}), std::vector<Ranking>{{2, 1, 3}}).value, 1.0);
  const auto skip = average_precision(sets(2, {{}, {0}}), std::vector<Ranking>{{1, 2}, {1, 2}});
  EXPECT_EQ(skip.skipped, 1u);
  EXPECT_DOUBLE_EQ(skip.value, 1.0);
  EXPECT_THROW(average_precision(sets(2, {{}}), std::vector<Ranking>{{1, 2}}), DataError);
}

TEST(Metrics, InputValidation) {
  EXPECT_THROW(one_error(sets(3, {{0}}), std::vector<Ranking>{{1, 1, 3}}), DataError);
  EXPECT_THROW(one_error(sets(3, {{0}}), std::vector<Ranking>{{1, 2}}), LabelSpaceError);
  EXPECT_THROW(accuracy(sets(3, {{0}}), sets(3, {{0}, {1}})), DataError);
  EXPECT_THROW(accuracy(sets(3, {{0}}), sets(4, {{0}})), LabelSpaceError);
}

TEST(Metrics, MatchBruteForceOracle) {
  std::mt19937_64 gen(20240611);
  for (int i = 0; i < 1000; ++i) {
    const auto c = oracle::random_case(gen);
    ASSERT_LE(test::metric_case_discrepancy(c), 1e-12) << "case " << i;
  }
}

TEST(Metrics, SymmetryAndPermutationInvariance) {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 100; ++i) {
    const auto c = oracle::random_case(gen);
    std::vector<LabelSet> y, z;
    for (std::size_t k = 0; k < c.truth.size(); ++k) {
      LabelSet a(c.m), b(c.m);
      for (std::size_t j = 0; j < c.m; ++j) {
        a.set(j, c.truth[k][j]);
        b.set(j, c.pred[k][j]);
      }
      y.push_back(a);
      z.push_back(b);
    }
    EXPECT_DOUBLE_EQ(hamming_loss(y, z), hamming_loss(z, y));
    std::reverse(y.begin(), y.end());
    std::reverse(z.begin(), z.end());
    const double acc = accuracy(y, z);
    EXPECT_GE(acc, 0.0);
    EXPECT_LE(acc, 1.0);
    EXPECT_NEAR(acc, oracle::accuracy(c.truth, c.pred), 1e-12);
  }
}

// Scores [0.5,0.5,0.5] everywhere: t-inclusive bipartition is the full set and
// ranks follow label index.
TEST(Evaluate, ConstantHalfModel) {
  const auto truths = sets(3, {{0}, {1, 2}, {}});
  const std::vector<std::vector<double>> scores(3, std::vector<double>{0.5, 0.5, 0.5});
  const auto rep = evaluate_scores(truths, scores, 0.5);
  EXPECT_DOUBLE_EQ(rep.accuracy, (1.0 / 3.0 + 2.0 / 3.0 + 0.0) / 3.0);
  EXPECT_DOUBLE_EQ(rep.hamming_loss, (2.0 / 3.0 + 1.0 / 3.0 + 1.0) / 3.0);
  EXPECT_DOUBLE_EQ(rep.one_error, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(rep.ranking_loss, (0.0 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(rep.avg_precision, (1.0 + 0.5 * (1.0 / 2.0 + 2.0 / 3.0)) / 2.0);
  EXPECT_EQ(rep.n_evaluated, 3u);
  EXPECT_EQ(rep.n_skipped_ranking, 1u);
}

TEST(Evaluate, OracleModel) {
  const auto truths = sets(3, {{0}, {1, 2}, {0, 1, 2}});
  std::vector<std::vector<double>> scores;
  for (const auto& y : truths) {
    std::vector<double> s(3);
    for (std::size_t j = 0; j < 3; ++j) s[j] = y.test(j) ? 1.0 : 0.0;
    scores.push_back(s);
  }
  const auto rep = evaluate_scores(truths, scores, 0.5);
  EXPECT_EQ(rep.accuracy, 1.0);
  EXPECT_EQ(rep.hamming_loss, 0.0);
  EXPECT_EQ(rep.one_error, 0.0);
  EXPECT_EQ(rep.ranking_loss, 0.0);
  EXPECT_EQ(rep.avg_precision, 1.0);
}
