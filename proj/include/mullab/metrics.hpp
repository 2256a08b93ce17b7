#ifndef MULLAB_METRICS_HPP
#define MULLAB_METRICS_HPP

/*
 Multi-label evaluation measures.

 Bipartition based (truth Y_i vs predicted set Z_i over M labels):
   accuracy       mean of |Y ∩ Z| / |Y ∪ Z|; an instance with Y = Z = ∅ scores 1
   hamming_loss   mean of |Y Δ Z| / M

 Ranking based (truth Y_i vs ranks r_i, rank 1 = most relevant):
   one_error          fraction of instances whose rank-1 label is not in Y
   ranking_loss       mean fraction of (relevant, irrelevant) pairs with the
                      irrelevant label ranked above the relevant one;
                      instances with Y = ∅ or Y = L are skipped
   average_precision  mean over y in Y of |{y' in Y : r(y') <= r(y)}| / r(y);
                      instances with Y = ∅ are skipped
*/

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "label_set.hpp"
#include "model.hpp"
#include "prediction.hpp"

namespace mullab {

using Ranking = std::vector<std::size_t>;

// Value of a ranking metric plus the number of instances it had to skip.
struct RankingMetric {
  double value = 0.0;
  std::size_t skipped = 0;
};

namespace metrics_detail {

inline void check_pairs(std::span<const LabelSet> truths, std::size_t n_other) {
  if (truths.empty()) throw DataError("metric over zero instances");
  if (truths.size() != n_other)
    throw DataError("metric inputs differ in length: " + std::to_string(truths.size()) + " vs " +
                    std::to_string(n_other));
}

inline void check_ranking(const LabelSet& y, const Ranking& r) {
  if (r.size() != y.universe())
    throw LabelSpaceError("ranking covers " + std::to_string(r.size()) + " labels, universe has " +
                          std::to_string(y.universe()));
  std::vector<bool> seen(r.size(), false);
  for (auto rank : r) {
    if (rank < 1 || rank > r.size() || seen[rank - 1])
      throw DataError("ranking is not a permutation of 1..M");
    seen[rank - 1] = true;
  }
}

}  // namespace metrics_detail

inline double accuracy(std::span<const LabelSet> truths, std::span<const LabelSet> preds) {
  metrics_detail::check_pairs(truths, preds.size());
  double total = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto uni = (truths[i] | preds[i]).cardinality();
    const auto inter = (truths[i] & preds[i]).cardinality();
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
  }
  return total / static_cast<double>(truths.size());
}

inline double hamming_loss(std::span<const LabelSet> truths, std::span<const LabelSet> preds) {
  metrics_detail::check_pairs(truths, preds.size());
  const std::size_t m = truths.front().universe();
  if (m == 0) throw DataError("hamming loss over zero labels");
  double total = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i)
    total += static_cast<double>(labelset_symdiff_count(truths[i], preds[i])) / static_cast<double>(m);
  return total / static_cast<double>(truths.size());
}

inline double one_error(std::span<const LabelSet> truths, std::span<const Ranking> rankings) {
  metrics_detail::check_pairs(truths, rankings.size());
  std::size_t misses = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    metrics_detail::check_ranking(truths[i], rankings[i]);
    for (std::size_t j = 0; j < rankings[i].size(); ++j)
      if (rankings[i][j] == 1 && !truths[i].test(j)) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(truths.size());
}

inline RankingMetric ranking_loss(std::span<const LabelSet> truths, std::span<const Ranking> rankings) {
  metrics_detail::check_pairs(truths, rankings.size());
  RankingMetric out;
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto& y = truths[i];
    const auto& r = rankings[i];
    metrics_detail::check_ranking(y, r);
    const std::size_t rel = y.cardinality();
    if (rel == 0 || rel == y.universe()) {
      ++out.skipped;
      continue;
    }
    // For each irrelevant label, count the relevant labels ranked below it.
    std::size_t bad = 0;
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (!y.test(a)) continue;
      for (std::size_t b = 0; b < r.size(); ++b)
        if (!y.test(b) && r[a] > r[b]) ++bad;
    }
    total += static_cast<double>(bad) / static_cast<double>(rel * (y.universe() - rel));
    ++used;
  }
  if (used == 0) throw DataError("ranking loss undefined: every instance has an empty or full labelset");
  out.value = total / static_cast<double>(used);
  return out;
}

inline RankingMetric average_precision(std::span<const LabelSet> truths, std::span<const Ranking> rankings) {
  metrics_detail::check_pairs(truths, rankings.size());
  RankingMetric out;
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const auto& y = truths[i];
    const auto& r = rankings[i];
    metrics_detail::check_ranking(y, r);
    const auto relevant = y.indices();
    if (relevant.empty()) {
      ++out.skipped;
      continue;
    }
    double sum = 0.0;
    for (auto a : relevant) {
      std::size_t at_or_above = 0;
      for (auto b : relevant) at_or_above += r[b] <= r[a] ? 1 : 0;
      sum += static_cast<double>(at_or_above) / static_cast<double>(r[a]);
    }
    total += sum / static_cast<double>(relevant.size());
    ++used;
  }
  if (used == 0) throw DataError("average precision undefined: every instance has an empty labelset");
  out.value = total / static_cast<double>(used);
  return out;
}

struct EvaluationReport {
  double accuracy = 0.0;
  double hamming_loss = 0.0;
  double one_error = 0.0;
  double ranking_loss = 0.0;
  double avg_precision = 0.0;
  std::size_t n_evaluated = 0;
  std::size_t n_skipped_ranking = 0;  // instances with empty or full truth, left out of ranking loss
};

// Metrics of already-computed per-instance score vectors against the truth.
inline EvaluationReport evaluate_scores(std::span<const LabelSet> truths,
                                        const std::vector<std::vector<double>>& scores, double t) {
  metrics_detail::check_pairs(truths, scores.size());
  std::vector<LabelSet> preds;
  std::vector<Ranking> ranks;
  preds.reserve(scores.size());
  ranks.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].size() != truths[i].universe())
      throw LabelSpaceError("score vector has " + std::to_string(scores[i].size()) +
                            " entries, truth universe has " + std::to_string(truths[i].universe()));
    preds.push_back(bipartition(scores[i], t));
    ranks.push_back(rank_labels(scores[i]));
  }
  EvaluationReport rep;
  rep.accuracy = accuracy(truths, preds);
  rep.hamming_loss = hamming_loss(truths, preds);
  rep.one_error = one_error(truths, ranks);
  const auto rl = ranking_loss(truths, ranks);
  rep.ranking_loss = rl.value;
  rep.avg_precision = average_precision(truths, ranks).value;
  rep.n_evaluated = truths.size();
  rep.n_skipped_ranking = rl.skipped;
  return rep;
}

inline std::vector<std::vector<double>> predict_all(const MultiLabelModel& model, const MLDataset& test) {
  if (model.num_labels() != test.num_labels())
    throw LabelSpaceError("model has " + std::to_string(model.num_labels()) + " labels, test set has " +
                          std::to_string(test.num_labels()));
  std::vector<std::vector<double>> scores;
  scores.reserve(test.size());
  for (const auto& x : test.features()) scores.push_back(model.predict_scores(x));
  return scores;
}

inline EvaluationReport evaluate(const MultiLabelModel& model, const MLDataset& test, double t = 0.5) {
  if (test.empty()) throw DataError("empty test set");
  return evaluate_scores(test.labels(), predict_all(model, test), t);
}

}  // namespace mullab

#endif  // MULLAB_METRICS_HPP
