#ifndef MULLAB_PREDICTION_HPP
#define MULLAB_PREDICTION_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "label_set.hpp"

namespace mullab {

// Labels with score >= t.
inline LabelSet bipartition(std::span<const double> scores, double t) {
  LabelSet z(scores.size());
  for (std::size_t j = 0; j < scores.size(); ++j)
    if (scores[j] >= t) z.set(j);
  return z;
}

// ranks[j] in 1..M, rank 1 for the highest score; equal scores rank by label index.
inline std::vector<std::size_t> rank_labels(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<std::size_t> ranks(scores.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = r + 1;
  return ranks;
}

struct Prediction {
  std::vector<double> scores;
  LabelSet labels;                 // bipartition at the threshold
  std::vector<std::size_t> ranks;  // 1-based

  static Prediction from_scores(std::vector<double> scores, double t) {
    Prediction p;
    p.labels = bipartition(scores, t);
    p.ranks = rank_labels(scores);
    p.scores = std::move(scores);
    return p;
  }
};

}  // namespace mullab

#endif  // MULLAB_PREDICTION_HPP
