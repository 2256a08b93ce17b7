#ifndef MULLAB_METRIC_ORACLE_HPP
#define MULLAB_METRIC_ORACLE_HPP

// Brute-force reference metrics over plain bool matrices, written without the
// library's LabelSet or ranking helpers.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

namespace mullab::oracle {

using Bits = std::vector<std::vector<bool>>;           // [instance][label]
using Ranks = std::vector<std::vector<std::size_t>>;   // [instance][label] -> 1-based rank

struct Case {
  std::size_t m = 0;
  Bits truth, pred;
  Ranks ranks;
};

inline double accuracy(const Bits& y, const Bits& z) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    int inter = 0, uni = 0;
    for (std::size_t j = 0; j < y[i].size(); ++j) {
      inter += y[i][j] && z[i][j];
      uni += y[i][j] || z[i][j];
    }
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  }
  return total / static_cast<double>(y.size());
}

inline double hamming(const Bits& y, const Bits& z) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    int diff = 0;
    for (std::size_t j = 0; j < y[i].size(); ++j) diff += y[i][j] != z[i][j];
    total += static_cast<double>(diff) / static_cast<double>(y[i].size());
  }
  return total / static_cast<double>(y.size());
}

inline double one_error(const Bits& y, const Ranks& r) {
  double misses = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y[i].size(); ++j)
      if (r[i][j] == 1 && !y[i][j]) misses += 1.0;
  return misses / static_cast<double>(y.size());
}

// Returns -1 when every instance is skipped.
inline double ranking_loss(const Bits& y, const Ranks& r) {
  double total = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    int bad = 0, pairs = 0;
    for (std::size_t a = 0; a < y[i].size(); ++a)
      for (std::size_t b = 0; b < y[i].size(); ++b)
        if (y[i][a] && !y[i][b]) {
          ++pairs;
          if (r[i][a] > r[i][b]) ++bad;
        }
    if (pairs == 0) continue;
    total += static_cast<double>(bad) / pairs;
    ++used;
  }
  return used == 0 ? -1.0 : total / used;
}

inline double average_precision(const Bits& y, const Ranks& r) {
  double total = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    double inner = 0.0;
    int rel = 0;
    for (std::size_t a = 0; a < y[i].size(); ++a) {
      if (!y[i][a]) continue;
      ++rel;
      int above = 0;
      for (std::size_t b = 0; b < y[i].size(); ++b)
        if (y[i][b] && r[i][b] <= r[i][a]) ++above;
      inner += static_cast<double>(above) / static_cast<double>(r[i][a]);
    }
    if (rel == 0) continue;
    total += inner / rel;
    ++used;
  }
  return used == 0 ? -1.0 : total / used;
}

// Random case with N <= 20, M <= 8; truths are biased toward edge cases
// (empty and full labelsets) often enough to exercise the skip rules.
inline Case random_case(std::mt19937_64& gen) {
  Case c;
  c.m = std::uniform_int_distribution<std::size_t>(1, 8)(gen);
  const auto n = std::uniform_int_distribution<std::size_t>(1, 20)(gen);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double kind = u(gen);
    const double density = u(gen);
    std::vector<bool> y(c.m), z(c.m);
    for (std::size_t j = 0; j < c.m; ++j) {
      y[j] = kind < 0.1 ? false : kind < 0.2 ? true : u(gen) < density;
      z[j] = u(gen) < 0.5;
    }
    std::vector<std::size_t> order(c.m);
    for (std::size_t j = 0; j < c.m; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), gen);
    std::vector<std::size_t> ranks(c.m);
    for (std::size_t pos = 0; pos < c.m; ++pos) ranks[order[pos]] = pos + 1;
    c.truth.push_back(y);
    c.pred.push_back(z);
    c.ranks.push_back(ranks);
  }
  return c;
}

}  // namespace mullab::oracle

#endif
