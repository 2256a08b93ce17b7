#ifndef MULLAB_DECISION_TREE_HPP
#define MULLAB_DECISION_TREE_HPP

/*
 Top-down decision tree induction for single-label classification.

 The same learner covers three classic configurations through TreeParams:
   gain_ratio, min_leaf 2                  C4.5 / J48-like
   info_gain, rep_pruning                  REPTree-like (reduced-error pruning on a held-out fold)
   info_gain, random attribute subset      RandomTree-like

 Numeric attributes split in two at midpoints between consecutive distinct
 values (x <= threshold goes left). Nominal attributes split multiway, one
 branch per category plus one for missing values. Among all candidate splits
 the one with the highest criterion wins; ties keep the lower attribute index
 and then the lower threshold. Leaves predict Laplace-smoothed class frequencies.
*/

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "classifier.hpp"
#include "random.hpp"

namespace mullab {

enum class SplitCriterion { info_gain, gain_ratio };

// TreeParams::random_subset_size value meaning ceil(sqrt(#attributes)).
inline constexpr std::size_t kSqrtAttributes = std::numeric_limits<std::size_t>::max();

struct TreeParams {
  SplitCriterion criterion = SplitCriterion::gain_ratio;
  std::size_t random_subset_size = 0;  // 0: every attribute is a candidate at every node
  bool rep_pruning = false;
  double prune_fraction = 1.0 / 3.0;
  std::size_t min_leaf = 2;
  std::size_t max_depth = 0;  // 0: unlimited
  std::uint64_t seed = 1;

  bool operator==(const TreeParams&) const = default;
};

inline constexpr std::size_t kLeaf = std::numeric_limits<std::size_t>::max();

struct TreeNode {
  std::size_t attribute = kLeaf;
  double threshold = 0.0;
  std::vector<std::size_t> children;
  std::vector<double> counts;  // class counts of training rows reaching this node

  bool is_leaf() const noexcept { return attribute == kLeaf; }
  bool operator==(const TreeNode&) const = default;
};

struct TreeSplit {
  std::size_t attribute = 0;
  double threshold = 0.0;  // unused for nominal splits
  bool operator==(const TreeSplit&) const = default;
};

struct PruningTrace {
  std::size_t fold_size = 0;
  std::size_t fold_errors_before = 0;
  std::size_t fold_errors_after = 0;
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
};

namespace tree_detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Entropy (bits) of a count vector with total n and sum_nlogn = sum_c n_c log2 n_c.
inline double entropy(double n, double sum_nlogn) { return n > 0.0 ? std::log2(n) - sum_nlogn / n : 0.0; }

}  // namespace tree_detail

class DecisionTree final : public Classifier {
 public:
  DecisionTree(const TreeParams& params, const std::vector<Attribute>& attributes,
               std::span<const FeatureVector> rows, std::span<const std::size_t> classes,
               std::size_t num_classes)
      : params_(params), encoder_(attributes, rows), num_classes_(num_classes) {
    detail::check_training_set(rows, classes, num_classes);
    if (params_.min_leaf < 1) throw ConfigError("tree min_leaf must be >= 1");
    if (params_.rep_pruning && !(params_.prune_fraction > 0.0 && params_.prune_fraction < 1.0))
      throw ConfigError("tree prune_fraction must lie in (0, 1)");
    const std::size_t n = rows.size();
    const std::size_t d = encoder_.width();
    enc_.resize(n * d);
    for (std::size_t i = 0; i < n; ++i) encoder_.encode(rows[i], &enc_[i * d]);
    classes_.assign(classes.begin(), classes.end());

    Rng rng(params_.seed);
    std::vector<std::size_t> grow_rows(n);
    for (std::size_t i = 0; i < n; ++i) grow_rows[i] = i;
    std::vector<std::size_t> prune_rows;
    if (params_.rep_pruning) {
      const auto perm = rng.permutation(n);
      const auto n_prune = static_cast<std::size_t>(std::floor(static_cast<double>(n) * params_.prune_fraction));
      if (n_prune >= 1 && n_prune < n) {
        prune_rows.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_prune));
        grow_rows.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_prune), perm.end());
        std::sort(prune_rows.begin(), prune_rows.end());
        std::sort(grow_rows.begin(), grow_rows.end());
      }
    }
    grow(grow_rows, 0, rng);

    if (!prune_rows.empty()) {
      PruningTrace trace;
      trace.fold_size = prune_rows.size();
      trace.nodes_before = nodes_.size();
      trace.fold_errors_before = encoded_errors(prune_rows);
      reduced_error_prune(0, prune_rows);
      compact();
      trace.nodes_after = nodes_.size();
      trace.fold_errors_after = encoded_errors(prune_rows);
      trace_ = trace;
    }
    enc_.clear();
    enc_.shrink_to_fit();
    classes_.clear();
  }

  std::size_t num_classes() const override { return num_classes_; }

  ClassDistribution predict_dist(const FeatureVector& x) const override {
    const auto q = encoder_.encode(x);
    return leaf_distribution(nodes_[leaf_for(q.data())]);
  }

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeParams& params() const noexcept { return params_; }

  std::optional<TreeSplit> root_split() const {
    if (nodes_.front().is_leaf()) return std::nullopt;
    return TreeSplit{nodes_.front().attribute, nodes_.front().threshold};
  }

  std::size_t leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(),
                                                  [](const TreeNode& t) { return t.is_leaf(); }));
  }

  // Recorded when the tree was fitted with rep_pruning and a nonempty pruning fold.
  const std::optional<PruningTrace>& pruning_trace() const noexcept { return trace_; }

  // Number of misclassified rows (hard argmax prediction).
  std::size_t errors(std::span<const FeatureVector> rows, std::span<const std::size_t> classes) const {
    std::size_t e = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) e += predict(rows[i]) != classes[i] ? 1 : 0;
    return e;
  }

  // Copy of this tree after reduced-error pruning against the given fold: every
  // internal node whose subtree makes at least as many fold errors as a leaf
  // predicting the node's majority class is collapsed, bottom-up.
  DecisionTree pruned(std::span<const FeatureVector> rows, std::span<const std::size_t> classes) const {
    DecisionTree copy = *this;
    const std::size_t d = encoder_.width();
    copy.enc_.resize(rows.size() * d);
    for (std::size_t i = 0; i < rows.size(); ++i) encoder_.encode(rows[i], &copy.enc_[i * d]);
    copy.classes_.assign(classes.begin(), classes.end());
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    copy.reduced_error_prune(0, all);
    copy.compact();
    copy.enc_.clear();
    copy.classes_.clear();
    return copy;
  }

 private:
  const double* row(std::size_t i) const { return &enc_[i * encoder_.width()]; }

  std::size_t child_index(const TreeNode& node, const double* x) const {
    if (encoder_.is_nominal(node.attribute)) return static_cast<std::size_t>(x[node.attribute]);
    return x[node.attribute] <= node.threshold ? 0 : 1;
  }

  std::size_t leaf_for(const double* x) const {
    std::size_t id = 0;
    while (!nodes_[id].is_leaf()) id = nodes_[id].children[child_index(nodes_[id], x)];
    return id;
  }

  ClassDistribution leaf_distribution(const TreeNode& leaf) const {
    double n = 0.0;
    for (double c : leaf.counts) n += c;
    ClassDistribution out{std::vector<double>(num_classes_)};
    for (std::size_t c = 0; c < num_classes_; ++c)
      out.probs[c] = (leaf.counts[c] + 1.0) / (n + static_cast<double>(num_classes_));
    return out;
  }

  static std::size_t majority(const std::vector<double>& counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
      if (counts[c] > counts[best]) best = c;
    return best;
  }

  std::size_t encoded_errors(const std::vector<std::size_t>& rows) const {
    std::size_t e = 0;
    for (auto i : rows) e += majority(nodes_[leaf_for(row(i))].counts) != classes_[i] ? 1 : 0;
    return e;
  }

  std::vector<std::size_t> candidate_attributes(Rng& rng) const {
    const std::size_t d = encoder_.width();
    std::size_t m = params_.random_subset_size;
    if (m == kSqrtAttributes) m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));
    std::vector<std::size_t> all(d);
    for (std::size_t a = 0; a < d; ++a) all[a] = a;
    if (m == 0) return all;
    m = std::min(m, d);
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(d - i));
      std::swap(all[i], all[j]);
    }
    all.resize(m);
    std::sort(all.begin(), all.end());
    return all;
  }

  // Scores closer than this are ties; the earlier candidate (lower attribute,
  // then lower threshold) is kept so rounding in the running sums cannot decide.
  static constexpr double kTieTolerance = 1e-12;

  struct Candidate {
    bool valid = false;
    double score = 0.0;
    std::size_t attribute = 0;
    double threshold = 0.0;
  };

  double score(double gain, double split_info) const {
    return params_.criterion == SplitCriterion::gain_ratio ? gain / split_info : gain;
  }

  void consider_numeric(std::size_t a, const std::vector<std::size_t>& rows, double parent_h,
                        Candidate& best) const {
    using tree_detail::xlog2x;
    const double n = static_cast<double>(rows.size());
    std::vector<std::pair<double, std::size_t>> vals;
    vals.reserve(rows.size());
    for (auto i : rows) vals.emplace_back(row(i)[a], i);
    std::sort(vals.begin(), vals.end());

    std::vector<double> left(num_classes_, 0.0), right(num_classes_, 0.0);
    for (const auto& [v, i] : vals) right[classes_[i]] += 1.0;
    double left_sum = 0.0, right_sum = 0.0;
    for (double c : right) right_sum += xlog2x(c);

    const std::size_t min_leaf = params_.min_leaf;
    for (std::size_t pos = 1; pos < vals.size(); ++pos) {
      const std::size_t c = classes_[vals[pos - 1].second];
      left_sum += xlog2x(left[c] + 1.0) - xlog2x(left[c]);
      right_sum += xlog2x(right[c] - 1.0) - xlog2x(right[c]);
      left[c] += 1.0;
      right[c] -= 1.0;
      if (pos < min_leaf || vals.size() - pos < min_leaf) continue;
      const double lo = vals[pos - 1].first, hi = vals[pos].first;
      if (!(lo < hi)) continue;
      const double nl = static_cast<double>(pos), nr = n - nl;
      const double gain = parent_h - (nl * tree_detail::entropy(nl, left_sum) +
                                      nr * tree_detail::entropy(nr, right_sum)) / n;
      if (!(gain > 1e-12)) continue;
      const double split_info = -(xlog2x(nl / n) + xlog2x(nr / n));
      const double s = score(gain, split_info);
      if (!best.valid || s > best.score + kTieTolerance) {
        double t = lo + (hi - lo) / 2.0;
        if (!(t < hi)) t = lo;
        best = {true, s, a, t};
      }
    }
  }

  void consider_nominal(std::size_t a, const std::vector<std::size_t>& rows, double parent_h,
                        Candidate& best) const {
    using tree_detail::xlog2x;
    const std::size_t slots = encoder_.slots(a);
    std::vector<double> counts(slots * num_classes_, 0.0), branch(slots, 0.0);
    for (auto i : rows) {
      const auto s = static_cast<std::size_t>(row(i)[a]);
      counts[s * num_classes_ + classes_[i]] += 1.0;
      branch[s] += 1.0;
    }
    std::size_t big = 0;
    for (double b : branch) big += b >= static_cast<double>(params_.min_leaf) ? 1 : 0;
    if (big < 2) return;
    const double n = static_cast<double>(rows.size());
    double weighted_h = 0.0, split_info = 0.0;
    for (std::size_t s = 0; s < slots; ++s) {
      if (branch[s] == 0.0) continue;
      double sum = 0.0;
      for (std::size_t c = 0; c < num_classes_; ++c) sum += xlog2x(counts[s * num_classes_ + c]);
      weighted_h += branch[s] * tree_detail::entropy(branch[s], sum);
      split_info -= xlog2x(branch[s] / n);
    }
    const double gain = parent_h - weighted_h / n;
    if (!(gain > 1e-12)) return;
    const double s = score(gain, split_info);
    if (!best.valid || s > best.score + kTieTolerance) best = {true, s, a, 0.0};
  }

  std::size_t grow(const std::vector<std::size_t>& rows, std::size_t depth, Rng& rng) {
    using tree_detail::xlog2x;
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    std::vector<double> counts(num_classes_, 0.0);
    for (auto i : rows) counts[classes_[i]] += 1.0;
    nodes_[id].counts = counts;

    const std::size_t n = rows.size();
    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    if (pure || n < 2 * params_.min_leaf || (params_.max_depth > 0 && depth >= params_.max_depth))
      return id;

    double sum = 0.0;
    for (double c : counts) sum += xlog2x(c);
    const double parent_h = tree_detail::entropy(static_cast<double>(n), sum);

    Candidate best;
    for (auto a : candidate_attributes(rng)) {
      if (encoder_.is_nominal(a))
        consider_nominal(a, rows, parent_h, best);
      else
        consider_numeric(a, rows, parent_h, best);
    }
    if (!best.valid) return id;

    const bool nominal = encoder_.is_nominal(best.attribute);
    const std::size_t fanout = nominal ? encoder_.slots(best.attribute) : 2;
    nodes_[id].attribute = best.attribute;
    nodes_[id].threshold = best.threshold;
    std::vector<std::vector<std::size_t>> parts(fanout);
    for (auto i : rows) parts[child_index(nodes_[id], row(i))].push_back(i);

    std::vector<std::size_t> children;
    for (auto& part : parts) {
      if (part.empty()) {
        children.push_back(nodes_.size());
        TreeNode leaf;
        leaf.counts = counts;
        nodes_.push_back(std::move(leaf));
      } else {
        children.push_back(grow(part, depth + 1, rng));
      }
    }
    nodes_[id].children = std::move(children);
    return id;
  }

  // Returns fold errors of the (possibly collapsed) subtree rooted at id.
  std::size_t reduced_error_prune(std::size_t id, const std::vector<std::size_t>& rows) {
    const std::size_t label = majority(nodes_[id].counts);
    std::size_t leaf_errors = 0;
    for (auto i : rows) leaf_errors += classes_[i] != label ? 1 : 0;
    if (nodes_[id].is_leaf()) return leaf_errors;

    std::vector<std::vector<std::size_t>> parts(nodes_[id].children.size());
    for (auto i : rows) parts[child_index(nodes_[id], row(i))].push_back(i);
    std::size_t subtree_errors = 0;
    for (std::size_t k = 0; k < parts.size(); ++k)
      subtree_errors += reduced_error_prune(nodes_[id].children[k], parts[k]);
    if (leaf_errors <= subtree_errors) {
      nodes_[id].attribute = kLeaf;
      nodes_[id].threshold = 0.0;
      nodes_[id].children.clear();
      return leaf_errors;
    }
    return subtree_errors;
  }

  // Drops unreachable nodes, renumbering in depth-first order.
  void compact() {
    std::vector<TreeNode> out;
    out.reserve(nodes_.size());
    copy_subtree(0, out);
    nodes_ = std::move(out);
  }

  std::size_t copy_subtree(std::size_t id, std::vector<TreeNode>& out) const {
    const std::size_t new_id = out.size();
    out.push_back(nodes_[id]);
    std::vector<std::size_t> kids;
    for (auto c : nodes_[id].children) kids.push_back(copy_subtree(c, out));
    out[new_id].children = std::move(kids);
    return new_id;
  }

  TreeParams params_;
  FeatureEncoder encoder_;
  std::size_t num_classes_;
  std::vector<TreeNode> nodes_;
  std::optional<PruningTrace> trace_;
  // Training scratch, released after fitting.
  std::vector<double> enc_;
  std::vector<std::size_t> classes_;
};

}  // namespace mullab

#endif  // MULLAB_DECISION_TREE_HPP
