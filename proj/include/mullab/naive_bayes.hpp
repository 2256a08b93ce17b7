#ifndef MULLAB_NAIVE_BAYES_HPP
#define MULLAB_NAIVE_BAYES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "classifier.hpp"

namespace mullab {

struct NaiveBayesParams {
  double variance_floor = 1e-6;

  bool operator==(const NaiveBayesParams&) const = default;
};

// Gaussian likelihood per numeric attribute and class (maximum-likelihood
// variance, floored), Laplace-smoothed categorical likelihoods for nominal
// attributes, empirical class priors.
class NaiveBayesClassifier final : public Classifier {
 public:
  NaiveBayesClassifier(const NaiveBayesParams& params, const std::vector<Attribute>& attributes,
                       std::span<const FeatureVector> rows, std::span<const std::size_t> classes,
                       std::size_t num_classes)
      : params_(params), encoder_(attributes, rows), num_classes_(num_classes) {
    detail::check_training_set(rows, classes, num_classes);
    if (!(params_.variance_floor > 0.0)) throw ConfigError("naive Bayes variance floor must be > 0");
    const std::size_t d = encoder_.width();
    const std::size_t n = rows.size();
    class_count_.assign(num_classes_, 0.0);
    mean_.assign(num_classes_ * d, 0.0);
    var_.assign(num_classes_ * d, 0.0);
    cat_offset_.assign(d, 0);
    std::size_t total_slots = 0;
    for (std::size_t a = 0; a < d; ++a)
      if (encoder_.is_nominal(a)) {
        cat_offset_[a] = total_slots;
        total_slots += encoder_.slots(a);
      }
    cat_count_.assign(num_classes_ * total_slots, 0.0);
    total_slots_ = total_slots;

    std::vector<double> enc(n * d);
    for (std::size_t i = 0; i < n; ++i) encoder_.encode(rows[i], &enc[i * d]);

    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = classes[i];
      class_count_[c] += 1.0;
      for (std::size_t a = 0; a < d; ++a) {
        const double v = enc[i * d + a];
        if (encoder_.is_nominal(a))
          cat_count_[c * total_slots_ + cat_offset_[a] + static_cast<std::size_t>(v)] += 1.0;
        else
          mean_[c * d + a] += v;
      }
    }
    for (std::size_t c = 0; c < num_classes_; ++c)
      if (class_count_[c] > 0)
        for (std::size_t a = 0; a < d; ++a) mean_[c * d + a] /= class_count_[c];
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = classes[i];
      for (std::size_t a = 0; a < d; ++a) {
        if (encoder_.is_nominal(a)) continue;
        const double diff = enc[i * d + a] - mean_[c * d + a];
        var_[c * d + a] += diff * diff;
      }
    }
    for (std::size_t c = 0; c < num_classes_; ++c)
      for (std::size_t a = 0; a < d; ++a) {
        double& v = var_[c * d + a];
        v = class_count_[c] > 0 ? v / class_count_[c] : 0.0;
        v = std::max(v, params_.variance_floor);
      }
    total_ = static_cast<double>(n);
  }

  std::size_t num_classes() const override { return num_classes_; }

  ClassDistribution predict_dist(const FeatureVector& x) const override {
    const std::size_t d = encoder_.width();
    const std::vector<double> q = encoder_.encode(x);
    std::vector<double> logp(num_classes_, -std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < num_classes_; ++c) {
      if (class_count_[c] == 0) continue;
      double lp = std::log(class_count_[c] / total_);
      for (std::size_t a = 0; a < d; ++a) {
        if (encoder_.is_nominal(a)) {
          const double cnt = cat_count_[c * total_slots_ + cat_offset_[a] + static_cast<std::size_t>(q[a])];
          lp += std::log((cnt + 1.0) / (class_count_[c] + static_cast<double>(encoder_.slots(a))));
        } else {
          const double var = var_[c * d + a];
          const double diff = q[a] - mean_[c * d + a];
          lp += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
        }
      }
      logp[c] = lp;
    }
    const double top = *std::max_element(logp.begin(), logp.end());
    ClassDistribution out{std::vector<double>(num_classes_, 0.0)};
    double z = 0.0;
    for (std::size_t c = 0; c < num_classes_; ++c) {
      out.probs[c] = class_count_[c] == 0 ? 0.0 : std::exp(logp[c] - top);
      z += out.probs[c];
    }
    for (auto& p : out.probs) p /= z;
    return out;
  }

 private:
  NaiveBayesParams params_;
  FeatureEncoder encoder_;
  std::size_t num_classes_;
  double total_ = 0.0;
  std::vector<double> class_count_;
  std::vector<double> mean_;  // [class][attribute]
  std::vector<double> var_;   // [class][attribute]
  std::vector<std::size_t> cat_offset_;
  std::size_t total_slots_ = 0;
  std::vector<double> cat_count_;  // [class][slot]
};

}  // namespace mullab

#endif  // MULLAB_NAIVE_BAYES_HPP
