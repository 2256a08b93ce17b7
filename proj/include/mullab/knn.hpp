#ifndef MULLAB_KNN_HPP
#define MULLAB_KNN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "classifier.hpp"

namespace mullab {

enum class KnnDistance { euclidean, manhattan };

struct KnnParams {
  std::size_t k = 5;
  KnnDistance distance = KnnDistance::euclidean;
  bool standardize = true;  // z-score numeric attributes with training mean/std

  bool operator==(const KnnParams&) const = default;
};

// k nearest neighbours with uniform votes. Numeric attributes contribute their
// (standardized) difference, nominal attributes a 0/1 mismatch. Distance ties
// go to the lower training row.
class KnnClassifier final : public Classifier {
 public:
  KnnClassifier(const KnnParams& params, const std::vector<Attribute>& attributes,
                std::span<const FeatureVector> rows, std::span<const std::size_t> classes,
                std::size_t num_classes)
      : params_(params), encoder_(attributes, rows), classes_(classes.begin(), classes.end()),
        num_classes_(num_classes) {
    detail::check_training_set(rows, classes, num_classes);
    if (params_.k < 1) throw ConfigError("k-NN needs k >= 1");
    const std::size_t d = encoder_.width();
    center_.assign(d, 0.0);
    scale_.assign(d, 1.0);
    data_.resize(rows.size() * d);
    for (std::size_t i = 0; i < rows.size(); ++i) encoder_.encode(rows[i], &data_[i * d]);
    if (params_.standardize) {
      const double n = static_cast<double>(rows.size());
      for (std::size_t a = 0; a < d; ++a) {
        if (encoder_.is_nominal(a)) continue;
        double mean = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) mean += data_[i * d + a];
        mean /= n;
        double var = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const double dv = data_[i * d + a] - mean;
          var += dv * dv;
        }
        const double sd = std::sqrt(var / n);
        center_[a] = mean;
        scale_[a] = sd > 0.0 ? sd : 1.0;
        for (std::size_t i = 0; i < rows.size(); ++i)
          data_[i * d + a] = (data_[i * d + a] - mean) / scale_[a];
      }
    }
  }

  std::size_t num_classes() const override { return num_classes_; }

  ClassDistribution predict_dist(const FeatureVector& x) const override {
    const std::size_t d = encoder_.width();
    std::vector<double> q = encoder_.encode(x);
    for (std::size_t a = 0; a < d; ++a)
      if (!encoder_.is_nominal(a)) q[a] = (q[a] - center_[a]) / scale_[a];

    const std::size_t n = classes_.size();
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = {distance(q.data(), &data_[i * d]), i};
    const std::size_t k = std::min(params_.k, n);
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());

    ClassDistribution out{std::vector<double>(num_classes_, 0.0)};
    for (std::size_t i = 0; i < k; ++i) out.probs[classes_[dist[i].second]] += 1.0;
    for (auto& p : out.probs) p /= static_cast<double>(k);
    return out;
  }

 private:
  // Squared Euclidean or Manhattan; monotone in the true distance either way.
  double distance(const double* a, const double* b) const {
    double s = 0.0;
    for (std::size_t j = 0; j < encoder_.width(); ++j) {
      if (encoder_.is_nominal(j)) {
        s += a[j] != b[j] ? 1.0 : 0.0;
      } else {
        const double diff = a[j] - b[j];
        s += params_.distance == KnnDistance::euclidean ? diff * diff : std::abs(diff);
      }
    }
    return s;
  }

  KnnParams params_;
  FeatureEncoder encoder_;
  std::vector<double> data_;  // row-major, encoded and standardized
  std::vector<double> center_;
  std::vector<double> scale_;
  std::vector<std::size_t> classes_;
  std::size_t num_classes_;
};

}  // namespace mullab

#endif  // MULLAB_KNN_HPP
