#ifndef MULLAB_CLASSIFIER_HPP
#define MULLAB_CLASSIFIER_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"

namespace mullab {

// Probability vector over the C classes of a single-label problem.
struct ClassDistribution {
  std::vector<double> probs;

  std::size_t size() const noexcept { return probs.size(); }
  double operator[](std::size_t c) const { return probs[c]; }

  // Most probable class; ties go to the lower class index.
  std::size_t argmax() const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < probs.size(); ++c)
      if (probs[c] > probs[best]) best = c;
    return best;
  }

  static ClassDistribution point_mass(std::size_t num_classes, std::size_t c) {
    ClassDistribution d{std::vector<double>(num_classes, 0.0)};
    d.probs[c] = 1.0;
    return d;
  }
};

// A trained single-label classifier. Immutable after construction; predict_dist
// may be called concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::size_t num_classes() const = 0;
  virtual ClassDistribution predict_dist(const FeatureVector& x) const = 0;

  std::size_t predict(const FeatureVector& x) const { return predict_dist(x).argmax(); }
};

// Turns feature vectors into dense rows of doubles for the learners:
// numeric cells keep their value (missing -> training mean), nominal cells
// become their category index (missing -> an extra category, index K).
class FeatureEncoder {
 public:
  FeatureEncoder() = default;

  FeatureEncoder(const std::vector<Attribute>& attributes, std::span<const FeatureVector> rows)
      : attributes_(attributes), means_(attributes.size(), 0.0) {
    std::vector<std::size_t> counts(attributes.size(), 0);
    for (const auto& x : rows) {
      check_arity(x);
      for (std::size_t a = 0; a < x.size(); ++a)
        if (!attributes_[a].is_nominal() && !x[a].is_missing()) {
          means_[a] += x[a].number();
          ++counts[a];
        }
    }
    for (std::size_t a = 0; a < means_.size(); ++a)
      if (counts[a]) means_[a] /= static_cast<double>(counts[a]);
  }

  std::size_t width() const noexcept { return attributes_.size(); }
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
  bool is_nominal(std::size_t a) const { return attributes_[a].is_nominal(); }

  // Number of category slots of a nominal attribute, including the missing slot.
  std::size_t slots(std::size_t a) const { return attributes_[a].category_count() + 1; }

  void check_arity(const FeatureVector& x) const {
    if (x.size() != attributes_.size())
      throw DataError("feature vector has " + std::to_string(x.size()) + " values, expected " +
                      std::to_string(attributes_.size()));
  }

  void encode(const FeatureVector& x, double* out) const {
    check_arity(x);
    for (std::size_t a = 0; a < x.size(); ++a) {
      if (attributes_[a].is_nominal())
        out[a] = x[a].is_missing() ? static_cast<double>(attributes_[a].category_count())
                                   : static_cast<double>(x[a].category());
      else
        out[a] = x[a].is_missing() ? means_[a] : x[a].number();
    }
  }

  std::vector<double> encode(const FeatureVector& x) const {
    std::vector<double> out(width());
    encode(x, out.data());
    return out;
  }

 private:
  std::vector<Attribute> attributes_;
  std::vector<double> means_;
};

namespace detail {

inline void check_training_set(std::span<const FeatureVector> rows, std::span<const std::size_t> classes,
                               std::size_t num_classes) {
  if (rows.empty()) throw DataError("empty training set");
  if (rows.size() != classes.size()) throw DataError("feature and class counts differ");
  if (num_classes == 0) throw DataError("zero classes");
  for (auto c : classes)
    if (c >= num_classes) throw DataError("class index " + std::to_string(c) + " out of range");
}

}  // namespace detail

}  // namespace mullab

#endif  // MULLAB_CLASSIFIER_HPP
