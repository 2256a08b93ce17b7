#ifndef MULLAB_SYNTHETIC_HPP
#define MULLAB_SYNTHETIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "random.hpp"

namespace mullab {

// Correlated multi-label data from overlapping linear scores.
//
// Features x ~ N(0, I). Label j is positive when
//   shared_weight * (u . x) + own_weight * (v_j . x) + noise * e_j  >  c_j
// where u is a unit direction common to every label, v_j is a unit direction
// orthogonal to u, e_j ~ N(0, 1), and c_j puts the positive rate near
// `positive_rate`. The common term makes every pair of latent scores correlate
// by at least (shared^2 - own^2) / (shared^2 + own^2 + noise^2).
struct SyntheticSpec {
  std::size_t n_rows = 300;
  std::size_t n_labels = 6;
  std::size_t n_features = 10;
  double shared_weight = 1.2;
  double own_weight = 0.6;
  double noise = 0.4;
  double positive_rate = 0.35;
  std::uint64_t seed = 1;
};

inline double normal_deviate(Rng& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Upper-tail standard normal quantile by bisection on erfc.
inline double normal_upper_quantile(double p) {
  double lo = -10.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(mid / std::sqrt(2.0)) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline MLDataset make_synthetic(const SyntheticSpec& spec) {
  Rng rng(spec.seed);
  const std::size_t d = spec.n_features;
  auto unit = [&](std::vector<double> v) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    return v;
  };
  auto random_vec = [&] {
    std::vector<double> v(d);
    for (double& x : v) x = normal_deviate(rng);
    return v;
  };
  const auto u = unit(random_vec());
  std::vector<std::vector<double>> own;
  for (std::size_t j = 0; j < spec.n_labels; ++j) {
    auto v = random_vec();
    double dot = 0.0;
    for (std::size_t a = 0; a < d; ++a) dot += v[a] * u[a];
    for (std::size_t a = 0; a < d; ++a) v[a] -= dot * u[a];
    own.push_back(unit(std::move(v)));
  }
  const double sd = std::sqrt(spec.shared_weight * spec.shared_weight + spec.own_weight * spec.own_weight +
                              spec.noise * spec.noise);
  const double cut = normal_upper_quantile(spec.positive_rate) * sd;

  Schema schema;
  for (std::size_t a = 0; a < d; ++a) schema.attributes.push_back(Attribute::numeric("x" + std::to_string(a)));
  for (std::size_t j = 0; j < spec.n_labels; ++j) schema.label_names.push_back("y" + std::to_string(j));
  MLDataset out(schema);
  for (std::size_t i = 0; i < spec.n_rows; ++i) {
    const auto x = random_vec();
    double shared = 0.0;
    for (std::size_t a = 0; a < d; ++a) shared += u[a] * x[a];
    LabelSet y(spec.n_labels);
    for (std::size_t j = 0; j < spec.n_labels; ++j) {
      double s = spec.shared_weight * shared;
      for (std::size_t a = 0; a < d; ++a) s += spec.own_weight * own[j][a] * x[a];
      s += spec.noise * normal_deviate(rng);
      if (s > cut) y.set(j);
    }
    FeatureVector fv;
    fv.reserve(d);
    for (double v : x) fv.push_back(AttributeValue::numeric(v));
    out.add(std::move(fv), std::move(y));
  }
  return out;
}

// Pearson (phi) correlation of the 0/1 indicators of labels a and b.
inline double label_correlation(const MLDataset& d, std::size_t a, std::size_t b) {
  const double n = static_cast<double>(d.size());
  double sa = 0, sb = 0, sab = 0;
  for (const auto& y : d.labels()) {
    const double ya = y.test(a) ? 1.0 : 0.0, yb = y.test(b) ? 1.0 : 0.0;
    sa += ya;
    sb += yb;
    sab += ya * yb;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double va = sa / n * (1 - sa / n), vb = sb / n * (1 - sb / n);
  return va > 0 && vb > 0 ? cov / std::sqrt(va * vb) : 0.0;
}

}  // namespace mullab

#endif  // MULLAB_SYNTHETIC_HPP
