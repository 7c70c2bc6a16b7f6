#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "datamin/data.hpp"
#include "datamin/learner.hpp"

namespace datamin::testutil {

// Random binary logistic instance used across the oracle suites.
inline Dataset random_binary(Eigen::Index n, Eigen::Index p, std::uint64_t seed,
                             double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, scale);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Dataset ds;
  ds.features = MatrixXd(n, p);
  ds.labels = VectorXi(n);
  ds.n_classes = 2;
  VectorXd w(p);
  for (Eigen::Index j = 0; j < p; ++j) w(j) = norm(rng);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) ds.features(i, j) = norm(rng);
    const double z = ds.features.row(i).dot(w);
    ds.labels(i) = unif(rng) < 1.0 / (1.0 + std::exp(-z)) ? 1 : 0;
  }
  // guard against degenerate single-class draws
  bool has0 = false, has1 = false;
  for (Eigen::Index i = 0; i < n; ++i) (ds.labels(i) ? has1 : has0) = true;
  if (!has0) ds.labels(0) = 0;
  if (!has1) ds.labels(n - 1) = 1;
  for (Eigen::Index j = 0; j < p; ++j) ds.feature_names.push_back("f" + std::to_string(j));
  ds.class_names = {"0", "1"};
  return ds;
}

// Random multinomial instance (3 classes) for the multi-logit paths.
inline Dataset random_multinomial(Eigen::Index n, Eigen::Index p, int classes,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  Dataset ds;
  ds.features = MatrixXd(n, p);
  ds.labels = VectorXi(n);
  ds.n_classes = classes;
  MatrixXd w(classes, p);
  for (Eigen::Index c = 0; c < classes; ++c)
    for (Eigen::Index j = 0; j < p; ++j) w(c, j) = norm(rng);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) ds.features(i, j) = norm(rng);
    VectorXd z = w * ds.features.row(i).transpose();
    Eigen::Index best = 0;
    z(0) += norm(rng);
    for (Eigen::Index c = 1; c < classes; ++c) {
      z(c) += norm(rng);
      if (z(c) > z(best)) best = c;
    }
    ds.labels(i) = static_cast<int>(best);
  }
  // make sure every class appears
  for (int c = 0; c < classes; ++c) ds.labels(c) = c;
  for (Eigen::Index j = 0; j < p; ++j) ds.feature_names.push_back("f" + std::to_string(j));
  for (int c = 0; c < classes; ++c) ds.class_names.push_back(std::to_string(c));
  return ds;
}

// Identifier-feature instance for the privacy misalignment experiments:
// f0 is a full-precision unique identifier uncorrelated with the label,
// f1..f3 are label-informative but quantized to 8 levels, f4..f5 are binary
// noise. Auxiliary data is the original plus small Gaussian noise.
struct IdentifierInstance {
  Dataset dataset;
  MatrixXd aux;
};

inline IdentifierInstance identifier_instance(Eigen::Index n, std::uint64_t seed,
                                              double aux_noise = 0.005) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Eigen::Index p = 6;

  IdentifierInstance inst;
  Dataset& ds = inst.dataset;
  ds.features = MatrixXd(n, p);
  ds.labels = VectorXi(n);
  ds.n_classes = 2;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (Eigen::Index i = 0; i < n; ++i) {
    ds.features(i, 0) = (static_cast<double>(order[static_cast<std::size_t>(i)]) + 0.5) /
                        static_cast<double>(n);
    for (Eigen::Index j = 1; j <= 3; ++j)
      ds.features(i, j) = std::floor(unif(rng) * 8.0) / 8.0;
    for (Eigen::Index j = 4; j <= 5; ++j) ds.features(i, j) = unif(rng) < 0.5 ? 0.0 : 1.0;
    const double z = 3.0 * (ds.features(i, 1) + ds.features(i, 2) + ds.features(i, 3)) - 4.5;
    ds.labels(i) = unif(rng) < 1.0 / (1.0 + std::exp(-z)) ? 1 : 0;
  }
  for (Eigen::Index j = 0; j < p; ++j) ds.feature_names.push_back("f" + std::to_string(j));
  ds.class_names = {"0", "1"};

  inst.aux = ds.features;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) inst.aux(i, j) += aux_noise * norm(rng);
  return inst;
}

// Central finite difference of a scalar function of a flattened parameter
// vector.
template <typename F>
VectorXd fd_gradient(const F& f, const VectorXd& at, double step = 1e-5) {
  VectorXd g(at.size());
  for (Eigen::Index i = 0; i < at.size(); ++i) {
    VectorXd hi = at, lo = at;
    hi(i) += step;
    lo(i) -= step;
    g(i) = (f(hi) - f(lo)) / (2.0 * step);
  }
  return g;
}

}  // namespace datamin::testutil
