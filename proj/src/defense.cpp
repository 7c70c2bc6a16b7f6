#include "datamin/defense.hpp"

#include <cmath>
#include <set>

#include "datamin/minimize.hpp"

namespace datamin {

namespace {

VectorXd normalize_minmax(const VectorXd& raw) {
  const double lo = raw.minCoeff(), hi = raw.maxCoeff();
  if (hi <= lo) return VectorXd::Zero(raw.size());
  return (raw.array() - lo) / (hi - lo);
}

}  // namespace

PrivacyScores uniqueness_scores(const Dataset& dataset) {
  const Eigen::Index p = dataset.p();
  PrivacyScores s;
  s.kind = PrivacyScores::Kind::Uniqueness;
  s.raw = VectorXd(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    std::set<long long> distinct;
    for (Eigen::Index i = 0; i < dataset.n(); ++i)
      distinct.insert(std::llround(dataset.features(i, j) * 1e6));
    s.raw(j) = -static_cast<double>(distinct.size());
  }
  s.normalized = normalize_minmax(s.raw);
  return s;
}

PrivacyScores correlation_scores(const Dataset& dataset) {
  const Eigen::Index p = dataset.p();
  if (p < 2) throw DataError("correlation_scores: need at least 2 features");
  PrivacyScores s;
  s.kind = PrivacyScores::Kind::Correlation;
  s.raw = VectorXd::Zero(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double acc = 0.0;
    for (Eigen::Index h = 0; h < p; ++h) {
      if (h == j) continue;
      acc += std::abs(pearson(dataset.features.col(j), dataset.features.col(h)));
    }
    s.raw(j) = -acc / static_cast<double>(p - 1);
  }
  s.normalized = normalize_minmax(s.raw);
  return s;
}

Mask apply_privacy_scores(const Mask& base_mask, const PrivacyScores& scores,
                          double beta, std::size_t k) {
  if (scores.normalized.size() != base_mask.p())
    throw DataError("apply_privacy_scores: score arity does not match mask");
  if (beta < 0) throw UsageError("apply_privacy_scores: beta must be nonnegative");
  const Eigen::Index n = base_mask.n(), p = base_mask.p();
  MatrixXd c(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      c(i, j) = (base_mask.at(i, j) ? 1.0 : 0.0) + beta * scores.normalized(j);
  return top_k_mask(c, k);
}

}  // namespace datamin
