#include <doctest.h>

#include <cmath>
#include <random>

#include "datamin/impute.hpp"
#include "testutil.hpp"

using namespace datamin;
using namespace datamin::testutil;

namespace {

GaussianStats make_stats(VectorXd mean, MatrixXd cov) {
  GaussianStats s;
  s.mean = std::move(mean);
  s.cov = std::move(cov);
  s.jitter = 0.0;
  return s;
}

}  // namespace

TEST_CASE("zero and mean imputers fill exactly the removed entries") {
  MatrixXd x(2, 3);
  x << 1, 2, 3, 4, 5, 6;
  Mask mask(2, 3, true);
  mask.set(0, 1, false);
  mask.set(1, 2, false);
  MinimizedDataset md = MinimizedDataset::make(x, mask);

  MatrixXd z = impute(md, Imputer::zero());
  CHECK(z(0, 1) == 0.0);
  CHECK(z(1, 2) == 0.0);
  CHECK(z(0, 0) == 1.0);
  CHECK(z(1, 1) == 5.0);

  VectorXd mu(3);
  mu << 10, 20, 30;
  MatrixXd m = impute(md, Imputer::with_mean(mu));
  CHECK(m(0, 1) == 20.0);
  CHECK(m(1, 2) == 30.0);
  CHECK(m(0, 0) == 1.0);
}

TEST_CASE("bivariate gaussian imputation matches the hand conditional mean") {
  const double rho = 0.6;
  MatrixXd cov(2, 2);
  cov << 1, rho, rho, 1;
  VectorXd mu(2);
  mu << 0.5, -1.0;
  Imputer g = Imputer::gaussian(make_stats(mu, cov));

  MatrixXd x(1, 2);
  x << 2.0, 0.0;  // second value is missing
  Mask mask(1, 2, true);
  mask.set(0, 1, false);
  MatrixXd out = impute(MinimizedDataset::make(x, mask), g);
  // E[x1 | x0] = mu1 + rho * (x0 - mu0); the solver applies a 1e-6 ridge
  CHECK(out(0, 1) == doctest::Approx(-1.0 + rho * (2.0 - 0.5)).epsilon(1e-5));
  CHECK(out(0, 0) == 2.0);
}

TEST_CASE("zero correlation reduces gaussian to mean imputation") {
  VectorXd mu(3);
  mu << 1, 2, 3;
  MatrixXd cov = MatrixXd::Identity(3, 3) * 2.0;
  Imputer g = Imputer::gaussian(make_stats(mu, cov));

  MatrixXd x(2, 3);
  x << 9, 9, 9, 9, 9, 9;
  Mask mask(2, 3, true);
  mask.set(0, 2, false);
  mask.set(1, 0, false);
  MatrixXd out = impute(MinimizedDataset::make(x, mask), g);
  CHECK(out(0, 2) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(out(1, 0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fully missing rows fall back to the mean vector") {
  VectorXd mu(2);
  mu << 4, 7;
  MatrixXd cov(2, 2);
  cov << 1, 0.9, 0.9, 1;
  Imputer g = Imputer::gaussian(make_stats(mu, cov));
  MatrixXd x = MatrixXd::Zero(1, 2);
  Mask mask(1, 2, false);
  MatrixXd out = impute(MinimizedDataset::make(x, mask), g);
  CHECK(out(0, 0) == 4.0);
  CHECK(out(0, 1) == 7.0);
}

TEST_CASE("gaussian imputation matches a dense solve oracle") {
  // independent oracle: build cov_oo / cov_mo by hand and solve with
  // a fully pivoted LU instead of the cached Cholesky path
  std::mt19937_64 rng(7);
  std::normal_distribution<double> norm(0.0, 1.0);
  const Eigen::Index p = 5;
  MatrixXd a(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < p; ++j) a(i, j) = norm(rng);
  MatrixXd cov = a * a.transpose() + MatrixXd::Identity(p, p);
  VectorXd mu(p);
  for (Eigen::Index j = 0; j < p; ++j) mu(j) = norm(rng);
  Imputer g = Imputer::gaussian(make_stats(mu, cov));

  MatrixXd x(1, p);
  for (Eigen::Index j = 0; j < p; ++j) x(0, j) = norm(rng);
  Mask mask(1, p, true);
  mask.set(0, 1, false);
  mask.set(0, 3, false);
  MatrixXd out = impute(MinimizedDataset::make(x, mask), g);

  std::vector<Eigen::Index> obs = {0, 2, 4}, miss = {1, 3};
  MatrixXd cov_oo(3, 3), cov_mo(2, 3);
  for (int ai = 0; ai < 3; ++ai)
    for (int b = 0; b < 3; ++b) cov_oo(ai, b) = cov(obs[ai], obs[b]);
  for (int ai = 0; ai < 2; ++ai)
    for (int b = 0; b < 3; ++b) cov_mo(ai, b) = cov(miss[ai], obs[b]);
  VectorXd d(3);
  for (int ai = 0; ai < 3; ++ai) d(ai) = x(0, obs[ai]) - mu(obs[ai]);
  VectorXd fill = cov_mo * cov_oo.fullPivLu().solve(d);
  for (int ai = 0; ai < 2; ++ai)
    CHECK(out(0, miss[ai]) ==
          doctest::Approx(mu(miss[ai]) + fill(ai)).epsilon(1e-5));
  for (Eigen::Index j : obs) CHECK(out(0, j) == x(0, j));
}

TEST_CASE("imputation is idempotent on fully retained data") {
  Dataset ds = random_binary(10, 4, 3);
  std::vector<int> idx(10);
  for (int i = 0; i < 10; ++i) idx[i] = i;
  GaussianStats s = fit_gaussian_stats(ds.features, idx);
  Mask full(10, 4, true);
  MatrixXd out = impute(MinimizedDataset::make(ds.features, full), Imputer::gaussian(s));
  CHECK((out - ds.features).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fit_gaussian_stats reproduces hand moments") {
  MatrixXd x(3, 2);
  x << 0, 0, 2, 2, 4, 1;
  std::vector<int> idx = {0, 1, 2};
  GaussianStats s = fit_gaussian_stats(x, idx);
  CHECK(s.mean(0) == doctest::Approx(2.0));
  CHECK(s.mean(1) == doctest::Approx(1.0));
  // unbiased covariance with n-1 = 2 in the denominator
  CHECK(s.cov(0, 0) == doctest::Approx(4.0));
  CHECK(s.cov(1, 1) == doctest::Approx(1.0));
  CHECK(s.cov(0, 1) == doctest::Approx(1.0));
  CHECK(s.cov(1, 0) == s.cov(0, 1));
}

TEST_CASE("conditional mean beats the unconditional mean in Monte Carlo MSE") {
  // draws from a correlated gaussian; imputing f1 from f0 must reduce the
  // squared error versus filling with the marginal mean
  VectorXd mu(2);
  mu << 0, 0;
  MatrixXd cov(2, 2);
  cov << 1, 0.8, 0.8, 1;
  MatrixXd draws = sample_gaussian(20000, mu, cov, 99);

  Mask mask(draws.rows(), 2, true);
  for (Eigen::Index i = 0; i < draws.rows(); ++i) mask.set(i, 1, false);
  MinimizedDataset md = MinimizedDataset::make(draws, mask);

  MatrixXd cond = impute(md, Imputer::gaussian(make_stats(mu, cov)));
  MatrixXd marg = impute(md, Imputer::with_mean(mu));
  double mse_cond = 0, mse_marg = 0;
  for (Eigen::Index i = 0; i < draws.rows(); ++i) {
    mse_cond += std::pow(cond(i, 1) - draws(i, 1), 2);
    mse_marg += std::pow(marg(i, 1) - draws(i, 1), 2);
  }
  mse_cond /= static_cast<double>(draws.rows());
  mse_marg /= static_cast<double>(draws.rows());
  // theory: conditional residual variance 1 - rho^2 = 0.36 vs marginal 1.0
  CHECK(mse_cond == doctest::Approx(0.36).epsilon(0.05));
  CHECK(mse_marg == doctest::Approx(1.0).epsilon(0.05));
  CHECK(mse_cond < mse_marg);
}

TEST_CASE("gaussian stats json round trip") {
  Dataset ds = random_binary(8, 3, 5);
  std::vector<int> idx = {0, 1, 2, 3, 4, 5, 6, 7};
  GaussianStats s = fit_gaussian_stats(ds.features, idx);
  GaussianStats back = gaussian_stats_from_json(gaussian_stats_to_json(s));
  CHECK((back.mean - s.mean).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.cov - s.cov).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.jitter == s.jitter);
}

TEST_CASE("imputer arity mismatches raise data errors") {
  MatrixXd x(1, 3);
  x << 1, 2, 3;
  Mask mask(1, 3, false);
  MinimizedDataset md = MinimizedDataset::make(x, mask);
  VectorXd mu2(2);
  mu2 << 0, 0;
  CHECK_THROWS_AS(impute(md, Imputer::with_mean(mu2)), DataError);
  GaussianStats s = make_stats(mu2, MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(impute(md, Imputer::gaussian(s)), DataError);
}
