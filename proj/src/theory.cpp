#include "datamin/theory.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "datamin/impute.hpp"
#include "datamin/minimize.hpp"

namespace datamin {

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x7eu};
  return std::mt19937_64(seq);
}

}  // namespace

double bayes_mse(double var_y, const VectorXd& cov_yx, const VectorXd& var_x,
                 const std::vector<Eigen::Index>& removed) {
  if ((var_x.array() <= 0).any()) throw NumericError("bayes_mse: nonpositive variance");
  std::vector<bool> is_removed(static_cast<std::size_t>(var_x.size()), false);
  for (Eigen::Index j : removed) is_removed[static_cast<std::size_t>(j)] = true;
  double mse = var_y;
  for (Eigen::Index j = 0; j < var_x.size(); ++j)
    if (!is_removed[static_cast<std::size_t>(j)])
      mse -= cov_yx(j) * cov_yx(j) / var_x(j);
  return mse;
}

BoundCheckResult check_feature_selection_thm(const VectorXd& cov_yx,
                                             const VectorXd& var_x, double noise_var,
                                             const std::vector<Eigen::Index>& removed,
                                             Eigen::Index n_mc, std::uint64_t seed) {
  const Eigen::Index p = var_x.size();
  // With independent features, y = sum_j (cov_j / var_j) x_j + noise matches
  // the requested covariance structure exactly.
  VectorXd coef = cov_yx.cwiseQuotient(var_x);
  const double var_y = coef.cwiseProduct(cov_yx).sum() + noise_var;
  const double formula = bayes_mse(var_y, cov_yx, var_x, removed);

  std::vector<bool> is_removed(static_cast<std::size_t>(p), false);
  for (Eigen::Index j : removed) is_removed[static_cast<std::size_t>(j)] = true;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  double acc = 0.0;
  for (Eigen::Index t = 0; t < n_mc; ++t) {
    double y = norm(rng) * std::sqrt(noise_var);
    double pred = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double x = norm(rng) * std::sqrt(var_x(j));
      y += coef(j) * x;
      if (!is_removed[static_cast<std::size_t>(j)]) pred += coef(j) * x;
    }
    acc += (y - pred) * (y - pred);
  }
  const double mc = acc / static_cast<double>(n_mc);

  BoundCheckResult r;
  r.name = "feature_selection_bayes_mse";
  r.lhs = std::abs(mc - formula);
  r.rhs = 0.03 * formula;
  r.slack = 0.0;
  r.holds = r.lhs <= r.rhs;
  r.trials = static_cast<int>(n_mc);
  std::ostringstream cfg;
  cfg << "p=" << p << ",removed=" << removed.size() << ",seed=" << seed
      << ",mc_mse=" << mc << ",formula_mse=" << formula;
  r.config = cfg.str();
  return r;
}

BoundCheckResult check_sampling_bound(const Dataset& dataset, double lambda,
                                      Eigen::Index subset_size, int trials,
                                      std::uint64_t seed, double slack_factor) {
  if (lambda <= 0) throw NumericError("check_sampling_bound: lambda must be positive");
  ModelParams theta_star = train(dataset, lambda, 1e-10);
  const VectorXd theta_flat = theta_star.flatten();
  const Eigen::Index n = dataset.n();

  // Empirical covariance trace of the per-row gradients of the regularized
  // per-row objective at the full-data optimum (their mean is ~0 there).
  VectorXd ridge = VectorXd::Zero(theta_flat.size());
  for (Eigen::Index c = 0; c < theta_star.weights.rows(); ++c)
    for (Eigen::Index j = 0; j < theta_star.weights.cols(); ++j)
      ridge(c * theta_star.weights.cols() + j) = lambda * theta_star.weights(c, j);

  MatrixXd grads(n, theta_flat.size());
  for (Eigen::Index i = 0; i < n; ++i)
    grads.row(i) = (row_gradient(theta_star, dataset.features.row(i), dataset.labels(i)) +
                    ridge).transpose();
  const Eigen::RowVectorXd gbar = grads.colwise().mean();
  double trace = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) trace += (grads.row(i) - gbar).squaredNorm();
  trace /= static_cast<double>(n);

  const double bound = 2.0 * trace / (lambda * static_cast<double>(subset_size));

  double sum_norm = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    Dataset sub = dataset;
    sub.features = MatrixXd(subset_size, dataset.p());
    sub.labels = VectorXi(subset_size);
    for (Eigen::Index i = 0; i < subset_size; ++i) {
      const Eigen::Index r = pick(rng);
      sub.features.row(i) = dataset.features.row(r);
      sub.labels(i) = dataset.labels(r);
    }
    ModelParams theta_hat = train(sub, lambda, 1e-8);
    const double d = (theta_hat.flatten() - theta_flat).norm();
    sum_norm += d;
    sum_sq += d * d;
  }

  BoundCheckResult r;
  r.name = "sampling_parameter_bound";
  r.lhs = sum_norm / trials;
  r.rhs = bound;
  r.slack = (slack_factor - 1.0) * bound;
  r.holds = r.lhs <= r.rhs + r.slack;
  r.trials = trials;
  r.mean_norm = sum_norm / trials;
  r.mean_sq_norm = sum_sq / trials;
  std::ostringstream cfg;
  cfg << "n=" << n << ",p=" << dataset.p() << ",lambda=" << lambda
      << ",subset=" << subset_size << ",seed=" << seed << ",trace=" << trace;
  r.config = cfg.str();
  return r;
}

BoundCheckResult check_utility_bound(const Dataset& dataset, double lambda,
                                     std::size_t removal_count, int trials,
                                     std::uint64_t seed) {
  if (lambda <= 0) throw NumericError("check_utility_bound: lambda must be positive");
  ModelParams theta_star = train(dataset, lambda, 1e-10);
  const double j_star = loss(theta_star, dataset);
  SensitivityMatrix sens = sensitivity_at(theta_star, dataset, lambda);
  const double x_inf = dataset.features.cwiseAbs().maxCoeff();
  const double s = static_cast<double>(removal_count);
  const double rhs = j_star + std::sqrt(2.0 * s) * x_inf * sens.entries.norm() +
                     s * x_inf * x_inf;

  const std::size_t total = static_cast<std::size_t>(dataset.n() * dataset.p());
  if (removal_count > total)
    throw UsageError("check_utility_bound: removal count exceeds entry count");
  const Imputer zero = Imputer::zero();

  double acc = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto rng = trial_rng(seed, 0x100 + static_cast<std::uint64_t>(t));
    Mask mask = individualized_random_mask(dataset.n(), dataset.p(),
                                           total - removal_count, rng());
    acc += target_utility(dataset, mask, lambda, zero).loss;
  }

  BoundCheckResult r;
  r.name = "personalized_subsampling_utility_bound";
  r.lhs = trials > 0 ? acc / trials : j_star;
  r.rhs = rhs;
  r.slack = 1e-9;
  r.holds = r.lhs <= r.rhs + r.slack;
  r.trials = trials;
  std::ostringstream cfg;
  cfg << "n=" << dataset.n() << ",p=" << dataset.p() << ",lambda=" << lambda
      << ",removed=" << removal_count << ",seed=" << seed << ",j_star=" << j_star;
  r.config = cfg.str();
  return r;
}

TaylorResidualResult check_taylor_residual(const Dataset& dataset, double lambda,
                                           const std::vector<double>& eps_list,
                                           std::uint64_t seed) {
  for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
    if (eps_list[i] <= eps_list[i + 1])
      throw UsageError("check_taylor_residual: eps values must be positive decreasing");
  ModelParams theta_star = train(dataset, lambda, 1e-13);
  const double j0 = loss(theta_star, dataset);
  SensitivityMatrix sens = sensitivity_at(theta_star, dataset, lambda);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  MatrixXd dir(dataset.n(), dataset.p());
  for (Eigen::Index i = 0; i < dataset.n(); ++i)
    for (Eigen::Index j = 0; j < dataset.p(); ++j) dir(i, j) = norm(rng);
  dir /= dir.norm();
  const double linear = dir.cwiseProduct(sens.entries).sum();

  TaylorResidualResult out;
  for (double eps : eps_list) {
    Dataset perturbed = dataset;
    perturbed.features = dataset.features + eps * dir;
    ModelParams theta_eps = train_from(perturbed, lambda, theta_star, 1e-13);
    const double j_eps = loss(theta_eps, dataset);
    out.table.push_back({eps, std::abs(j_eps - j0 - eps * linear)});
  }

  out.second_order = true;
  for (std::size_t i = 0; i + 1 < out.table.size(); ++i) {
    const auto& a = out.table[i];
    const auto& b = out.table[i + 1];
    const double ca = a.residual / (a.eps * a.eps);
    const double cb = b.residual / (b.eps * b.eps);
    if (cb <= 0 || ca <= 0 || ca / cb > 8.0 || cb / ca > 8.0) out.second_order = false;
  }
  return out;
}

std::string bound_checks_to_json(const std::vector<BoundCheckResult>& results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    j["trials"] = r.trials;
    j["config"] = r.config;
    if (r.name == "sampling_parameter_bound") {
      j["mean_norm"] = r.mean_norm;
      j["mean_sq_norm"] = r.mean_sq_norm;
    }
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace datamin
