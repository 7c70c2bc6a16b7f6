#pragma once

#include <string>
#include <vector>

#include "datamin/data.hpp"
#include "datamin/learner.hpp"

namespace datamin {

struct BoundCheckResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // holds = (lhs <= rhs + slack)
  bool holds = false;
  int trials = 0;
  std::string config;
  // extra moments for the sampling bound (stated vs proof forms differ)
  double mean_norm = 0.0;
  double mean_sq_norm = 0.0;
};

// Bayes MSE of the optimal linear predictor on the kept features when
// features are mutually independent: Var[y] - sum_kept cov^2 / var.
double bayes_mse(double var_y, const VectorXd& cov_yx, const VectorXd& var_x,
                 const std::vector<Eigen::Index>& removed);

BoundCheckResult check_feature_selection_thm(const VectorXd& cov_yx,
                                             const VectorXd& var_x, double noise_var,
                                             const std::vector<Eigen::Index>& removed,
                                             Eigen::Index n_mc, std::uint64_t seed);

BoundCheckResult check_sampling_bound(const Dataset& dataset, double lambda,
                                      Eigen::Index subset_size, int trials,
                                      std::uint64_t seed, double slack_factor = 1.0);

BoundCheckResult check_utility_bound(const Dataset& dataset, double lambda,
                                     std::size_t removal_count, int trials,
                                     std::uint64_t seed);

struct TaylorResidualRow {
  double eps = 0.0;
  double residual = 0.0;
};

struct TaylorResidualResult {
  std::vector<TaylorResidualRow> table;
  bool second_order = false;  // residual/eps^2 bounded within factor 8
};

TaylorResidualResult check_taylor_residual(const Dataset& dataset, double lambda,
                                           const std::vector<double>& eps_list,
                                           std::uint64_t seed);

std::string bound_checks_to_json(const std::vector<BoundCheckResult>& results);

}  // namespace datamin
