#pragma once

#include <Eigen/Dense>
#include <string>

#include "datamin/data.hpp"

namespace datamin {

struct Imputer;  // impute.hpp

// L2-regularized (multinomial) logistic regression. The binary case uses a
// single logit row; the multinomial case one row per class. Parameters
// flatten row-major weights first, then the bias vector. The bias is never
// regularized.
struct ModelParams {
  MatrixXd weights;  // rows x p, rows = 1 for binary, n_classes otherwise
  VectorXd bias;     // rows
  double lambda = 0.0;
  int n_classes = 2;

  Eigen::Index rows() const { return weights.rows(); }
  Eigen::Index p() const { return weights.cols(); }
  Eigen::Index dim() const { return weights.size() + bias.size(); }

  VectorXd flatten() const;
  static ModelParams unflatten(const VectorXd& v, Eigen::Index p, int n_classes,
                               double lambda);
};

struct SensitivityMatrix {
  MatrixXd entries;         // n x p, entry = -(L H^-1 G)_{ij}
  std::string evaluated_at; // fingerprint of (dataset shape, lambda)
};

struct TargetUtility {
  double loss = 0.0;
  double accuracy = 0.0;
};

ModelParams train(const Dataset& dataset, double lambda, double tol = 1e-8,
                  int max_iter = 500);
// Warm-started variant used by retraining oracles and fitness loops.
ModelParams train_from(const Dataset& dataset, double lambda, const ModelParams& init,
                       double tol = 1e-8, int max_iter = 500);

// Mean cross-entropy of theta on the data; no ridge term.
double loss(const ModelParams& theta, const Dataset& dataset);
double row_loss(const ModelParams& theta, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                int label);
double accuracy(const ModelParams& theta, const Dataset& dataset);

// Gradient of the unregularized utility J w.r.t. flattened parameters.
VectorXd gradient_theta(const ModelParams& theta, const Dataset& dataset);

// Gradient of the per-row cross-entropy w.r.t. flattened parameters.
VectorXd row_gradient(const ModelParams& theta,
                      const Eigen::Ref<const Eigen::RowVectorXd>& x, int label);

// Hessian of the regularized training objective (J + lambda/2 ||W||^2).
MatrixXd hessian(const ModelParams& theta, const Dataset& dataset, double lambda);

// Regularized training objective and its gradient (used by the solver and by
// finite-difference oracles in tests).
double reg_objective(const ModelParams& theta, const Dataset& dataset, double lambda);
VectorXd reg_gradient(const ModelParams& theta, const Dataset& dataset, double lambda);

// Implicit-function sensitivity dJ/dX = -L H^-1 G, computed via a single
// Hessian solve and an analytic per-entry cross-derivative pass; G is never
// materialized.
SensitivityMatrix sensitivity(const Dataset& dataset, double lambda,
                              double tol = 1e-10);
SensitivityMatrix sensitivity_at(const ModelParams& theta_star, const Dataset& dataset,
                                 double lambda);

// Columns of dtheta*/dX = -H^-1 G for one input entry (i, j); exposed so the
// retraining finite-difference oracles can check the parameter path directly.
VectorXd dtheta_dx(const ModelParams& theta_star, const Dataset& dataset,
                   double lambda, Eigen::Index i, Eigen::Index j);

// Trains on the imputed minimized data, evaluates on the original data.
TargetUtility target_utility(const Dataset& dataset, const Mask& mask, double lambda,
                             const Imputer& imputer, double tol = 1e-8);

std::string model_to_json(const ModelParams& theta);
ModelParams model_from_json(const std::string& text);

}  // namespace datamin
