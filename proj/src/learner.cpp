#include "datamin/learner.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "datamin/impute.hpp"

namespace datamin {

namespace {

double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) {
  return z > 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

// Stable softmax of a logit vector.
VectorXd softmax(const VectorXd& z) {
  const double m = z.maxCoeff();
  VectorXd e = (z.array() - m).exp();
  return e / e.sum();
}

Eigen::Index effective_rows(int n_classes) { return n_classes == 2 ? 1 : n_classes; }

ModelParams zero_model(Eigen::Index p, int n_classes, double lambda) {
  ModelParams theta;
  theta.n_classes = n_classes;
  theta.lambda = lambda;
  theta.weights = MatrixXd::Zero(effective_rows(n_classes), p);
  theta.bias = VectorXd::Zero(effective_rows(n_classes));
  return theta;
}

}  // namespace

VectorXd ModelParams::flatten() const {
  VectorXd v(dim());
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < weights.rows(); ++c)
    for (Eigen::Index j = 0; j < weights.cols(); ++j) v(idx++) = weights(c, j);
  for (Eigen::Index c = 0; c < bias.size(); ++c) v(idx++) = bias(c);
  return v;
}

ModelParams ModelParams::unflatten(const VectorXd& v, Eigen::Index p, int n_classes,
                                   double lambda) {
  ModelParams theta = zero_model(p, n_classes, lambda);
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < theta.weights.rows(); ++c)
    for (Eigen::Index j = 0; j < p; ++j) theta.weights(c, j) = v(idx++);
  for (Eigen::Index c = 0; c < theta.bias.size(); ++c) theta.bias(c) = v(idx++);
  return theta;
}

double row_loss(const ModelParams& theta, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                int label) {
  if (theta.rows() == 1) {
    const double z = theta.weights.row(0).dot(x) + theta.bias(0);
    return softplus(z) - (label == 1 ? z : 0.0);
  }
  VectorXd z = theta.weights * x.transpose() + theta.bias;
  const double m = z.maxCoeff();
  const double lse = m + std::log((z.array() - m).exp().sum());
  return lse - z(label);
}

double loss(const ModelParams& theta, const Dataset& dataset) {
  if (theta.p() != dataset.p()) throw DataError("loss: feature arity mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < dataset.n(); ++i)
    total += row_loss(theta, dataset.features.row(i), dataset.labels(i));
  return total / static_cast<double>(dataset.n());
}

double accuracy(const ModelParams& theta, const Dataset& dataset) {
  if (theta.p() != dataset.p()) throw DataError("accuracy: feature arity mismatch");
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < dataset.n(); ++i) {
    int pred;
    if (theta.rows() == 1) {
      const double z = theta.weights.row(0).dot(dataset.features.row(i)) + theta.bias(0);
      pred = z > 0 ? 1 : 0;  // tie (z == 0) goes to the lower class index
    } else {
      VectorXd z = theta.weights * dataset.features.row(i).transpose() + theta.bias;
      Eigen::Index best = 0;
      for (Eigen::Index c = 1; c < z.size(); ++c)
        if (z(c) > z(best)) best = c;
      pred = static_cast<int>(best);
    }
    if (pred == dataset.labels(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(dataset.n());
}

VectorXd row_gradient(const ModelParams& theta,
                      const Eigen::Ref<const Eigen::RowVectorXd>& x, int label) {
  ModelParams g = theta;
  if (theta.rows() == 1) {
    const double z = theta.weights.row(0).dot(x) + theta.bias(0);
    const double r = sigmoid(z) - (label == 1 ? 1.0 : 0.0);
    g.weights = r * x;
    g.bias = VectorXd::Constant(1, r);
  } else {
    VectorXd probs = softmax(theta.weights * x.transpose() + theta.bias);
    probs(label) -= 1.0;
    g.weights = probs * x;
    g.bias = probs;
  }
  return g.flatten();
}

VectorXd gradient_theta(const ModelParams& theta, const Dataset& dataset) {
  const Eigen::Index n = dataset.n(), p = dataset.p(), rows = theta.rows();
  MatrixXd gw = MatrixXd::Zero(rows, p);
  VectorXd gb = VectorXd::Zero(rows);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto x = dataset.features.row(i);
    if (rows == 1) {
      const double z = theta.weights.row(0).dot(x) + theta.bias(0);
      const double r = sigmoid(z) - (dataset.labels(i) == 1 ? 1.0 : 0.0);
      gw.row(0) += r * x;
      gb(0) += r;
    } else {
      VectorXd probs = softmax(theta.weights * x.transpose() + theta.bias);
      probs(dataset.labels(i)) -= 1.0;
      gw += probs * x;
      gb += probs;
    }
  }
  gw /= static_cast<double>(n);
  gb /= static_cast<double>(n);
  ModelParams g = theta;
  g.weights = gw;
  g.bias = gb;
  return g.flatten();
}

double reg_objective(const ModelParams& theta, const Dataset& dataset, double lambda) {
  return loss(theta, dataset) + 0.5 * lambda * theta.weights.squaredNorm();
}

VectorXd reg_gradient(const ModelParams& theta, const Dataset& dataset, double lambda) {
  VectorXd g = gradient_theta(theta, dataset);
  Eigen::Index idx = 0;
  for (Eigen::Index c = 0; c < theta.weights.rows(); ++c)
    for (Eigen::Index j = 0; j < theta.weights.cols(); ++j)
      g(idx++) += lambda * theta.weights(c, j);
  return g;
}

MatrixXd hessian(const ModelParams& theta, const Dataset& dataset, double lambda) {
  if (lambda <= 0) throw NumericError("hessian: lambda must be positive");
  const Eigen::Index n = dataset.n(), p = dataset.p(), rows = theta.rows();
  const Eigen::Index d = rows * (p + 1);
  MatrixXd H = MatrixXd::Zero(d, d);
  // Flattened layout: all weight rows first (row-major), then biases; the
  // (c, j) weight sits at c*p + j, bias c at rows*p + c.
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto x = dataset.features.row(i);
    VectorXd probs;
    if (rows == 1) {
      const double s = sigmoid(theta.weights.row(0).dot(x) + theta.bias(0));
      probs = VectorXd::Constant(1, s);
    } else {
      probs = softmax(theta.weights * x.transpose() + theta.bias);
    }
    const MatrixXd outer = x.transpose() * x;
    for (Eigen::Index c = 0; c < rows; ++c) {
      for (Eigen::Index m = 0; m < rows; ++m) {
        const double w = rows == 1 ? probs(0) * (1.0 - probs(0))
                                   : probs(c) * ((c == m ? 1.0 : 0.0) - probs(m));
        if (w == 0.0) continue;
        H.block(c * p, m * p, p, p) += w * outer;
        H.block(c * p, rows * p + m, p, 1) += w * x.transpose();
        H.block(rows * p + c, m * p, 1, p) += w * x;
        H(rows * p + c, rows * p + m) += w;
      }
    }
  }
  H /= static_cast<double>(n);
  for (Eigen::Index c = 0; c < rows; ++c)
    for (Eigen::Index j = 0; j < p; ++j) H(c * p + j, c * p + j) += lambda;
  return H;
}

namespace {

ModelParams newton_solve(const Dataset& dataset, double lambda, ModelParams theta,
                         double tol, int max_iter) {
  if (lambda <= 0) throw NumericError("train: lambda must be positive");
  if (tol <= 0) throw NumericError("train: tol must be positive");
  const Eigen::Index p = dataset.p();

  double f = reg_objective(theta, dataset, lambda);
  double gnorm = 0.0;
  int stalled = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    VectorXd g = reg_gradient(theta, dataset, lambda);
    gnorm = g.norm();
    if (gnorm <= tol) return theta;

    MatrixXd H = hessian(theta, dataset, lambda);
    Eigen::LLT<MatrixXd> llt(H);
    VectorXd step;
    if (llt.info() == Eigen::Success) {
      step = -llt.solve(g);
    } else {
      step = -g;
    }

    // Backtracking line search; falls back to the gradient direction if the
    // Newton step fails to decrease the objective.
    const VectorXd v0 = theta.flatten();
    bool moved = false;
    for (int attempt = 0; attempt < 2 && !moved; ++attempt) {
      const double slope = step.dot(g);
      double t = 1.0;
      while (t > 1e-14) {
        ModelParams cand = ModelParams::unflatten(v0 + t * step, p, theta.n_classes, lambda);
        const double fc = reg_objective(cand, dataset, lambda);
        if (fc <= f + 1e-4 * t * slope) {
          // no measurable decrease left: we are at the double-precision floor
          stalled = (f - fc <= 4e-16 * std::max(1.0, std::abs(f))) ? stalled + 1 : 0;
          theta = cand;
          f = fc;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) step = -g;
    }
    if (!moved) {
      // stuck at numerical precision; accept if the gradient is tiny
      if (gnorm <= 100 * tol) return theta;
      throw NumericError("train: line search failed, |grad| = " + std::to_string(gnorm));
    }
    if (stalled >= 3) return theta;  // converged to the numerical floor
  }
  VectorXd g = reg_gradient(theta, dataset, lambda);
  if (g.norm() <= tol) return theta;
  throw NumericError("train: no convergence in max_iter, |grad| = " +
                     std::to_string(g.norm()));
}

}  // namespace

ModelParams train(const Dataset& dataset, double lambda, double tol, int max_iter) {
  return newton_solve(dataset, lambda, zero_model(dataset.p(), dataset.n_classes, lambda),
                      tol, max_iter);
}

ModelParams train_from(const Dataset& dataset, double lambda, const ModelParams& init,
                       double tol, int max_iter) {
  ModelParams start = init;
  start.lambda = lambda;
  return newton_solve(dataset, lambda, start, tol, max_iter);
}

namespace {

// d-vector of d^2 ell / dtheta dx_j for a single row (x, y), unscaled by 1/n.
VectorXd cross_derivative(const ModelParams& theta, const Eigen::RowVectorXd& x, int y,
                          Eigen::Index j) {
  const Eigen::Index p = theta.p(), rows = theta.rows();
  ModelParams g = theta;
  g.weights.setZero();
  g.bias.setZero();
  if (rows == 1) {
    const double z = theta.weights.row(0).dot(x) + theta.bias(0);
    const double s = sigmoid(z);
    const double sp = s * (1.0 - s);
    const double r = s - (y == 1 ? 1.0 : 0.0);
    g.weights.row(0) = sp * theta.weights(0, j) * x;
    g.weights(0, j) += r;
    g.bias(0) = sp * theta.weights(0, j);
  } else {
    VectorXd probs = softmax(theta.weights * x.transpose() + theta.bias);
    const double wbar_j = probs.dot(theta.weights.col(j));
    for (Eigen::Index c = 0; c < rows; ++c) {
      const double q = probs(c) * (theta.weights(c, j) - wbar_j);
      g.weights.row(c) = q * x;
      g.weights(c, j) += probs(c) - (c == y ? 1.0 : 0.0);
      g.bias(c) = q;
    }
  }
  return g.flatten();
}

}  // namespace

VectorXd dtheta_dx(const ModelParams& theta_star, const Dataset& dataset, double lambda,
                   Eigen::Index i, Eigen::Index j) {
  MatrixXd H = hessian(theta_star, dataset, lambda);
  VectorXd g = cross_derivative(theta_star, dataset.features.row(i), dataset.labels(i), j) /
               static_cast<double>(dataset.n());
  Eigen::LLT<MatrixXd> llt(H);
  if (llt.info() != Eigen::Success)
    throw NumericError("dtheta_dx: Hessian factorization failed");
  return -llt.solve(g);
}

SensitivityMatrix sensitivity_at(const ModelParams& theta_star, const Dataset& dataset,
                                 double lambda) {
  const Eigen::Index n = dataset.n(), p = dataset.p(), rows = theta_star.rows();
  MatrixXd H = hessian(theta_star, dataset, lambda);
  Eigen::LLT<MatrixXd> llt(H);
  if (llt.info() != Eigen::Success)
    throw NumericError("sensitivity: Hessian factorization failed");
  VectorXd L = gradient_theta(theta_star, dataset);
  VectorXd v = llt.solve(L);
  ModelParams vparts = ModelParams::unflatten(v, p, theta_star.n_classes, lambda);
  const MatrixXd& vw = vparts.weights;
  const VectorXd& vb = vparts.bias;

  SensitivityMatrix out;
  out.entries = MatrixXd::Zero(n, p);
  const double inv_n = 1.0 / static_cast<double>(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto x = dataset.features.row(i);
    const int y = dataset.labels(i);
    Eigen::RowVectorXd row(p);
    if (rows == 1) {
      const double z = theta_star.weights.row(0).dot(x) + theta_star.bias(0);
      const double s = sigmoid(z);
      const double sp = s * (1.0 - s);
      const double r = s - (y == 1 ? 1.0 : 0.0);
      const double u = vw.row(0).dot(x) + vb(0);
      row = sp * u * theta_star.weights.row(0) + r * vw.row(0);
    } else {
      VectorXd probs = softmax(theta_star.weights * x.transpose() + theta_star.bias);
      VectorXd u = vw * x.transpose() + vb;                  // per-class v . dtheta
      VectorXd a = probs.cwiseProduct(u);                    // p_c * u_c
      Eigen::RowVectorXd s1 = a.transpose() * theta_star.weights;
      Eigen::RowVectorXd wbar = probs.transpose() * theta_star.weights;
      VectorXd resid = probs;
      resid(y) -= 1.0;
      row = s1 - a.sum() * wbar + resid.transpose() * vw;
    }
    out.entries.row(i) = -inv_n * row;
  }

  std::ostringstream fp;
  fp << "n=" << n << ",p=" << p << ",C=" << dataset.n_classes << ",lambda=" << lambda;
  out.evaluated_at = fp.str();
  return out;
}

SensitivityMatrix sensitivity(const Dataset& dataset, double lambda, double tol) {
  ModelParams theta_star = train(dataset, lambda, tol);
  return sensitivity_at(theta_star, dataset, lambda);
}

TargetUtility target_utility(const Dataset& dataset, const Mask& mask, double lambda,
                             const Imputer& imputer, double tol) {
  if (mask.n() != dataset.n() || mask.p() != dataset.p())
    throw DataError("target_utility: mask dimensions do not match dataset");
  Dataset minimized = dataset;
  minimized.features = impute(MinimizedDataset::make(dataset.features, mask), imputer);
  ModelParams theta_hat = train(minimized, lambda, tol);
  TargetUtility out;
  out.loss = loss(theta_hat, dataset);
  out.accuracy = accuracy(theta_hat, dataset);
  return out;
}

std::string model_to_json(const ModelParams& theta) {
  nlohmann::ordered_json j;
  j["lambda"] = theta.lambda;
  j["n_classes"] = theta.n_classes;
  j["bias"] = std::vector<double>(theta.bias.data(), theta.bias.data() + theta.bias.size());
  std::vector<std::vector<double>> w;
  for (Eigen::Index c = 0; c < theta.weights.rows(); ++c) {
    w.emplace_back(theta.weights.row(c).begin(), theta.weights.row(c).end());
  }
  j["weights"] = w;
  return j.dump(2);
}

ModelParams model_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ModelParams theta;
  theta.lambda = j.at("lambda").get<double>();
  theta.n_classes = j.at("n_classes").get<int>();
  auto bias = j.at("bias").get<std::vector<double>>();
  auto w = j.at("weights").get<std::vector<std::vector<double>>>();
  theta.bias = Eigen::Map<VectorXd>(bias.data(), static_cast<Eigen::Index>(bias.size()));
  theta.weights = MatrixXd(w.size(), w.empty() ? 0 : w[0].size());
  for (std::size_t c = 0; c < w.size(); ++c)
    theta.weights.row(static_cast<Eigen::Index>(c)) =
        Eigen::Map<Eigen::RowVectorXd>(w[c].data(), static_cast<Eigen::Index>(w[c].size()));
  return theta;
}

}  // namespace datamin
