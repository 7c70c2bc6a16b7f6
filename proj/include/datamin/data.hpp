#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "datamin/errors.hpp"

namespace datamin {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

struct Dataset {
  MatrixXd features;                       // n x p
  VectorXi labels;                         // values in [0, n_classes)
  std::vector<std::string> feature_names;  // size p
  std::vector<std::string> class_names;    // size n_classes (original labels)
  int n_classes = 2;

  Eigen::Index n() const { return features.rows(); }
  Eigen::Index p() const { return features.cols(); }
};

struct SplitSpec {
  std::vector<int> public_idx;
  std::vector<int> member_idx;
  std::vector<int> nonmember_idx;
  std::uint64_t seed = 0;
};

// Binary minimization mask over the n x p entry grid; true = retained.
class Mask {
 public:
  Mask() = default;
  Mask(Eigen::Index n, Eigen::Index p, bool retained = true)
      : n_(n), p_(p), retained_(static_cast<std::size_t>(n * p), retained ? 1 : 0),
        k_(retained ? static_cast<std::size_t>(n * p) : 0) {}

  Eigen::Index n() const { return n_; }
  Eigen::Index p() const { return p_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return retained_.size(); }

  bool at(Eigen::Index i, Eigen::Index j) const {
    return retained_[static_cast<std::size_t>(i * p_ + j)] != 0;
  }
  bool at_flat(std::size_t idx) const { return retained_[idx] != 0; }

  void set(Eigen::Index i, Eigen::Index j, bool v) { set_flat(static_cast<std::size_t>(i * p_ + j), v); }
  void set_flat(std::size_t idx, bool v) {
    const std::uint8_t nv = v ? 1 : 0;
    if (retained_[idx] != nv) {
      k_ += v ? 1 : -1;
      retained_[idx] = nv;
    }
  }

  const std::uint8_t* row(Eigen::Index i) const {
    return retained_.data() + static_cast<std::size_t>(i * p_);
  }
  const std::uint8_t* data() const { return retained_.data(); }

  bool operator==(const Mask& o) const {
    return n_ == o.n_ && p_ == o.p_ && retained_ == o.retained_;
  }

 private:
  Eigen::Index n_ = 0, p_ = 0;
  std::vector<std::uint8_t> retained_;
  std::size_t k_ = 0;
};

// Minimized view of a feature matrix: retained entries carry the source
// values, removed entries are tracked by the mask (no sentinel value).
struct MinimizedDataset {
  MatrixXd values;  // removed entries hold 0 but must never be read directly
  Mask mask;

  static MinimizedDataset make(const MatrixXd& features, const Mask& mask);
};

struct GaussianStats {
  VectorXd mean;
  MatrixXd cov;
  double jitter = 0.0;  // added to the diagonal before any factorization
};

struct ScalerParams {
  VectorXd min;
  VectorXd max;
  bool constant(Eigen::Index j) const { return max(j) <= min(j); }
};

Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header);

ScalerParams fit_minmax(const Dataset& dataset, const std::vector<int>& fit_idx);
Dataset apply_minmax(const Dataset& dataset, const ScalerParams& scaler);

SplitSpec make_splits(Eigen::Index n, std::uint64_t seed);

// Cholesky factor of cov with escalating diagonal jitter (start 1e-6, double
// until success, cap 1e-2). Returns the jitter actually used.
double jittered_llt(const MatrixXd& cov, Eigen::LLT<MatrixXd>& llt,
                    double initial = 1e-6);

MatrixXd sample_gaussian(Eigen::Index n, const VectorXd& mean, const MatrixXd& cov,
                         std::uint64_t seed);

// Features ~ N(mean, cov), labels Bernoulli(sigmoid(w . x + b)).
Dataset synth_logistic(Eigen::Index n, const VectorXd& mean, const MatrixXd& cov,
                       const VectorXd& w, double bias, std::uint64_t seed);

struct SynthRegression {
  MatrixXd features;
  VectorXd targets;
};

// Features ~ N(mean, cov), targets y = w . x + noise, noise ~ N(0, noise_sd^2).
SynthRegression synth_regression(Eigen::Index n, const VectorXd& mean,
                                 const MatrixXd& cov, const VectorXd& w,
                                 double noise_sd, std::uint64_t seed);

// Mask file: "# mask n=<n> p=<p> k=<k>" header line then 0/1 CSV rows.
void save_mask(const Mask& mask, const std::string& path);
Mask load_mask(const std::string& path);

std::string split_to_json(const SplitSpec& s);
SplitSpec split_from_json(const std::string& text);

}  // namespace datamin
