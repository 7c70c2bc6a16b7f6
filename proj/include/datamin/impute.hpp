#pragma once

#include "datamin/data.hpp"

namespace datamin {

// Strategy for filling removed entries. Gaussian imputation fills the missing
// block of each row with the conditional mean given the observed block.
struct Imputer {
  enum class Kind { Zero, Mean, Gaussian };
  Kind kind = Kind::Zero;
  VectorXd mean;        // Mean variant
  GaussianStats stats;  // Gaussian variant

  static Imputer zero() { return Imputer{}; }
  static Imputer with_mean(VectorXd mu) {
    Imputer im;
    im.kind = Kind::Mean;
    im.mean = std::move(mu);
    return im;
  }
  static Imputer gaussian(GaussianStats s) {
    Imputer im;
    im.kind = Kind::Gaussian;
    im.stats = std::move(s);
    return im;
  }
};

MatrixXd impute(const MinimizedDataset& minimized, const Imputer& imputer);

// Sample mean and (n-1)-denominator covariance over the given rows; jitter is
// escalated until cov + jitter I admits a Cholesky factorization.
GaussianStats fit_gaussian_stats(const MatrixXd& features, const std::vector<int>& idx,
                                 double jitter = 1e-6);

std::string gaussian_stats_to_json(const GaussianStats& s);
GaussianStats gaussian_stats_from_json(const std::string& text);

}  // namespace datamin
