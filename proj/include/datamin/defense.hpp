#pragma once

#include "datamin/data.hpp"

namespace datamin {

// Feature-level privacy scores, min-max normalized to [0,1] and broadcast to
// every row. Higher score = safer to retain.
struct PrivacyScores {
  enum class Kind { Uniqueness, Correlation };
  Kind kind = Kind::Uniqueness;
  VectorXd raw;         // per feature, before normalization
  VectorXd normalized;  // per feature, in [0,1] (all zeros if raw constant)
};

// Raw score = -(distinct value count); continuous values are rounded to six
// decimals before counting.
PrivacyScores uniqueness_scores(const Dataset& dataset);

// Raw score = -(mean |Pearson corr| against every other feature).
PrivacyScores correlation_scores(const Dataset& dataset);

// Score matrix C = B + beta * V; retains the top-k entries of C.
Mask apply_privacy_scores(const Mask& base_mask, const PrivacyScores& scores,
                          double beta, std::size_t k);

}  // namespace datamin
