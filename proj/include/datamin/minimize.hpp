#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "datamin/data.hpp"
#include "datamin/impute.hpp"
#include "datamin/learner.hpp"

namespace datamin {

// Per-entry average target utilities conditioned on the entry being retained
// (i_one) or removed (i_bot) across sampled masks.
struct InfluenceTable {
  MatrixXd i_one;
  MatrixXd i_bot;
  Eigen::MatrixXi count_one;
  Eigen::MatrixXi count_bot;
};

struct EvoConfig {
  std::size_t population = 8;
  std::size_t generations = 30;
  std::size_t flips = 10;
  std::size_t elitism = 2;
  std::uint64_t seed = 0;
};

struct SweepRow {
  std::string algorithm;
  std::size_t k = 0;
  double retained_fraction = 0.0;
  double loss = 0.0;
  double accuracy = 0.0;
};

// Pearson correlation; either side constant yields 0.
double pearson(const VectorXd& a, const VectorXd& b);

// Retain the top-k entries of a score matrix, row-major lexicographic
// tie-break (shared by the Taylor, metamodel, and defense selections).
Mask top_k_mask(const MatrixXd& scores, std::size_t k);

Mask feature_selection_mask(const Dataset& dataset, Eigen::Index features_to_remove);
Mask random_row_mask(Eigen::Index n, Eigen::Index p, Eigen::Index rows_to_remove,
                     std::uint64_t seed);
Mask individualized_random_mask(Eigen::Index n, Eigen::Index p, std::size_t k,
                                std::uint64_t seed);

// Retains the k entries with the largest X_ij * (L H^-1 G)_ij score (the
// linear objective under zero imputation).
Mask taylor_mask(const Dataset& dataset, double lambda, std::size_t k);

InfluenceTable fit_influence(const Dataset& dataset, double lambda,
                             std::size_t k_sample, std::size_t n_models,
                             const Imputer& imputer, std::uint64_t seed);
// Accumulate the table from caller-provided masks (exhaustive oracles use this).
InfluenceTable fit_influence_from_masks(const Dataset& dataset, double lambda,
                                        const std::vector<Mask>& masks,
                                        const Imputer& imputer);

// strict = true errors on unestimated entries; otherwise they fall back to
// the global mean of the estimated entries on that side.
Mask metamodel_mask(const InfluenceTable& influence, std::size_t k, bool strict = false);

Mask evolutionary_mask(const Dataset& dataset, double lambda, std::size_t k,
                       const Imputer& imputer, const EvoConfig& cfg);

struct DualSearchResult {
  std::size_t k = 0;
  Mask mask;
  std::vector<SweepRow> sweep;
};

// Raised when no grid sparsity meets the alpha constraint; carries the sweep.
struct DualSearchError : NumericError {
  std::vector<SweepRow> sweep;
  explicit DualSearchError(const std::string& msg, std::vector<SweepRow> table)
      : NumericError(msg), sweep(std::move(table)) {}
};

// Callback producing a mask for a given sparsity (wraps any algorithm above).
using MaskAlgorithm = std::function<Mask(std::size_t k)>;

DualSearchResult dual_search(const MaskAlgorithm& algorithm, const std::string& name,
                             const Dataset& dataset, double lambda, double alpha,
                             const std::vector<std::size_t>& grid,
                             const Imputer& imputer);

// Percentage of shared retained entries, normalized by min(k_a, k_b).
double overlap(const Mask& a, const Mask& b);

}  // namespace datamin
