#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "datamin/data.hpp"
#include "datamin/impute.hpp"
#include "datamin/learner.hpp"

namespace datamin {

struct AttackReport {
  double rir = 0.0;
  double rcr = 0.0;
  std::optional<double> mir;
  std::string algorithm;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

// Euclidean distance over the observed coordinates of the minimized row,
// rescaled by sqrt(p / |observed|); fully missing rows rank last (+inf).
double masked_distance(const Eigen::Ref<const Eigen::RowVectorXd>& aux_row,
                       const Eigen::Ref<const Eigen::RowVectorXd>& min_row,
                       const std::uint8_t* keep);

// Mean reciprocal rank of matching each auxiliary row to its true minimized
// row; distance ties break toward the lower row index.
double reidentification_risk(const MatrixXd& aux, const MinimizedDataset& minimized);

// Mean Gaussian-kernel similarity exp(-||x - x_R||) between original rows and
// the rows reconstructed by imputation.
double reconstruction_risk(const MatrixXd& original, const MinimizedDataset& minimized,
                           const Imputer& imputer);

// Exact rank-based AUC: P(member > nonmember) + 0.5 P(equal).
double mir_auc(const std::vector<double>& member_scores,
               const std::vector<double>& nonmember_scores);

// Simple loss-based membership scorer: score = -(per-row cross-entropy).
std::pair<std::vector<double>, std::vector<double>> loss_score_mia(
    const ModelParams& theta, const Dataset& members, const Dataset& nonmembers);

std::string attack_report_to_json(const AttackReport& report);

}  // namespace datamin
