#include "datamin/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "datamin/kernels.hpp"

namespace datamin {

double masked_distance(const Eigen::Ref<const Eigen::RowVectorXd>& aux_row,
                       const Eigen::Ref<const Eigen::RowVectorXd>& min_row,
                       const std::uint8_t* keep) {
  const std::size_t p = static_cast<std::size_t>(aux_row.size());
  const auto acc = kernels::masked_sq_dist(aux_row.data(), min_row.data(), keep, p);
  if (acc.count == 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(acc.sum * static_cast<double>(p) / static_cast<double>(acc.count));
}

double reidentification_risk(const MatrixXd& aux, const MinimizedDataset& minimized) {
  const Eigen::Index n = aux.rows();
  if (n != minimized.values.rows() || aux.cols() != minimized.values.cols())
    throw DataError("reidentification_risk: dimension mismatch");

  // Row-major copies so the kernels stream contiguous memory.
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor aux_rm = aux;
  RowMajor min_rm = minimized.values;

  double total = 0.0;
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index r = 0; r < n; ++r)
      dist[static_cast<std::size_t>(r)] =
          masked_distance(aux_rm.row(i), min_rm.row(r), minimized.mask.row(r));
    // rank of the true row among ascending distances, ties by lower index
    const double d_true = dist[static_cast<std::size_t>(i)];
    std::size_t rank = 1;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == i) continue;
      const double d = dist[static_cast<std::size_t>(r)];
      if (d < d_true || (d == d_true && r < i)) ++rank;
    }
    total += 1.0 / static_cast<double>(rank);
  }
  return total / static_cast<double>(n);
}

double reconstruction_risk(const MatrixXd& original, const MinimizedDataset& minimized,
                           const Imputer& imputer) {
  const Eigen::Index n = original.rows();
  if (n != minimized.values.rows() || original.cols() != minimized.values.cols())
    throw DataError("reconstruction_risk: dimension mismatch");
  const MatrixXd recon = impute(minimized, imputer);
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  RowMajor orig_rm = original;
  RowMajor recon_rm = recon;
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d2 = kernels::sq_dist(orig_rm.row(i).data(), recon_rm.row(i).data(),
                                       static_cast<std::size_t>(original.cols()));
    total += std::exp(-std::sqrt(d2));
  }
  return total / static_cast<double>(n);
}

double mir_auc(const std::vector<double>& member_scores,
               const std::vector<double>& nonmember_scores) {
  if (member_scores.empty() || nonmember_scores.empty())
    throw DataError("mir_auc: empty score list");
  double wins = 0.0;
  for (double m : member_scores)
    for (double nm : nonmember_scores) {
      if (m > nm)
        wins += 1.0;
      else if (m == nm)
        wins += 0.5;
    }
  return wins / (static_cast<double>(member_scores.size()) *
                 static_cast<double>(nonmember_scores.size()));
}

std::pair<std::vector<double>, std::vector<double>> loss_score_mia(
    const ModelParams& theta, const Dataset& members, const Dataset& nonmembers) {
  if (theta.p() != members.p() || theta.p() != nonmembers.p())
    throw DataError("loss_score_mia: feature arity mismatch");
  std::vector<double> ms, nms;
  ms.reserve(static_cast<std::size_t>(members.n()));
  nms.reserve(static_cast<std::size_t>(nonmembers.n()));
  for (Eigen::Index i = 0; i < members.n(); ++i)
    ms.push_back(-row_loss(theta, members.features.row(i), members.labels(i)));
  for (Eigen::Index i = 0; i < nonmembers.n(); ++i)
    nms.push_back(-row_loss(theta, nonmembers.features.row(i), nonmembers.labels(i)));
  return {std::move(ms), std::move(nms)};
}

std::string attack_report_to_json(const AttackReport& report) {
  nlohmann::ordered_json j;
  j["rir"] = report.rir;
  j["rcr"] = report.rcr;
  if (report.mir)
    j["mir"] = *report.mir;
  else
    j["mir"] = nullptr;
  j["algorithm"] = report.algorithm;
  j["k"] = report.k;
  j["seed"] = report.seed;
  return j.dump(2);
}

}  // namespace datamin
