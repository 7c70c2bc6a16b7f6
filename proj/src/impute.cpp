#include "datamin/impute.hpp"

#include <map>
#include <mutex>
#include <vector>

#include <nlohmann/json.hpp>

namespace datamin {

namespace {

struct PatternSolve {
  // x_miss = mean_m + coef * (x_obs - mean_o)
  MatrixXd coef;  // |miss| x |obs|
  std::vector<Eigen::Index> obs;
  std::vector<Eigen::Index> miss;
};

MatrixXd impute_gaussian(const MinimizedDataset& minimized, const GaussianStats& stats) {
  const Eigen::Index n = minimized.values.rows(), p = minimized.values.cols();
  MatrixXd cov = stats.cov;
  if (stats.jitter > 0) cov += stats.jitter * MatrixXd::Identity(p, p);

  MatrixXd out = minimized.values;
  // Rows sharing a missing pattern reuse one factorization.
  std::map<std::vector<std::uint8_t>, PatternSolve> cache;
  std::mutex cache_mu;

  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<std::uint8_t> pattern(minimized.mask.row(i), minimized.mask.row(i) + p);
    std::vector<Eigen::Index> obs, miss;
    for (Eigen::Index j = 0; j < p; ++j)
      (pattern[static_cast<std::size_t>(j)] ? obs : miss).push_back(j);
    if (miss.empty()) continue;
    if (obs.empty()) {
      for (Eigen::Index j : miss) out(i, j) = stats.mean(j);
      continue;
    }

    const PatternSolve* solve = nullptr;
    {
      std::scoped_lock lock(cache_mu);
      auto it = cache.find(pattern);
      if (it == cache.end()) {
        PatternSolve ps;
        ps.obs = obs;
        ps.miss = miss;
        MatrixXd cov_oo(obs.size(), obs.size());
        MatrixXd cov_mo(miss.size(), obs.size());
        for (std::size_t a = 0; a < obs.size(); ++a)
          for (std::size_t b = 0; b < obs.size(); ++b)
            cov_oo(a, b) = cov(obs[a], obs[b]);
        for (std::size_t a = 0; a < miss.size(); ++a)
          for (std::size_t b = 0; b < obs.size(); ++b)
            cov_mo(a, b) = cov(miss[a], obs[b]);
        Eigen::LLT<MatrixXd> llt;
        try {
          jittered_llt(cov_oo, llt);
        } catch (const NumericError& e) {
          throw NumericError("impute: observed-block solve failed at row " +
                             std::to_string(i) + ": " + e.what());
        }
        ps.coef = llt.solve(cov_mo.transpose()).transpose();
        it = cache.emplace(std::move(pattern), std::move(ps)).first;
      }
      solve = &it->second;
    }

    VectorXd x_obs(obs.size()), mu_obs(obs.size());
    for (std::size_t a = 0; a < obs.size(); ++a) {
      x_obs(static_cast<Eigen::Index>(a)) = minimized.values(i, obs[a]);
      mu_obs(static_cast<Eigen::Index>(a)) = stats.mean(obs[a]);
    }
    VectorXd fill = solve->coef * (x_obs - mu_obs);
    for (std::size_t a = 0; a < miss.size(); ++a)
      out(i, miss[a]) = stats.mean(miss[a]) + fill(static_cast<Eigen::Index>(a));
  }
  return out;
}

}  // namespace

MatrixXd impute(const MinimizedDataset& minimized, const Imputer& imputer) {
  const Eigen::Index n = minimized.values.rows(), p = minimized.values.cols();
  switch (imputer.kind) {
    case Imputer::Kind::Zero: {
      MatrixXd out = minimized.values;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
          if (!minimized.mask.at(i, j)) out(i, j) = 0.0;
      return out;
    }
    case Imputer::Kind::Mean: {
      if (imputer.mean.size() != p) throw DataError("mean imputer arity mismatch");
      MatrixXd out = minimized.values;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
          if (!minimized.mask.at(i, j)) out(i, j) = imputer.mean(j);
      return out;
    }
    case Imputer::Kind::Gaussian:
      if (imputer.stats.mean.size() != p) throw DataError("gaussian imputer arity mismatch");
      return impute_gaussian(minimized, imputer.stats);
  }
  throw UsageError("unknown imputer kind");
}

GaussianStats fit_gaussian_stats(const MatrixXd& features, const std::vector<int>& idx,
                                 double jitter) {
  if (idx.size() < 2) throw DataError("fit_gaussian_stats: need at least 2 rows");
  const Eigen::Index p = features.cols();
  const double m = static_cast<double>(idx.size());

  GaussianStats s;
  s.mean = VectorXd::Zero(p);
  for (int i : idx) s.mean += features.row(i).transpose();
  s.mean /= m;

  s.cov = MatrixXd::Zero(p, p);
  for (int i : idx) {
    VectorXd d = features.row(i).transpose() - s.mean;
    s.cov += d * d.transpose();
  }
  s.cov /= (m - 1.0);

  Eigen::LLT<MatrixXd> llt;
  s.jitter = jittered_llt(s.cov, llt, jitter);
  return s;
}

std::string gaussian_stats_to_json(const GaussianStats& s) {
  nlohmann::ordered_json j;
  j["mean"] = std::vector<double>(s.mean.data(), s.mean.data() + s.mean.size());
  std::vector<std::vector<double>> cov;
  for (Eigen::Index r = 0; r < s.cov.rows(); ++r)
    cov.emplace_back(s.cov.row(r).begin(), s.cov.row(r).end());
  j["cov"] = cov;
  j["jitter"] = s.jitter;
  return j.dump(2);
}

GaussianStats gaussian_stats_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  GaussianStats s;
  auto mean = j.at("mean").get<std::vector<double>>();
  s.mean = Eigen::Map<VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
  auto cov = j.at("cov").get<std::vector<std::vector<double>>>();
  s.cov = MatrixXd(cov.size(), cov.empty() ? 0 : cov[0].size());
  for (std::size_t r = 0; r < cov.size(); ++r)
    s.cov.row(static_cast<Eigen::Index>(r)) =
        Eigen::Map<Eigen::RowVectorXd>(cov[r].data(), static_cast<Eigen::Index>(cov[r].size()));
  s.jitter = j.at("jitter").get<double>();
  return s;
}

}  // namespace datamin
