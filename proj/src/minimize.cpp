#include "datamin/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace datamin {

namespace {

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                    static_cast<std::uint32_t>(c)};
  return std::mt19937_64(seq);
}

}  // namespace

double pearson(const VectorXd& a, const VectorXd& b) {
  const Eigen::Index n = a.size();
  const double ma = a.mean(), mb = b.mean();
  const VectorXd da = a.array() - ma, db = b.array() - mb;
  const double va = da.squaredNorm(), vb = db.squaredNorm();
  if (va <= 0.0 || vb <= 0.0) return 0.0;
  return da.dot(db) / std::sqrt(va * vb);
}

Mask top_k_mask(const MatrixXd& scores, std::size_t k) {
  const Eigen::Index n = scores.rows(), p = scores.cols();
  const std::size_t total = static_cast<std::size_t>(n * p);
  if (k > total) throw UsageError("top_k_mask: k exceeds entry count");
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double sa = scores(static_cast<Eigen::Index>(a) / p, static_cast<Eigen::Index>(a) % p);
    const double sb = scores(static_cast<Eigen::Index>(b) / p, static_cast<Eigen::Index>(b) % p);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  Mask mask(n, p, false);
  for (std::size_t t = 0; t < k; ++t) mask.set_flat(idx[t], true);
  return mask;
}

Mask feature_selection_mask(const Dataset& dataset, Eigen::Index features_to_remove) {
  const Eigen::Index n = dataset.n(), p = dataset.p();
  if (features_to_remove < 0 || features_to_remove > p)
    throw UsageError("feature_selection_mask: invalid feature count");
  VectorXd y = dataset.labels.cast<double>();
  std::vector<std::pair<double, Eigen::Index>> ranked;
  for (Eigen::Index j = 0; j < p; ++j)
    ranked.emplace_back(std::abs(pearson(dataset.features.col(j), y)), j);
  // lowest |corr| removed first, ties by lower column index
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  Mask mask(n, p, true);
  for (Eigen::Index t = 0; t < features_to_remove; ++t)
    for (Eigen::Index i = 0; i < n; ++i) mask.set(i, ranked[static_cast<std::size_t>(t)].second, false);
  return mask;
}

Mask random_row_mask(Eigen::Index n, Eigen::Index p, Eigen::Index rows_to_remove,
                     std::uint64_t seed) {
  if (rows_to_remove < 0 || rows_to_remove > n)
    throw UsageError("random_row_mask: invalid row count");
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Mask mask(n, p, true);
  for (Eigen::Index t = 0; t < rows_to_remove; ++t)
    for (Eigen::Index j = 0; j < p; ++j) mask.set(order[static_cast<std::size_t>(t)], j, false);
  return mask;
}

Mask individualized_random_mask(Eigen::Index n, Eigen::Index p, std::size_t k,
                                std::uint64_t seed) {
  const std::size_t total = static_cast<std::size_t>(n * p);
  if (k > total) throw UsageError("individualized_random_mask: k exceeds entry count");
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Mask mask(n, p, false);
  for (std::size_t t = 0; t < k; ++t) mask.set_flat(order[t], true);
  return mask;
}

Mask taylor_mask(const Dataset& dataset, double lambda, std::size_t k) {
  SensitivityMatrix sens = sensitivity(dataset, lambda);
  // entries hold -(L H^-1 G); the linear objective scores X_ij (L H^-1 G)_ij
  MatrixXd scores = -dataset.features.cwiseProduct(sens.entries);
  return top_k_mask(scores, k);
}

InfluenceTable fit_influence_from_masks(const Dataset& dataset, double lambda,
                                        const std::vector<Mask>& masks,
                                        const Imputer& imputer) {
  const Eigen::Index n = dataset.n(), p = dataset.p();
  InfluenceTable table;
  table.i_one = MatrixXd::Zero(n, p);
  table.i_bot = MatrixXd::Zero(n, p);
  table.count_one = Eigen::MatrixXi::Zero(n, p);
  table.count_bot = Eigen::MatrixXi::Zero(n, p);

  for (const Mask& mask : masks) {
    const double l = target_utility(dataset, mask, lambda, imputer).loss;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < p; ++j)
        if (mask.at(i, j)) {
          table.i_one(i, j) += l;
          table.count_one(i, j) += 1;
        } else {
          table.i_bot(i, j) += l;
          table.count_bot(i, j) += 1;
        }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      if (table.count_one(i, j) > 0) table.i_one(i, j) /= table.count_one(i, j);
      if (table.count_bot(i, j) > 0) table.i_bot(i, j) /= table.count_bot(i, j);
    }
  return table;
}

InfluenceTable fit_influence(const Dataset& dataset, double lambda, std::size_t k_sample,
                             std::size_t n_models, const Imputer& imputer,
                             std::uint64_t seed) {
  if (n_models < 2) throw UsageError("fit_influence: need at least 2 sampled masks");
  std::vector<Mask> masks;
  masks.reserve(n_models);
  for (std::size_t t = 0; t < n_models; ++t) {
    auto rng = derived_rng(seed, t, 0, 0x1f);
    masks.push_back(individualized_random_mask(dataset.n(), dataset.p(), k_sample, rng()));
  }
  return fit_influence_from_masks(dataset, lambda, masks, imputer);
}

Mask metamodel_mask(const InfluenceTable& influence, std::size_t k, bool strict) {
  const Eigen::Index n = influence.i_one.rows(), p = influence.i_one.cols();
  double sum_one = 0.0, sum_bot = 0.0;
  std::size_t est_one = 0, est_bot = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      if (influence.count_one(i, j) > 0) {
        sum_one += influence.i_one(i, j);
        ++est_one;
      }
      if (influence.count_bot(i, j) > 0) {
        sum_bot += influence.i_bot(i, j);
        ++est_bot;
      }
    }
  const double mean_one = est_one ? sum_one / static_cast<double>(est_one) : 0.0;
  const double mean_bot = est_bot ? sum_bot / static_cast<double>(est_bot) : 0.0;

  MatrixXd delta(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) {
      const bool has_one = influence.count_one(i, j) > 0;
      const bool has_bot = influence.count_bot(i, j) > 0;
      if (strict && (!has_one || !has_bot))
        throw NumericError("metamodel_mask: unestimated influence entry at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      const double one = has_one ? influence.i_one(i, j) : mean_one;
      const double bot = has_bot ? influence.i_bot(i, j) : mean_bot;
      delta(i, j) = bot - one;
    }
  return top_k_mask(delta, k);
}

namespace {

struct Candidate {
  Mask mask;
  double fitness = 0.0;
  std::uint64_t creation = 0;
};

std::size_t effective_flips(std::size_t flips, std::size_t k, std::size_t total) {
  const std::size_t cap = std::min(k, total - k);
  std::size_t f = flips;
  if (k < 10) f = std::max<std::size_t>(1, k / 100);
  return std::min(f, cap);
}

Mask mutate(const Mask& parent, std::size_t flips, std::mt19937_64& rng) {
  std::vector<std::size_t> retained, removed;
  for (std::size_t idx = 0; idx < parent.size(); ++idx)
    (parent.at_flat(idx) ? retained : removed).push_back(idx);
  const std::size_t f = effective_flips(flips, parent.k(), parent.size());
  if (f == 0) return parent;

  std::vector<std::size_t> off, on;
  std::sample(retained.begin(), retained.end(), std::back_inserter(off), f, rng);
  std::sample(removed.begin(), removed.end(), std::back_inserter(on), f, rng);
  Mask child = parent;
  for (std::size_t idx : off) child.set_flat(idx, false);
  for (std::size_t idx : on) child.set_flat(idx, true);
  return child;
}

Mask breed(const Mask& a, const Mask& b, std::size_t k, std::mt19937_64& rng) {
  Mask child(a.n(), a.p(), false);
  std::vector<std::size_t> disagree;
  std::size_t both = 0;
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    if (a.at_flat(idx) == b.at_flat(idx)) {
      if (a.at_flat(idx)) {
        child.set_flat(idx, true);
        ++both;
      }
    } else {
      disagree.push_back(idx);
    }
  }
  // Disagreeing entries are retained with the probability that makes the
  // expected sparsity equal k, then repaired exactly.
  if (!disagree.empty()) {
    const double q = std::clamp(
        (static_cast<double>(k) - static_cast<double>(both)) / static_cast<double>(disagree.size()),
        0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t idx : disagree)
      if (unif(rng) < q) child.set_flat(idx, true);
  }
  // repair to exactly k by uniform random flips
  while (child.k() != k) {
    const bool surplus = child.k() > k;
    std::vector<std::size_t> pool;
    for (std::size_t idx = 0; idx < child.size(); ++idx)
      if (child.at_flat(idx) == surplus) pool.push_back(idx);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    child.set_flat(pool[pick(rng)], !surplus);
  }
  return child;
}

}  // namespace

Mask evolutionary_mask(const Dataset& dataset, double lambda, std::size_t k,
                       const Imputer& imputer, const EvoConfig& cfg) {
  if (cfg.population < 2) throw UsageError("evolutionary_mask: population must be >= 2");
  const std::size_t total = static_cast<std::size_t>(dataset.n() * dataset.p());
  if (k > total) throw UsageError("evolutionary_mask: k exceeds entry count");
  if (effective_flips(cfg.flips, k, total) == 0 && k != 0 && k != total)
    throw UsageError("evolutionary_mask: infeasible flip count");

  auto fitness = [&](const Mask& m) {
    return target_utility(dataset, m, lambda, imputer).loss;
  };

  std::uint64_t creation = 0;
  std::vector<Candidate> population;
  for (std::size_t c = 0; c < cfg.population; ++c) {
    auto rng = derived_rng(cfg.seed, 0, c, 0xa0);
    Candidate cand;
    cand.mask = individualized_random_mask(dataset.n(), dataset.p(), k, rng());
    cand.fitness = fitness(cand.mask);
    cand.creation = creation++;
    population.push_back(std::move(cand));
  }
  auto by_fitness = [](const Candidate& a, const Candidate& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    return a.creation < b.creation;
  };
  std::sort(population.begin(), population.end(), by_fitness);
  Candidate best = population.front();

  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    std::vector<Candidate> pool(population.begin(),
                                population.begin() + std::min(cfg.elitism, population.size()));
    // mutants, one per population slot
    for (std::size_t c = 0; c < cfg.population; ++c) {
      auto rng = derived_rng(cfg.seed, gen, c, 0xb1);
      Candidate cand;
      cand.mask = mutate(population[c % population.size()].mask, cfg.flips, rng);
      cand.fitness = fitness(cand.mask);
      cand.creation = creation++;
      pool.push_back(std::move(cand));
    }
    // children from random parent pairs
    for (std::size_t c = 0; c < cfg.population; ++c) {
      auto rng = derived_rng(cfg.seed, gen, c, 0xc2);
      std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
      const std::size_t pa = pick(rng), pb = pick(rng);
      Candidate cand;
      cand.mask = breed(population[pa].mask, population[pb].mask, k, rng);
      cand.fitness = fitness(cand.mask);
      cand.creation = creation++;
      pool.push_back(std::move(cand));
    }
    std::sort(pool.begin(), pool.end(), by_fitness);
    pool.resize(cfg.population);
    population = std::move(pool);
    if (by_fitness(population.front(), best)) best = population.front();
  }
  return best.mask;
}

DualSearchResult dual_search(const MaskAlgorithm& algorithm, const std::string& name,
                             const Dataset& dataset, double lambda, double alpha,
                             const std::vector<std::size_t>& grid, const Imputer& imputer) {
  if (grid.empty()) throw UsageError("dual_search: empty sparsity grid");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw UsageError("dual_search: grid must be sorted ascending");
  if (alpha < 0) throw UsageError("dual_search: alpha must be nonnegative");

  ModelParams theta_star = train(dataset, lambda);
  const double full_acc = accuracy(theta_star, dataset);
  const double total = static_cast<double>(dataset.n() * dataset.p());

  DualSearchResult result;
  bool found = false;
  for (std::size_t k : grid) {
    Mask mask = algorithm(k);
    TargetUtility tu = target_utility(dataset, mask, lambda, imputer);
    result.sweep.push_back({name, k, static_cast<double>(k) / total, tu.loss, tu.accuracy});
    if (!found && tu.accuracy >= full_acc - alpha) {
      result.k = k;
      result.mask = mask;
      found = true;
    }
  }
  if (!found)
    throw DualSearchError("dual_search: no grid sparsity meets the alpha constraint",
                          result.sweep);
  return result;
}

double overlap(const Mask& a, const Mask& b) {
  if (a.n() != b.n() || a.p() != b.p()) throw DataError("overlap: dimension mismatch");
  const std::size_t k = std::min(a.k(), b.k());
  if (k == 0) return (a.k() == b.k()) ? 100.0 : 0.0;
  std::size_t shared = 0;
  for (std::size_t idx = 0; idx < a.size(); ++idx)
    if (a.at_flat(idx) && b.at_flat(idx)) ++shared;
  return 100.0 * static_cast<double>(shared) / static_cast<double>(k);
}

}  // namespace datamin
