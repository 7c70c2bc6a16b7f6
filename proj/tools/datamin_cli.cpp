#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "datamin/attacks.hpp"
#include "datamin/data.hpp"
#include "datamin/defense.hpp"
#include "datamin/impute.hpp"
#include "datamin/learner.hpp"
#include "datamin/minimize.hpp"
#include "datamin/theory.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace datamin;

namespace {

struct ExperimentConfig {
  std::string data;
  std::string label = "y";
  bool has_header = true;
  double lambda = 1.0;
  std::string algorithm = "evolutionary";
  long long k = -1;
  std::vector<std::size_t> grid;
  double alpha = -1.0;
  std::string imputer = "gaussian";
  double beta = 0.0;
  std::string scores = "uniqueness";
  std::uint64_t seed = 0;
  std::string out = "out";
  int threads = 0;
  std::size_t population = 8;
  std::size_t generations = 30;
  std::size_t flips = 10;
  std::size_t elitism = 2;
  std::size_t n_models = 50;
  long long k_sample = -1;
  std::string mask_file;
  std::string aux;
  bool mia = false;
  std::size_t runs = 5;
};

const std::vector<std::string> kConfigKeys = {
    "data", "label", "has_header", "lambda", "algorithm", "k", "grid", "alpha",
    "imputer", "beta", "scores", "seed", "out", "threads", "population",
    "generations", "flips", "elitism", "n_models", "k_sample", "mask", "aux",
    "mia", "runs"};

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("config parse error: " + std::string(e.what()));
  }
  for (const auto& [key, _] : j.items()) {
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
      throw UsageError("unknown config key: " + key);
  }
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("data", cfg.data);
  get("label", cfg.label);
  get("has_header", cfg.has_header);
  get("lambda", cfg.lambda);
  get("algorithm", cfg.algorithm);
  get("k", cfg.k);
  get("grid", cfg.grid);
  get("alpha", cfg.alpha);
  get("imputer", cfg.imputer);
  get("beta", cfg.beta);
  get("scores", cfg.scores);
  get("seed", cfg.seed);
  get("out", cfg.out);
  get("threads", cfg.threads);
  get("population", cfg.population);
  get("generations", cfg.generations);
  get("flips", cfg.flips);
  get("elitism", cfg.elitism);
  get("n_models", cfg.n_models);
  get("k_sample", cfg.k_sample);
  get("mask", cfg.mask_file);
  get("aux", cfg.aux);
  get("mia", cfg.mia);
  get("runs", cfg.runs);
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["data"] = c.data;
  j["label"] = c.label;
  j["has_header"] = c.has_header;
  j["lambda"] = c.lambda;
  j["algorithm"] = c.algorithm;
  j["k"] = c.k;
  j["grid"] = c.grid;
  j["alpha"] = c.alpha;
  j["imputer"] = c.imputer;
  j["beta"] = c.beta;
  j["scores"] = c.scores;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["population"] = c.population;
  j["generations"] = c.generations;
  j["flips"] = c.flips;
  j["elitism"] = c.elitism;
  j["n_models"] = c.n_models;
  j["k_sample"] = c.k_sample;
  j["mask"] = c.mask_file;
  j["aux"] = c.aux;
  j["mia"] = c.mia;
  j["runs"] = c.runs;
  return j;
}

// Everything the commands share: scaled dataset, splits, fitted statistics.
struct Prepared {
  Dataset dataset;  // scaled
  SplitSpec splits;
  GaussianStats stats;  // fit on the public split
  VectorXd public_mean;
};

Prepared prepare(const ExperimentConfig& cfg) {
  if (cfg.data.empty()) throw UsageError("--data is required");
  Prepared prep;
  Dataset raw = load_csv(cfg.data, cfg.label, cfg.has_header);
  prep.splits = make_splits(raw.n(), cfg.seed);
  ScalerParams scaler = fit_minmax(raw, prep.splits.public_idx);
  prep.dataset = apply_minmax(raw, scaler);
  prep.stats = fit_gaussian_stats(prep.dataset.features, prep.splits.public_idx);
  prep.public_mean = prep.stats.mean;
  return prep;
}

Imputer build_imputer(const ExperimentConfig& cfg, const Prepared& prep) {
  if (cfg.imputer == "zero") return Imputer::zero();
  if (cfg.imputer == "mean") return Imputer::with_mean(prep.public_mean);
  if (cfg.imputer == "gaussian") return Imputer::gaussian(prep.stats);
  throw UsageError("unknown imputer: " + cfg.imputer);
}

std::size_t resolve_k(const ExperimentConfig& cfg, const Dataset& ds) {
  if (cfg.k < 0) throw UsageError("--k is required for this command");
  const long long total = static_cast<long long>(ds.n() * ds.p());
  if (cfg.k > total) throw UsageError("--k exceeds n*p");
  return static_cast<std::size_t>(cfg.k);
}

Mask run_algorithm(const ExperimentConfig& cfg, const Prepared& prep,
                   const Imputer& imputer, std::size_t k, std::uint64_t seed) {
  const Dataset& ds = prep.dataset;
  const Eigen::Index n = ds.n(), p = ds.p();
  if (cfg.algorithm == "feature_selection") {
    // k counts retained entries; whole columns are removed
    const Eigen::Index keep_cols = static_cast<Eigen::Index>(k / static_cast<std::size_t>(n));
    return feature_selection_mask(ds, p - std::min(p, keep_cols));
  }
  if (cfg.algorithm == "random_rows") {
    const Eigen::Index keep_rows = static_cast<Eigen::Index>(k / static_cast<std::size_t>(p));
    return random_row_mask(n, p, n - std::min(n, keep_rows), seed);
  }
  if (cfg.algorithm == "individualized") return individualized_random_mask(n, p, k, seed);
  if (cfg.algorithm == "taylor") return taylor_mask(ds, cfg.lambda, k);
  if (cfg.algorithm == "metamodel") {
    const std::size_t k_sample =
        cfg.k_sample >= 0 ? static_cast<std::size_t>(cfg.k_sample) : k;
    InfluenceTable table =
        fit_influence(ds, cfg.lambda, k_sample, cfg.n_models, imputer, seed);
    return metamodel_mask(table, k);
  }
  if (cfg.algorithm == "evolutionary") {
    EvoConfig evo;
    evo.population = cfg.population;
    evo.generations = cfg.generations;
    evo.flips = cfg.flips;
    evo.elitism = cfg.elitism;
    evo.seed = seed;
    return evolutionary_mask(ds, cfg.lambda, k, imputer, evo);
  }
  throw UsageError("unknown algorithm: " + cfg.algorithm);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write: " + path.string());
  out << text;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
  std::ostringstream csv;
  csv << "algorithm,k,retained_fraction,loss,accuracy\n";
  for (const auto& r : rows)
    csv << r.algorithm << ',' << r.k << ',' << r.retained_fraction << ',' << r.loss
        << ',' << r.accuracy << '\n';
  write_file(path, csv.str());
}

AttackReport evaluate_attacks(const ExperimentConfig& cfg, const Prepared& prep,
                              const Mask& mask, const Imputer& imputer) {
  const Dataset& ds = prep.dataset;
  MatrixXd aux = ds.features;
  if (!cfg.aux.empty()) {
    Dataset aux_ds = load_csv(cfg.aux, cfg.label, cfg.has_header);
    aux = aux_ds.features;
  }
  MinimizedDataset minimized = MinimizedDataset::make(ds.features, mask);

  AttackReport report;
  report.algorithm = cfg.algorithm;
  report.k = mask.k();
  report.seed = cfg.seed;
  report.rir = reidentification_risk(aux, minimized);
  report.rcr = reconstruction_risk(ds.features, minimized, imputer);
  if (cfg.mia) {
    Dataset minimized_ds = ds;
    minimized_ds.features = impute(minimized, imputer);
    ModelParams theta_hat = train(minimized_ds, cfg.lambda);
    auto pick_rows = [&](const std::vector<int>& idx) {
      Dataset sub = ds;
      sub.features = MatrixXd(static_cast<Eigen::Index>(idx.size()), ds.p());
      sub.labels = VectorXi(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) {
        sub.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(idx[i]);
        sub.labels(static_cast<Eigen::Index>(i)) = ds.labels(idx[i]);
      }
      return sub;
    };
    auto [ms, nms] = loss_score_mia(theta_hat, pick_rows(prep.splits.member_idx),
                                    pick_rows(prep.splits.nonmember_idx));
    report.mir = mir_auc(ms, nms);
  }
  return report;
}

long long elapsed_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int cmd_minimize(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  const std::size_t k = resolve_k(cfg, prep.dataset);

  Mask mask = run_algorithm(cfg, prep, imputer, k, cfg.seed);
  ModelParams theta_star = train(prep.dataset, cfg.lambda);
  TargetUtility tu = target_utility(prep.dataset, mask, cfg.lambda, imputer);

  fs::create_directories(cfg.out);
  save_mask(mask, (fs::path(cfg.out) / "mask.csv").string());

  ordered_json report;
  report["algorithm"] = cfg.algorithm;
  report["k"] = mask.k();
  report["retained_fraction"] =
      static_cast<double>(mask.k()) / static_cast<double>(mask.size());
  report["full_loss"] = loss(theta_star, prep.dataset);
  report["full_acc"] = accuracy(theta_star, prep.dataset);
  report["target_loss"] = tu.loss;
  report["target_acc"] = tu.accuracy;
  report["seed"] = cfg.seed;
  report["config"] = config_json(cfg);
  report["wall_time_ms"] = elapsed_ms(t0);
  write_file(fs::path(cfg.out) / "report.json", report.dump(2) + "\n");
  std::cout << "minimize: k=" << mask.k() << " target_acc=" << tu.accuracy << "\n";
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  if (cfg.grid.empty()) throw UsageError("--grid is required for sweep");
  fs::create_directories(cfg.out);

  MaskAlgorithm algo = [&](std::size_t k) {
    return run_algorithm(cfg, prep, imputer, k, cfg.seed);
  };
  const double alpha = cfg.alpha >= 0 ? cfg.alpha : 1.0;  // alpha=1 always passes
  DualSearchResult result;
  try {
    result = dual_search(algo, cfg.algorithm, prep.dataset, cfg.lambda, alpha,
                         cfg.grid, imputer);
  } catch (const DualSearchError& e) {
    write_sweep_csv(fs::path(cfg.out) / "sweep.csv", e.sweep);
    throw;
  }
  write_sweep_csv(fs::path(cfg.out) / "sweep.csv", result.sweep);

  ordered_json report;
  report["algorithm"] = cfg.algorithm;
  if (cfg.alpha >= 0) {
    report["alpha"] = cfg.alpha;
    report["k_star"] = result.k;
    save_mask(result.mask, (fs::path(cfg.out) / "mask.csv").string());
  }
  report["seed"] = cfg.seed;
  report["config"] = config_json(cfg);
  report["wall_time_ms"] = elapsed_ms(t0);
  write_file(fs::path(cfg.out) / "report.json", report.dump(2) + "\n");
  std::cout << "sweep: " << result.sweep.size() << " rows\n";
  return 0;
}

int cmd_attack(const ExperimentConfig& cfg) {
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  if (cfg.mask_file.empty()) throw UsageError("--mask is required for attack");
  Mask mask = load_mask(cfg.mask_file);
  if (mask.n() != prep.dataset.n() || mask.p() != prep.dataset.p())
    throw DataError("mask dimensions do not match dataset");

  AttackReport report = evaluate_attacks(cfg, prep, mask, imputer);
  fs::create_directories(cfg.out);
  write_file(fs::path(cfg.out) / "attack.json", attack_report_to_json(report) + "\n");
  std::cout << "attack: rir=" << report.rir << " rcr=" << report.rcr << "\n";
  return 0;
}

int cmd_defend(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  if (cfg.mask_file.empty()) throw UsageError("--mask is required for defend");
  Mask base = load_mask(cfg.mask_file);
  if (base.n() != prep.dataset.n() || base.p() != prep.dataset.p())
    throw DataError("mask dimensions do not match dataset");

  PrivacyScores scores = cfg.scores == "correlation" ? correlation_scores(prep.dataset)
                                                     : uniqueness_scores(prep.dataset);
  if (cfg.scores != "uniqueness" && cfg.scores != "correlation")
    throw UsageError("unknown scores kind: " + cfg.scores);
  Mask defended = apply_privacy_scores(base, scores, cfg.beta, base.k());

  fs::create_directories(cfg.out);
  save_mask(defended, (fs::path(cfg.out) / "defended_mask.csv").string());

  AttackReport before = evaluate_attacks(cfg, prep, base, imputer);
  AttackReport after = evaluate_attacks(cfg, prep, defended, imputer);
  ordered_json report;
  report["beta"] = cfg.beta;
  report["scores"] = cfg.scores;
  report["before"] = nlohmann::json::parse(attack_report_to_json(before));
  report["after"] = nlohmann::json::parse(attack_report_to_json(after));
  report["config"] = config_json(cfg);
  report["wall_time_ms"] = elapsed_ms(t0);
  write_file(fs::path(cfg.out) / "defend_report.json", report.dump(2) + "\n");
  std::cout << "defend: rir " << before.rir << " -> " << after.rir << "\n";
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  // Desk-scale synthetic instance; deterministic in the seed.
  const Eigen::Index n = 24, p = 4;
  VectorXd mean = VectorXd::Zero(p);
  MatrixXd cov = MatrixXd::Identity(p, p);
  cov(0, 1) = cov(1, 0) = 0.3;
  VectorXd w(p);
  w << 1.2, -0.8, 0.5, 0.0;
  Dataset ds = synth_logistic(n, mean, cov, w, 0.1, cfg.seed);

  std::vector<BoundCheckResult> results;

  VectorXd cov_yx(p);
  cov_yx << 0.5, 0.3, 0.2, 0.05;
  VectorXd var_x = VectorXd::Ones(p);
  results.push_back(check_feature_selection_thm(cov_yx, var_x, 0.5, {3}, 200000, cfg.seed));

  // The sampling bound compares a mean deviation against a variance-scale
  // quantity; it only binds when the per-row gradient trace is large, so the
  // check runs on a high-noise instance (label coin flips, wide features).
  Dataset noisy = synth_logistic(n, mean, MatrixXd::Identity(p, p) * 13.0,
                                 VectorXd::Zero(p), 0.0, cfg.seed);
  results.push_back(check_sampling_bound(noisy, cfg.lambda, n, 20, cfg.seed, 1.1));
  results.push_back(check_utility_bound(ds, cfg.lambda, 1, 50, cfg.seed));

  TaylorResidualResult taylor =
      check_taylor_residual(ds, cfg.lambda, {1e-2, 1e-3, 1e-4}, cfg.seed);
  BoundCheckResult tr;
  tr.name = "taylor_residual_second_order";
  double worst = 1.0;
  for (std::size_t i = 0; i + 1 < taylor.table.size(); ++i) {
    const double ca = taylor.table[i].residual / (taylor.table[i].eps * taylor.table[i].eps);
    const double cb =
        taylor.table[i + 1].residual / (taylor.table[i + 1].eps * taylor.table[i + 1].eps);
    if (ca > 0 && cb > 0) worst = std::max({worst, ca / cb, cb / ca});
  }
  tr.lhs = worst;
  tr.rhs = 8.0;
  tr.holds = taylor.second_order;
  tr.trials = static_cast<int>(taylor.table.size());
  std::ostringstream cfgs;
  for (const auto& row : taylor.table)
    cfgs << "eps=" << row.eps << ":residual=" << row.residual << ";";
  tr.config = cfgs.str();
  results.push_back(tr);

  fs::create_directories(cfg.out);
  write_file(fs::path(cfg.out) / "verify.json", bound_checks_to_json(results) + "\n");

  bool all_hold = true;
  for (const auto& r : results) {
    std::cout << (r.holds ? "[PASS] " : "[FAIL] ") << r.name << " lhs=" << r.lhs
              << " rhs=" << r.rhs << "\n";
    all_hold = all_hold && r.holds;
  }
  return all_hold ? 0 : 3;
}

int cmd_multiplicity(const ExperimentConfig& cfg) {
  if (cfg.runs < 2) throw UsageError("--runs must be at least 2");
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  const std::size_t k = resolve_k(cfg, prep.dataset);

  std::vector<Mask> masks;
  std::vector<double> accs;
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.algorithm = "evolutionary";
    masks.push_back(run_algorithm(run_cfg, prep, imputer, k, cfg.seed + r));
    accs.push_back(target_utility(prep.dataset, masks.back(), cfg.lambda, imputer).accuracy);
  }

  std::ostringstream csv;
  csv << "run";
  for (std::size_t c = 0; c < cfg.runs; ++c) csv << ",overlap_" << c;
  csv << ",target_acc\n";
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    csv << r;
    for (std::size_t c = 0; c < cfg.runs; ++c) csv << ',' << overlap(masks[r], masks[c]);
    csv << ',' << accs[r] << '\n';
  }
  fs::create_directories(cfg.out);
  write_file(fs::path(cfg.out) / "overlap.csv", csv.str());
  std::cout << "multiplicity: " << cfg.runs << " runs\n";
  return 0;
}

int cmd_impute(const ExperimentConfig& cfg) {
  Prepared prep = prepare(cfg);
  Imputer imputer = build_imputer(cfg, prep);
  if (cfg.mask_file.empty()) throw UsageError("--mask is required for impute");
  Mask mask = load_mask(cfg.mask_file);
  if (mask.n() != prep.dataset.n() || mask.p() != prep.dataset.p())
    throw DataError("mask dimensions do not match dataset");

  MatrixXd filled = impute(MinimizedDataset::make(prep.dataset.features, mask), imputer);
  std::ostringstream csv;
  for (std::size_t j = 0; j < prep.dataset.feature_names.size(); ++j)
    csv << prep.dataset.feature_names[j] << ',';
  csv << cfg.label << '\n';
  for (Eigen::Index i = 0; i < filled.rows(); ++i) {
    for (Eigen::Index j = 0; j < filled.cols(); ++j) csv << filled(i, j) << ',';
    csv << prep.dataset.class_names[static_cast<std::size_t>(prep.dataset.labels(i))]
        << '\n';
  }
  fs::create_directories(cfg.out);
  write_file(fs::path(cfg.out) / "imputed.csv", csv.str());
  std::cout << "impute: wrote " << filled.rows() << " rows\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"data minimization workbench"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags override)");
    sub->add_option("--data", cfg.data, "input CSV path");
    sub->add_option("--label", cfg.label, "label column name or index");
    sub->add_flag("--no-header{false}", cfg.has_header, "CSV has no header row");
    sub->add_option("--lambda", cfg.lambda, "L2 regularization strength");
    sub->add_option("--algorithm", cfg.algorithm,
                    "feature_selection|random_rows|individualized|taylor|metamodel|evolutionary");
    sub->add_option("--k", cfg.k, "retained entry count");
    sub->add_option("--grid", cfg.grid, "sparsity grid (ascending)");
    sub->add_option("--alpha", cfg.alpha, "max accuracy drop");
    sub->add_option("--imputer", cfg.imputer, "zero|mean|gaussian");
    sub->add_option("--beta", cfg.beta, "privacy score weight");
    sub->add_option("--scores", cfg.scores, "uniqueness|correlation");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--threads", cfg.threads, "concurrency cap (0 = auto)");
    sub->add_option("--population", cfg.population, "evolutionary population");
    sub->add_option("--generations", cfg.generations, "evolutionary generations");
    sub->add_option("--flips", cfg.flips, "mutation flip count");
    sub->add_option("--elitism", cfg.elitism, "elites kept per generation");
    sub->add_option("--n-models", cfg.n_models, "metamodel sampled masks");
    sub->add_option("--k-sample", cfg.k_sample, "metamodel sampling sparsity");
    sub->add_option("--mask", cfg.mask_file, "mask file path");
    sub->add_option("--aux", cfg.aux, "auxiliary CSV for re-identification");
    sub->add_flag("--mia", cfg.mia, "evaluate membership inference");
    sub->add_option("--runs", cfg.runs, "multiplicity run count");
  };

  auto* minimize_cmd = app.add_subcommand("minimize", "compute a minimization mask");
  auto* sweep_cmd = app.add_subcommand("sweep", "sparsity sweep with optional dual search");
  auto* attack_cmd = app.add_subcommand("attack", "evaluate privacy risks of a mask");
  auto* defend_cmd = app.add_subcommand("defend", "apply privacy scores to a mask");
  auto* verify_cmd = app.add_subcommand("verify", "run the theoretical bound checks");
  auto* multiplicity_cmd = app.add_subcommand("multiplicity", "overlap across runs");
  auto* impute_cmd = app.add_subcommand("impute", "materialize the imputed dataset");
  for (auto* sub : {minimize_cmd, sweep_cmd, attack_cmd, defend_cmd, verify_cmd,
                    multiplicity_cmd, impute_cmd})
    add_common(sub);

  try {
    app.parse(argc, argv);
    // re-parse after loading the config file so flags override it
    if (!config_path.empty()) {
      ExperimentConfig from_file;
      load_config_file(config_path, from_file);
      cfg = from_file;
      app.clear();
      app.parse(argc, argv);
    }

    if (minimize_cmd->parsed()) return cmd_minimize(cfg);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg);
    if (attack_cmd->parsed()) return cmd_attack(cfg);
    if (defend_cmd->parsed()) return cmd_defend(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (multiplicity_cmd->parsed()) return cmd_multiplicity(cfg);
    if (impute_cmd->parsed()) return cmd_impute(cfg);
    throw UsageError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
