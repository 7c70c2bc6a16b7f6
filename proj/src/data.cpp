#include "datamin/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace datamin {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  return end != begin && end && *end == '\0';
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

MinimizedDataset MinimizedDataset::make(const MatrixXd& features, const Mask& mask) {
  if (mask.n() != features.rows() || mask.p() != features.cols())
    throw DataError("mask dimensions do not match dataset");
  MinimizedDataset out;
  out.mask = mask;
  out.values = MatrixXd::Zero(features.rows(), features.cols());
  for (Eigen::Index i = 0; i < features.rows(); ++i)
    for (Eigen::Index j = 0; j < features.cols(); ++j)
      if (mask.at(i, j)) out.values(i, j) = features(i, j);
  return out;
}

Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw DataError("empty dataset: " + path);

  std::vector<std::string> header;
  std::size_t first_row = 0;
  if (has_header) {
    header = split_line(lines[0]);
    for (auto& h : header) h = trim(h);
    first_row = 1;
    if (lines.size() == first_row) throw DataError("empty dataset (header only): " + path);
  }
  const std::size_t arity = split_line(lines[first_row]).size();
  if (has_header && header.size() != arity)
    throw DataError("header arity does not match first data row");

  // Resolve the label column: by name against the header, else by index.
  Eigen::Index label_col = -1;
  if (has_header) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == label_column) label_col = static_cast<Eigen::Index>(j);
  }
  if (label_col < 0) {
    double idx;
    if (parse_double(label_column, idx) && idx >= 0 && idx < static_cast<double>(arity))
      label_col = static_cast<Eigen::Index>(idx);
  }
  if (label_col < 0)
    throw UsageError("label column not found: " + label_column);

  const Eigen::Index n = static_cast<Eigen::Index>(lines.size() - first_row);
  const Eigen::Index p = static_cast<Eigen::Index>(arity) - 1;
  if (p < 1) throw DataError("dataset has no feature columns");

  Dataset ds;
  ds.features = MatrixXd(n, p);
  ds.labels = VectorXi(n);
  std::unordered_map<std::string, int> class_map;

  for (Eigen::Index i = 0; i < n; ++i) {
    auto cells = split_line(lines[first_row + static_cast<std::size_t>(i)]);
    if (cells.size() != arity) {
      throw DataError("ragged row " + std::to_string(i + 1) + ": expected " +
                      std::to_string(arity) + " cells, got " +
                      std::to_string(cells.size()));
    }
    Eigen::Index jf = 0;
    for (std::size_t j = 0; j < arity; ++j) {
      const std::string cell = trim(cells[j]);
      if (static_cast<Eigen::Index>(j) == label_col) {
        auto it = class_map.find(cell);
        if (it == class_map.end()) {
          it = class_map.emplace(cell, static_cast<int>(class_map.size())).first;
          ds.class_names.push_back(cell);
        }
        ds.labels(i) = it->second;
      } else {
        double v;
        if (!parse_double(cell, v))
          throw DataError("non-numeric feature cell at row " + std::to_string(i + 1) +
                          ", column " + std::to_string(j + 1) + ": '" + cell + "'");
        if (!std::isfinite(v))
          throw DataError("non-finite feature value at row " + std::to_string(i + 1));
        ds.features(i, jf++) = v;
      }
    }
  }

  ds.n_classes = std::max(2, static_cast<int>(class_map.size()));

  // When every label is the integer set {0..C-1}, keep the numeric identity
  // mapping instead of first-appearance order.
  {
    std::vector<int> as_int(ds.class_names.size());
    bool numeric = true;
    std::vector<bool> seen(ds.class_names.size(), false);
    for (std::size_t c = 0; c < ds.class_names.size(); ++c) {
      double v;
      if (!parse_double(ds.class_names[c], v) || v != std::floor(v) || v < 0 ||
          v >= static_cast<double>(ds.class_names.size())) {
        numeric = false;
        break;
      }
      as_int[c] = static_cast<int>(v);
      if (seen[static_cast<std::size_t>(as_int[c])]) numeric = false;
      seen[static_cast<std::size_t>(as_int[c])] = true;
    }
    if (numeric && !ds.class_names.empty()) {
      for (Eigen::Index i = 0; i < n; ++i)
        ds.labels(i) = as_int[static_cast<std::size_t>(ds.labels(i))];
      std::vector<std::string> names(ds.class_names.size());
      for (std::size_t c = 0; c < ds.class_names.size(); ++c)
        names[static_cast<std::size_t>(as_int[c])] = ds.class_names[c];
      ds.class_names = names;
    }
  }
  if (has_header) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (static_cast<Eigen::Index>(j) != label_col) ds.feature_names.push_back(header[j]);
  } else {
    for (Eigen::Index j = 0; j < p; ++j) ds.feature_names.push_back("f" + std::to_string(j));
  }
  return ds;
}

ScalerParams fit_minmax(const Dataset& dataset, const std::vector<int>& fit_idx) {
  if (fit_idx.empty()) throw DataError("fit_minmax: empty fit index list");
  const Eigen::Index p = dataset.p();
  ScalerParams s;
  s.min = VectorXd::Constant(p, std::numeric_limits<double>::infinity());
  s.max = VectorXd::Constant(p, -std::numeric_limits<double>::infinity());
  for (int i : fit_idx) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = dataset.features(i, j);
      s.min(j) = std::min(s.min(j), v);
      s.max(j) = std::max(s.max(j), v);
    }
  }
  return s;
}

Dataset apply_minmax(const Dataset& dataset, const ScalerParams& scaler) {
  if (scaler.min.size() != dataset.p())
    throw DataError("scaler arity does not match dataset");
  Dataset out = dataset;
  for (Eigen::Index j = 0; j < dataset.p(); ++j) {
    if (scaler.constant(j)) {
      out.features.col(j).setZero();
    } else {
      const double range = scaler.max(j) - scaler.min(j);
      for (Eigen::Index i = 0; i < dataset.n(); ++i) {
        const double v = (dataset.features(i, j) - scaler.min(j)) / range;
        out.features(i, j) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return out;
}

SplitSpec make_splits(Eigen::Index n, std::uint64_t seed) {
  if (n < 4) throw DataError("make_splits: need n >= 4");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t n_public = static_cast<std::size_t>(n) / 2;
  const std::size_t remainder = static_cast<std::size_t>(n) - n_public;
  const std::size_t n_member = (remainder + 1) / 2;  // off-by-one goes to members

  SplitSpec s;
  s.seed = seed;
  s.public_idx.assign(order.begin(), order.begin() + n_public);
  s.member_idx.assign(order.begin() + n_public, order.begin() + n_public + n_member);
  s.nonmember_idx.assign(order.begin() + n_public + n_member, order.end());
  return s;
}

double jittered_llt(const MatrixXd& cov, Eigen::LLT<MatrixXd>& llt, double initial) {
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw NumericError("covariance matrix is not symmetric");
  llt.compute(cov);
  if (llt.info() == Eigen::Success) return 0.0;
  const Eigen::Index p = cov.rows();
  for (double jitter = initial; jitter <= 1e-2; jitter *= 2.0) {
    llt.compute(cov + jitter * MatrixXd::Identity(p, p));
    if (llt.info() == Eigen::Success) return jitter;
  }
  throw NumericError("covariance not positive definite after jitter escalation");
}

MatrixXd sample_gaussian(Eigen::Index n, const VectorXd& mean, const MatrixXd& cov,
                         std::uint64_t seed) {
  Eigen::LLT<MatrixXd> llt;
  jittered_llt(cov, llt, 1e-12);
  const MatrixXd chol = llt.matrixL();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> norm(0.0, 1.0);
  const Eigen::Index p = mean.size();
  MatrixXd z(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) z(i, j) = norm(rng);
  MatrixXd x = z * chol.transpose();
  x.rowwise() += mean.transpose();
  return x;
}

Dataset synth_logistic(Eigen::Index n, const VectorXd& mean, const MatrixXd& cov,
                       const VectorXd& w, double bias, std::uint64_t seed) {
  Dataset ds;
  ds.features = sample_gaussian(n, mean, cov, seed);
  ds.labels = VectorXi(n);
  ds.n_classes = 2;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = ds.features.row(i).dot(w) + bias;
    const double prob = 1.0 / (1.0 + std::exp(-z));
    ds.labels(i) = unif(rng) < prob ? 1 : 0;
  }
  for (Eigen::Index j = 0; j < ds.p(); ++j)
    ds.feature_names.push_back("f" + std::to_string(j));
  ds.class_names = {"0", "1"};
  return ds;
}

SynthRegression synth_regression(Eigen::Index n, const VectorXd& mean,
                                 const MatrixXd& cov, const VectorXd& w,
                                 double noise_sd, std::uint64_t seed) {
  SynthRegression out;
  out.features = sample_gaussian(n, mean, cov, seed);
  out.targets = out.features * w;
  if (noise_sd > 0) {
    std::mt19937_64 rng(seed ^ 0xdeadbeefcafef00dULL);
    std::normal_distribution<double> norm(0.0, noise_sd);
    for (Eigen::Index i = 0; i < n; ++i) out.targets(i) += norm(rng);
  }
  return out;
}

void save_mask(const Mask& mask, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write mask file: " + path);
  out << "# mask n=" << mask.n() << " p=" << mask.p() << " k=" << mask.k() << "\n";
  for (Eigen::Index i = 0; i < mask.n(); ++i) {
    for (Eigen::Index j = 0; j < mask.p(); ++j) {
      if (j) out << ',';
      out << (mask.at(i, j) ? '1' : '0');
    }
    out << '\n';
  }
}

Mask load_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open mask file: " + path);
  std::string header;
  std::getline(in, header);
  long n = -1, p = -1, k = -1;
  if (std::sscanf(header.c_str(), "# mask n=%ld p=%ld k=%ld", &n, &p, &k) != 3 ||
      n < 0 || p < 0)
    throw DataError("malformed mask header: " + header);
  Mask mask(n, p, false);
  std::string line;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw DataError("mask file truncated at row " + std::to_string(i));
    auto cells = split_line(trim(line));
    if (static_cast<long>(cells.size()) != p)
      throw DataError("mask row " + std::to_string(i) + " has wrong arity");
    for (Eigen::Index j = 0; j < p; ++j) {
      const std::string c = trim(cells[j]);
      if (c != "0" && c != "1") throw DataError("mask cell must be 0 or 1");
      if (c == "1") mask.set(i, j, true);
    }
  }
  if (k >= 0 && static_cast<long>(mask.k()) != k)
    throw DataError("mask header k does not match contents");
  return mask;
}

std::string split_to_json(const SplitSpec& s) {
  nlohmann::ordered_json j;
  j["seed"] = s.seed;
  j["public"] = s.public_idx;
  j["member"] = s.member_idx;
  j["nonmember"] = s.nonmember_idx;
  return j.dump(2);
}

SplitSpec split_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SplitSpec s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.public_idx = j.at("public").get<std::vector<int>>();
  s.member_idx = j.at("member").get<std::vector<int>>();
  s.nonmember_idx = j.at("nonmember").get<std::vector<int>>();
  return s;
}

}  // namespace datamin
