#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "datamin/data.hpp"
#include "testutil.hpp"

using namespace datamin;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "test_tmp_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("load_csv reads a small header file") {
  auto path = write_temp("basic.csv", "a,b,y\n1,2,0\n3,4,1\n5,6,0\n");
  Dataset ds = load_csv(path, "y", true);
  CHECK(ds.n() == 3);
  CHECK(ds.p() == 2);
  CHECK(ds.n_classes == 2);
  CHECK(ds.features(1, 0) == 3.0);
  CHECK(ds.labels(1) == 1);
  CHECK(ds.feature_names[1] == "b");
  std::remove(path.c_str());
}

TEST_CASE("load_csv maps string labels in first-appearance order") {
  auto path = write_temp("strings.csv", "a,y\n1,no\n2,yes\n3,no\n");
  Dataset ds = load_csv(path, "y", true);
  CHECK(ds.labels(0) == 0);
  CHECK(ds.labels(1) == 1);
  CHECK(ds.class_names[0] == "no");
  CHECK(ds.class_names[1] == "yes");
  std::remove(path.c_str());
}

TEST_CASE("load_csv keeps numeric label identity even out of order") {
  auto path = write_temp("numeric.csv", "a,y\n1,1\n2,0\n3,1\n");
  Dataset ds = load_csv(path, "y", true);
  CHECK(ds.labels(0) == 1);
  CHECK(ds.labels(1) == 0);
  std::remove(path.c_str());
}

TEST_CASE("load_csv error paths") {
  auto ragged = write_temp("ragged.csv", "a,b,y\n1,2,0\n3,4\n");
  CHECK_THROWS_AS(load_csv(ragged, "y", true), DataError);
  std::remove(ragged.c_str());

  auto bad_cell = write_temp("badcell.csv", "a,y\n1,0\nxx,1\n");
  CHECK_THROWS_AS(load_csv(bad_cell, "y", true), DataError);
  std::remove(bad_cell.c_str());

  auto empty = write_temp("empty.csv", "");
  CHECK_THROWS_AS(load_csv(empty, "y", true), DataError);
  std::remove(empty.c_str());
}

TEST_CASE("minmax scaling") {
  Dataset ds;
  ds.features = MatrixXd(3, 2);
  ds.features << 0, 3, 5, 3, 10, 3;
  ds.labels = VectorXi::Zero(3);
  ds.n_classes = 2;

  ScalerParams s = fit_minmax(ds, {0, 1, 2});
  CHECK(s.min(0) == 0.0);
  CHECK(s.max(0) == 10.0);
  CHECK(s.constant(1));

  Dataset scaled = apply_minmax(ds, s);
  CHECK(scaled.features(1, 0) == doctest::Approx(0.5));
  CHECK(scaled.features(0, 1) == 0.0);  // constant column maps to 0

  SUBCASE("out-of-range values clip") {
    Dataset other = ds;
    other.features(0, 0) = 12.0;
    CHECK(apply_minmax(other, s).features(0, 0) == 1.0);
  }
  SUBCASE("refit on scaled data is the identity") {
    ScalerParams s2 = fit_minmax(scaled, {0, 1, 2});
    Dataset twice = apply_minmax(scaled, s2);
    CHECK((twice.features - scaled.features).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK_THROWS_AS(fit_minmax(ds, {}), DataError);
}

TEST_CASE("make_splits partitions deterministically") {
  SplitSpec s = make_splits(8, 3);
  CHECK(s.public_idx.size() == 4);
  CHECK(s.member_idx.size() == 2);
  CHECK(s.nonmember_idx.size() == 2);

  SplitSpec odd = make_splits(9, 3);
  CHECK(odd.public_idx.size() == 4);
  CHECK(odd.member_idx.size() == 3);  // off-by-one goes to members
  CHECK(odd.nonmember_idx.size() == 2);

  SplitSpec again = make_splits(8, 3);
  CHECK(s.public_idx == again.public_idx);
  CHECK(s.member_idx == again.member_idx);

  std::vector<bool> seen(9, false);
  for (auto* group : {&odd.public_idx, &odd.member_idx, &odd.nonmember_idx})
    for (int i : *group) {
      CHECK(!seen[static_cast<std::size_t>(i)]);
      seen[static_cast<std::size_t>(i)] = true;
    }
  for (bool b : seen) CHECK(b);

  CHECK_THROWS_AS(make_splits(3, 0), DataError);

  SUBCASE("json round trip") {
    SplitSpec back = split_from_json(split_to_json(s));
    CHECK(back.public_idx == s.public_idx);
    CHECK(back.nonmember_idx == s.nonmember_idx);
    CHECK(back.seed == s.seed);
  }
}

TEST_CASE("sample_gaussian matches requested moments at Monte-Carlo scale") {
  const Eigen::Index n = 100000, p = 2;
  MatrixXd cov = MatrixXd::Identity(p, p);
  MatrixXd x = sample_gaussian(n, VectorXd::Zero(p), cov, 99);
  VectorXd mean = x.colwise().mean();
  MatrixXd centered = x.rowwise() - mean.transpose();
  MatrixXd emp = centered.transpose() * centered / static_cast<double>(n - 1);
  CHECK((emp - cov).cwiseAbs().maxCoeff() < 0.05);
  // zero off-diagonals imply near-zero empirical correlation
  CHECK(std::abs(emp(0, 1) / std::sqrt(emp(0, 0) * emp(1, 1))) < 0.05);

  MatrixXd again = sample_gaussian(100, VectorXd::Zero(p), cov, 7);
  MatrixXd again2 = sample_gaussian(100, VectorXd::Zero(p), cov, 7);
  CHECK(again == again2);  // bit-identical for a fixed seed
}

TEST_CASE("mask round trip and minimized dataset") {
  Mask mask(3, 2, false);
  mask.set(0, 0, true);
  mask.set(2, 1, true);
  CHECK(mask.k() == 2);

  MatrixXd x(3, 2);
  x << 1, 2, 3, 4, 5, 6;
  MinimizedDataset md = MinimizedDataset::make(x, mask);
  CHECK(md.values(0, 0) == 1.0);
  CHECK(md.values(2, 1) == 6.0);

  save_mask(mask, "test_tmp_mask.csv");
  Mask loaded = load_mask("test_tmp_mask.csv");
  CHECK(loaded == mask);
  CHECK(loaded.k() == 2);
  std::remove("test_tmp_mask.csv");
}

TEST_CASE("jittered cholesky escalation") {
  MatrixXd singular = MatrixXd::Zero(2, 2);  // rank 0, needs jitter
  Eigen::LLT<MatrixXd> llt;
  const double used = jittered_llt(singular, llt);
  CHECK(used >= 1e-6);
  CHECK(used <= 1e-2);

  MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -5;  // beyond the jitter cap
  CHECK_THROWS_AS(jittered_llt(indefinite, llt), NumericError);
}
