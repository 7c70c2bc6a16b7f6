#include <doctest.h>

#include <cmath>
#include <limits>

#include "datamin/attacks.hpp"
#include "datamin/minimize.hpp"
#include "testutil.hpp"

using namespace datamin;
using namespace datamin::testutil;

TEST_CASE("masked_distance rescales by the observed fraction") {
  Eigen::RowVectorXd a(4), b(4);
  a << 1, 2, 3, 4;
  b << 1, 0, 5, 0;
  std::uint8_t keep[4] = {1, 0, 1, 0};
  // observed diffs: 0 and -2; sum 4, scaled by p/|O| = 2 -> sqrt(8)
  CHECK(masked_distance(a, b, keep) == doctest::Approx(std::sqrt(8.0)));

  std::uint8_t all[4] = {1, 1, 1, 1};
  b << 1, 2, 3, 4;
  CHECK(masked_distance(a, b, all) == 0.0);

  std::uint8_t none[4] = {0, 0, 0, 0};
  CHECK(std::isinf(masked_distance(a, b, none)));
}

TEST_CASE("reidentification_risk on hand instances") {
  SUBCASE("exact auxiliary data and a full mask give risk 1") {
    Dataset ds = random_binary(6, 3, 3);
    MinimizedDataset md = MinimizedDataset::make(ds.features, Mask(6, 3, true));
    CHECK(reidentification_risk(ds.features, md) == doctest::Approx(1.0));
  }
  SUBCASE("an empty mask with n = 2 gives the tie-broken value 3/4") {
    MatrixXd x(2, 2);
    x << 1, 2, 3, 4;
    MinimizedDataset md = MinimizedDataset::make(x, Mask(2, 2, false));
    // every distance is +inf: row 0 ranks 1st, row 1 ranks 2nd
    CHECK(reidentification_risk(x, md) == doctest::Approx(0.75));
  }
  SUBCASE("a decoy closer than the true row demotes it to rank 2") {
    MatrixXd orig(2, 1);
    orig << 0.0, 0.1;
    MatrixXd aux(2, 1);
    aux << 0.08, 5.0;  // aux row 0 is nearer to record 1 than to record 0
    MinimizedDataset md = MinimizedDataset::make(orig, Mask(2, 1, true));
    // aux0: true rank 2 -> 1/2; aux1: true rank 1 -> 1
    CHECK(reidentification_risk(aux, md) == doctest::Approx(0.75));
  }
  SUBCASE("dimension mismatch raises") {
    MatrixXd x(2, 2), aux(3, 2);
    x.setZero();
    aux.setZero();
    MinimizedDataset md = MinimizedDataset::make(x, Mask(2, 2, true));
    CHECK_THROWS_AS(reidentification_risk(aux, md), DataError);
  }
}

TEST_CASE("reidentification ranks are stable under consistent row permutation") {
  IdentifierInstance inst = identifier_instance(20, 7);
  Mask m = individualized_random_mask(20, 6, 70, 4);
  MinimizedDataset md = MinimizedDataset::make(inst.dataset.features, m);
  const double base = reidentification_risk(inst.aux, md);

  // reverse rows everywhere; continuous noise makes ties measure-zero
  MatrixXd feat_r(20, 6), aux_r(20, 6);
  Mask m_r(20, 6, false);
  for (Eigen::Index i = 0; i < 20; ++i) {
    feat_r.row(i) = inst.dataset.features.row(19 - i);
    aux_r.row(i) = inst.aux.row(19 - i);
    for (Eigen::Index j = 0; j < 6; ++j) m_r.set(i, j, m.at(19 - i, j));
  }
  MinimizedDataset md_r = MinimizedDataset::make(feat_r, m_r);
  CHECK(reidentification_risk(aux_r, md_r) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("reconstruction_risk matches a hand kernel computation") {
  MatrixXd orig(2, 2);
  orig << 1, 2, 3, 4;
  Mask m(2, 2, true);
  m.set(0, 1, false);
  MinimizedDataset md = MinimizedDataset::make(orig, m);
  VectorXd mu(2);
  mu << 0, 0;
  // zero-filled reconstruction: row0 = (1, 0), row1 exact
  const double expect = 0.5 * (std::exp(-2.0) + 1.0);
  CHECK(reconstruction_risk(orig, md, Imputer::with_mean(mu)) ==
        doctest::Approx(expect).epsilon(1e-12));

  SUBCASE("a full mask reconstructs perfectly") {
    MinimizedDataset full = MinimizedDataset::make(orig, Mask(2, 2, true));
    CHECK(reconstruction_risk(orig, full, Imputer::zero()) == doctest::Approx(1.0));
  }
  SUBCASE("gaussian imputation beats zero filling on correlated data") {
    VectorXd mean(2);
    mean << 0, 0;
    MatrixXd cov(2, 2);
    cov << 1, 0.9, 0.9, 1;
    MatrixXd draws = sample_gaussian(500, mean, cov, 17);
    Mask half(500, 2, true);
    for (Eigen::Index i = 0; i < 500; ++i) half.set(i, 1, false);
    MinimizedDataset hd = MinimizedDataset::make(draws, half);
    GaussianStats s;
    s.mean = mean;
    s.cov = cov;
    CHECK(reconstruction_risk(draws, hd, Imputer::gaussian(s)) >
          reconstruction_risk(draws, hd, Imputer::zero()));
  }
}

TEST_CASE("mir_auc counts pairs exactly") {
  CHECK(mir_auc({3, 1}, {2, 0}) == doctest::Approx(0.75));
  CHECK(mir_auc({1}, {1}) == doctest::Approx(0.5));
  CHECK(mir_auc({5, 6}, {1, 2}) == doctest::Approx(1.0));
  CHECK(mir_auc({1, 2}, {5, 6}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(mir_auc({}, {1.0}), DataError);

  SUBCASE("invariant under strictly increasing score transforms") {
    std::vector<double> m = {0.3, -1.2, 2.0, 0.7}, nm = {0.1, 0.3, -0.5};
    const double base = mir_auc(m, nm);
    auto f = [](double v) { return 3.0 * v + 10.0; };
    std::vector<double> m2, nm2;
    for (double v : m) m2.push_back(f(v));
    for (double v : nm) nm2.push_back(f(v));
    CHECK(mir_auc(m2, nm2) == doctest::Approx(base));
  }
}

TEST_CASE("loss_score_mia returns negated per-row losses") {
  Dataset ds = random_binary(10, 3, 19);
  Dataset members = ds, nonmembers = ds;
  members.features = ds.features.topRows(5);
  members.labels = ds.labels.head(5);
  nonmembers.features = ds.features.bottomRows(5);
  nonmembers.labels = ds.labels.tail(5);
  ModelParams theta = train(members, 1.0);

  auto [ms, nms] = loss_score_mia(theta, members, nonmembers);
  CHECK(ms.size() == 5);
  CHECK(nms.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(ms[static_cast<std::size_t>(i)] ==
          doctest::Approx(-row_loss(theta, members.features.row(i), members.labels(i))));
    CHECK(nms[static_cast<std::size_t>(i)] ==
          doctest::Approx(-row_loss(theta, nonmembers.features.row(i),
                                    nonmembers.labels(i))));
  }
}

TEST_CASE("attack report json carries the optional mir") {
  AttackReport r;
  r.rir = 0.5;
  r.rcr = 0.25;
  r.algorithm = "taylor";
  r.k = 12;
  r.seed = 3;
  std::string no_mir = attack_report_to_json(r);
  CHECK(no_mir.find("\"mir\": null") != std::string::npos);
  r.mir = 0.625;
  std::string with_mir = attack_report_to_json(r);
  CHECK(with_mir.find("0.625") != std::string::npos);
}
