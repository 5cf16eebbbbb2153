#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "fir/depth.hpp"
#include "fir/numerics.hpp"
#include "fir/robust_pca.hpp"
#include "fir/simdata.hpp"
#include "test_helpers.hpp"

using namespace fir;

namespace {

FirConfig pca_config(Index m, double alpha, std::uint64_t seed) {
  FirConfig config;
  config.alpha = alpha;
  config.batch_m = m;
  config.n_directions = 200;
  config.seed = RngStream{seed, 0};
  return config;
}

}  // namespace

TEST_CASE("preprocess_project detects rank and reconstructs losslessly") {
  RngEngine eng(RngStream{211, 0});
  const Matrix basis = test::random_gaussian(2, 10, eng);
  const Matrix weights = test::random_gaussian(40, 2, eng);
  const Matrix x = weights * basis;  // exact rank 2 in p = 10
  const PreprocessResult pre = preprocess_project(x);
  CHECK(pre.r0 == 2);

  const Matrix x2 = test::random_gaussian(30, 4, eng);
  const PreprocessResult full = preprocess_project(x2);
  CHECK(full.r0 == 4);
  const Matrix back = full.z * full.v.transpose() +
                      Matrix::Ones(30, 1) *
                          (full.mu0 - full.v * (full.v.transpose() * full.mu0)).transpose();
  CHECK((back - x2).norm() <= 1e-9 * x2.norm());

  const Matrix flat = Matrix::Ones(6, 3);
  CHECK_THROWS_AS(preprocess_project(flat), std::invalid_argument);
}

TEST_CASE("fdb_estimate equals top-h depth selection") {
  RngEngine eng(RngStream{223, 0});
  Matrix z(40, 1);
  for (Index i = 0; i < 36; ++i) z(i, 0) = static_cast<double>(i) / 35.0;
  for (Index i = 36; i < 40; ++i) z(i, 0) = 100.0;
  Matrix u(1, 1);
  u << 1;

  const FirResult fdb = fdb_estimate(z, 0.75, u);
  CHECK(fdb.n_selected == 30);
  for (Index i : fdb.h_indices) CHECK(i < 36);  // outliers excluded

  const DepthResult depth = projection_depth(z, u);
  CHECK(fdb.h_indices == select_deepest(depth.depth, 30));

  auto [mu, sigma] = subset_mean_cov(z, fdb.h_indices);
  CHECK(fdb.mu == mu);
  CHECK(fdb.sigma == sigma);

  CHECK_THROWS_AS(fdb_estimate(z, 0.4, u), std::invalid_argument);
  CHECK_THROWS_AS(fdb_estimate(z, 1.0, u), std::invalid_argument);
}

TEST_CASE("score_distance hand values") {
  Matrix t(3, 2);
  t << 0, 0, 1, 0, 2, 2;
  Vector l(2);
  l << 1, 4;
  Vector sd = score_distance(t, l);
  CHECK(sd(0) == doctest::Approx(0.0));
  CHECK(sd(1) == doctest::Approx(1.0));
  l << 4, 1;
  sd = score_distance(t, l);
  CHECK(sd(2) == doctest::Approx(std::sqrt(5.0)));  // sqrt(4/4 + 4/1)
  CHECK_THROWS_AS(score_distance(t, Vector::Zero(2)), std::invalid_argument);
}

TEST_CASE("classical fit: center equals mu0 and full rank zeroes od") {
  RngEngine eng(RngStream{227, 0});
  const Matrix x = test::random_gaussian(60, 4, eng);
  const RobustPcaModel model = fit(x, EstimateMethod::classical, pca_config(0, 0.75, 1));
  CHECK(model.r0 == 4);
  CHECK(model.r1 == 4);
  CHECK((model.center - x.colwise().mean().transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(model.od.maxCoeff() == 0.0);  // rounding-scale residuals report as zero
  CHECK(model.cutoff_od == 0.0);

  // scores match centered SVD scores up to column signs
  const Vector mu0 = x.colwise().mean();
  const SvdResult svd = svd_thin((x.rowwise() - mu0.transpose()) / std::sqrt(60.0));
  const Matrix reference = (x.rowwise() - mu0.transpose()) * svd.v;
  REQUIRE(model.scores.cols() == reference.cols());
  for (Index j = 0; j < reference.cols(); ++j) {
    const double plus = (model.scores.col(j) - reference.col(j)).norm();
    const double minus = (model.scores.col(j) + reference.col(j)).norm();
    CHECK(std::min(plus, minus) <= 1e-8 * reference.col(j).norm());
  }
}

TEST_CASE("fit invariants: loadings orthonormal, variances ordered, flags consistent") {
  const SimSpec spec{200, 5, 0.1, OutlierKind::point, 3.0, 2, 20.0, RngStream{229, 0}};
  const LabeledData data = generate(spec);
  const RobustPcaModel model = fit(data.x, EstimateMethod::fir, pca_config(20, 0.75, 2));

  CHECK((model.loadings.transpose() * model.loadings -
         Matrix::Identity(model.r1, model.r1))
            .norm() <= 1e-9);
  for (Index j = 1; j < model.r1; ++j) CHECK(model.variances(j - 1) >= model.variances(j));
  CHECK(model.variances.minCoeff() >= 0.0);
  CHECK(model.sd.minCoeff() >= 0.0);
  CHECK(model.od.minCoeff() >= 0.0);
  CHECK(classify(model) == model.outlier_flags);

  // sign convention: dominant entry of each loading column is positive
  for (Index j = 0; j < model.r1; ++j) {
    Index at = 0;
    model.loadings.col(j).cwiseAbs().maxCoeff(&at);
    CHECK(model.loadings(at, j) > 0.0);
  }

  // scores over the selected rows center near zero
  Vector mean_h = Vector::Zero(model.r1);
  for (Index i : model.h_indices) mean_h += model.scores.row(i).transpose();
  mean_h /= static_cast<double>(model.h_indices.size());
  CHECK(mean_h.cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("orthogonal_distance measures off-plane displacement") {
  RngEngine eng(RngStream{233, 0});
  // rank-2 data in 5 dims; row 7 becomes an outlier far out in the plane
  // and displaced off it by 0.9, so the robust fit excludes it and its
  // od must recover the displacement
  const Matrix basis = test::random_gaussian(2, 5, eng);
  const Matrix weights = test::random_gaussian(50, 2, eng);
  Matrix x = weights * basis;
  const SvdResult svd = svd_thin(x);
  const Vector off = svd.v.col(4);  // orthogonal to the data plane
  x.row(7) = 40.0 * basis.row(0) + 0.9 * off.transpose();

  const RobustPcaModel model = fit(x, EstimateMethod::fir, pca_config(8, 0.8, 3));
  CHECK(model.r1 == 2);
  CHECK(model.od(7) == doctest::Approx(0.9).epsilon(1e-6));

  // moving a point inside span(loadings) leaves its od unchanged
  const Vector in_plane = model.loadings.col(0);
  Matrix x2 = x;
  x2.row(20) += 3.0 * in_plane.transpose();
  const Matrix residual = (x2.rowwise() - model.center.transpose()) -
                          ((x2.rowwise() - model.center.transpose()) * model.loadings) *
                              model.loadings.transpose();
  CHECK(residual.row(20).norm() == doctest::Approx(model.od(20)).epsilon(1e-9));
}

TEST_CASE("outlier_cutoffs closed forms") {
  Vector sd = Vector::Zero(10);
  Vector od = Vector::Constant(10, 3.7);
  const auto [cut_sd, cut_od] = outlier_cutoffs(sd, od, 2);
  CHECK(cut_sd == doctest::Approx(std::sqrt(chi2_quantile(2, 0.975))));
  CHECK(cut_sd == doctest::Approx(2.7162030315).epsilon(1e-6));
  CHECK(cut_od == doctest::Approx(3.7).epsilon(1e-9));  // zero spread keeps the level

  const auto [cut_sd2, cut_od2] = outlier_cutoffs(sd, Vector::Zero(10), 2);
  CHECK(cut_od2 == 0.0);
  CHECK(cut_sd2 == cut_sd);  // sd cutoff depends only on r1

  const auto [cut_sd3, raw] = outlier_cutoffs(sd, od, 2, true);
  CHECK(raw == doctest::Approx(3.7).epsilon(1e-9));
  CHECK(cut_sd3 == cut_sd);
}

TEST_CASE("classify flags a gross outlier and nothing at the center") {
  RngEngine eng(RngStream{239, 0});
  Matrix x = test::random_gaussian(80, 2, eng);
  x.row(0) << 500.0, -500.0;
  const RobustPcaModel model = fit(x, EstimateMethod::fir, pca_config(10, 0.75, 4));
  CHECK(model.outlier_flags[0]);
  const auto flagged = std::count(model.outlier_flags.begin(), model.outlier_flags.end(), true);
  CHECK(flagged <= 12);  // the bulk stays unflagged
}

TEST_CASE("fir-pca diagnostics are invariant under rotation plus shift") {
  RngEngine eng(RngStream{241, 0});
  const SimSpec spec{120, 4, 0.1, OutlierKind::radial, 2.0, 2, 20.0, RngStream{241, 5}};
  const LabeledData data = generate(spec);
  const Matrix a = test::random_orthogonal(4, eng);
  const Vector v = test::random_gaussian(1, 4, eng).row(0);
  const Matrix moved = (data.x * a).rowwise() + v.transpose();

  // The preprocessing bases absorb the rotation, so the moved fit gets
  // the direction set expressed in its own projected frame.
  const PreprocessResult pre_base = preprocess_project(data.x);
  const PreprocessResult pre_moved = preprocess_project(moved);
  REQUIRE(pre_base.r0 == 4);
  REQUIRE(pre_moved.r0 == 4);
  const Matrix dirs = sample_unit_directions(4, 200, RngStream{241, 6});
  const Matrix frame_map = pre_base.v.transpose() * a * pre_moved.v;  // orthogonal
  const Matrix dirs_moved = dirs * frame_map;

  PcaOptions base_opts;
  base_opts.directions = &dirs;
  PcaOptions moved_opts;
  moved_opts.directions = &dirs_moved;
  const RobustPcaModel base =
      fit(data.x, EstimateMethod::fir, pca_config(15, 0.75, 6), base_opts);
  const RobustPcaModel rot =
      fit(moved, EstimateMethod::fir, pca_config(15, 0.75, 6), moved_opts);

  CHECK(base.h_indices == rot.h_indices);
  CHECK((base.sd - rot.sd).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((base.od - rot.od).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(base.outlier_flags == rot.outlier_flags);
}

TEST_CASE("wide data rejected without the wide option") {
  RngEngine eng(RngStream{251, 0});
  const Matrix wide = test::random_gaussian(10, 20, eng);
  CHECK_THROWS_AS(fit(wide, EstimateMethod::classical, pca_config(0, 0.75, 1)),
                  std::invalid_argument);
  PcaOptions opts;
  opts.allow_wide = true;
  const RobustPcaModel model =
      fit(wide, EstimateMethod::classical, pca_config(0, 0.75, 1), opts);
  CHECK(model.r0 <= 9);
  CHECK(model.r1 >= 1);
}

TEST_CASE("lowrank contamination: fir flags outliers, classical pca inflates") {
  const LabeledData data = generate_lowrank(300, 10, 2, 0.1, 20.0, RngStream{257, 0});
  // two-component view, the scale real analyses retain for such data
  PcaOptions two;
  two.max_components = 2;
  const RobustPcaModel robust =
      fit(data.x, EstimateMethod::fir, pca_config(30, 0.8, 7), two);
  const RobustPcaModel classical =
      fit(data.x, EstimateMethod::classical, pca_config(0, 0.8, 7), two);

  Index robust_hits = 0, classical_hits = 0, robust_false = 0;
  Index n_out = 0;
  for (Index i = 0; i < 300; ++i) {
    const bool truth = data.labels[static_cast<std::size_t>(i)];
    n_out += truth;
    robust_hits += truth && robust.outlier_flags[static_cast<std::size_t>(i)];
    robust_false += !truth && robust.outlier_flags[static_cast<std::size_t>(i)];
    classical_hits += truth && classical.outlier_flags[static_cast<std::size_t>(i)];
  }
  CHECK(n_out == 30);
  CHECK(robust_hits >= 27);   // recall >= 0.9
  CHECK(robust_false <= 27);  // false positive rate <= 0.1
  CHECK(classical_hits < robust_hits);
  CHECK(robust.r1 == 2);  // the planted rank-2 geometry is recovered
  // without the cap the robust spectrum still truncates to the plane
  // whenever no outlier slips into H
  CHECK(robust.variances(0) > 0.0);
}
