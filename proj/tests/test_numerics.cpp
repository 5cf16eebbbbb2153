#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fir/numerics.hpp"
#include "test_helpers.hpp"

using namespace fir;

namespace {

// Independent oracle for the regularized lower incomplete gamma: after
// t = u^2 the integrand 2 u^(2a-1) exp(-u^2) is smooth for a >= 1/2, so
// composite Simpson converges fast.
double gamma_p_oracle(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double upper = std::sqrt(x);
  const int panels = 20000;
  const double h = upper / panels;
  auto f = [&](double u) { return 2.0 * std::pow(u, 2.0 * a - 1.0) * std::exp(-u * u); };
  double sum = f(0.0) + f(upper);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0 / std::tgamma(a);
}

double chi2_quantile_oracle(int dof, double prob) {
  double lo = 0.0, hi = 1.0;
  while (gamma_p_oracle(0.5 * dof, 0.5 * hi) < prob) hi *= 2.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gamma_p_oracle(0.5 * dof, 0.5 * mid) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gaussian_quantile_oracle(double prob) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / M_SQRT2) < prob ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("median order statistics") {
  CHECK(median(std::vector<double>{1, 2, 3}) == 2.0);
  CHECK(median(std::vector<double>{1, 2, 3, 4}) == 2.5);
  CHECK(median(std::vector<double>{5, 5, 5}) == 5.0);
  CHECK(median(std::vector<double>{2, 1}) == 1.5);
  CHECK_THROWS_AS(median(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("mad basics") {
  CHECK(mad(std::vector<double>{5, 5, 5}) == 0.0);
  CHECK(mad(std::vector<double>{0, 1, 2}) == 1.0);
  // med = 0, deviations {0, 0, 0, 10}, median of those = 0
  CHECK(mad(std::vector<double>{0, 0, 0, 10}) == 0.0);
  CHECK_THROWS_AS(mad(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("median and mad are permutation and translation invariant") {
  RngEngine eng(RngStream{11, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const Index n = 1 + static_cast<Index>(eng.below(40));
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = -10.0 + 20.0 * eng.uniform();
    std::vector<double> shuffled = v;
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[eng.below(i)]);
    }
    CHECK(median(shuffled) == median(v));
    CHECK(mad(shuffled) == mad(v));

    const double c = -5.0 + 10.0 * eng.uniform();
    std::vector<double> shifted = v;
    for (auto& x : shifted) x += c;
    CHECK(median(shifted) == doctest::Approx(median(v) + c).epsilon(1e-12));
    CHECK(mad(shifted) == doctest::Approx(mad(v)).epsilon(1e-12));
  }
}

TEST_CASE("sample_unit_directions unit norms and determinism") {
  const RngStream seed{7, 3};
  const Matrix d1 = sample_unit_directions(5, 100, seed);
  for (Index i = 0; i < d1.rows(); ++i) {
    CHECK(std::abs(d1.row(i).norm() - 1.0) <= 1e-12);
  }
  const Matrix one_d = sample_unit_directions(1, 3, seed);
  for (Index i = 0; i < 3; ++i) {
    CHECK(std::abs(std::abs(one_d(i, 0)) - 1.0) <= 1e-15);
  }
  const Matrix a = sample_unit_directions(3, 2, RngStream{42, 9});
  const Matrix b = sample_unit_directions(3, 2, RngStream{42, 9});
  CHECK(a == b);
}

TEST_CASE("svd_thin known spectra") {
  const Matrix eye = Matrix::Identity(3, 3);
  const SvdResult id = svd_thin(eye);
  CHECK(id.s.isApprox(Vector::Ones(3), 1e-12));

  Vector u(3), v(2);
  u << 2, 0, 0;  // norm 2
  v << 0, 3;     // norm 3
  const SvdResult r1 = svd_thin(u * v.transpose());
  CHECK(r1.s(0) == doctest::Approx(6.0));
  CHECK(r1.s(1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("svd_thin and sym_eig reconstruct random inputs") {
  RngEngine eng(RngStream{23, 0});
  for (int rep = 0; rep < 1000; ++rep) {
    const Index rows = 1 + static_cast<Index>(eng.below(10));
    const Index cols = 1 + static_cast<Index>(eng.below(10));
    const Matrix m = test::random_matrix(rows, cols, eng);
    const SvdResult svd = svd_thin(m);
    const Matrix rec = svd.u * svd.s.asDiagonal() * svd.v.transpose();
    CHECK((rec - m).norm() <= 1e-10 * std::max(1.0, m.norm()));
    for (Index i = 1; i < svd.s.size(); ++i) CHECK(svd.s(i - 1) >= svd.s(i));
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const Index p = 1 + static_cast<Index>(eng.below(10));
    Matrix m = test::random_matrix(p, p, eng);
    m = (m + m.transpose()).eval();
    const EigResult eig = sym_eig(m);
    CHECK((m * eig.vectors - eig.vectors * eig.values.asDiagonal()).norm() <=
          1e-9 * std::max(1.0, m.norm()));
    for (Index i = 1; i < p; ++i) CHECK(eig.values(i - 1) >= eig.values(i));
  }
}

TEST_CASE("sym_eig small cases and validation") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  const EigResult eig = sym_eig(d);
  CHECK(eig.values(0) == doctest::Approx(3.0));
  CHECK(eig.values(1) == doctest::Approx(1.0));
  CHECK(std::abs(std::abs(eig.vectors(0, 0)) - 1.0) < 1e-12);

  const EigResult ones = sym_eig(Matrix::Ones(2, 2));
  CHECK(ones.values(0) == doctest::Approx(2.0));
  CHECK(ones.values(1) == doctest::Approx(0.0).epsilon(1e-12));

  Matrix bad(2, 2);
  bad << 1, 2, 3, 4;
  CHECK_THROWS_AS(sym_eig(bad), std::invalid_argument);

  RngEngine eng(RngStream{5, 5});
  const Matrix spd = test::random_spd(4, eng);
  const EigResult e4 = sym_eig(spd);
  CHECK((spd - e4.vectors * e4.values.asDiagonal() * e4.vectors.transpose()).norm() <=
        1e-9 * spd.norm());
}

TEST_CASE("chi2_quantile against oracles and closed forms") {
  // chi-squared with 2 dof has quantile -2 ln(1 - p)
  CHECK(chi2_quantile(2, 0.975) == doctest::Approx(-2.0 * std::log(0.025)).epsilon(1e-12));
  CHECK(std::abs(chi2_quantile(2, 0.975) - 7.3777589082278725) < 1e-9);
  // frozen from the quadrature oracle (chi2_quantile_oracle(1, 0.5))
  CHECK(std::abs(chi2_quantile(1, 0.5) - 0.45493642311957284) < 1e-9);
  CHECK(std::abs(chi2_quantile(1, 0.5) - chi2_quantile_oracle(1, 0.5)) < 1e-8);
  CHECK(std::abs(chi2_quantile(5, 0.9) - chi2_quantile_oracle(5, 0.9)) < 1e-8);
  CHECK(std::abs(chi2_quantile(50, 0.25) - chi2_quantile_oracle(50, 0.25)) < 1e-7);
  CHECK(chi2_quantile(3, 1e-12) < 1e-3);  // prob -> 0+ drives the quantile to 0
  CHECK_THROWS_AS(chi2_quantile(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(chi2_quantile(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(chi2_quantile(2, 1.0), std::invalid_argument);
}

TEST_CASE("chi2_quantile strictly increasing in prob") {
  for (int dof : {1, 2, 5, 50}) {
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double q = chi2_quantile(dof, i / 101.0);
      CHECK(q > prev);
      prev = q;
    }
  }
}

TEST_CASE("gaussian_quantile values and symmetry") {
  CHECK(gaussian_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  // frozen from the erfc-bisection oracle (gaussian_quantile_oracle(0.975))
  CHECK(std::abs(gaussian_quantile(0.975) - 1.959963984540054) < 1e-9);
  CHECK(std::abs(gaussian_quantile(0.975) - gaussian_quantile_oracle(0.975)) < 1e-9);
  CHECK(std::abs(gaussian_quantile(0.9) + gaussian_quantile(0.1)) < 1e-12);
  for (double p : {1e-8, 0.01, 0.3, 0.77, 0.999}) {
    CHECK(std::abs(gaussian_quantile(p) - gaussian_quantile_oracle(p)) < 1e-9);
  }
  CHECK_THROWS_AS(gaussian_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_quantile(1.0), std::invalid_argument);
}
