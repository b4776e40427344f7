#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ginibre/errors.hpp"
#include "ginibre/specfun.hpp"
#include "ginibre/spectra.hpp"
#include "ginibre/statistics.hpp"

using namespace ginibre;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

void check_vector(const std::vector<double>& got, const std::vector<double>& expected, double tol) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - expected[i]) <= tol * std::max(1.0, std::abs(expected[i])));
  }
}

}  // namespace

TEST_CASE("beta coefficients") {
  for (unsigned k : {0u, 1u, 4u, 9u}) check_vector(beta_coefficients(LandauIndex(0), k), {1.0 / std::tgamma(k + 1.0)}, 1e-15);
  check_vector(beta_coefficients(LandauIndex(1), 1), {1.0, -2.0, 1.0}, 1e-15);
  check_vector(beta_coefficients(LandauIndex(2), 0), {0.5}, 1e-15);
  // (1!/3!) (L_1^(2))^2 = (1/6)(3 - rho)^2
  check_vector(beta_coefficients(LandauIndex(1), 3), {1.5, -1.0, 1.0 / 6.0}, 1e-15);
}

TEST_CASE("beta eigenvalue examples") {
  const DiskRadius one(1.0);
  CHECK(beta_eigenvalue(LandauIndex(0), 0, one) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(beta_eigenvalue(LandauIndex(1), 1, one) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(beta_eigenvalue_quadrature(LandauIndex(0), 0, one) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(beta_eigenvalue_quadrature(LandauIndex(1), 1, one) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-14));
  const double closed = beta_eigenvalue(LandauIndex(3), 5, DiskRadius(2.0));
  const double oracle = beta_eigenvalue_quadrature(LandauIndex(3), 5, DiskRadius(2.0));
  CHECK(closed > 0.0);
  CHECK(closed < 1.0);
  CHECK(std::abs(closed - oracle) <= 1e-9);
}

TEST_CASE("beta symmetry in m and k") {
  for (unsigned m = 0; m <= 6; ++m) {
    for (unsigned k = 0; k <= 6; ++k) {
      CHECK(beta_eigenvalue(LandauIndex(m), k, DiskRadius(1.7)) == beta_eigenvalue(LandauIndex(k), m, DiskRadius(1.7)));
    }
  }
}

TEST_CASE("beta increases with R") {
  for (unsigned m : {0u, 2u, 5u}) {
    for (unsigned k : {0u, 3u, 7u}) {
      double prev = 0.0;
      for (double R = 0.25; R <= 5.0; R += 0.25) {
        const double b = beta_eigenvalue(LandauIndex(m), k, DiskRadius(R));
        CHECK(b > prev);
        prev = b;
      }
    }
  }
}

TEST_CASE("beta closed form against quadrature, m, k <= 12") {
  double worst = 0.0;
  for (double R : {0.5, 1.0, 2.0, 4.0}) {
    for (unsigned m = 0; m <= 12; ++m) {
      for (unsigned k = 0; k <= 12; ++k) {
        const BetaEvaluation b = beta_eigenvalue_checked(LandauIndex(m), k, DiskRadius(R));
        const double oracle = beta_eigenvalue_quadrature(LandauIndex(m), k, DiskRadius(R));
        const double served = b.accuracy_loss ? oracle : b.value;
        worst = std::max(worst, std::abs(served - oracle));
      }
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("beta reports cancellation and throws past ten digits") {
  const BetaEvaluation mild = beta_eigenvalue_checked(LandauIndex(1), 1, DiskRadius(1.0));
  CHECK_FALSE(mild.accuracy_loss);
  // large m and k at a large radius cancel heavily
  const BetaEvaluation heavy = beta_eigenvalue_checked(LandauIndex(30), 30, DiskRadius(6.0));
  CHECK(heavy.cancellation_digits > 10.0);
  CHECK(heavy.accuracy_loss);
  try {
    beta_eigenvalue(LandauIndex(30), 30, DiskRadius(6.0));
    FAIL("expected AccuracyLoss");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::AccuracyLoss);
  }
}

TEST_CASE("Daubechies reduction at m = 0") {
  for (double R : {1.0, 2.0}) {
    for (unsigned k = 0; k <= 30; ++k) {
      const double expected = lower_incomplete_gamma(k + 1.0, R * R) / std::tgamma(k + 1.0);
      CHECK(rel(beta_eigenvalue(LandauIndex(0), k, DiskRadius(R)), expected) <= 1e-12);
    }
  }
}

TEST_CASE("Feldheim linearization coefficients") {
  check_vector(feldheim_linearization(LandauIndex(0), 3), {1.0}, 0.0);
  check_vector(feldheim_linearization(LandauIndex(1), 0), {1.0, -2.0, 2.0}, 0.0);
  check_vector(feldheim_linearization(LandauIndex(1), 1), {4.0, -4.0, 2.0}, 0.0);
  check_vector(feldheim_linearization(LandauIndex(2), 1), {9.0, -18.0, 24.0, -18.0, 6.0}, 0.0);
  check_vector(feldheim_linearization(LandauIndex(2), 3), {100.0, -100.0, 70.0, -30.0, 6.0}, 0.0);
  check_vector(feldheim_linearization(LandauIndex(3), 2), {100.0, -200.0, 300.0, -320.0, 230.0, -100.0, 20.0}, 0.0);
  // (1 - x)^2 at x = 0, 1, 2
  const std::vector<double> c = feldheim_linearization(LandauIndex(1), 0);
  for (double x : {0.0, 1.0, 2.0}) {
    double s = 0.0;
    for (unsigned i = 0; i < 3; ++i) s += c[i] * laguerre(i, 0, x);
    CHECK(s == doctest::Approx((1.0 - x) * (1.0 - x)).epsilon(1e-15));
  }
  for (unsigned m = 0; m <= 5; ++m) {
    for (unsigned a = 0; a <= 4; ++a) {
      const std::vector<double> cs = feldheim_linearization(LandauIndex(m), a);
      for (double x : {0.37, 3.3, 9.1, 17.6}) {
        long double s = 0.0L;
        for (unsigned i = 0; i < cs.size(); ++i) s += cs[i] * laguerre_general(i, 2.0L * a, static_cast<long double>(x));
        const long double l = laguerre_general(m, static_cast<long double>(a), static_cast<long double>(x));
        CHECK(rel(static_cast<double>(s), static_cast<double>(l * l)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("lambda eigenvalues by quadrature") {
  struct Case {
    unsigned m, k;
    double R, expected;
  };
  // 30-digit quadrature of the defining integral
  const Case cases[] = {{0, 0, 1.0, 1.64549589735388207},
                        {1, 1, 1.0, 2.41223460853387079},
                        {1, 3, 1.3, 4.29370931841433136},
                        {2, 4, 0.7, 1.44177789785112991},
                        {2, 2, 2.0, 7.41291494312067253}};
  for (const Case& c : cases) {
    CAPTURE(c.m);
    CAPTURE(c.k);
    CHECK(rel(lambda_eigenvalue_quadrature(LandauIndex(c.m), c.k, DiskRadius(c.R)), c.expected) <= 1e-11);
    // symmetric in m and k
    CHECK(rel(lambda_eigenvalue_quadrature(LandauIndex(c.k), c.m, DiskRadius(c.R)), c.expected) <= 1e-11);
  }
  // G_R <= pi R^2 and the weight has unit mass
  for (double R : {0.5, 3.0, 8.0}) {
    const double l = lambda_eigenvalue_quadrature(LandauIndex(0), 0, DiskRadius(R));
    CHECK(l > 0.0);
    CHECK(l < std::numbers::pi * R * R);
  }
}

TEST_CASE("lambda_m over pi is the variance") {
  for (unsigned m = 0; m <= 4; ++m) {
    for (double R : {0.5, 1.0, 2.0, 4.0}) {
      const double l = lambda_eigenvalue_quadrature(LandauIndex(m), m, DiskRadius(R));
      CHECK(rel(l / std::numbers::pi, variance_quadrature_38(LandauIndex(m), DiskRadius(R))) <= 1e-8);
    }
  }
}

TEST_CASE("lambda closed form and calibration") {
  const double cal = lambda_calibration_constant();
  CHECK(rel(cal, std::numbers::pi) <= 1e-12);
  struct Case {
    unsigned m, k;
    double R;
  };
  for (const Case& c : {Case{0, 0, 1.0}, Case{1, 1, 1.0}, Case{1, 3, 1.3}, Case{2, 4, 0.7}, Case{2, 2, 2.0},
                        Case{3, 5, 3.0}, Case{4, 4, 4.0}}) {
    CAPTURE(c.m);
    CAPTURE(c.k);
    CAPTURE(c.R);
    const LambdaClosedForm f = lambda_closed_form(LandauIndex(c.m), c.k, DiskRadius(c.R));
    const double q = lambda_eigenvalue_quadrature(LandauIndex(c.m), c.k, DiskRadius(c.R));
    CHECK_FALSE(f.accuracy_loss);
    CHECK(rel(f.value, q) <= 1e-8);
    CHECK(rel(f.raw, cal * q) <= 1e-8);
    const LambdaDecomposition d = lambda_decomposition(LandauIndex(c.m), c.k, DiskRadius(c.R));
    CHECK(rel(d.value, q) <= 1e-8);
    CHECK(d.sigma1 == doctest::Approx(std::numbers::pi * c.R * c.R).epsilon(1e-15));
  }
  CHECK_THROWS_AS(lambda_closed_form(LandauIndex(3), 1, DiskRadius(1.0)), NumericError);
}

TEST_CASE("lambda closed form needs more digits as R grows") {
  const LambdaClosedForm small = lambda_closed_form(LandauIndex(0), 0, DiskRadius(1.0));
  const LambdaClosedForm large = lambda_closed_form(LandauIndex(1), 1, DiskRadius(6.0));
  CHECK(small.working_digits < 20.0);
  CHECK(large.cancellation_digits > 10.0);
  CHECK(large.working_digits > 40.0);
}

TEST_CASE("eigenvalue tables") {
  SUBCASE("mass identity") {
    const EigenvalueTable t = build_eigenvalue_table(LandauIndex(0), DiskRadius(1.0));
    CHECK(t.sum() <= 1.0);
    CHECK(t.sum() >= 1.0 - 1e-8);
    CHECK(t.tail_bound >= 0.0);
    CHECK(t.tail_bound < 1e-8);
    CHECK(t.residual_after(t.size() - 1) == doctest::Approx(t.tail_bound).epsilon(1e-6));
    const EigenvalueTable t2 = build_eigenvalue_table(LandauIndex(2), DiskRadius(2.0));
    CHECK(std::abs(t2.sum() - 4.0) <= 1e-8);
  }
  SUBCASE("entries are Bernoulli parameters") {
    for (unsigned m : {0u, 3u}) {
      for (double R : {0.5, 2.0, 4.0}) {
        const EigenvalueTable t = build_eigenvalue_table(LandauIndex(m), DiskRadius(R));
        for (double b : t.values) {
          CHECK(b > 0.0);
          CHECK(b < 1.0);
        }
      }
    }
  }
  SUBCASE("tail bound shrinks as K grows") {
    double prev = INFINITY;
    for (double tol : {1e-2, 1e-4, 1e-8, 1e-12}) {
      TablePolicy p;
      p.tolerance = tol;
      const EigenvalueTable t = build_eigenvalue_table(LandauIndex(1), DiskRadius(2.0), p);
      CHECK(t.tail_bound <= prev);
      prev = t.tail_bound;
    }
  }
  SUBCASE("fixed kmax with verification") {
    TablePolicy p;
    p.kmax = 5;
    p.verify = true;
    const EigenvalueTable t = build_eigenvalue_table(LandauIndex(0), DiskRadius(1.0), p);
    REQUIRE(t.size() == 6);
    for (unsigned k = 0; k <= 5; ++k) {
      CHECK(rel(t.values[k], lower_incomplete_gamma(k + 1.0, 1.0) / std::tgamma(k + 1.0)) <= 1e-13);
      CHECK(std::abs(t.closed_form[k] - t.oracle[k]) <= 1e-12);
    }
  }
  SUBCASE("thread count does not change the table") {
    TablePolicy one, many;
    one.threads = 1;
    one.verify = many.verify = true;
    many.threads = 8;
    const EigenvalueTable a = build_eigenvalue_table(LandauIndex(2), DiskRadius(3.0), one);
    const EigenvalueTable b = build_eigenvalue_table(LandauIndex(2), DiskRadius(3.0), many);
    CHECK(a.values == b.values);
  }
  SUBCASE("budget") {
    TablePolicy p;
    p.k_cap = 10;
    try {
      build_eigenvalue_table(LandauIndex(0), DiskRadius(4.0), p);
      FAIL("expected BudgetExceeded");
    } catch (const NumericError& e) {
      CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    // refused up front, before any entry is computed
    try {
      build_eigenvalue_table(LandauIndex(0), DiskRadius(1e4));
      FAIL("expected BudgetExceeded");
    } catch (const NumericError& e) {
      CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    TablePolicy bad;
    bad.tolerance = 0.0;
    CHECK_THROWS_AS(build_eigenvalue_table(LandauIndex(0), DiskRadius(1.0), bad), NumericError);
  }
}
