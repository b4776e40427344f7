#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ginibre/errors.hpp"
#include "ginibre/quadrature.hpp"
#include "ginibre/specfun.hpp"
#include "ginibre/spectra.hpp"

using namespace ginibre;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

bool throws_kind(ErrorKind kind, auto&& fn) {
  try {
    fn();
  } catch (const NumericError& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("laguerre low degrees") {
  CHECK(laguerre(0, 0, 7.3) == 1.0);
  CHECK(laguerre(1, 0, 2.0) == -1.0);
  CHECK(laguerre(2, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(laguerre(1, 3, 0.25) == doctest::Approx(3.75).epsilon(1e-15));
  // L_n(0) = binomial(n + alpha, n)
  CHECK(laguerre(7, 3, 0.0) == doctest::Approx(120.0).epsilon(1e-15));
}

TEST_CASE("laguerre orthogonality under quadrature") {
  double worst = 0.0;
  for (unsigned a = 0; a <= 5; ++a) {
    for (unsigned n = 0; n <= 10; ++n) {
      for (unsigned p = n + 1; p <= 10; ++p) {
        auto f = [&](double x) { return std::exp(-x) * std::pow(x, a) * laguerre(n, a, x) * laguerre(p, a, x); };
        worst = std::max(worst, std::abs(integrate_semiinfinite(f, 1.0, 1e-13).value));
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("incomplete gamma small cases") {
  CHECK(lower_incomplete_gamma(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(lower_incomplete_gamma(2.0, 1.0) == doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(lower_incomplete_gamma(3.5, 0.0) == 0.0);
  CHECK(throws_kind(ErrorKind::Domain, [] { lower_incomplete_gamma(0.0, 1.0); }));
  CHECK(throws_kind(ErrorKind::Domain, [] { lower_incomplete_gamma(-1.0, 1.0); }));
  CHECK(throws_kind(ErrorKind::Domain, [] { lower_incomplete_gamma(1.0, -1.0); }));
}

TEST_CASE("incomplete gamma against high-precision values") {
  struct Case {
    long double a, x, expected;
  };
  const Case cases[] = {
      {500.0L, 400.0L, 1.9789108980476741743e+1125L}, {500.0L, 600.0L, 2.4402437441290705048e+1131L},
      {0.5L, 1e4L, 1.7724538509055160273L},          {150.5L, 140.0L, 9.2220702386655764972e+260L},
      {25.0L, 16.0L, 1.3845602647824051904e+22L},    {2.5L, 3.5L, 1.036034315578585571L},
      {30.0L, 1.0L, 0.012670964804310040952L},
  };
  for (const Case& c : cases) {
    const long double v = lower_incomplete_gamma(c.a, c.x);
    CAPTURE(static_cast<double>(c.a));
    CAPTURE(static_cast<double>(c.x));
    CHECK(static_cast<double>(std::abs(v / c.expected - 1.0L)) <= 1e-13);
  }
  // double overload within its range
  CHECK(rel(lower_incomplete_gamma(150.5, 140.0), 9.2220702386655764972e+260) <= 1e-13);
}

TEST_CASE("pFq examples") {
  SUBCASE("zero argument") {
    SeriesResult r = pfq(PFqSpec{{2.5, -3.0}, {0.5}, 0.0});
    CHECK(r.value == 1.0);
    CHECK(r.terms_used >= 1);
    CHECK(r.converged);
  }
  SUBCASE("1F1(1; 2; 1) = e - 1") {
    CHECK(pfq(PFqSpec{{1.0}, {2.0}, 1.0}).value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
  }
  SUBCASE("2F2(1, 3/2; 3, 2; -4)") {
    SeriesResult r = pfq(PFqSpec{{1.0, 1.5}, {3.0, 2.0}, -4.0});
    CHECK(rel(r.value, 0.47622238819739130) <= 1e-14);
    CHECK(r.cancellation_digits > 0.0);
  }
  SUBCASE("cancellation is measured and reported") {
    SeriesResult r = pfq(PFqSpec{{1.0, 1.5}, {3.0, 2.0}, -25.0});
    // peak term 4287810.14 against a sum of 0.1243
    CHECK(r.cancellation_digits == doctest::Approx(7.5379).epsilon(1e-3));
    SeriesBudget wide;
    wide.extended_precision = true;
    wide.reliable_digits = 14.0;
    SeriesResult w = pfq(PFqSpec{{1.0, 1.5}, {3.0, 2.0}, -25.0}, wide);
    CHECK(w.working_digits > 40.0);
    CHECK(rel(w.value, 0.12425866232752963337) <= 1e-14);
  }
  SUBCASE("terminating series") {
    // 2F1(-2, 1; 1; z) = (1 - z)^2
    CHECK(pfq(PFqSpec{{-2.0, 1.0}, {1.0}, 3.0}).value == doctest::Approx(4.0).epsilon(1e-15));
  }
  SUBCASE("errors") {
    CHECK(throws_kind(ErrorKind::InvalidParameters, [] { pfq(PFqSpec{{1.0}, {-2.0}, 0.5}); }));
    CHECK(throws_kind(ErrorKind::InvalidParameters, [] { pfq(PFqSpec{{-3.0}, {-2.0}, 0.5}); }));
    // a pole beyond the termination index is fine
    CHECK(pfq(PFqSpec{{-1.0}, {-2.0}, 0.5}).value == doctest::Approx(1.25).epsilon(1e-15));
    SeriesBudget tiny;
    tiny.max_terms = 5;
    CHECK(throws_kind(ErrorKind::NonConvergent, [&] { pfq(PFqSpec{{1.0}, {2.0}, -20.0}, tiny); }));
  }
}

TEST_CASE("contiguous relation, deterministic instance") {
  // (1/(d+2)) pFq(a; b, d+3) - (1/(d+1)) p+1Fq+1(a, d+1; b, d+2, d+2) = -(1/((d+2)(d+1))) p+1Fq+1(a, d+1; b, d+2, d+3)
  const double d = 0.7, z = -3.1;
  const double lhs = pfq(PFqSpec{{1.3, 0.4}, {2.2, d + 3}, z}).value / (d + 2) -
                     pfq(PFqSpec{{1.3, 0.4, d + 1}, {2.2, d + 2, d + 2}, z}).value / (d + 1);
  const double rhs = -pfq(PFqSpec{{1.3, 0.4, d + 1}, {2.2, d + 2, d + 3}, z}).value / ((d + 2) * (d + 1));
  CHECK(rel(lhs, rhs) <= 1e-12);
}

TEST_CASE("modified Bessel functions") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i(1, 0.0) == 0.0);
  CHECK(rel(bessel_i(0, 2.0), 2.2795853023360672674) <= 1e-14);
  CHECK(rel(bessel_i(1, 2.0), 1.5906368546373290634) <= 1e-14);
  CHECK(rel(bessel_i(0, 19.5), 26760525.339838766027) <= 1e-13);
  CHECK(rel(bessel_i(1, 20.5), 69170831.679184372867) <= 1e-12);
  CHECK(rel(bessel_i(0, 50.0), 2.9325537838493363267e+20) <= 1e-12);
  CHECK(rel(bessel_i(1, -3.0), -3.9533702174026093965) <= 1e-14);
  CHECK(rel(bessel_i_scaled(0, 1000.0), 0.012617240455891256586) <= 1e-12);
  CHECK(rel(bessel_i_scaled(1, 1000.0), 0.01261093025692862947) <= 1e-12);
  CHECK(rel(bessel_i_scaled(1, 50.0), 0.055993123892895399644) <= 1e-12);
  CHECK(throws_kind(ErrorKind::Overflow, [] { bessel_i(0, 1000.0); }));
  CHECK(throws_kind(ErrorKind::Domain, [] { bessel_i(2, 1.0); }));
  CHECK(throws_kind(ErrorKind::Domain, [] { bessel_i_scaled(0, 2e4); }));
}

TEST_CASE("Bessel series and asymptotic branches meet at the switch point") {
  for (int order : {0, 1}) {
    const double below = bessel_i_scaled(order, std::nextafter(20.0, 0.0));
    const double above = bessel_i_scaled(order, std::nextafter(20.0, 30.0));
    CHECK(rel(below, above) <= 1e-13);
  }
}

TEST_CASE("factorial helpers") {
  CHECK(reciprocal_factorial(-1) == 0.0);
  CHECK(reciprocal_factorial(-7) == 0.0);
  CHECK(reciprocal_factorial(5) == doctest::Approx(1.0 / 120.0).epsilon(1e-15));
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(5, 7) == 0.0);
  CHECK(binomial(5, -1) == 0.0);
  CHECK(binomial(60, 30) == 118264581564861424.0);
}

TEST_CASE("Feldheim product coefficients reproduce the product") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.01, 20.0);
  for (int i = 0; i < 200; ++i) {
    const unsigned q = rng() % 7, p = rng() % 7, a = rng() % 5;
    const long double x = ux(rng);
    const std::vector<double> A = laguerre_product_coefficients(q, p, a);
    REQUIRE(A.size() == q + p + 1);
    long double sum = 0.0L, term = 1.0L;
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (j > 0) term *= x / j;
      sum += (j % 2 ? -1.0L : 1.0L) * A[j] * term;
    }
    const long double lhs = laguerre_general(q, static_cast<long double>(a), x) *
                            laguerre_general(p, static_cast<long double>(a), x);
    // long double is enough here up to the cancellation of the alternating sum
    CHECK(static_cast<double>(std::abs(lhs - sum)) <= 1e-9 * std::max(1.0L, std::abs(lhs)));
  }
}

TEST_CASE("index reflection") {
  for (unsigned m = 1; m <= 8; ++m) {
    for (unsigned k = 0; k < m; ++k) {
      for (double rho : {0.3, 1.7, 6.2, 13.9}) {
        // explicit coefficients: binomial(m + alpha, m - j) = binomial(k, m - j), zero for j < m - k
        long double direct = 0.0L;
        for (unsigned j = m - k; j <= m; ++j) {
          direct += ((j % 2) ? -1.0L : 1.0L) * binomial(k, m - j) * std::pow(static_cast<long double>(rho), j) /
                    std::tgamma(j + 1.0L);
        }
        CHECK(rel(static_cast<double>(direct), laguerre_reflected(m, k, rho)) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(laguerre_reflected(2, 2, 1.0), NumericError);
}

TEST_CASE("Bateman summation tends to e^rho") {
  for (unsigned m = 0; m <= 4; ++m) {
    for (double rho : {0.1, 1.0, 5.5, 16.0}) {
      CHECK(rel(bateman_partial_sum(LandauIndex(m), rho, 200), std::exp(rho)) <= 1e-12);
    }
  }
}
