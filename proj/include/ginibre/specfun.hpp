#pragma once
//
// Special functions needed by the disk-count formulas: Laguerre polynomials,
// the lower incomplete gamma function, generalized hypergeometric series and
// the modified Bessel functions I0, I1.
//
// Everything here is a pure function of its arguments.
//

#include <cstddef>
#include <vector>

#include "ginibre/errors.hpp"

namespace ginibre {

/// Value plus diagnostics of a summed series.
///
/// `cancellation_digits` is log10(max |partial sum or term| / |value|): the
/// number of leading digits lost to cancellation. `working_digits` is the
/// decimal precision the sum was carried out in (about 16 for double).
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double cancellation_digits = 0.0;
  bool converged = false;
  double working_digits = 0.0;
};

struct PFqSpec {
  std::vector<double> numerator;
  std::vector<double> denominator;
  double argument = 0.0;
};

struct SeriesBudget {
  std::size_t max_terms = 20000;
  /// Relative stopping tolerance; 0 selects the working precision epsilon.
  double tolerance = 0.0;
  /// Re-run the sum at 50/100/200 decimal digits while the measured
  /// cancellation leaves fewer than `reliable_digits` correct digits.
  bool extended_precision = false;
  double reliable_digits = 6.0;
};

/// Digits of cancellation above which a double-precision series result is
/// no longer trusted by the callers of `pfq`.
inline constexpr double kMaxCancellationDigits = 10.0;

// --- Laguerre --------------------------------------------------------------

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the upward three-term
/// recurrence in n.
double laguerre(unsigned n, unsigned alpha, double x);

/// Same recurrence, any real alpha (negative integers included).
double laguerre_general(unsigned n, double alpha, double x);
long double laguerre_general(unsigned n, long double alpha, long double x);

/// L_m^(k-m)(x) for k < m through the index reflection
/// L_m^(k-m)(x) = (-x)^(m-k) k!/m! L_k^(m-k)(x).
double laguerre_reflected(unsigned m, unsigned k, double x);

/// Integer coefficients A_j of the product expansion
///   L_q^(a)(x) L_p^(a)(x) = sum_j (-1)^j A_j x^j / j!.
std::vector<double> laguerre_product_coefficients(unsigned q, unsigned p, unsigned alpha);

// --- Factorial helpers -------------------------------------------------------

double log_factorial(long n);
/// 1/n!, exactly 0 for negative n.
double reciprocal_factorial(long n);
/// log of the binomial coefficient C(n, k); -inf when k < 0 or k > n.
double log_binomial(long n, long k);
/// C(n, k) as a double (0 outside the triangle).
double binomial(long n, long k);

// --- Incomplete gamma --------------------------------------------------------

/// gamma(a, x) = int_0^x t^(a-1) e^-t dt. Throws Domain for a <= 0 or x < 0.
/// Overflows to +inf when the result is not representable.
double lower_incomplete_gamma(double a, double x);
long double lower_incomplete_gamma(long double a, long double x);

/// Regularized P(a, x) = gamma(a, x) / Gamma(a).
double regularized_gamma_p(double a, double x);

// --- Hypergeometric ----------------------------------------------------------

/// Maclaurin series of pFq with Neumaier-compensated accumulation.
/// Throws InvalidParameters if a denominator pole is reached before the
/// series terminates, NonConvergent if the term budget runs out.
SeriesResult pfq(const PFqSpec& spec, const SeriesBudget& budget = {});

// --- Modified Bessel ---------------------------------------------------------

/// I0 or I1. Throws Overflow when e^|x| is not representable.
double bessel_i(int order, double x);
/// e^-|x| I_order(x).
double bessel_i_scaled(int order, double x);

}  // namespace ginibre
