#include "ginibre/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ginibre/detail/series.hpp"

namespace ginibre {

namespace {

template <class Real>
Real laguerre_recurrence(unsigned n, Real alpha, Real x) {
  Real prev = 1;
  if (n == 0) return prev;
  Real curr = Real(1) + alpha - x;
  for (unsigned k = 1; k < n; ++k) {
    Real next = ((Real(2 * k + 1) + alpha - x) * curr - (Real(k) + alpha) * prev) / Real(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

template <class Real>
Real incomplete_gamma_lower(Real a, Real x) {
  using std::exp;
  using std::log;
  if (!(a > 0)) {
    throw NumericError(ErrorKind::Domain, "lower incomplete gamma needs a > 0, got a = " +
                                              std::to_string(static_cast<double>(a)));
  }
  if (!(x >= 0)) {
    throw NumericError(ErrorKind::Domain, "lower incomplete gamma needs x >= 0, got x = " +
                                              std::to_string(static_cast<double>(x)));
  }
  if (x == 0) return 0;

  const Real eps = std::numeric_limits<Real>::epsilon();
  constexpr int kMaxIter = 100000;

  if (x < a + 1) {
    // gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n))
    Real term = Real(1) / a;
    Real sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
      term *= x / (a + Real(n));
      sum += term;
      if (term < sum * eps) {
        return exp(a * log(x) - x + log(sum));
      }
    }
    throw NumericError(ErrorKind::NonConvergent, "incomplete gamma series");
  }

  // Continued fraction for Gamma(a, x) (modified Lentz), then
  // gamma(a, x) = Gamma(a) (1 - Q(a, x)).
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  Real b = x + Real(1) - a;
  Real c = Real(1) / tiny;
  Real d = Real(1) / b;
  Real h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    Real an = -Real(i) * (Real(i) - a);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Real(1) / d;
    Real del = d * c;
    h *= del;
    if (std::abs(del - Real(1)) < eps) {
      Real log_gamma_a = std::lgamma(a);
      Real q = exp(a * log(x) - x - log_gamma_a) * h;
      return exp(log_gamma_a + std::log1p(-q));
    }
  }
  throw NumericError(ErrorKind::NonConvergent, "incomplete gamma continued fraction");
}

double bessel_series(int order, double ax) {
  // sum_k (x/2)^(2k+order) / (k! (k+order)!), all terms positive
  double half = 0.5 * ax;
  double term = order == 0 ? 1.0 : half;
  double sum = term;
  double q = half * half;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k + order));
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon() * 0.5) break;
  }
  return sum;
}

// sqrt(2 pi x) e^-x I_order(x) for large x (Hankel asymptotic series).
double bessel_asymptotic_factor(int order, double ax) {
  double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double prev_abs = 1.0;
  for (int k = 1; k < 200; ++k) {
    double odd = 2.0 * k - 1.0;
    double next = term * (-(mu - odd * odd)) / (8.0 * k * ax);
    if (std::abs(next) > prev_abs) break;  // asymptotic series started to diverge
    term = next;
    sum += term;
    prev_abs = std::abs(term);
    if (prev_abs < std::numeric_limits<double>::epsilon() * 0.25 * std::abs(sum)) break;
  }
  return sum;
}

void check_bessel_args(int order, double x) {
  if (order != 0 && order != 1) {
    throw NumericError(ErrorKind::Domain, "bessel_i supports orders 0 and 1 only");
  }
  if (!(std::abs(x) <= 1e4)) {
    throw NumericError(ErrorKind::Domain, "bessel_i argument beyond |x| <= 1e4");
  }
}

constexpr double kBesselSeriesLimit = 20.0;

}  // namespace

double laguerre(unsigned n, unsigned alpha, double x) {
  return laguerre_recurrence<double>(n, static_cast<double>(alpha), x);
}

double laguerre_general(unsigned n, double alpha, double x) {
  return laguerre_recurrence<double>(n, alpha, x);
}

long double laguerre_general(unsigned n, long double alpha, long double x) {
  return laguerre_recurrence<long double>(n, alpha, x);
}

double laguerre_reflected(unsigned m, unsigned k, double x) {
  if (k >= m) {
    throw NumericError(ErrorKind::Domain, "laguerre_reflected needs k < m");
  }
  double scale = std::pow(-x, static_cast<double>(m - k)) *
                 std::exp(log_factorial(k) - log_factorial(m));
  return scale * laguerre(k, m - k, x);
}

std::vector<double> laguerre_product_coefficients(unsigned q, unsigned p, unsigned alpha) {
  std::vector<double> coeffs(q + p + 1, 0.0);
  for (long j = 0; j <= static_cast<long>(q + p); ++j) {
    double a = 0.0;
    for (long l = 0; l <= j; ++l) {
      a += binomial(j, l) * binomial(q + alpha, static_cast<long>(q) - j + l) *
           binomial(p + alpha, static_cast<long>(p) - l);
    }
    coeffs[j] = a;
  }
  return coeffs;
}

double log_factorial(long n) {
  if (n < 0) return std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double reciprocal_factorial(long n) {
  if (n < 0) return 0.0;
  return std::exp(-log_factorial(n));
}

double log_binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (n <= 60) {
    // exact for the small arguments used by the coefficient formulas
    double c = 1.0;
    long kk = std::min(k, n - k);
    for (long i = 1; i <= kk; ++i) c = c * static_cast<double>(n - kk + i) / static_cast<double>(i);
    return std::round(c);
  }
  return std::exp(log_binomial(n, k));
}

long double lower_incomplete_gamma(long double a, long double x) {
  return incomplete_gamma_lower<long double>(a, x);
}

double lower_incomplete_gamma(double a, double x) {
  return static_cast<double>(incomplete_gamma_lower<long double>(a, x));
}

double regularized_gamma_p(double a, double x) {
  long double g = incomplete_gamma_lower<long double>(a, x);
  return static_cast<double>(std::exp(std::log(g) - std::lgamma(static_cast<long double>(a))));
}

SeriesResult pfq(const PFqSpec& spec, const SeriesBudget& budget) {
  if (!std::isfinite(spec.argument)) {
    throw NumericError(ErrorKind::InvalidParameters, "pFq argument must be finite");
  }
  auto run = [&]<class Real>(std::type_identity<Real>) {
    Real tol = budget.tolerance > 0 ? Real(budget.tolerance) : std::numeric_limits<Real>::epsilon();
    auto s = detail::pfq_series<Real>(spec.numerator, spec.denominator, Real(spec.argument),
                                      budget.max_terms, tol);
    SeriesResult r;
    r.value = static_cast<double>(s.value);
    r.terms_used = s.terms;
    r.cancellation_digits = s.cancellation_digits;
    r.converged = s.converged;
    r.working_digits = detail::decimal_digits<Real>();
    return r;
  };
  SeriesResult r = detail::with_precision_ladder(run, budget.extended_precision, budget.reliable_digits);
  if (!r.converged) {
    throw NumericError(ErrorKind::NonConvergent,
                       "pFq series did not converge within " + std::to_string(budget.max_terms) +
                           " terms");
  }
  return r;
}

double bessel_i_scaled(int order, double x) {
  check_bessel_args(order, x);
  double ax = std::abs(x);
  double v;
  if (ax <= kBesselSeriesLimit) {
    v = bessel_series(order, ax) * std::exp(-ax);
  } else {
    v = bessel_asymptotic_factor(order, ax) / std::sqrt(2.0 * std::numbers::pi * ax);
  }
  return (order == 1 && x < 0) ? -v : v;
}

double bessel_i(int order, double x) {
  check_bessel_args(order, x);
  double ax = std::abs(x);
  double v;
  if (ax <= kBesselSeriesLimit) {
    v = bessel_series(order, ax);
  } else {
    double factor = bessel_asymptotic_factor(order, ax);
    double log_v = ax - 0.5 * std::log(2.0 * std::numbers::pi * ax) + std::log(factor);
    if (log_v > std::log(std::numeric_limits<double>::max())) {
      throw NumericError(ErrorKind::Overflow,
                         "I_" + std::to_string(order) + "(" + std::to_string(x) +
                             ") exceeds the double range; use bessel_i_scaled");
    }
    v = std::exp(log_v);
  }
  return (order == 1 && x < 0) ? -v : v;
}

}  // namespace ginibre
