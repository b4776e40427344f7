#include "ginibre/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <type_traits>
#include <thread>

#include "ginibre/detail/series.hpp"
#include "ginibre/quadrature.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Digits the closed forms must keep after cancellation before a result is
// served; the precision ladder climbs until this holds.
constexpr double kClosedFormReliableDigits = 12.0;

struct RadialShape {
  unsigned lo;     // m ∧ k
  unsigned shift;  // |k - m|
};

RadialShape radial_shape(unsigned m, unsigned k) {
  return {std::min(m, k), std::max(m, k) - std::min(m, k)};
}

// (lo!/hi!) e^-rho rho^shift (L_lo^(shift)(rho))^2, the radial density of
// the k-th eigenfunction.
double radial_weight(const RadialShape& s, double log_prefactor, double rho) {
  const double lag = laguerre(s.lo, s.shift, rho);
  if (lag == 0.0) return 0.0;
  double log_w = log_prefactor - rho;
  if (s.shift > 0) {
    if (rho == 0.0) return 0.0;
    log_w += s.shift * std::log(rho);
  }
  return std::exp(log_w) * lag * lag;
}

double log_norm_prefactor(const RadialShape& s) {
  return log_factorial(s.lo) - log_factorial(s.lo + s.shift);
}

template <class Real>
Real exact_binomial(long n, long k) {
  if (k < 0 || k > n || n < 0) return Real(0);
  Real c = 1;
  for (long i = 1; i <= k; ++i) c = c * Real(n - k + i) / Real(i);
  return c;
}

// C_s(m, alpha) in the scalar type Real.
template <class Real>
Real feldheim_coefficient(unsigned m, unsigned alpha, unsigned s) {
  Real c = 0;
  for (unsigned r = 0; r <= s; ++r) {
    c += exact_binomial<Real>(s, r) *
         exact_binomial<Real>(m + alpha, static_cast<long>(m) - static_cast<long>(s) + r) *
         exact_binomial<Real>(m + alpha, static_cast<long>(m) - static_cast<long>(r));
  }
  return (s % 2 == 0) ? c : -c;
}

template <class Real>
SeriesResult finish(const detail::PieceSum<Real>& sum, bool converged) {
  SeriesResult r;
  r.value = static_cast<double>(sum.value());
  r.cancellation_digits = sum.cancellation_digits();
  r.working_digits = detail::decimal_digits<Real>();
  r.converged = converged;
  r.terms_used = 1;
  return r;
}

constexpr std::size_t kMaxSeriesTerms = 20000;

// The single-3F3 expression for lambda_k (k >= m), uncalibrated.
template <class Real>
SeriesResult lambda_raw_impl(unsigned m, unsigned k, double radius) {
  using std::pow;
  const unsigned alpha = k - m;
  const Real R(radius);
  const Real pi = boost::math::constants::pi<Real>();
  const Real z = -4 * R * R;
  const Real tol = std::numeric_limits<Real>::epsilon();

  const Real two_r = 2 * R;
  Real pre = detail::factorial<Real>(m) * pi * sqrt(pi) * pow(two_r, int(2 * alpha + 4)) *
             detail::gamma_half_integer<Real>(alpha + 1);
  pre /= 4 * detail::factorial<Real>(2 * alpha) * detail::factorial<Real>(alpha + 1) *
         detail::factorial<Real>(k) * Real(alpha + 2) * Real(alpha + 1);

  detail::PieceSum<Real> sum;
  sum.add(pi * pi * R * R);
  bool converged = true;
  const std::vector<double> den = {2.0 * alpha + 1.0, alpha + 2.0, alpha + 3.0};
  for (unsigned s = 0; s <= 2 * m; ++s) {
    Real inner = 0;
    for (unsigned r = 0; r <= s; ++r) {
      inner += exact_binomial<Real>(s, r) *
               exact_binomial<Real>(k, static_cast<long>(m) - static_cast<long>(s) + r) *
               exact_binomial<Real>(k, static_cast<long>(m) - static_cast<long>(r));
    }
    if (inner == 0) continue;
    Real a_s = detail::factorial<Real>(2 * alpha + s) / detail::factorial<Real>(s) * inner;
    if (s % 2 == 1) a_s = -a_s;
    const std::vector<double> num = {2.0 * alpha + s + 1.0, alpha + 1.5, alpha + 1.0};
    auto f = detail::pfq_series<Real>(num, den, z, kMaxSeriesTerms, tol);
    converged = converged && f.converged;
    Real coef = -pre * a_s;
    sum.add(coef * f.value, coef * f.peak);
  }
  return finish(sum, converged);
}

template <class Real>
SeriesResult sigma2_impl(unsigned m, unsigned k, double radius) {
  using std::pow;
  const unsigned alpha = k - m;
  const Real R(radius);
  const Real pi = boost::math::constants::pi<Real>();
  const Real a = 2 * R;
  const Real tol = std::numeric_limits<Real>::epsilon();
  Real pre = a * a * sqrt(pi) / 8 * pow(a, int(2 * alpha + 2)) * detail::factorial<Real>(alpha) *
             detail::gamma_half_integer<Real>(alpha + 1) /
             (detail::factorial<Real>(2 * alpha) * detail::factorial<Real>(alpha + 1) *
              detail::factorial<Real>(alpha + 1));
  detail::PieceSum<Real> sum;
  bool converged = true;
  const std::vector<double> den = {alpha + 2.0, alpha + 2.0, 2.0 * alpha + 1.0};
  for (unsigned s = 0; s <= 2 * m; ++s) {
    Real c = feldheim_coefficient<Real>(m, alpha, s);
    Real coef = pre * c * detail::factorial<Real>(s + 2 * alpha) / detail::factorial<Real>(s);
    const std::vector<double> num = {alpha + 1.0, alpha + 1.5, 2.0 * alpha + 1.0 + s};
    auto f = detail::pfq_series<Real>(num, den, -a * a, kMaxSeriesTerms, tol);
    converged = converged && f.converged;
    sum.add(coef * f.value, coef * f.peak);
  }
  return finish(sum, converged);
}

template <class Real>
SeriesResult sigma3_impl(unsigned m, unsigned k, double radius) {
  using std::pow;
  const unsigned alpha = k - m;
  const Real R(radius);
  const Real a = 2 * R;
  const Real tol = std::numeric_limits<Real>::epsilon();
  Real pre = pow(a, int(2 * alpha + 4)) * detail::gamma_half_integer<Real>(alpha + 1) *
             detail::gamma_half_integer<Real>(1) /
             (4 * detail::factorial<Real>(2 * alpha) * detail::factorial<Real>(alpha + 2));
  detail::PieceSum<Real> sum;
  bool converged = true;
  const std::vector<double> den = {2.0 * alpha + 1.0, alpha + 3.0};
  for (unsigned s = 0; s <= 2 * m; ++s) {
    Real c = feldheim_coefficient<Real>(m, alpha, s);
    Real coef = pre * c * detail::factorial<Real>(2 * alpha + s) / detail::factorial<Real>(s);
    const std::vector<double> num = {2.0 * alpha + s + 1.0, alpha + 1.5};
    auto f = detail::pfq_series<Real>(num, den, -a * a, kMaxSeriesTerms, tol);
    converged = converged && f.converged;
    sum.add(coef * f.value, coef * f.peak);
  }
  return finish(sum, converged);
}

// Beyond this many digits of cancellation the long double beta sum is
// recomputed with 50 digits.
constexpr double kBetaEscalationDigits = 2.0;

template <class Real>
Real gamma_lower_positive_series(unsigned a, const Real& x) {
  // gamma(a, x) = x^a e^-x sum_k x^k / (a (a+1) ... (a+k)); every term positive
  using std::exp;
  using std::log;
  Real term = Real(1) / Real(a);
  Real sum = term;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (unsigned i = 1; i < 1000000; ++i) {
    term *= x / Real(a + i);
    sum += term;
    if (Real(a + i) > x && term < eps * sum) break;
  }
  return exp(Real(a) * log(x) - x) * sum;
}

template <class Real>
struct BetaSum {
  detail::CompensatedSum<Real> sum;
};

// sum_j a_j gamma(|k-m| + j + 1, x) in Real. long double works with log
// factorials and the library incomplete gamma; wider types use exact
// factorials and the positive gamma series.
template <class Real>
BetaSum<Real> beta_sum(unsigned m, unsigned k, double x_in) {
  const RadialShape s = radial_shape(m, k);
  const long n = s.lo;
  const long a = s.shift;
  const Real x(x_in);
  constexpr bool native = std::is_floating_point_v<Real>;

  std::vector<Real> fact;
  Real log_mk = 0;
  if constexpr (native) {
    log_mk = std::lgamma(static_cast<Real>(m) + 1) + std::lgamma(static_cast<Real>(k) + 1);
  } else {
    fact.resize(std::max(m, k) + 1);
    fact[0] = 1;
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * Real(i);
  }

  BetaSum<Real> out;
  for (long j = 0; j <= 2 * n; ++j) {
    Real inner = 0;
    for (long l = 0; l <= j; ++l) {
      const long args[6] = {l, j - l, n - j + l, n - l, a + j - l, a + l};
      if (std::any_of(std::begin(args), std::end(args), [](long v) { return v < 0; })) continue;
      if constexpr (native) {
        Real log_den = 0;
        for (long v : args) log_den += std::lgamma(static_cast<Real>(v) + 1);
        inner += std::exp(log_mk - log_den);
      } else {
        Real den = 1;
        for (long v : args) den *= fact[v];
        inner += fact[m] * fact[k] / den;
      }
    }
    const Real coeff = (j % 2 == 0) ? inner : Real(-inner);
    if constexpr (native) {
      out.sum.add(coeff * lower_incomplete_gamma(static_cast<long double>(a + j + 1), x));
    } else {
      out.sum.add(coeff * gamma_lower_positive_series<Real>(static_cast<unsigned>(a + j + 1), x));
    }
  }
  return out;
}

void require_k_at_least_m(unsigned m, unsigned k) {
  if (k < m) {
    throw NumericError(ErrorKind::Domain,
                       "closed-form lambda_k is defined for k >= m; use the quadrature route");
  }
}

}  // namespace

std::string to_string(EigenMethod method) {
  return method == EigenMethod::ClosedForm ? "closed_form" : "quadrature";
}

double EigenvalueTable::sum() const {
  detail::CompensatedSum<double> acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

double EigenvalueTable::residual_after(std::size_t k) const {
  detail::CompensatedSum<double> acc;
  for (std::size_t j = 0; j <= k && j < values.size(); ++j) acc.add(values[j]);
  return R * R - acc.value();
}

std::vector<double> beta_coefficients(LandauIndex m, unsigned k) {
  const RadialShape s = radial_shape(m, k);
  const long n = s.lo;
  const long a = s.shift;
  const double log_mk = log_factorial(m) + log_factorial(k);
  std::vector<double> coeffs(2 * n + 1, 0.0);
  for (long j = 0; j <= 2 * n; ++j) {
    // every term of the inner sum is positive; terms with a negative
    // factorial argument vanish
    double inner = 0.0;
    for (long l = 0; l <= j; ++l) {
      const long args[6] = {l, j - l, n - j + l, n - l, a + j - l, a + l};
      bool vanishes = false;
      double log_den = 0.0;
      for (long x : args) {
        if (x < 0) {
          vanishes = true;
          break;
        }
        log_den += log_factorial(x);
      }
      if (!vanishes) inner += std::exp(log_mk - log_den);
    }
    coeffs[j] = (j % 2 == 0) ? inner : -inner;
  }
  return coeffs;
}

BetaEvaluation beta_eigenvalue_checked(LandauIndex m, unsigned k, DiskRadius R) {
  const double x = R.value() * R.value();
  BetaSum<long double> ld = beta_sum<long double>(m, k, x);
  double cancellation = ld.sum.cancellation_digits();
  double value = static_cast<double>(ld.sum.value());
  if (cancellation > kBetaEscalationDigits) {
    // long double keeps too few digits here; the 50-digit pass has a
    // non-alternating gamma series, so only the coefficient sum cancels
    BetaSum<detail::Float50> wide = beta_sum<detail::Float50>(m, k, x);
    value = static_cast<double>(wide.sum.value());
    cancellation = wide.sum.cancellation_digits();
  }
  BetaEvaluation out;
  out.value = value;
  out.cancellation_digits = cancellation;
  out.accuracy_loss = cancellation > kMaxCancellationDigits;
  return out;
}

double beta_eigenvalue(LandauIndex m, unsigned k, DiskRadius R) {
  BetaEvaluation e = beta_eigenvalue_checked(m, k, R);
  if (e.accuracy_loss) {
    throw NumericError(ErrorKind::AccuracyLoss,
                       "beta closed form cancels " + std::to_string(e.cancellation_digits) +
                           " digits at m=" + std::to_string(unsigned(m)) + ", k=" + std::to_string(k));
  }
  return e.value;
}

double beta_eigenvalue_quadrature(LandauIndex m, unsigned k, DiskRadius R, double tol) {
  const RadialShape s = radial_shape(m, k);
  const double log_pre = log_norm_prefactor(s);
  auto f = [&](double rho) { return radial_weight(s, log_pre, rho); };
  return integrate_finite(f, 0.0, R.value() * R.value(), QuadratureOptions{tol, tol, 20000}).value;
}

std::vector<double> feldheim_linearization(LandauIndex m, unsigned alpha) {
  std::vector<double> c(2 * m + 1);
  for (unsigned s = 0; s <= 2 * m; ++s) c[s] = feldheim_coefficient<double>(m, alpha, s);
  return c;
}

double lambda_eigenvalue_quadrature(LandauIndex m, unsigned k, DiskRadius R, double tol) {
  const RadialShape s = radial_shape(m, k);
  const double log_pre = log_norm_prefactor(s);
  const double four_r2 = 4.0 * R.value() * R.value();
  auto inside = [&](double rho) {
    return radial_weight(s, log_pre, rho) * g_weight(std::sqrt(rho), R);
  };
  auto outside = [&](double t) { return radial_weight(s, log_pre, four_r2 + t); };
  const QuadratureOptions opts{tol * 1e-2, tol, 20000};
  const double near = integrate_finite(inside, 0.0, four_r2, opts).value;
  const double far = integrate_semiinfinite(outside, 1.0, tol * 1e-2).value;
  return near + std::numbers::pi * R.value() * R.value() * far;
}

LambdaClosedForm lambda_closed_form(LandauIndex m, unsigned k, DiskRadius R) {
  require_k_at_least_m(m, k);
  auto run = [&]<class Real>(std::type_identity<Real>) {
    return lambda_raw_impl<Real>(m, k, R.value());
  };
  SeriesResult raw = detail::with_precision_ladder(run, true, kClosedFormReliableDigits);
  LambdaClosedForm out;
  out.raw = raw.value;
  out.calibration = lambda_calibration_constant();
  out.value = raw.value / out.calibration;
  out.cancellation_digits = raw.cancellation_digits;
  out.working_digits = raw.working_digits;
  out.accuracy_loss =
      !raw.converged || raw.working_digits - raw.cancellation_digits < kClosedFormReliableDigits;
  return out;
}

double lambda_calibration_constant() {
  static const double constant = [] {
    const LandauIndex m0(0);
    const DiskRadius r1(1.0);
    auto run = [&]<class Real>(std::type_identity<Real>) {
      return lambda_raw_impl<Real>(0, 0, 1.0);
    };
    const double raw = detail::with_precision_ladder(run, true, kClosedFormReliableDigits).value;
    return raw / lambda_eigenvalue_quadrature(m0, 0, r1, 1e-14);
  }();
  return constant;
}

LambdaDecomposition lambda_decomposition(LandauIndex m, unsigned k, DiskRadius R) {
  require_k_at_least_m(m, k);
  auto s2 = detail::with_precision_ladder(
      [&]<class Real>(std::type_identity<Real>) { return sigma2_impl<Real>(m, k, R.value()); }, true,
      kClosedFormReliableDigits);
  auto s3 = detail::with_precision_ladder(
      [&]<class Real>(std::type_identity<Real>) { return sigma3_impl<Real>(m, k, R.value()); }, true,
      kClosedFormReliableDigits);
  LambdaDecomposition d;
  d.sigma1 = std::numbers::pi * R.value() * R.value();
  d.sigma2 = s2.value;
  d.sigma3 = s3.value;
  const double weight = 2.0 * std::exp(log_factorial(m) - log_factorial(k));
  d.value = d.sigma1 + weight * (d.sigma3 - d.sigma2);
  d.cancellation_digits = std::max(s2.cancellation_digits, s3.cancellation_digits);
  return d;
}

double bateman_partial_sum(LandauIndex m, double rho, unsigned lmax) {
  if (!(rho > 0.0)) throw NumericError(ErrorKind::Domain, "bateman_partial_sum needs rho > 0");
  detail::CompensatedSum<double> acc;
  for (unsigned l = 0; l <= lmax; ++l) {
    double term;
    if (l < m) {
      // (m!/l!) rho^(l-m) (L_m^(l-m))^2 with the index reflection applied
      const double lag = laguerre_reflected(m, l, rho);
      term = std::exp(log_factorial(m) - log_factorial(l) + (double(l) - double(m)) * std::log(rho)) *
             lag * lag;
    } else {
      const double lag = laguerre(m, l - m, rho);
      term = std::exp(log_factorial(m) - log_factorial(l) + (double(l) - double(m)) * std::log(rho)) *
             lag * lag;
    }
    acc.add(term);
  }
  return acc.value();
}

EigenvalueTable build_eigenvalue_table(LandauIndex m, DiskRadius R, const TablePolicy& policy) {
  if (!(policy.tolerance > 0.0)) {
    throw NumericError(ErrorKind::Domain, "table tolerance must be positive");
  }
  const double mass = R.value() * R.value();
  const double wanted = policy.k_cap > 0 ? static_cast<double>(policy.k_cap) : 10.0 * (mass + m) + 200.0;
  const std::size_t cap = static_cast<std::size_t>(std::min(wanted, static_cast<double>(kTableEntryLimit)));
  // the table reaches past k = R^2 + m before its tail is small
  if (mass + m > static_cast<double>(cap)) {
    throw NumericError(ErrorKind::BudgetExceeded,
                       "eigenvalue table needs more than " + std::to_string(cap) + " entries");
  }
  const bool fixed = policy.kmax >= 0;
  if (fixed && static_cast<std::size_t>(policy.kmax) > cap) {
    throw NumericError(ErrorKind::BudgetExceeded, "kmax exceeds the table cap");
  }
  unsigned threads = policy.threads > 0 ? policy.threads : std::max(1u, std::thread::hardware_concurrency());

  struct Entry {
    double value;
    EigenMethod method;
    double closed;
    double oracle;
  };
  auto compute = [&](unsigned k) {
    Entry e{};
    BetaEvaluation b = beta_eigenvalue_checked(m, k, R);
    e.closed = b.value;
    e.oracle = policy.verify ? beta_eigenvalue_quadrature(m, k, R) : kNaN;
    if (b.accuracy_loss) {
      e.value = policy.verify ? e.oracle : beta_eigenvalue_quadrature(m, k, R);
      e.method = EigenMethod::Quadrature;
    } else {
      e.value = b.value;
      e.method = EigenMethod::ClosedForm;
    }
    return e;
  };

  EigenvalueTable table;
  table.m = m;
  table.R = R.value();
  detail::CompensatedSum<double> acc;
  const std::size_t block = policy.verify ? std::max<std::size_t>(8, 2 * threads) : 32;
  bool done = false;
  std::size_t next = 0;
  while (!done) {
    std::size_t end = next + block;
    if (fixed) end = std::min<std::size_t>(end, policy.kmax + 1);
    end = std::min(end, cap + 1);
    std::vector<Entry> entries(end - next);
    if (policy.verify && threads > 1) {
      std::vector<std::future<Entry>> jobs;
      for (std::size_t k = next; k < end; ++k) {
        jobs.push_back(std::async(std::launch::async, compute, static_cast<unsigned>(k)));
      }
      for (std::size_t i = 0; i < jobs.size(); ++i) entries[i] = jobs[i].get();
    } else {
      for (std::size_t k = next; k < end; ++k) entries[k - next] = compute(static_cast<unsigned>(k));
    }
    for (const Entry& e : entries) {
      table.values.push_back(e.value);
      table.methods.push_back(e.method);
      table.closed_form.push_back(e.closed);
      table.oracle.push_back(e.oracle);
      acc.add(e.value);
      const std::size_t k = table.values.size() - 1;
      if (fixed) {
        if (static_cast<long>(k) == policy.kmax) done = true;
      } else if (mass - acc.value() < policy.tolerance) {
        done = true;
      }
      if (done) break;
    }
    next = end;
    if (!done && next > cap) {
      throw NumericError(ErrorKind::BudgetExceeded,
                         "eigenvalue table needs more than " + std::to_string(cap) + " entries");
    }
  }
  table.tail_bound = std::max(0.0, mass - acc.value());
  return table;
}

}  // namespace ginibre
