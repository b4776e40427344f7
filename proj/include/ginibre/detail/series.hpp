#pragma once
//
// Scalar-generic series machinery shared by the hypergeometric evaluator and
// the closed-form variance/eigenvalue formulas. Instantiated for double,
// long double and Boost.Multiprecision binary floats.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ginibre/errors.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::detail {

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;
using Float200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

template <class Real>
double decimal_digits() {
  return std::numeric_limits<Real>::digits * 0.30102999566398120;
}

template <class Real>
double log10_abs(const Real& x) {
  using std::abs;
  using std::log10;
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(log10(abs(x)));
}

/// Neumaier's variant of Kahan summation; also tracks the largest magnitude
/// seen so the caller can measure cancellation.
template <class Real>
class CompensatedSum {
 public:
  void add(const Real& x) {
    using std::abs;
    Real t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    Real ax = abs(x);
    if (ax > peak_) peak_ = ax;
    Real as = abs(sum_);
    if (as > peak_) peak_ = as;
  }

  Real value() const { return sum_ + comp_; }
  const Real& peak() const { return peak_; }

  double cancellation_digits() const {
    Real v = value();
    if (peak_ == 0) return 0.0;
    if (v == 0) return std::numeric_limits<double>::infinity();
    double d = log10_abs(peak_) - log10_abs(v);
    return d > 0.0 ? d : 0.0;
  }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
  Real peak_ = 0;
};

template <class Real>
struct SeriesSum {
  Real value = 0;
  /// Largest |term| or |partial sum| met while summing.
  Real peak = 0;
  std::size_t terms = 0;
  double cancellation_digits = 0.0;
  bool converged = false;
};

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

/// Checks the parameter invariant: every denominator pole must lie beyond
/// the termination index of some numerator parameter.
inline void check_pfq_parameters(std::span<const double> num, std::span<const double> den) {
  double termination = std::numeric_limits<double>::infinity();
  for (double a : num) {
    if (is_nonpositive_integer(a)) termination = std::min(termination, -a);
  }
  for (double b : den) {
    if (is_nonpositive_integer(b) && !(termination < -b)) {
      throw NumericError(ErrorKind::InvalidParameters,
                         "pFq denominator parameter " + std::to_string(b) +
                             " is a pole reached before the series terminates");
    }
  }
}

/// Maclaurin series of pFq in the scalar type Real.
///
/// Stops when the series terminates or after three consecutive terms below
/// tol * |sum| once the terms are shrinking. `converged` is false if the
/// budget ran out.
template <class Real>
SeriesSum<Real> pfq_series(std::span<const double> num, std::span<const double> den,
                           const Real& z, std::size_t max_terms, const Real& tol) {
  using std::abs;
  check_pfq_parameters(num, den);

  SeriesSum<Real> out;
  CompensatedSum<Real> acc;
  Real term = 1;
  acc.add(term);
  out.terms = 1;
  if (z == 0) {
    out.value = acc.value();
    out.peak = acc.peak();
    out.converged = true;
    return out;
  }

  std::vector<Real> a(num.begin(), num.end());
  std::vector<Real> b(den.begin(), den.end());
  int small_run = 0;
  for (std::size_t k = 0; k + 1 < max_terms; ++k) {
    Real ratio = z / Real(k + 1);
    bool terminated = false;
    for (const Real& ai : a) {
      Real f = ai + Real(k);
      if (f == 0) terminated = true;
      ratio *= f;
    }
    if (terminated) {
      out.converged = true;
      break;
    }
    for (const Real& bj : b) ratio /= (bj + Real(k));
    term *= ratio;
    acc.add(term);
    ++out.terms;

    if (abs(ratio) < 1 && abs(term) <= tol * abs(acc.value())) {
      if (++small_run >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  out.value = acc.value();
  out.peak = acc.peak();
  out.cancellation_digits = acc.cancellation_digits();
  return out;
}

/// Sum of weighted pieces whose own evaluation already lost digits: the
/// cancellation is measured against the largest intermediate magnitude of
/// any piece, not just the piece values.
template <class Real>
class PieceSum {
 public:
  void add(const Real& piece, const Real& piece_peak) {
    using std::abs;
    acc_.add(piece);
    Real p = abs(piece_peak);
    if (p > peak_) peak_ = p;
  }
  void add(const Real& piece) { add(piece, piece); }
  Real value() const { return acc_.value(); }
  double cancellation_digits() const {
    using std::abs;
    Real peak = peak_ > acc_.peak() ? peak_ : acc_.peak();
    Real v = value();
    if (peak == 0) return 0.0;
    if (v == 0) return std::numeric_limits<double>::infinity();
    double d = log10_abs(peak) - log10_abs(v);
    return d > 0.0 ? d : 0.0;
  }

 private:
  CompensatedSum<Real> acc_;
  Real peak_ = 0;
};

/// Runs `fn` (a generic callable returning SeriesResult and taking a
/// std::type_identity<Real>) in double, then at 50, 100 and 200 digits until
/// the reported cancellation leaves at least `reliable_digits` correct digits.
/// The last attempt is returned even if it is still short.
template <class Fn>
SeriesResult with_precision_ladder(Fn&& fn, bool extended, double reliable_digits) {
  auto good = [&](const SeriesResult& r) {
    return r.converged && r.working_digits - r.cancellation_digits >= reliable_digits;
  };
  SeriesResult r = fn(std::type_identity<double>{});
  if (!extended || good(r)) return r;
  r = fn(std::type_identity<Float50>{});
  if (good(r)) return r;
  r = fn(std::type_identity<Float100>{});
  if (good(r)) return r;
  return fn(std::type_identity<Float200>{});
}

/// Gamma(n + 1/2) for integer n >= 0, exact in Real.
template <class Real>
Real gamma_half_integer(unsigned n) {
  using std::sqrt;
  Real pi = boost::math::constants::pi<Real>();
  Real g = sqrt(pi);
  for (unsigned i = 0; i < n; ++i) g *= Real(i) + Real(0.5);
  return g;
}

template <class Real>
Real factorial(unsigned n) {
  Real f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= Real(i);
  return f;
}

}  // namespace ginibre::detail
