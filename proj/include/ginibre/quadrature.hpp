#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ginibre {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_subdivisions = 20000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
/// Converges when the summed error estimate is at most
/// max(abs_tol, rel_tol * |value|). Throws NonConvergent when the
/// subdivision limit is reached first.
IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureOptions& options);

/// Same with a single tolerance used both absolutely and relatively.
IntegralResult integrate_finite(const Integrand& f, double a, double b, double tol);

/// Integral over [0, inf) of an integrand decaying like e^(-x / decay_scale)
/// times a polynomial. The range is cut at T = decay_scale * (40 - ln tol)
/// (at most 1e4); T is doubled while the integrand at T still exceeds the
/// tolerance, and |f(T)| * decay_scale is added to the error estimate.
IntegralResult integrate_semiinfinite(const Integrand& f, double decay_scale, double tol);

/// Fixed n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_rule(unsigned n);

/// One n-point Gauss-Legendre panel on [a, b]; exact for polynomials of
/// degree <= 2n - 1.
double integrate_gauss_legendre(const Integrand& f, double a, double b, unsigned n);

}  // namespace ginibre
