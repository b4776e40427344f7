#include "ginibre/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "ginibre/errors.hpp"

namespace ginibre {

namespace {

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss
// weights (QUADPACK qk15). Gauss nodes are the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double resabs;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  double err = std::abs((resk - resg) * half);
  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return Panel{a, b, resk, err, resabs};
}

}  // namespace

IntegralResult integrate_finite(const Integrand& f, double a, double b, const QuadratureOptions& options) {
  if (!(a <= b)) {
    throw NumericError(ErrorKind::Domain, "integrate_finite needs a <= b");
  }
  IntegralResult out;
  if (a == b) {
    out.evaluations = 1;
    return out;
  }

  std::priority_queue<Panel> panels;
  Panel first = kronrod15(f, a, b);
  out.evaluations = 15;
  panels.push(first);
  double total = first.value;
  double total_err = first.error;
  double total_resabs = first.resabs;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  // Each panel's estimate is floored at 50 eps * resabs, so below 64 eps *
  // total_resabs the estimate measures rounding, not truncation.
  auto target = [&] {
    return std::max({options.abs_tol, options.rel_tol * std::abs(total), 64.0 * eps * total_resabs});
  };
  std::size_t subdivisions = 1;
  while (total_err > target()) {
    if (subdivisions >= options.max_subdivisions) {
      throw NumericError(ErrorKind::NonConvergent,
                         "adaptive quadrature hit " + std::to_string(options.max_subdivisions) +
                             " subdivisions (error " + std::to_string(total_err) + ")");
    }
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval exhausted at machine resolution; accept what we have
      break;
    }
    panels.pop();
    Panel left = kronrod15(f, worst.a, mid);
    Panel right = kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum the panels to shed the drift of the running totals.
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error_estimate = err;
  return out;
}

IntegralResult integrate_finite(const Integrand& f, double a, double b, double tol) {
  return integrate_finite(f, a, b, QuadratureOptions{tol, tol, 20000});
}

IntegralResult integrate_semiinfinite(const Integrand& f, double decay_scale, double tol) {
  if (!(decay_scale > 0.0) || !(tol > 0.0)) {
    throw NumericError(ErrorKind::Domain, "integrate_semiinfinite needs decay_scale > 0 and tol > 0");
  }
  constexpr double kMaxCut = 1e4;
  double cut = std::min(kMaxCut, decay_scale * (40.0 - std::log(tol)));
  while (cut < kMaxCut && std::abs(f(cut)) * decay_scale > tol) {
    cut = std::min(kMaxCut, 2.0 * cut);
  }
  IntegralResult r = integrate_finite(f, 0.0, cut, tol);
  const double tail = std::abs(f(cut)) * decay_scale;
  r.error_estimate += tail;
  r.evaluations += 1;
  return r;
}

GaussRule gauss_legendre_rule(unsigned n) {
  if (n == 0) throw NumericError(ErrorKind::Domain, "Gauss rule needs n >= 1");
  GaussRule rule;
  if (n == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double integrate_gauss_legendre(const Integrand& f, double a, double b, unsigned n) {
  GaussRule rule = gauss_legendre_rule(n);
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (unsigned i = 0; i < n; ++i) sum += rule.weights[i] * f(center + half * rule.nodes[i]);
  return sum * half;
}

}  // namespace ginibre
