#include "ginibre/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <optional>

#include "ginibre/detail/series.hpp"
#include "ginibre/quadrature.hpp"
#include "ginibre/specfun.hpp"
#include "ginibre/spectra.hpp"

namespace ginibre {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxSeriesTerms = 20000;

double laguerre_density(unsigned m, double t) {
  const double l = laguerre(m, 0, t);
  return std::exp(-t) * l * l;
}

QuadratureOptions options_for(double tol) { return QuadratureOptions{tol * 1e-3, tol, 20000}; }

// int_{4R^2}^inf e^-t L_m(t)^2 dt
double laguerre_tail(unsigned m, double four_r2, double tol) {
  auto f = [&](double s) { return laguerre_density(m, four_r2 + s); };
  return integrate_semiinfinite(f, 1.0, tol * 1e-3).value;
}

// Upper end of the finite part: beyond t = 4R^2 the integrands reduce to a
// constant times e^-t L_m^2. Past ~ 800 + 4m that density underflows.
double finite_end(unsigned m, double four_r2) { return std::min(four_r2, 800.0 + 4.0 * m); }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_number(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <class Real>
SeriesResult closed_form_impl(unsigned m, double radius, bool full_range) {
  const Real R(radius);
  const Real r2 = R * R;
  const Real z = -4 * r2;
  const Real tol = std::numeric_limits<Real>::epsilon();
  const std::vector<double> den = {3.0, 2.0};

  detail::PieceSum<Real> sum;
  sum.add(Real(1));
  bool converged = true;
  const unsigned last = full_range ? 2 * m : m;
  for (unsigned s = 0; s <= last; ++s) {
    Real c;
    if (full_range) {
      c = 0;
      for (unsigned r = 0; r <= s; ++r) {
        const long lo = static_cast<long>(m) - static_cast<long>(s) + r;
        if (lo < 0 || r > m) continue;
        c += binomial(s, r) *
             binomial(m, lo) *
             binomial(m, static_cast<long>(m) - r);
      }
      if (s % 2 == 1) c = -c;
    } else {
      const std::vector<double> num3 = {-double(m), -double(s), -double(s)};
      const std::vector<double> den3 = {1.0, double(m) - double(s) + 1.0};
      auto f3 = detail::pfq_series<Real>(num3, den3, Real(-1), kMaxSeriesTerms, tol);
      converged = converged && f3.converged;
      c = Real(binomial(m, s)) * f3.value;
      if (s % 2 == 1) c = -c;
    }
    if (c == 0) continue;
    const std::vector<double> num = {s + 1.0, 1.5};
    auto f = detail::pfq_series<Real>(num, den, z, kMaxSeriesTerms, tol);
    converged = converged && f.converged;
    const Real w = -r2 * c;
    sum.add(w * f.value, w * f.peak);
  }
  SeriesResult r;
  r.value = static_cast<double>(r2 * sum.value());
  r.cancellation_digits = sum.cancellation_digits();
  r.working_digits = detail::decimal_digits<Real>();
  r.converged = converged;
  r.terms_used = last + 1;
  return r;
}

constexpr double kReliableDigits = 12.0;

SeriesResult closed_form_variant(unsigned m, double R, bool full_range) {
  return detail::with_precision_ladder(
      [&]<class Real>(std::type_identity<Real>) { return closed_form_impl<Real>(m, R, full_range); },
      true, kReliableDigits);
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

double mean_count(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy) {
  TablePolicy tp;
  tp.tolerance = policy.table_tol;
  tp.threads = policy.threads;
  return build_eigenvalue_table(m, R, tp).sum();
}

double variance_quadrature_38(LandauIndex m, DiskRadius R, double tol) {
  const double r = R.value();
  const double four_r2 = 4.0 * r * r;
  auto inner = [&](double t) {
    const double upper = std::sqrt(std::min(t, four_r2));
    auto g = [&](double u) { return 2.0 * std::sqrt(std::max(0.0, 1.0 - u * u / four_r2)); };
    return integrate_finite(g, 0.0, upper, QuadratureOptions{tol * 1e-4, tol * 1e-3, 20000}).value;
  };
  auto outer = [&](double t) { return laguerre_density(m, t) * inner(t); };
  const double end = finite_end(m, four_r2);
  double total = integrate_finite(outer, 0.0, end, options_for(tol)).value;
  if (end == four_r2) total += inner(four_r2) * laguerre_tail(m, four_r2, tol);
  return r / kPi * total;
}

double variance_geometric_310(LandauIndex m, DiskRadius R, double tol) {
  const double r = R.value();
  const double four_r2 = 4.0 * r * r;
  auto f = [&](double rho) { return laguerre_density(m, rho) * g_weight(std::sqrt(rho), R); };
  const double end = finite_end(m, four_r2);
  double total = integrate_finite(f, 0.0, end, options_for(tol)).value;
  if (end == four_r2) total += kPi * r * r * laguerre_tail(m, four_r2, tol);
  return total / kPi;
}

double variance_bernoulli_sum(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy) {
  TablePolicy tp;
  tp.tolerance = policy.table_tol;
  tp.threads = policy.threads;
  EigenvalueTable table = build_eigenvalue_table(m, R, tp);
  detail::CompensatedSum<double> acc;
  for (double b : table.values) acc.add(b * (1.0 - b));
  return acc.value();
}

ClosedFormVariance variance_closed_form_checked(LandauIndex m, DiskRadius R, double tol) {
  ClosedFormVariance out;
  const SeriesResult full = closed_form_variant(m, R.value(), true);
  const SeriesResult truncated = closed_form_variant(m, R.value(), false);
  out.full_range = full.value;
  out.truncated_range = truncated.value;
  out.oracle = variance_quadrature_38(m, R, tol);
  const double gap_full = relative_gap(full.value, out.oracle);
  const double gap_truncated = relative_gap(truncated.value, out.oracle);
  out.full_range_selected = gap_full <= gap_truncated;
  const SeriesResult& chosen = out.full_range_selected ? full : truncated;
  out.value = chosen.value;
  out.cancellation_digits = chosen.cancellation_digits;
  out.working_digits = chosen.working_digits;
  const bool short_of_digits = !chosen.converged || chosen.working_digits - chosen.cancellation_digits < kReliableDigits;
  out.accuracy_loss = short_of_digits || R.value() > kClosedFormRadiusLimit;

  out.note = std::string("closed form: s = 0..2m sum ") +
             (out.full_range_selected ? "selected" : "rejected") + " (relative gap " +
             format_number(gap_full, 3) + "), s = 0..m sum " +
             (out.full_range_selected ? "rejected" : "selected") + " (relative gap " +
             format_number(gap_truncated, 3) + ")";
  if (chosen.working_digits > 16.0) {
    out.note += "; evaluated with " + format_number(chosen.working_digits, 3) + " digits (" +
                format_number(chosen.cancellation_digits, 3) + " cancelled)";
  }
  return out;
}

double variance_closed_form(LandauIndex m, DiskRadius R) {
  if (R.value() > kClosedFormRadiusLimit) {
    throw NumericError(ErrorKind::AccuracyLoss,
                       "closed-form variance is not served beyond R = " + format_number(kClosedFormRadiusLimit));
  }
  ClosedFormVariance v = variance_closed_form_checked(m, R);
  if (v.accuracy_loss) {
    throw NumericError(ErrorKind::AccuracyLoss,
                       "closed-form variance cancels " + format_number(v.cancellation_digits, 3) + " digits");
  }
  return v.value;
}

double variance_bessel_m0(DiskRadius R) {
  const double r2 = R.value() * R.value();
  const double x = 2.0 * r2;
  return r2 * (bessel_i_scaled(0, x) + bessel_i_scaled(1, x));
}

double asymptotic_constant(LandauIndex m) {
  PFqSpec spec;
  spec.numerator = {-double(m), -0.5, -0.5};
  spec.denominator = {1.0, -0.5 - double(m)};
  spec.argument = 1.0;
  const SeriesResult f = pfq(spec, SeriesBudget{});
  const double log_ratio = std::lgamma(m + 1.5) - log_factorial(m);
  return 2.0 / kPi * std::exp(log_ratio) * f.value;
}

const double* VarianceReport::route(const std::string& name) const {
  for (const auto& [key, value] : routes) {
    if (key == name) return &value;
  }
  return nullptr;
}

VarianceReport variance_report(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy) {
  VarianceReport report;
  report.m = m;
  report.R = R.value();

  struct Outcome {
    std::optional<double> value;
    std::vector<std::string> notes;
  };
  using Route = std::function<Outcome()>;
  auto plain = [](std::function<double()> fn) {
    return [fn]() {
      Outcome o;
      o.value = fn();
      return o;
    };
  };

  std::vector<std::pair<std::string, Route>> routes;
  routes.emplace_back("closed_form", [&]() {
    Outcome o;
    if (R.value() > kClosedFormRadiusLimit) {
      o.notes.push_back("closed_form: AccuracyLoss (R > " + format_number(kClosedFormRadiusLimit) +
                        ", alternating 2F2 at -4R^2); served by quadrature_38");
      return o;
    }
    ClosedFormVariance v = variance_closed_form_checked(m, R, policy.quadrature_tol);
    o.notes.push_back(v.note);
    if (v.accuracy_loss) {
      o.notes.push_back("closed_form: AccuracyLoss (" + format_number(v.cancellation_digits, 3) +
                        " digits cancelled); served by quadrature_38");
    } else {
      o.value = v.value;
    }
    return o;
  });
  routes.emplace_back("quadrature_38", plain([&] { return variance_quadrature_38(m, R, policy.quadrature_tol); }));
  routes.emplace_back("geometric_310", plain([&] { return variance_geometric_310(m, R, policy.quadrature_tol); }));
  routes.emplace_back("bernoulli_sum", plain([&] { return variance_bernoulli_sum(m, R, policy); }));
  if (m.value() == 0) routes.emplace_back("bessel_m0", plain([&] { return variance_bessel_m0(R); }));

  std::vector<std::future<Outcome>> jobs;
  for (auto& [name, fn] : routes) jobs.push_back(std::async(std::launch::async, fn));
  auto mean_job = std::async(std::launch::async, [&] { return mean_count(m, R, policy); });

  for (std::size_t i = 0; i < routes.size(); ++i) {
    try {
      Outcome o = jobs[i].get();
      for (auto& n : o.notes) report.notes.push_back(std::move(n));
      if (o.value) report.routes.emplace_back(routes[i].first, *o.value);
    } catch (const NumericError& e) {
      report.notes.push_back(routes[i].first + ": " + e.what());
    }
  }
  report.mean = mean_job.get();

  if (report.routes.size() < 2) {
    throw NumericError(ErrorKind::InsufficientData, "fewer than two variance routes succeeded");
  }
  const std::size_t n = report.routes.size();
  report.discrepancy.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = relative_gap(report.routes[i].second, report.routes[j].second);
      report.discrepancy[i][j] = d;
      report.max_pairwise_discrepancy = std::max(report.max_pairwise_discrepancy, d);
    }
  }
  if (report.max_pairwise_discrepancy > policy.agreement) {
    report.notes.push_back("routes disagree: max relative discrepancy " +
                           format_number(report.max_pairwise_discrepancy, 3));
  }
  report.lambda_calibration = lambda_calibration_constant();
  report.notes.push_back("lambda closed form divided by calibration constant " +
                         format_number(report.lambda_calibration, 17));
  return report;
}

}  // namespace ginibre
