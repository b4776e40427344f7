#pragma once
//
// Mean and variance of the number of points in the disk D_R, by several
// independent routes.
//

#include <string>
#include <vector>

#include "ginibre/kernels.hpp"

namespace ginibre {

struct EvaluationPolicy {
  double quadrature_tol = 1e-10;
  double table_tol = 1e-8;
  /// Relative agreement expected between routes.
  double agreement = 1e-6;
  unsigned threads = 0;
};

/// Sum of the eigenvalue table; within policy.table_tol of R^2.
double mean_count(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy = {});

/// (R/pi) int_0^inf e^-t L_m(t)^2 Inner(t) dt with the inner integral
/// Inner(t) = 2 int_0^sqrt(min(t, 4R^2)) sqrt(1 - u^2/4R^2) du done by
/// quadrature as well. Reference value for everything else.
double variance_quadrature_38(LandauIndex m, DiskRadius R, double tol = 1e-10);

/// (1/pi) int_0^inf e^-rho L_m(rho)^2 G_R(sqrt rho) d rho.
double variance_geometric_310(LandauIndex m, DiskRadius R, double tol = 1e-10);

/// sum_k beta_k (1 - beta_k) over the eigenvalue table.
double variance_bernoulli_sum(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy = {});

/// Closed forms of the variance are supported up to this radius; beyond it
/// they are flagged AccuracyLoss by policy.
constexpr double kClosedFormRadiusLimit = 6.0;

struct ClosedFormVariance {
  /// The variant that agrees with variance_quadrature_38.
  double value = 0.0;
  /// Outer sum over s = 0..2m (linearization coefficients C_s(m, 0)).
  double full_range = 0.0;
  /// Outer sum over s = 0..m with the 3F2(-m,-s,-s; 1, m-s+1; -1) weights.
  double truncated_range = 0.0;
  double oracle = 0.0;
  bool full_range_selected = true;
  double cancellation_digits = 0.0;
  double working_digits = 0.0;
  bool accuracy_loss = false;
  std::string note;
};

/// R^2 [1 - R^2 sum_s c_s 2F2(s+1, 3/2; 3, 2; -4R^2)], both sum ranges, the
/// oracle, and the selection. Never throws AccuracyLoss.
ClosedFormVariance variance_closed_form_checked(LandauIndex m, DiskRadius R, double tol = 1e-10);

/// The selected closed-form value; throws AccuracyLoss for R beyond
/// kClosedFormRadiusLimit or when extended precision is not enough.
double variance_closed_form(LandauIndex m, DiskRadius R);

/// R^2 e^(-2R^2) (I_0(2R^2) + I_1(2R^2)), the m = 0 variance.
double variance_bessel_m0(DiskRadius R);

/// C_m = (2/(pi m!)) Gamma(m + 3/2) 3F2(-m, -1/2, -1/2; 1, -1/2 - m; 1),
/// the large-R slope Var ~ C_m R.
double asymptotic_constant(LandauIndex m);

struct VarianceReport {
  LandauIndex m;
  double R = 0.0;
  double mean = 0.0;
  /// Route name and value, in fixed route order.
  std::vector<std::pair<std::string, double>> routes;
  /// discrepancy[i][j] = |v_i - v_j| / max(|v_i|, |v_j|).
  std::vector<std::vector<double>> discrepancy;
  double max_pairwise_discrepancy = 0.0;
  double lambda_calibration = 0.0;
  std::vector<std::string> notes;

  const double* route(const std::string& name) const;
};

/// Runs every applicable route (concurrently); failed or flagged routes are
/// left out with a note. Throws InsufficientData if fewer than two remain.
VarianceReport variance_report(LandauIndex m, DiskRadius R, const EvaluationPolicy& policy = {});

}  // namespace ginibre
