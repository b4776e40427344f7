#pragma once
//
// Eigenvalues of the coherent-state quantized disk indicator (beta_k, the
// Bernoulli parameters of the disk count) and of the quantized overlap-area
// symbol G_R (lambda_k). Every closed form has a quadrature twin.
//

#include <cstddef>
#include <string>
#include <vector>

#include "ginibre/kernels.hpp"

namespace ginibre {

enum class EigenMethod { ClosedForm, Quadrature };

std::string to_string(EigenMethod method);

/// beta_0 .. beta_K for one (m, R). Immutable once built.
struct EigenvalueTable {
  LandauIndex m;
  double R = 0.0;
  std::vector<double> values;
  std::vector<EigenMethod> methods;
  /// Closed-form and quadrature values; NaN where not computed (the
  /// quadrature column is filled only when verification was requested).
  std::vector<double> closed_form;
  std::vector<double> oracle;
  /// R^2 - sum of all values: the exact remaining mass sum_{k>K} beta_k.
  double tail_bound = 0.0;

  std::size_t size() const { return values.size(); }
  double sum() const;
  /// R^2 - sum_{j<=k} beta_j.
  double residual_after(std::size_t k) const;
};

/// hard limit on table length whatever k_cap says; larger requests raise BudgetExceeded
constexpr std::size_t kTableEntryLimit = std::size_t{1} << 21;

struct TablePolicy {
  double tolerance = 1e-8;
  /// 0 selects 10 (R^2 + m) + 200.
  std::size_t k_cap = 0;
  /// Fill the oracle column by quadrature for every entry.
  bool verify = false;
  /// When positive, compute exactly k = 0..kmax instead of using the
  /// tolerance (the tail bound is still reported).
  long kmax = -1;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

struct BetaEvaluation {
  double value = 0.0;
  double cancellation_digits = 0.0;
  bool accuracy_loss = false;
};

/// Coefficients a_j, j = 0..2 min(m,k), of the polynomial
/// (min! / max!) (L_min^(|k-m|)(rho))^2 = sum_j a_j rho^j.
std::vector<double> beta_coefficients(LandauIndex m, unsigned k);

/// beta_k^(m,R) = sum_j a_j gamma(|k-m| + j + 1, R^2), with the cancellation
/// of the alternating sum measured. Never throws AccuracyLoss.
BetaEvaluation beta_eigenvalue_checked(LandauIndex m, unsigned k, DiskRadius R);

/// Same, but throws AccuracyLoss above 10 digits of cancellation.
double beta_eigenvalue(LandauIndex m, unsigned k, DiskRadius R);

/// Direct quadrature of the defining radial integral.
double beta_eigenvalue_quadrature(LandauIndex m, unsigned k, DiskRadius R, double tol = 1e-14);

/// C_s(m, alpha), s = 0..2m, with (L_m^(alpha))^2 = sum_s C_s L_s^(2 alpha).
std::vector<double> feldheim_linearization(LandauIndex m, unsigned alpha);

/// lambda_k^(m,R) by quadrature of the radial eigenvalue integral with the
/// symbol G_R. This is the normative value.
double lambda_eigenvalue_quadrature(LandauIndex m, unsigned k, DiskRadius R, double tol = 1e-12);

struct LambdaClosedForm {
  /// The single-3F3 expression as written, before calibration.
  double raw = 0.0;
  /// raw / calibration.
  double value = 0.0;
  double calibration = 0.0;
  double cancellation_digits = 0.0;
  double working_digits = 0.0;
  bool accuracy_loss = false;
};

/// Closed form of lambda_k for k >= m. The hypergeometric sums are carried
/// out in extended precision when double precision cancels; accuracy_loss
/// is set when even 200 digits are not enough.
LambdaClosedForm lambda_closed_form(LandauIndex m, unsigned k, DiskRadius R);

/// raw / quadrature at (m, k, R) = (0, 0, 1); measured once and cached.
double lambda_calibration_constant();

/// The three-integral split lambda = sigma1 + 2 (m!/k!) (sigma3 - sigma2),
/// with sigma2 and sigma3 from their 3F3 / 2F2 closed forms (k >= m).
struct LambdaDecomposition {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
  double value = 0.0;
  double cancellation_digits = 0.0;
};
LambdaDecomposition lambda_decomposition(LandauIndex m, unsigned k, DiskRadius R);

/// Partial sum over l = 0..lmax of (m!/l!) rho^(l-m) (L_m^(l-m)(rho))^2,
/// which tends to e^rho.
double bateman_partial_sum(LandauIndex m, double rho, unsigned lmax);

/// beta_0..beta_K with K chosen from the exact mass identity
/// sum_k beta_k = R^2. Throws BudgetExceeded past the k cap.
EigenvalueTable build_eigenvalue_table(LandauIndex m, DiskRadius R, const TablePolicy& policy = {});

}  // namespace ginibre
