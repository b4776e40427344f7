#pragma once
//
// The acceptance suite: one entry per criterion with measured evidence.
// Shared by the acceptance test binary and `ginibre validate`.
//

#include <cstdint>
#include <string>
#include <vector>

#include "ginibre/output.hpp"

namespace ginibre {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0.0;
};

struct ValidationReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

struct ValidationOptions {
  std::uint64_t seed = 20240917;
  std::size_t replicates = 100000;
  /// Random instances per identity suite.
  std::size_t identity_instances = 1000;
  unsigned threads = 0;
};

/// Reference variance at m = 0, R = 1: R^2 e^(-2R^2) (I_0(2R^2) + I_1(2R^2))
/// evaluated with 30 significant digits and rounded.
constexpr double kVarianceM0R1 = 0.52377761180260870;

CriterionResult check_mean_identity();
CriterionResult check_route_agreement();
CriterionResult check_bessel_closed_form();
CriterionResult check_asymptotic_slope();
CriterionResult check_daubechies_reduction();
CriterionResult check_identity_suites(const ValidationOptions& options = {});
CriterionResult check_eigenvalue_oracles();
CriterionResult check_monte_carlo(const ValidationOptions& options = {});
CriterionResult check_resolved_ambiguities();

ValidationReport run_validation(const ValidationOptions& options = {});

/// "PASS  3  title (runtime)" lines, each followed by indented details.
std::string format_validation(const ValidationReport& report, bool with_details = true);
Json to_json(const ValidationReport& report);

}  // namespace ginibre
