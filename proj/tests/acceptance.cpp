// Runs every acceptance criterion; one PASS/FAIL line each.

#include <iostream>

#include "ginibre/validation.hpp"

int main() {
  const ginibre::ValidationReport report = ginibre::run_validation();
  std::cout << ginibre::format_validation(report) << std::flush;
  return report.all_passed() ? 0 : 1;
}
