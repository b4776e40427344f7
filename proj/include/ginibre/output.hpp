#pragma once
//
// Text serialization: JSON with 17 significant digits, CSV, and a plain
// report table.
//

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ginibre/sampler.hpp"
#include "ginibre/spectra.hpp"
#include "ginibre/statistics.hpp"

namespace ginibre {

/// Minimal ordered JSON value. Object keys keep insertion order.
class Json {
 public:
  using Array = std::vector<Json>;
  using Object = std::vector<std::pair<std::string, Json>>;

  Json() : v_(nullptr) {}
  Json(std::nullptr_t) : v_(nullptr) {}
  Json(bool b) : v_(b) {}
  Json(double d) : v_(d) {}
  Json(int i) : v_(static_cast<std::int64_t>(i)) {}
  Json(unsigned i) : v_(static_cast<std::int64_t>(i)) {}
  Json(long i) : v_(static_cast<std::int64_t>(i)) {}
  Json(unsigned long i) : v_(static_cast<std::int64_t>(i)) {}
  Json(long long i) : v_(static_cast<std::int64_t>(i)) {}
  Json(unsigned long long i) : v_(static_cast<std::int64_t>(i)) {}
  Json(const char* s) : v_(std::string(s)) {}
  Json(std::string s) : v_(std::move(s)) {}
  Json(Array a) : v_(std::move(a)) {}
  Json(Object o) : v_(std::move(o)) {}

  static Json object() { return Json(Object{}); }
  static Json array() { return Json(Array{}); }

  /// Appends to an object (the value must be an object).
  Json& set(std::string key, Json value);
  /// Appends to an array.
  Json& push(Json value);

  /// Pretty-printed with two-space indentation; doubles as %.17g, NaN and
  /// infinities as null.
  std::string dump() const;

 private:
  void write(std::string& out, int indent) const;
  std::variant<std::nullptr_t, bool, double, std::int64_t, std::string, Array, Object> v_;
};

/// Decimal text with 17 significant digits.
std::string format_double(double v);

Json to_json(const EigenvalueTable& table);
Json to_json(const VarianceReport& report);
Json to_json(const CountSample& sample, const Cumulants& cumulants);
Json error_json(const std::string& kind, const std::string& message);

/// Columns k, beta, method, residual, closed_form, oracle, discrepancy.
std::string to_csv(const EigenvalueTable& table);
/// route,value rows followed by the discrepancy matrix and notes as comments.
std::string to_csv(const VarianceReport& report);
/// Single column of counts.
std::string counts_to_csv(const CountSample& sample);
/// re,im rows.
std::string to_csv(const PointConfiguration& config);

/// Aligned human-readable table of a variance report.
std::string to_text(const VarianceReport& report);

}  // namespace ginibre
