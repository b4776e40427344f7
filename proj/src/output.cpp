#include "ginibre/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "ginibre/errors.hpp"

namespace ginibre {

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : ""; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json& Json::set(std::string key, Json value) {
  auto* obj = std::get_if<Object>(&v_);
  if (!obj) throw NumericError(ErrorKind::InvalidParameters, "Json::set on a non-object");
  obj->emplace_back(std::move(key), std::move(value));
  return *this;
}

Json& Json::push(Json value) {
  auto* arr = std::get_if<Array>(&v_);
  if (!arr) throw NumericError(ErrorKind::InvalidParameters, "Json::push on a non-array");
  arr->push_back(std::move(value));
  return *this;
}

std::string Json::dump() const {
  std::string out;
  write(out, 0);
  out += '\n';
  return out;
}

void Json::write(std::string& out, int indent) const {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::nullptr_t>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          out += std::isfinite(v) ? format_double(v) : "null";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          escape_into(out, v);
        } else if constexpr (std::is_same_v<T, Array>) {
          if (v.empty()) {
            out += "[]";
            return;
          }
          // arrays of scalars stay on one line
          bool flat = true;
          for (const Json& e : v) {
            if (std::holds_alternative<Array>(e.v_) || std::holds_alternative<Object>(e.v_)) flat = false;
          }
          out += '[';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += flat ? ", " : ",";
            if (!flat) out += "\n" + pad;
            v[i].write(out, indent + 2);
          }
          if (!flat) out += "\n" + close;
          out += ']';
        } else {
          if (v.empty()) {
            out += "{}";
            return;
          }
          out += '{';
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += "\n" + pad;
            escape_into(out, v[i].first);
            out += ": ";
            v[i].second.write(out, indent + 2);
          }
          out += "\n" + close + '}';
        }
      },
      v_);
}

Json to_json(const EigenvalueTable& table) {
  Json values = Json::array(), methods = Json::array(), closed = Json::array(), oracle = Json::array();
  for (std::size_t k = 0; k < table.size(); ++k) {
    values.push(table.values[k]);
    methods.push(to_string(table.methods[k]));
    closed.push(table.closed_form[k]);
    oracle.push(table.oracle[k]);
  }
  Json j = Json::object();
  j.set("command", "eigs");
  j.set("m", table.m.value());
  j.set("R", table.R);
  j.set("values", std::move(values));
  j.set("method", std::move(methods));
  j.set("closed_form", std::move(closed));
  j.set("oracle", std::move(oracle));
  j.set("tail_bound", table.tail_bound);
  j.set("notes", Json::array());
  return j;
}

Json to_json(const VarianceReport& report) {
  Json values = Json::object();
  Json names = Json::array();
  for (const auto& [name, v] : report.routes) {
    values.set(name, v);
    names.push(name);
  }
  Json matrix = Json::array();
  for (const auto& row : report.discrepancy) {
    Json r = Json::array();
    for (double d : row) r.push(d);
    matrix.push(std::move(r));
  }
  Json notes = Json::array();
  for (const auto& n : report.notes) notes.push(n);
  Json j = Json::object();
  j.set("command", "variance");
  j.set("m", report.m.value());
  j.set("R", report.R);
  j.set("values", std::move(values));
  j.set("mean", report.mean);
  j.set("routes", std::move(names));
  j.set("discrepancy", std::move(matrix));
  j.set("max_pairwise_discrepancy", report.max_pairwise_discrepancy);
  j.set("lambda_calibration", report.lambda_calibration);
  j.set("notes", std::move(notes));
  return j;
}

Json to_json(const CountSample& sample, const Cumulants& c) {
  Json counts = Json::array();
  for (unsigned v : sample.counts) counts.push(v);
  Json j = Json::object();
  j.set("command", "sample");
  j.set("m", sample.m.value());
  j.set("R", sample.R);
  j.set("seed", static_cast<unsigned long long>(sample.seed));
  j.set("truncation", sample.truncation);
  j.set("tail_mass", sample.tail_mass);
  Json summary = Json::object();
  summary.set("mean", c.mean);
  summary.set("variance", c.variance);
  summary.set("se_mean", c.se_mean);
  summary.set("se_variance", c.se_variance);
  j.set("cumulants", std::move(summary));
  j.set("values", std::move(counts));
  j.set("notes", Json::array());
  return j;
}

Json error_json(const std::string& kind, const std::string& message) {
  Json e = Json::object();
  e.set("kind", kind);
  e.set("message", message);
  Json j = Json::object();
  j.set("error", std::move(e));
  return j;
}

std::string to_csv(const EigenvalueTable& table) {
  std::ostringstream out;
  out << "k,beta,method,residual,closed_form,oracle,discrepancy\n";
  double running = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k) {
    // compensated running sum for the residual column
    const double y = table.values[k] - comp;
    const double t = running + y;
    comp = (t - running) - y;
    running = t;
    const double oracle = table.oracle[k];
    const double gap = std::isfinite(oracle) ? std::abs(table.closed_form[k] - oracle) : NAN;
    out << k << ',' << format_double(table.values[k]) << ',' << to_string(table.methods[k]) << ','
        << format_double(table.R * table.R - running) << ',' << csv_number(table.closed_form[k]) << ','
        << csv_number(oracle) << ',' << csv_number(gap) << '\n';
  }
  return out.str();
}

std::string to_csv(const VarianceReport& report) {
  std::ostringstream out;
  out << "route,value\n";
  for (const auto& [name, v] : report.routes) out << name << ',' << format_double(v) << '\n';
  out << "mean," << format_double(report.mean) << '\n';
  out << "max_pairwise_discrepancy," << format_double(report.max_pairwise_discrepancy) << '\n';
  for (const auto& n : report.notes) out << "# " << n << '\n';
  return out.str();
}

std::string counts_to_csv(const CountSample& sample) {
  std::ostringstream out;
  out << "count\n";
  for (unsigned c : sample.counts) out << c << '\n';
  return out.str();
}

std::string to_csv(const PointConfiguration& config) {
  std::ostringstream out;
  out << "re,im\n";
  for (const auto& z : config.points) out << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
  return out.str();
}

std::string to_text(const VarianceReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "m = %u, R = %s, mean = %s\n", report.m.value(), format_double(report.R).c_str(),
                format_double(report.mean).c_str());
  out << line;
  std::snprintf(line, sizeof line, "%-16s %-24s\n", "route", "variance");
  out << line;
  for (const auto& [name, v] : report.routes) {
    std::snprintf(line, sizeof line, "%-16s %-24s\n", name.c_str(), format_double(v).c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "max relative discrepancy: %.3g\n", report.max_pairwise_discrepancy);
  out << line;
  for (const auto& n : report.notes) out << "note: " << n << '\n';
  return out.str();
}

}  // namespace ginibre
