// ginibre: disk-count statistics of the polyanalytic Ginibre process.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ginibre/errors.hpp"
#include "ginibre/output.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/spectra.hpp"
#include "ginibre/statistics.hpp"
#include "ginibre/validation.hpp"

namespace {

using namespace ginibre;

struct Config {
  long m = 0;
  double radius = 1.0;
  long kmax = -1;
  double tol = 0.0;  // 0: command default
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  std::string format = "csv";
  double r_min = 0.5;
  double r_max = 10.0;
  std::size_t r_steps = 20;
  std::string out;
  unsigned threads = 0;
  bool table = false;
  bool points = false;
};

std::string run_eigs(const Config& c) {
  TablePolicy policy;
  if (c.tol > 0) policy.tolerance = c.tol;
  policy.kmax = c.kmax;
  policy.verify = true;
  policy.threads = c.threads;
  const EigenvalueTable t = build_eigenvalue_table(LandauIndex(c.m), DiskRadius(c.radius), policy);
  return c.format == "json" ? to_json(t).dump() : to_csv(t);
}

std::string run_mean(const Config& c) {
  EvaluationPolicy policy;
  if (c.tol > 0) policy.table_tol = c.tol;
  policy.threads = c.threads;
  const double mean = mean_count(LandauIndex(c.m), DiskRadius(c.radius), policy);
  const double residual = c.radius * c.radius - mean;
  if (c.format == "json") {
    Json values = Json::object();
    values.set("mean", mean);
    values.set("residual", residual);
    Json j = Json::object();
    j.set("command", "mean");
    j.set("m", c.m);
    j.set("R", c.radius);
    j.set("values", std::move(values));
    j.set("notes", Json::array());
    return j.dump();
  }
  return "quantity,value\nm," + std::to_string(c.m) + "\nR," + format_double(c.radius) + "\nmean," +
         format_double(mean) + "\nresidual," + format_double(residual) + "\n";
}

std::string run_variance(const Config& c) {
  EvaluationPolicy policy;
  if (c.tol > 0) policy.quadrature_tol = c.tol;
  policy.threads = c.threads;
  const VarianceReport r = variance_report(LandauIndex(c.m), DiskRadius(c.radius), policy);
  if (c.table) return to_text(r);
  return c.format == "json" ? to_json(r).dump() : to_csv(r);
}

std::string run_sample(const Config& c) {
  if (c.points) {
    const PointConfiguration p = sample_configuration(LandauIndex(c.m), DiskRadius(c.radius), c.seed);
    if (c.format == "json") {
      Json pts = Json::array();
      for (const auto& z : p.points) pts.push(Json(Json::Array{z.real(), z.imag()}));
      Json j = Json::object();
      j.set("command", "sample");
      j.set("m", c.m);
      j.set("R", c.radius);
      j.set("seed", static_cast<unsigned long long>(c.seed));
      j.set("values", std::move(pts));
      j.set("notes", Json::array());
      return j.dump();
    }
    return to_csv(p);
  }
  SamplerPolicy policy;
  if (c.tol > 0) policy.table_tol = c.tol;
  policy.threads = c.threads;
  const CountSample s = sample_counts(LandauIndex(c.m), DiskRadius(c.radius), c.replicates, c.seed, policy);
  const Cumulants k = estimate_cumulants(s);
  if (c.format == "json") return to_json(s, k).dump();
  std::ostringstream out;
  out << "# seed " << c.seed << ", K " << s.truncation << ", unsampled mass " << format_double(s.tail_mass) << '\n'
      << "# mean " << format_double(k.mean) << " (SE " << format_double(k.se_mean) << "), variance "
      << format_double(k.variance) << " (SE " << format_double(k.se_variance) << ")\n"
      << counts_to_csv(s);
  return out.str();
}

std::string run_curve(const Config& c) {
  if (c.r_steps < 1 || !(c.r_min > 0) || !(c.r_max >= c.r_min)) {
    throw NumericError(ErrorKind::InvalidParameters, "curve needs 0 < r-min <= r-max and r-steps >= 1");
  }
  const LandauIndex m(c.m);
  const double cm = asymptotic_constant(m);
  const double tol = c.tol > 0 ? c.tol : 1e-10;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "R,variance,closed_form,asymptote,variance_over_R\n";
  for (std::size_t i = 0; i < c.r_steps; ++i) {
    const double R = c.r_steps == 1 ? c.r_min : c.r_min + (c.r_max - c.r_min) * i / (c.r_steps - 1);
    const DiskRadius dr(R);
    const double v = variance_quadrature_38(m, dr, tol);
    double closed = NAN;
    if (R <= kClosedFormRadiusLimit) {
      const ClosedFormVariance cf = variance_closed_form_checked(m, dr, tol);
      if (!cf.accuracy_loss) closed = cf.value;
    }
    Json row = Json::object();
    row.set("R", R);
    row.set("variance", v);
    row.set("closed_form", closed);
    row.set("asymptote", cm * R);
    row.set("variance_over_R", v / R);
    rows.push(std::move(row));
    csv << format_double(R) << ',' << format_double(v) << ',' << (std::isfinite(closed) ? format_double(closed) : "")
        << ',' << format_double(cm * R) << ',' << format_double(v / R) << '\n';
  }
  if (c.format == "json") {
    Json j = Json::object();
    j.set("command", "curve");
    j.set("m", c.m);
    j.set("R", Json(Json::Array{c.r_min, c.r_max}));
    j.set("asymptotic_constant", cm);
    j.set("values", std::move(rows));
    j.set("notes", Json::array());
    return j.dump();
  }
  return csv.str();
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot open " + c.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"Disk-count statistics of the polyanalytic Ginibre process"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", c.m, "Landau index m >= 0")->envname("GINIBRE_M")->check(CLI::NonNegativeNumber);
    sub->add_option("--radius", c.radius, "disk radius R > 0")->envname("GINIBRE_RADIUS")->check(CLI::PositiveNumber);
    sub->add_option("--tol", c.tol, "tolerance (table tail or quadrature)")->envname("GINIBRE_TOL")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "csv or json")->envname("GINIBRE_FORMAT")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "write to FILE instead of standard output");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)")->envname("GINIBRE_THREADS");
  };

  auto* eigs = app.add_subcommand("eigs", "eigenvalue table beta_k with closed-form and quadrature columns");
  add_common(eigs);
  eigs->add_option("--kmax", c.kmax, "last index k (default: stop on the tail tolerance)")
      ->envname("GINIBRE_KMAX")
      ->check(CLI::NonNegativeNumber);

  auto* mean = app.add_subcommand("mean", "expected count and its residual against R^2");
  add_common(mean);

  auto* variance = app.add_subcommand("variance", "variance by every route with discrepancies");
  add_common(variance);
  variance->add_flag("--table", c.table, "human-readable table instead of csv/json");

  auto* sample = app.add_subcommand("sample", "Monte Carlo disk counts");
  add_common(sample);
  sample->add_option("--replicates", c.replicates, "number of replicates")
      ->envname("GINIBRE_REPLICATES")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", c.seed, "RNG seed")->envname("GINIBRE_SEED");
  sample->add_flag("--points", c.points, "one point configuration (re, im) instead of counts");

  auto* curve = app.add_subcommand("curve", "variance against R on a grid, with the C_m R asymptote");
  add_common(curve);
  curve->add_option("--r-min", c.r_min, "first radius")->envname("GINIBRE_R_MIN")->check(CLI::PositiveNumber);
  curve->add_option("--r-max", c.r_max, "last radius")->envname("GINIBRE_R_MAX")->check(CLI::PositiveNumber);
  curve->add_option("--r-steps", c.r_steps, "number of radii")->envname("GINIBRE_R_STEPS")->check(CLI::PositiveNumber);

  ValidationOptions vopts;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite; exit 0 iff every criterion passes");
  validate->add_option("--format", c.format, "csv (plain lines) or json")->envname("GINIBRE_FORMAT")->check(CLI::IsMember({"csv", "json"}));
  validate->add_option("--seed", vopts.seed, "seed for randomized checks")->envname("GINIBRE_SEED");
  validate->add_option("--replicates", vopts.replicates, "Monte Carlo replicates")
      ->envname("GINIBRE_REPLICATES")
      ->check(CLI::PositiveNumber);
  validate->add_option("--out", c.out, "write to FILE instead of standard output");
  validate->add_option("--threads", vopts.threads, "worker threads (0 = all cores)")->envname("GINIBRE_THREADS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      const ValidationReport r = run_validation(vopts);
      emit(c, c.format == "json" ? to_json(r).dump() : format_validation(r));
      return r.all_passed() ? 0 : 1;
    }
    std::string text;
    if (eigs->parsed()) text = run_eigs(c);
    if (mean->parsed()) text = run_mean(c);
    if (variance->parsed()) text = run_variance(c);
    if (sample->parsed()) text = run_sample(c);
    if (curve->parsed()) text = run_curve(c);
    emit(c, text);
    return 0;
  } catch (const NumericError& e) {
    std::cout << error_json(std::string(to_string(e.kind())), e.what()).dump();
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_json("Failure", e.what()).dump();
    return 1;
  }
}
