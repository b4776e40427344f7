#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ginibre/output.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/spectra.hpp"
#include "ginibre/statistics.hpp"

using namespace ginibre;
using nlohmann::json;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("doubles round-trip at 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  for (double v : {0.52377761180260870, std::nextafter(1.0, 2.0), 1e308, 4.9e-324}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("Json writer") {
  Json j = Json::object();
  j.set("a", 1);
  j.set("b", 0.25);
  j.set("s", "quote \" slash \\ newline \n tab \t bell \a");
  j.set("nan", NAN);
  j.set("flag", true);
  j.set("none", nullptr);
  j.set("list", Json(Json::Array{1.5, 2, "x"}));
  Json inner = Json::object();
  inner.set("k", 3u);
  j.set("nested", Json(Json::Array{inner}));
  j.set("empty", Json::array());
  const std::string text = j.dump();
  const json parsed = json::parse(text);
  CHECK(parsed["a"] == 1);
  CHECK(parsed["b"] == 0.25);
  CHECK(parsed["s"] == "quote \" slash \\ newline \n tab \t bell \a");
  CHECK(parsed["nan"].is_null());
  CHECK(parsed["flag"] == true);
  CHECK(parsed["none"].is_null());
  CHECK(parsed["list"].size() == 3);
  CHECK(parsed["nested"][0]["k"] == 3);
  CHECK(parsed["empty"].empty());
  // insertion order is kept
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("\"b\"") < text.find("\"nested\""));
  CHECK_THROWS_AS(Json::array().set("x", 1), NumericError);
  CHECK_THROWS_AS(Json::object().push(1), NumericError);
}

TEST_CASE("every document shares command, m, R, values and notes") {
  TablePolicy tp;
  tp.verify = true;
  tp.kmax = 6;
  const EigenvalueTable t = build_eigenvalue_table(LandauIndex(1), DiskRadius(1.0), tp);
  const VarianceReport r = variance_report(LandauIndex(0), DiskRadius(1.0));
  const CountSample s = sample_counts(LandauIndex(0), DiskRadius(1.0), 50, 3);
  const Cumulants k = estimate_cumulants(s);
  const json docs[] = {json::parse(to_json(t).dump()), json::parse(to_json(r).dump()),
                       json::parse(to_json(s, k).dump())};
  const char* commands[] = {"eigs", "variance", "sample"};
  for (int i = 0; i < 3; ++i) {
    for (const char* key : {"command", "m", "R", "values", "notes"}) {
      CAPTURE(key);
      CHECK(docs[i].contains(key));
    }
    CHECK(docs[i]["command"] == commands[i]);
    CHECK(docs[i]["R"] == 1.0);
  }
  CHECK(docs[0]["values"].size() == 7);
  CHECK(docs[0]["m"] == 1);
  CHECK(docs[1]["values"]["quadrature_38"].get<double>() == doctest::Approx(0.52377761180260870).epsilon(1e-9));
  CHECK(docs[1]["discrepancy"].size() == r.routes.size());
  CHECK(docs[2]["values"].size() == 50);
  CHECK(docs[2]["seed"] == 3);

  const json e = json::parse(error_json("DomainError", "bad radius").dump());
  CHECK(e["error"]["kind"] == "DomainError");
  CHECK(e["error"]["message"] == "bad radius");
}

TEST_CASE("csv layouts") {
  TablePolicy tp;
  tp.verify = true;
  tp.kmax = 4;
  const std::string table = to_csv(build_eigenvalue_table(LandauIndex(0), DiskRadius(1.0), tp));
  CHECK(first_line(table) == "k,beta,method,residual,closed_form,oracle,discrepancy");
  CHECK(count_lines(table) == 6);
  std::istringstream rows(table);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) CHECK(std::count(line.begin(), line.end(), ',') == 6);

  const VarianceReport r = variance_report(LandauIndex(0), DiskRadius(1.0));
  const std::string rep = to_csv(r);
  CHECK(first_line(rep) == "route,value");
  CHECK(rep.find("quadrature_38,0.5237776118") != std::string::npos);
  CHECK(rep.find("\n# ") != std::string::npos);
  const std::string text = to_text(r);
  CHECK(text.find("bessel_m0") != std::string::npos);

  const CountSample s = sample_counts(LandauIndex(0), DiskRadius(1.0), 10, 3);
  const std::string counts = counts_to_csv(s);
  CHECK(first_line(counts) == "count");
  CHECK(count_lines(counts) == 11);

  PointConfiguration p;
  p.points = {{0.5, -0.25}};
  CHECK(to_csv(p) == "re,im\n0.5,-0.25\n");
}
