#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ginibre/errors.hpp"
#include "ginibre/sampler.hpp"
#include "ginibre/spectra.hpp"

using namespace ginibre;

using Block = std::array<std::uint32_t, 4>;

TEST_CASE("Philox4x32-10 known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter streams") {
  CounterStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform());
    differs_c |= x != c.uniform();
    differs_d |= x != d.uniform();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  CHECK(a.draws() == 100);
  // rough uniformity
  CounterStream s(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += s.uniform();
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("count samples do not depend on the thread count") {
  SamplerPolicy one, many;
  one.threads = 1;
  many.threads = 7;
  const CountSample a = sample_counts(LandauIndex(1), DiskRadius(1.5), 5000, 99, one);
  const CountSample b = sample_counts(LandauIndex(1), DiskRadius(1.5), 5000, 99, many);
  CHECK(a.counts == b.counts);
  CHECK(a.seed == 99);
  CHECK(a.truncation > 0);
  CHECK(a.tail_mass <= 1e-8);
  const CountSample c = sample_counts(LandauIndex(1), DiskRadius(1.5), 5000, 100, one);
  CHECK(a.counts != c.counts);
  CHECK_THROWS_AS(sample_counts(LandauIndex(1), DiskRadius(1.5), 0, 1), NumericError);
}

TEST_CASE("count samples match the Bernoulli law") {
  const LandauIndex m(2);
  const DiskRadius R(1.5);
  const CountSample s = sample_counts(m, R, 40000, 2024);
  const Cumulants k = estimate_cumulants(s);
  const EigenvalueTable t = build_eigenvalue_table(m, R);
  double var = 0.0;
  for (double b : t.values) var += b * (1.0 - b);
  CHECK(std::abs(k.mean - t.sum()) <= 4.0 * k.se_mean);
  CHECK(std::abs(k.variance - var) <= 4.0 * k.se_variance);
  const std::vector<double> exact = poisson_binomial_pmf(t.values);
  const std::vector<double> emp = empirical_pmf(s.counts);
  CHECK(total_variation_distance(exact, emp) < 0.02);
}

TEST_CASE("cumulant estimates") {
  const std::vector<unsigned> flat{3, 3, 3, 3};
  const Cumulants a = estimate_cumulants(flat);
  CHECK(a.mean == 3.0);
  CHECK(a.variance == 0.0);
  CHECK(a.se_mean == 0.0);
  const std::vector<unsigned> two{0, 2};
  const Cumulants b = estimate_cumulants(two);
  CHECK(b.mean == 1.0);
  CHECK(b.variance == 2.0);
  const std::vector<unsigned> one{5};
  try {
    estimate_cumulants(one);
    FAIL("expected InsufficientData");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
}

TEST_CASE("probability mass functions") {
  const std::vector<double> p{0.5, 0.5};
  const std::vector<double> pmf = poisson_binomial_pmf(p);
  REQUIRE(pmf.size() == 3);
  CHECK(pmf[0] == doctest::Approx(0.25));
  CHECK(pmf[1] == doctest::Approx(0.5));
  CHECK(pmf[2] == doctest::Approx(0.25));
  const std::vector<double> q{0.1, 0.9, 0.33, 0.71, 0.02};
  double s = 0.0;
  for (double v : poisson_binomial_pmf(q)) s += v;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<unsigned> counts{0, 1, 1, 3};
  const std::vector<double> e = empirical_pmf(counts);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == 0.25);
  CHECK(e[1] == 0.5);
  CHECK(e[2] == 0.0);
  CHECK(e[3] == 0.25);

  CHECK(total_variation_distance(pmf, pmf) == 0.0);
  const std::vector<double> left{1.0}, right{0.0, 1.0};
  CHECK(total_variation_distance(left, right) == doctest::Approx(1.0));
  // unequal lengths are padded with zeros
  CHECK(total_variation_distance(pmf, e) == doctest::Approx(0.5 * (0.0 + 0.0 + 0.25 + 0.25)));
}

TEST_CASE("point configurations") {
  const PointConfiguration p = sample_configuration(LandauIndex(1), DiskRadius(1.0), 5);
  const PointConfiguration q = sample_configuration(LandauIndex(1), DiskRadius(1.0), 5);
  CHECK(p.points == q.points);
  CHECK(p.seed == 5);
  CHECK(p.points.size() == p.indices.size());
  for (const auto& z : p.points) CHECK(std::abs(z) <= 1.0);
  CHECK_THROWS_AS(sample_configuration(LandauIndex(kConfigurationMaxLevel + 1), DiskRadius(1.0), 1), NumericError);
  CHECK_THROWS_AS(sample_configuration(LandauIndex(0), DiskRadius(kConfigurationMaxRadius + 1.0), 1), NumericError);
}

TEST_CASE("point configurations reproduce intensity and cardinality") {
  const LandauIndex m(1);
  const DiskRadius R(1.5);
  const int n = 3000;
  std::vector<unsigned> sizes;
  std::vector<double> rings(3, 0.0);
  for (int r = 0; r < n; ++r) {
    const PointConfiguration c = sample_configuration(m, R, 77, r);
    sizes.push_back(static_cast<unsigned>(c.points.size()));
    for (const auto& z : c.points) {
      const std::size_t bin = std::min<std::size_t>(2, static_cast<std::size_t>(3.0 * std::norm(z) / (R * R)));
      rings[bin] += 1.0;
    }
  }
  // intensity 1/pi: each equal-area ring holds R^2/3 points on average
  for (double v : rings) CHECK(std::abs(v / n / (R * R / 3.0) - 1.0) < 0.06);
  const EigenvalueTable t = build_eigenvalue_table(m, R);
  CHECK(total_variation_distance(poisson_binomial_pmf(t.values), empirical_pmf(sizes)) < 0.04);
}
