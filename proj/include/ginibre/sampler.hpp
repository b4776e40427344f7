#pragma once
//
// Monte Carlo for the disk count (independent Bernoulli(beta_k) draws) and
// for point configurations of the process restricted to D_R.
//

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ginibre/kernels.hpp"

namespace ginibre {

/// Philox4x32-10 block function (Salmon et al., counter-based).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Stream of uniforms in [0, 1) keyed by (seed, replicate); the n-th draw of
/// a stream does not depend on how replicates are scheduled.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t replicate);
  double uniform();
  std::uint64_t draws() const { return draw_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t replicate_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> block_{};
};

struct SamplerPolicy {
  double table_tol = 1e-8;
  unsigned threads = 0;
};

struct CountSample {
  std::vector<unsigned> counts;
  std::uint64_t seed = 0;
  LandauIndex m;
  double R = 0.0;
  /// Index of the last eigenvalue drawn (counts are at most K + 1).
  std::size_t truncation = 0;
  /// Eigenvalue mass beyond K that was not sampled.
  double tail_mass = 0.0;
};

CountSample sample_counts(LandauIndex m, DiskRadius R, std::size_t replicates, std::uint64_t seed,
                          const SamplerPolicy& policy = {});

struct PointConfiguration {
  std::vector<std::complex<double>> points;
  std::uint64_t seed = 0;
  /// Eigenfunction indices selected in the first stage.
  std::vector<unsigned> indices;
  unsigned envelope_rebuilds = 0;
};

/// Documented envelope of the rejection sampler.
constexpr unsigned kConfigurationMaxLevel = 4;
constexpr double kConfigurationMaxRadius = 4.0;

/// One configuration of the process restricted to D_R: Bernoulli selection
/// of eigenfunctions, then sequential sampling of the projection process by
/// rejection from a uniform proposal on D_R.
PointConfiguration sample_configuration(LandauIndex m, DiskRadius R, std::uint64_t seed,
                                        std::uint64_t replicate = 0);

struct Cumulants {
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
};

/// Unbiased mean and variance with standard errors; the variance error uses
/// the fourth central moment. Throws InsufficientData below two values.
Cumulants estimate_cumulants(std::span<const unsigned> counts);
Cumulants estimate_cumulants(const CountSample& sample);

/// Exact law of a sum of independent Bernoulli(p_k), by convolution.
std::vector<double> poisson_binomial_pmf(std::span<const double> p);

/// Relative frequencies of 0, 1, ..., max count.
std::vector<double> empirical_pmf(std::span<const unsigned> counts);

/// (1/2) sum |p_i - q_i|, the shorter vector padded with zeros.
double total_variation_distance(std::span<const double> p, std::span<const double> q);

}  // namespace ginibre
