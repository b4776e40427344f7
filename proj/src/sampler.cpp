#include "ginibre/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "ginibre/errors.hpp"
#include "ginibre/spectra.hpp"

namespace ginibre {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned t = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, work)));
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t replicate)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, replicate_(replicate) {}

double CounterStream::uniform() {
  // two doubles per block, 53 bits each from a pair of words
  const std::uint64_t block = draw_ / 2;
  const unsigned half = static_cast<unsigned>(draw_ % 2);
  if (half == 0) {
    block_ = philox4x32({static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                         static_cast<std::uint32_t>(replicate_), static_cast<std::uint32_t>(replicate_ >> 32)},
                        key_);
  }
  ++draw_;
  const std::uint64_t bits =
      (static_cast<std::uint64_t>(block_[2 * half]) << 32 | block_[2 * half + 1]) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

CountSample sample_counts(LandauIndex m, DiskRadius R, std::size_t replicates, std::uint64_t seed,
                          const SamplerPolicy& policy) {
  if (replicates == 0) throw NumericError(ErrorKind::InvalidParameters, "replicates must be >= 1");
  TablePolicy tp;
  tp.tolerance = policy.table_tol;
  tp.threads = policy.threads;
  const EigenvalueTable table = build_eigenvalue_table(m, R, tp);

  CountSample sample;
  sample.seed = seed;
  sample.m = m;
  sample.R = R.value();
  sample.truncation = table.size() - 1;
  sample.tail_mass = table.tail_bound;
  sample.counts.resize(replicates);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterStream stream(seed, i);
      unsigned count = 0;
      for (double beta : table.values) count += stream.uniform() < beta ? 1u : 0u;
      sample.counts[i] = count;
    }
  };
  const unsigned workers = worker_count(policy.threads, replicates / 256);
  const std::size_t chunk = (replicates + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(replicates, begin + chunk);
    if (begin < end) jobs.push_back(std::async(std::launch::async, run, begin, end));
  }
  for (auto& j : jobs) j.get();
  return sample;
}

namespace {

// Orthonormal eigenfunctions of the restricted process for a selection S:
// psi_k(z) = conj(c_k(z)) / sqrt(pi beta_k) on D_R.
struct Projection {
  LandauIndex m;
  std::vector<unsigned> indices;
  std::vector<double> scale;  // 1 / sqrt(pi beta_k)

  void features(std::complex<double> z, std::vector<std::complex<double>>& out) const {
    out.resize(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      out[i] = std::conj(cs_overlap_coefficient(m, indices[i], z)) * scale[i];
    }
  }
  // ||Phi(z)||^2 = K_S(z, z), radial.
  double diagonal(double r) const {
    double s = 0.0;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      s += std::norm(cs_overlap_coefficient(m, indices[i], r)) * scale[i] * scale[i];
    }
    return s;
  }
};

double envelope_peak(const Projection& proj, double R, unsigned grid) {
  double peak = 0.0;
  for (unsigned i = 0; i <= grid; ++i) peak = std::max(peak, proj.diagonal(R * i / grid));
  return peak;
}

struct EnvelopeExceeded {};

std::vector<std::complex<double>> sample_projection(const Projection& proj, double R, double peak,
                                                    CounterStream& stream) {
  const std::size_t n = proj.indices.size();
  std::vector<std::complex<double>> points;
  std::vector<std::vector<std::complex<double>>> basis;  // orthonormal span of chosen Phi(x_i)
  std::vector<std::complex<double>> phi;
  constexpr double kSafety = 1.5;
  for (std::size_t j = 0; j < n; ++j) {
    const double bound = kSafety * peak / static_cast<double>(n - j);
    for (;;) {
      const double r = R * std::sqrt(stream.uniform());
      const double theta = 2.0 * std::numbers::pi * stream.uniform();
      const std::complex<double> z = std::polar(r, theta);
      proj.features(z, phi);
      double density = 0.0;
      for (const auto& p : phi) density += std::norm(p);
      for (const auto& e : basis) {
        std::complex<double> dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(e[i]) * phi[i];
        density -= std::norm(dot);
      }
      density = std::max(0.0, density) / static_cast<double>(n - j);
      if (density > bound) throw EnvelopeExceeded{};
      if (stream.uniform() * bound > density) continue;

      points.push_back(z);
      // Gram-Schmidt step, done twice for stability
      std::vector<std::complex<double>> v = phi;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : basis) {
          std::complex<double> dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += std::conj(e[i]) * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * e[i];
        }
      }
      double norm = 0.0;
      for (const auto& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
      }
      break;
    }
  }
  return points;
}

}  // namespace

PointConfiguration sample_configuration(LandauIndex m, DiskRadius R, std::uint64_t seed, std::uint64_t replicate) {
  if (m.value() > kConfigurationMaxLevel || R.value() > kConfigurationMaxRadius) {
    throw NumericError(ErrorKind::InvalidParameters,
                       "configuration sampling is limited to m <= 4 and R <= 4");
  }
  const EigenvalueTable table = build_eigenvalue_table(m, R);
  CounterStream stream(seed, replicate);

  PointConfiguration config;
  config.seed = seed;
  Projection proj;
  proj.m = m;
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (stream.uniform() < table.values[k]) {
      proj.indices.push_back(static_cast<unsigned>(k));
      proj.scale.push_back(1.0 / std::sqrt(std::numbers::pi * table.values[k]));
    }
  }
  config.indices = proj.indices;
  if (proj.indices.empty()) return config;

  unsigned grid = 64;
  for (unsigned attempt = 0;; ++attempt) {
    const double peak = envelope_peak(proj, R.value(), grid);
    try {
      config.points = sample_projection(proj, R.value(), peak, stream);
      config.envelope_rebuilds = attempt;
      return config;
    } catch (const EnvelopeExceeded&) {
      if (attempt == 3) {
        throw NumericError(ErrorKind::EnvelopeViolation,
                           "conditional density exceeded the rejection envelope after 3 rebuilds");
      }
      grid *= 4;
    }
  }
}

Cumulants estimate_cumulants(std::span<const unsigned> counts) {
  const std::size_t n = counts.size();
  if (n < 2) throw NumericError(ErrorKind::InsufficientData, "cumulants need at least two replicates");
  double mean = 0.0;
  for (unsigned c : counts) mean += c;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (unsigned c : counts) {
    const double d = c - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  const double dn = static_cast<double>(n);
  Cumulants out;
  out.mean = mean;
  out.variance = m2 / (dn - 1.0);
  out.se_mean = std::sqrt(out.variance / dn);
  const double mu4 = m4 / dn;
  const double var_of_var = (mu4 - (dn - 3.0) / (dn - 1.0) * out.variance * out.variance) / dn;
  out.se_variance = std::sqrt(std::max(0.0, var_of_var));
  return out;
}

Cumulants estimate_cumulants(const CountSample& sample) { return estimate_cumulants(sample.counts); }

std::vector<double> poisson_binomial_pmf(std::span<const double> p) {
  std::vector<double> pmf(p.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t j = k + 1; j > 0; --j) pmf[j] = pmf[j] * (1.0 - p[k]) + pmf[j - 1] * p[k];
    pmf[0] *= 1.0 - p[k];
  }
  return pmf;
}

std::vector<double> empirical_pmf(std::span<const unsigned> counts) {
  if (counts.empty()) return {};
  const unsigned top = *std::max_element(counts.begin(), counts.end());
  std::vector<double> pmf(top + 1, 0.0);
  for (unsigned c : counts) pmf[c] += 1.0;
  for (double& v : pmf) v /= static_cast<double>(counts.size());
  return pmf;
}

double total_variation_distance(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

}  // namespace ginibre
