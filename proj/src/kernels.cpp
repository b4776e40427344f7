#include "ginibre/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ginibre/specfun.hpp"

namespace ginibre {

namespace {

constexpr double kInvPi = std::numbers::inv_pi;
constexpr double kMaxKernelArgument = 600.0;

}  // namespace

std::complex<double> kernel_point(LandauIndex m, std::complex<double> z, std::complex<double> w) {
  const double dist2 = std::norm(z - w);
  const double phase = std::imag(z * std::conj(w));
  const double magnitude = kInvPi * std::exp(-0.5 * dist2) * laguerre(m, 0, dist2);
  return std::polar(1.0, phase) * magnitude;
}

std::complex<double> kernel_tilde(LandauIndex m, std::complex<double> z, std::complex<double> w) {
  if (std::abs(z) > kMaxKernelArgument || std::abs(w) > kMaxKernelArgument) {
    throw NumericError(ErrorKind::Domain, "kernel_tilde arguments must satisfy |z|, |w| <= 600");
  }
  const std::complex<double> zw = z * std::conj(w);
  const double lag = laguerre(m, 0, std::norm(z - w));
  if (std::abs(zw) <= 300.0) {
    return kInvPi * std::exp(zw) * lag;
  }
  // log-magnitude / phase form
  if (lag == 0.0) return {0.0, 0.0};
  const double log_mag = std::real(zw) + std::log(kInvPi * std::abs(lag));
  if (log_mag > std::log(std::numeric_limits<double>::max())) {
    throw NumericError(ErrorKind::Overflow, "kernel_tilde magnitude exceeds the double range");
  }
  const double sign = lag < 0.0 ? -1.0 : 1.0;
  return std::polar(sign * std::exp(log_mag), std::imag(zw));
}

double scaled_intersection_area(double r, DiskRadius radius) {
  if (!(r >= 0.0)) throw NumericError(ErrorKind::Domain, "distance must be >= 0");
  const double R = radius.value();
  if (r >= 2.0 * R) return 0.0;
  const double theta = std::acos(r / (2.0 * R));
  return 2.0 * kInvPi * (theta - std::sin(theta) * std::cos(theta));
}

double g_weight(double r, DiskRadius radius) {
  if (!(r >= 0.0)) throw NumericError(ErrorKind::Domain, "distance must be >= 0");
  const double R = radius.value();
  const double full = std::numbers::pi * R * R;
  if (r > 2.0 * R) return full;
  return full - 2.0 * R * R * std::acos(r / (2.0 * R)) + 0.5 * r * std::sqrt(4.0 * R * R - r * r);
}

std::complex<double> cs_overlap_coefficient(LandauIndex m, unsigned k, std::complex<double> z) {
  const double modulus = std::abs(z);
  if (modulus > kMaxKernelArgument) {
    throw NumericError(ErrorKind::Domain, "coherent-state argument must satisfy |z| <= 600");
  }
  const unsigned lo = std::min<unsigned>(m, k);
  const unsigned hi = std::max<unsigned>(m, k);
  const unsigned shift = hi - lo;
  const double rho = modulus * modulus;

  const double lag = laguerre(lo, shift, rho);
  if (lag == 0.0) return {0.0, 0.0};
  if (modulus == 0.0 && shift > 0) return {0.0, 0.0};

  double log_mag = -0.5 * rho + 0.5 * (log_factorial(lo) - log_factorial(hi));
  if (shift > 0) log_mag += shift * std::log(modulus);
  double mag = std::exp(log_mag) * lag;
  // the k < m branch comes from the index reflection and carries (-1)^(m-k)
  if (k < m && (m - k) % 2 == 1) mag = -mag;

  const double angle = (static_cast<double>(m) - static_cast<double>(k)) * std::arg(z);
  return std::polar(1.0, angle) * mag;
}

}  // namespace ginibre
