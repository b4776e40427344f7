#pragma once

#include <cmath>
#include <complex>

#include "ginibre/errors.hpp"

namespace ginibre {

/// Landau level index m >= 0.
class LandauIndex {
 public:
  constexpr LandauIndex() = default;
  explicit LandauIndex(long m) {
    if (m < 0) throw NumericError(ErrorKind::Domain, "Landau index must be >= 0");
    m_ = static_cast<unsigned>(m);
  }
  constexpr unsigned value() const { return m_; }
  constexpr operator unsigned() const { return m_; }

 private:
  unsigned m_ = 0;
};

/// Radius R > 0 of the centered observation disk.
class DiskRadius {
 public:
  explicit DiskRadius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw NumericError(ErrorKind::Domain, "disk radius must be positive and finite");
    }
    r_ = r;
  }
  double value() const { return r_; }
  operator double() const { return r_; }

 private:
  double r_ = 1.0;
};

/// Correlation kernel of the Landau-level-m process on L^2(C, dnu):
/// K_m(z,w) = pi^-1 exp(z conj(w) - |z|^2/2 - |w|^2/2) L_m(|z-w|^2).
/// Evaluated as exp(-|z-w|^2/2 + i Im(z conj(w))), which never overflows.
std::complex<double> kernel_point(LandauIndex m, std::complex<double> z, std::complex<double> w);

/// Kernel of the weighted space, pi^-1 exp(z conj(w)) L_m(|z-w|^2).
/// Rejects |z| or |w| above 600; throws Overflow when exp(Re z conj(w)) is
/// not representable.
std::complex<double> kernel_tilde(LandauIndex m, std::complex<double> z, std::complex<double> w);

/// Normalized overlap area of two radius-R disks with centers r apart.
double scaled_intersection_area(double r, DiskRadius radius);

/// Area of D_R(z) outside D_R for |z| = r.
double g_weight(double r, DiskRadius radius);

/// Coefficient of the k-th Hermite state in the coherent state |z, m>,
/// normalized so that sum_k |c_k(z)|^2 = 1 and c_m(0) = 1.
std::complex<double> cs_overlap_coefficient(LandauIndex m, unsigned k, std::complex<double> z);

}  // namespace ginibre
