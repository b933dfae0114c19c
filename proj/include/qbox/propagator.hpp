#pragma once

#include <complex>

#include "qbox/error.hpp"
#include "qbox/physics.hpp"

namespace qbox {

struct KernelRequest {
  double x = 0.0;
  double x_prime = 0.0;
  double T = 1.0;
  PhysicalConfig cfg;
  int max_terms = 512;
};

struct KernelValue {
  std::complex<double> value;
  int terms_used = 0;
  double tail_bound = 0.0;
};

// Raised when the kernel series needs more than max_terms terms.
class KernelTruncationError : public Error {
 public:
  KernelTruncationError(const std::string& what, KernelValue partial)
      : Error(Errc::no_convergence, what), partial_(partial) {}
  const KernelValue& partial() const noexcept { return partial_; }

 private:
  KernelValue partial_;
};

// <x| exp(-i T H/hbar) |x'>. The square root of 1/i is taken as e^{-i pi/4}.
KernelValue kernel(const KernelRequest& req);

// (1/Gamma_q[1]) sqrt(m_q/(2 pi hbar T)) e^{-i pi/4}: the n = 0 term, and the
// exact kernel value on dilation pairs x' = q^{+-1} x
std::complex<double> kernel_prefactor(double T, const PhysicalConfig& cfg);

// (x -. y)^{2n} = prod_{odd j, |j| <= 2n-1} (x - q^j y)
double q_difference_power(double x, double y, int n, const Deformation& d);

// N_q e_q(ikx), N_q = 1/sqrt(2 pi Gamma_q[1])
std::complex<double> plane_wave(double x, double k, const Deformation& d);

struct ShortTimeCheck {
  std::complex<double> lhs;  // kernel
  std::complex<double> rhs;  // n <= 1 truncation
  double gap = 0.0;          // |lhs - rhs| / |prefactor|
};

ShortTimeCheck short_time_kernel_check(double x, double x_prime, double T, const PhysicalConfig& cfg);

}  // namespace qbox
