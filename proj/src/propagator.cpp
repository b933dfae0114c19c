#include "qbox/propagator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbox/qfunctions.hpp"

namespace qbox {

using cplx = std::complex<double>;
using std::numbers::pi;

cplx kernel_prefactor(double T, const PhysicalConfig& cfg) {
  if (!(T > 0.0)) fail(Errc::invalid_argument, "kernel: T must be positive");
  const double g1 = gamma_q(cfg.d()).gamma1;
  const double amp = std::sqrt(cfg.m_q() / (2.0 * pi * cfg.hbar * T)) / g1;
  return amp * std::polar(1.0, -pi / 4.0);
}

double q_difference_power(double x, double y, int n, const Deformation& d) {
  if (n < 0) fail(Errc::invalid_argument, "q_difference_power: n must be >= 0");
  double r = 1.0;
  for (int j = 1; j <= 2 * n - 1; j += 2) r *= (x - d.pow(j) * y) * (x - d.pow(-j) * y);
  return r;
}

KernelValue kernel(const KernelRequest& req) {
  const PhysicalConfig& cfg = req.cfg;
  const Deformation& d = cfg.d();
  const cplx pre = kernel_prefactor(req.T, cfg);
  if (req.max_terms < 1) fail(Errc::invalid_argument, "kernel: max_terms must be >= 1");
  // term_n = (2n)!/(n! [2n]!) (i m_q/(2 hbar T))^n (x -. x')^{2n}, built by ratios
  const cplx z(0.0, cfg.m_q() / (2.0 * cfg.hbar * req.T));
  const double x = req.x, y = req.x_prime;
  ComplexCompensatedSum acc;
  cplx term(1.0);
  acc.add(term);
  double peak = 1.0, prev_mag = 1.0;
  bool past_peak = false;
  int quiet = 0;
  const double tol = d.tol();
  for (int n = 1; n < req.max_terms; ++n) {
    const int j = 2 * n - 1;
    const double ratio = (2.0 * n) * (2.0 * n - 1.0) / (n * q_number(2 * n, d) * q_number(2 * n - 1, d));
    term *= z * ratio * ((x - d.pow(j) * y) * (x - d.pow(-j) * y));
    const double mag = std::abs(term);
    if (!std::isfinite(mag)) fail(Errc::overflow, "kernel: series term overflow at n=" + std::to_string(n));
    acc.add(term);
    if (mag < prev_mag) past_peak = true;
    peak = std::fmax(peak, mag);
    quiet = (past_peak && mag <= tol * std::fmax(std::abs(acc.value()), DBL_EPSILON * peak)) ? quiet + 1 : 0;
    const double r = prev_mag > 0.0 ? mag / prev_mag : 0.0;
    prev_mag = mag;
    if (mag == 0.0) return {pre * acc.value(), n + 1, 0.0};
    if (quiet >= 3) {
      const double tail = r < 1.0 ? mag * r / (1.0 - r) : mag;
      return {pre * acc.value(), n + 1, std::abs(pre) * tail};
    }
  }
  KernelValue partial{pre * acc.value(), req.max_terms, std::abs(pre) * prev_mag};
  throw KernelTruncationError("kernel: series not converged within " + std::to_string(req.max_terms) +
                                  " terms (x=" + std::to_string(x) + ", x'=" + std::to_string(y) +
                                  ", T=" + std::to_string(req.T) + ")",
                              partial);
}

cplx plane_wave(double x, double k, const Deformation& d) {
  const double Nq = 1.0 / std::sqrt(2.0 * pi * gamma_q(d).gamma1);
  return Nq * eq_exp(cplx(0.0, k * x), d).value;
}

ShortTimeCheck short_time_kernel_check(double x, double x_prime, double T, const PhysicalConfig& cfg) {
  KernelRequest req;
  req.x = x;
  req.x_prime = x_prime;
  req.T = T;
  req.cfg = cfg;
  const cplx pre = kernel_prefactor(T, cfg);
  const Deformation& d = cfg.d();
  // n = 1 coefficient: 2!/(1! [2]!) = 2/[2]
  const cplx z(0.0, cfg.m_q() / (2.0 * cfg.hbar * T));
  const cplx first = 2.0 / q_number(2, d) * z * q_difference_power(x, x_prime, 1, d);
  ShortTimeCheck c;
  c.lhs = kernel(req).value;
  c.rhs = pre * (1.0 + first);
  c.gap = std::abs(c.lhs - c.rhs) / std::abs(pre);
  return c;
}

}  // namespace qbox
