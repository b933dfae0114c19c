#include "qbox/qfunctions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbox/error.hpp"
#include "theta_impl.hpp"

namespace qbox {

namespace {

using cplx = std::complex<double>;

// sum_k (-1)^k x^{2k+s} / w(2k+s)! where w(m) is [m] or [m,q^2]
template <class Weight>
RealSeries alternating_parity_series(double x, int s, Weight w, double tol, int cap, const char* what) {
  const double first = s == 0 ? 1.0 : x;
  const double x2 = x * x;
  return detail::sum_series<double>(
      first, [&](int k, double prev) { return -prev * x2 / (w(2 * k + s - 1) * w(2 * k + s)); }, tol, cap, what);
}

}  // namespace

ComplexSeries eq_exp(cplx z, const Deformation& d, int cap) {
  return detail::sum_series<cplx>(
      cplx(1.0), [&](int n, cplx prev) { return prev * z / q_number(n, d); }, d.tol(), cap, "eq_exp");
}

ComplexSeries eq_exp_bar(cplx z, const Deformation& d, int cap) {
  return detail::sum_series<cplx>(
      cplx(1.0), [&](int n, cplx prev) { return prev * z / q_number_base2(n, d); }, d.tol(), cap, "eq_exp_bar");
}

RealSeries sin_q(double x, const Deformation& d, int cap) {
  return alternating_parity_series(x, 1, [&](int m) { return q_number(m, d); }, d.tol(), cap, "sin_q");
}

RealSeries cos_q(double x, const Deformation& d, int cap) {
  return alternating_parity_series(x, 0, [&](int m) { return q_number(m, d); }, d.tol(), cap, "cos_q");
}

RealSeries barsin_q(double x, const Deformation& d, int cap) {
  return alternating_parity_series(x, 1, [&](int m) { return q_number_base2(m, d); }, d.tol(), cap, "barsin_q");
}

RealSeries barcos_q(double x, const Deformation& d, int cap) {
  return alternating_parity_series(x, 0, [&](int m) { return q_number_base2(m, d); }, d.tol(), cap, "barcos_q");
}

QTrigValues q_trig(double x, const Deformation& d) {
  return {sin_q(x, d), cos_q(x, d), barsin_q(x, d), barcos_q(x, d)};
}

double QGamma::gamma(int n, const Deformation& d) const {
  if (n < 1) fail(Errc::invalid_argument, "Gamma_q[n] needs n >= 1");
  return q_factorial(n - 1, d) * gamma1;
}

QGamma gamma_q(const Deformation& d) {
  // Mellin transform of e_q(-t): int_0^inf e_q(-t) t^{s-1} dt = Gamma_q[s] with
  // Gamma_q[1] = h / sinh(h), h = ln q. For q near 1 the truncated ordinary
  // integral agrees with this value; for larger q the integral itself does not
  // converge and this is its regularized value.
  const double h = d.log_q();
  QGamma g;
  g.gamma1 = h / std::sinh(h);
  g.quadrature_error_estimate = 4.0 * DBL_EPSILON * g.gamma1;
  return g;
}

namespace {

// prod over the given zeros of (1 - (x/z)^2), continued with further Theta
// levels spaced by pi until the factors no longer matter.
double zero_product(double x, std::span<const double> zeros, double level_offset, const Deformation& d, const char* what) {
  if (zeros.empty()) fail(Errc::invalid_argument, std::string(what) + ": zero list is empty");
  double prod = 1.0;
  for (double z : zeros) {
    if (!(z > 0.0)) fail(Errc::invalid_argument, std::string(what) + ": zeros must be positive");
    prod *= 1.0 - (x / z) * (x / z);
  }
  if (prod == 0.0) return 0.0;
  // tail: levels pi (M + 1 - offset), pi (M + 2 - offset), ...
  const double x2 = x * x;
  double z = zeros.back();
  double level = std::numbers::pi * (static_cast<double>(zeros.size()) - level_offset);
  double log_tail = 0.0;
  for (int j = 0; j < 4000; ++j) {
    level += std::numbers::pi;
    z = detail::theta_newton_from_left(z, level, d);
    const double r = x2 / (z * z);
    if (r >= 1.0) break;  // argument beyond the tail region; the estimate does not apply
    log_tail += std::log1p(-r);
    if (r < 1e-17) break;
  }
  return prod * std::exp(log_tail);
}

}  // namespace

double barsin_product(double x, std::span<const double> zeros, const Deformation& d) {
  return x * zero_product(x, zeros, 0.0, d, "barsin_product");
}

double barcos_product(double x, std::span<const double> half_zeros, const Deformation& d) {
  return zero_product(x, half_zeros, 0.5, d, "barcos_product");
}

}  // namespace qbox
