#include "qbox/qcore.hpp"

#include <cmath>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

Deformation::Deformation(double q, double tol) {
  if (!std::isfinite(q) || q <= 0.0) fail(Errc::invalid_argument, "q must be a finite positive number, got " + std::to_string(q));
  if (q == 1.0) fail(Errc::invalid_argument, "q = 1 is the undeformed case and is not supported");
  if (!(tol > 0.0 && tol < 1.0)) fail(Errc::invalid_argument, "tol must lie in (0, 1)");
  if (q < 1.0) {
    q = 1.0 / q;
    remapped_ = true;
  }
  q_ = q;
  // q - 1 is exact for q in [1, 2], so log1p keeps full accuracy near 1
  h_ = std::log1p(q - 1.0);
  lambda_ = 2.0 * std::sinh(h_);
  tol_ = tol;
  omp_ = -std::expm1(-2.0 * h_);
  p_ = std::exp(-2.0 * h_);
}

double Deformation::pow(double k) const {
  if (k == 0.0) return 1.0;
  if (k == 1.0) return q_;
  if (k == -1.0) return 1.0 / q_;
  return std::exp(k * h_);
}

double q_number(double a, const Deformation& d) {
  if (a == 0.0) return 0.0;
  const double n = std::nearbyint(a);
  if (n == a && std::fabs(n) <= 64.0) {
    // symmetric sum q^{n-1} + q^{n-3} + ... + q^{1-n}
    const int m = static_cast<int>(std::fabs(n));
    const double q = d.q(), q2 = q * q;
    double lo = std::exp(-(m - 1) * d.log_q());
    double s = 0.0;
    for (int k = 0; k < m; ++k) {
      s += lo;
      lo *= q2;
    }
    return n < 0 ? -s : s;
  }
  const double v = std::sinh(a * d.log_q()) / std::sinh(d.log_q());
  if (!std::isfinite(v)) fail(Errc::overflow, "q-number [" + std::to_string(a) + "] overflows at q=" + std::to_string(d.q()));
  return v;
}

double q_number_base2(int n, const Deformation& d) {
  if (n < 0) fail(Errc::invalid_argument, "q_number_base2: n must be >= 0, got " + std::to_string(n));
  if (n == 0) return 0.0;
  const double v = std::expm1(2.0 * n * d.log_q()) / std::expm1(2.0 * d.log_q());
  if (!std::isfinite(v)) fail(Errc::overflow, "[" + std::to_string(n) + ",q^2] overflows at q=" + std::to_string(d.q()));
  return v;
}

double q_factorial(int n, const Deformation& d) {
  if (n < 0) fail(Errc::invalid_argument, "q_factorial: n must be >= 0, got " + std::to_string(n));
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= q_number(k, d);
  if (!std::isfinite(f)) fail(Errc::overflow, "[" + std::to_string(n) + "]! overflows at q=" + std::to_string(d.q()));
  return f;
}

double q_factorial_base2(int n, const Deformation& d) {
  if (n < 0) fail(Errc::invalid_argument, "q_factorial_base2: n must be >= 0, got " + std::to_string(n));
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= q_number_base2(k, d);
  if (!std::isfinite(f)) fail(Errc::overflow, "[" + std::to_string(n) + ",q^2]! overflows at q=" + std::to_string(d.q()));
  return f;
}

double QBinomialExpansion::evaluate(double x, double y) const {
  // Horner in t = x/y is unsafe at y = 0, so accumulate powers directly
  double s = 0.0, xn = 1.0;
  for (int n = 0; n <= order; ++n) {
    s += coeffs[n] * xn * std::pow(y, order - n);
    xn *= x;
  }
  return s;
}

QBinomialExpansion q_binomial_coeffs(int N, const Deformation& d) {
  if (N < 0) fail(Errc::invalid_argument, "q_binomial_coeffs: N must be >= 0, got " + std::to_string(N));
  QBinomialExpansion e;
  e.order = N;
  e.coeffs.assign(N + 1, 1.0);
  for (int n = 0; n < N / 2; ++n) {
    const double c = e.coeffs[n] * q_number(N - n, d) / q_number(n + 1, d);
    if (!std::isfinite(c))
      fail(Errc::overflow, "q-binomial coefficient overflows for N=" + std::to_string(N) + ", q=" + std::to_string(d.q()));
    e.coeffs[n + 1] = c;
  }
  for (int n = 0; n <= N / 2; ++n) e.coeffs[N - n] = e.coeffs[n];
  return e;
}

double q_binomial_eval_product(double x, double y, int N, const Deformation& d) {
  if (N < 0) fail(Errc::invalid_argument, "q_binomial_eval_product: N must be >= 0");
  double r = 1.0;
  for (int k = 0; k < N; ++k) r *= x + d.pow(N - 1 - 2 * k) * y;
  return r;
}

}  // namespace qbox
