#include "qbox/qoperators.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

using cplx = std::complex<double>;

PowerSeries PowerSeries::monomial(int n, double coeff) {
  if (n < 0) fail(Errc::invalid_argument, "monomial degree must be >= 0");
  std::vector<double> c(n + 1, 0.0);
  c[n] = coeff;
  return PowerSeries(std::move(c));
}

SeriesEvalReport<double> PowerSeries::evaluate(double x) const {
  CompensatedSum s;
  SeriesEvalReport<double> r;
  double xn = 1.0;
  for (double c : c_) {
    const double t = c * xn;
    s.add(t);
    r.max_term_magnitude = std::fmax(r.max_term_magnitude, std::fabs(t));
    xn *= x;
  }
  r.value = s.value();
  r.terms_used = static_cast<int>(c_.size());
  r.cancellation_ratio = std::fmax(1.0, r.max_term_magnitude / std::fmax(std::fabs(r.value), DBL_EPSILON));
  return r;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
  return PowerSeries(std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const { return *this + o * -1.0; }

PowerSeries PowerSeries::operator*(double s) const {
  std::vector<double> c = c_;
  for (double& v : c) v *= s;
  return PowerSeries(std::move(c));
}

double PowerSeries::max_relative_difference(const PowerSeries& a, const PowerSeries& b) {
  const int m = std::max(a.order(), b.order());
  double scale = 0.0, diff = 0.0;
  for (int n = 0; n <= m; ++n) {
    scale = std::fmax(scale, std::fmax(std::fabs(a.coeff(n)), std::fabs(b.coeff(n))));
    diff = std::fmax(diff, std::fabs(a.coeff(n) - b.coeff(n)));
  }
  return scale == 0.0 ? diff : diff / scale;
}

cplx apply_D(const GridFunction& f, double x, const Deformation& d) {
  if (x == 0.0) fail(Errc::domain, "apply_D: x = 0 is not allowed (use the series form)");
  const double q = d.q();
  return (f(q * x) - f(x / q)) / (d.lambda() * x);
}

cplx apply_Dbar(const GridFunction& f, double x, const Deformation& d) {
  if (x == 0.0) fail(Errc::domain, "apply_Dbar: x = 0 is not allowed (use the series form)");
  const double q2 = d.q() * d.q();
  return (f(q2 * x) - f(x)) / (std::expm1(2.0 * d.log_q()) * x);
}

namespace {

template <class G>
PowerSeries lower_with(const PowerSeries& p, G g) {
  if (p.order() <= 0) return PowerSeries(std::vector<double>{0.0});
  std::vector<double> c(p.order(), 0.0);
  for (int n = 1; n <= p.order(); ++n) c[n - 1] = p.coeff(n) * g(n);
  return PowerSeries(std::move(c));
}

}  // namespace

PowerSeries apply_D(const PowerSeries& p, const Deformation& d) {
  return lower_with(p, [&](int n) { return q_number(n, d); });
}

PowerSeries apply_Dbar(const PowerSeries& p, const Deformation& d) {
  return lower_with(p, [&](int n) { return q_number_base2(n, d); });
}

PowerSeries apply_hat_partial(const PowerSeries& p, const Deformation& d) {
  // one-sided q-number (q^n - 1)/(q - 1)
  const double h = d.log_q();
  return lower_with(p, [&](int n) { return std::expm1(n * h) / std::expm1(h); });
}

PowerSeries apply_gauss_weight(const PowerSeries& p, int sign, const Deformation& d) {
  if (sign != 1 && sign != -1) fail(Errc::invalid_argument, "apply_gauss_weight: sign must be +1 or -1");
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (int n = 2; n <= p.order(); ++n) {
    const double w = std::exp(sign * 0.5 * n * (n - 1.0) * d.log_q());
    if (!std::isfinite(w) || (w == 0.0 && c[n] != 0.0))
      fail(Errc::overflow, "apply_gauss_weight: weight q^{n(n-1)/2} out of range at degree " + std::to_string(n));
    c[n] *= w;
  }
  return PowerSeries(std::move(c));
}

PowerSeries apply_dilation(const PowerSeries& p, double k, const Deformation& d) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (int n = 1; n <= p.order(); ++n) c[n] *= std::exp(k * n * d.log_q());
  return PowerSeries(std::move(c));
}

PowerSeries multiply_x(const PowerSeries& p, int k) {
  if (k < 0) fail(Errc::invalid_argument, "multiply_x: k must be >= 0");
  std::vector<double> c(k, 0.0);
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  return PowerSeries(std::move(c));
}

PowerSeries apply_number_function(const PowerSeries& p, const std::function<double(int)>& g) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (int n = 0; n <= p.order(); ++n) c[n] *= g(n);
  return PowerSeries(std::move(c));
}

namespace {

struct LatticeSum {
  cplx value;
  std::size_t points;
  double tail;
};

// sum_k (q - 1/q) x_k f(x_k), x_k = b q^{-(2k+1)}
LatticeSum lattice_sum(const GridFunction& f, double b, const Deformation& d, double tol, std::size_t cap) {
  if (b == 0.0) return {cplx(0.0), 0, 0.0};
  const double lam = d.lambda(), p = d.p(), q = d.q();
  ComplexCompensatedSum acc;
  double x = b / q;
  double prev_mag = 0.0;
  int quiet = 0;
  for (std::size_t k = 0; k < cap; ++k) {
    const cplx fx = f(x);
    if (!std::isfinite(fx.real()) || !std::isfinite(fx.imag()))
      fail(Errc::domain, "q_integral: integrand is not finite at lattice point x=" + std::to_string(x));
    acc.add(lam * x * fx);
    const double sup = std::fmax(std::abs(fx), prev_mag);
    prev_mag = std::abs(fx);
    x *= p;
    // remaining points x_j <= x carry total weight sum lam x_j = q x
    const double tail = q * x * sup;
    quiet = (tail <= tol * std::fmax(std::abs(acc.value()), 1e-300)) ? quiet + 1 : 0;
    if (quiet >= 2 || x == 0.0) return {acc.value(), k + 1, tail};
  }
  fail(Errc::no_convergence, "q_integral: lattice tail not below tolerance after " + std::to_string(cap) +
                                 " points (q=" + std::to_string(q) + ", b=" + std::to_string(b) + ")");
}

}  // namespace

JacksonResult q_integral(const GridFunction& f, double a, double b, const Deformation& d, JacksonOptions opt) {
  if (!(a >= 0.0 && b > a)) fail(Errc::invalid_argument, "q_integral: need 0 <= a < b");
  std::size_t cap = opt.max_points;
  if (cap == 0) cap = std::max<std::size_t>(10000, static_cast<std::size_t>(std::ceil(64.0 / d.log_q())));
  const LatticeSum ib = lattice_sum(f, b, d, opt.tol, cap);
  const LatticeSum ia = lattice_sum(f, a, d, opt.tol, cap);
  return {ib.value - ia.value, ib.points + ia.points, ib.tail + ia.tail};
}

cplx momentum_apply(const GridFunction& f, double x, const PhysicalConfig& cfg) {
  return cplx(0.0, -cfg.hbar * cfg.momentum_factor()) * apply_D(f, x, cfg.d());
}

namespace {

// int_{-inf}^{inf} g, split at the origin so no node lands on x = 0
template <class G>
double line_integral(G g) {
  boost::math::quadrature::exp_sinh<double> es;
  const double tol = 1e-13;
  const double right = es.integrate([&](double x) { return g(x); }, tol);
  const double left = es.integrate([&](double x) { return g(-x); }, tol);
  return right + left;
}

}  // namespace

UncertaintyReport uncertainty_check(const GridFunction& psi, const PhysicalConfig& cfg) {
  const double q = cfg.d().q();
  const double norm = line_integral([&](double x) { return std::norm(psi(x)); });
  if (!(std::fabs(norm - 1.0) <= 1e-8))
    fail(Errc::invalid_argument, "uncertainty_check: psi is not normalized (norm = " + std::to_string(norm) + ")");
  const double mx = line_integral([&](double x) { return x * std::norm(psi(x)); });
  const double mx2 = line_integral([&](double x) { return x * x * std::norm(psi(x)); });
  auto ppsi = [&](double x) { return momentum_apply(psi, x, cfg); };
  const double mp_re = line_integral([&](double x) { return (std::conj(psi(x)) * ppsi(x)).real(); });
  const double mp_im = line_integral([&](double x) { return (std::conj(psi(x)) * ppsi(x)).imag(); });
  const double mp2 = line_integral([&](double x) { return std::norm(ppsi(x)); });
  const double ov_re = line_integral([&](double x) {
    return (std::conj(psi(x)) * psi(q * x) + std::conj(psi(q * x)) * psi(x)).real();
  });
  const double ov_im = line_integral([&](double x) {
    return (std::conj(psi(x)) * psi(q * x) + std::conj(psi(q * x)) * psi(x)).imag();
  });
  UncertaintyReport r;
  r.dx = std::sqrt(std::fmax(0.0, mx2 - mx * mx));
  r.dp = std::sqrt(std::fmax(0.0, mp2 - (mp_re * mp_re + mp_im * mp_im)));
  r.overlap = 0.5 * std::hypot(ov_re, ov_im);
  r.bound = 0.25 * cfg.hbar * std::hypot(ov_re, ov_im);
  r.satisfied = r.dp * r.dx >= r.bound - 1e-9;
  return r;
}

}  // namespace qbox
