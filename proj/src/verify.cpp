#include "qbox/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "qbox/classical.hpp"
#include "qbox/propagator.hpp"
#include "qbox/qcore.hpp"
#include "qbox/qfunctions.hpp"
#include "qbox/qoperators.hpp"
#include "qbox/spectrum.hpp"

namespace qbox {

using cplx = std::complex<double>;
using std::numbers::pi;

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool VerifyReport::all_passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return !c.gating || c.passed(); });
}

namespace {

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// error-type check: passes when measured <= threshold
Check upto(std::string name, double measured, double threshold) {
  return {std::move(name), measured, threshold, measured <= threshold};
}

double rel(double a, double b) { return std::fabs(a - b) / std::fmax(std::fabs(b), 1e-300); }

// |(a - b) - want| per coefficient, relative to |a| + |b| (the terms that cancel)
double cancellation_gap(const PowerSeries& a, const PowerSeries& b, const PowerSeries& want) {
  double e = 0.0;
  const int n = std::max({a.order(), b.order(), want.order()});
  for (int k = 0; k <= n; ++k) {
    const double scale = std::fabs(a.coeff(k)) + std::fabs(b.coeff(k));
    const double gap = std::fabs(a.coeff(k) - b.coeff(k) - want.coeff(k));
    e = std::fmax(e, scale > 0.0 ? gap / scale : gap);
  }
  return e;
}

PhysicalConfig unit_cfg(double q) { return PhysicalConfig(Deformation(q), 1.0, 1.0, 1.0); }

}  // namespace

CriterionResult check_reference_roots() {
  CriterionResult c{1, "Reference roots pi_q(1..4) at q=1.5 to 3 significant figures", true, {}, {}};
  const Deformation d(1.5);
  const double reference[4] = {5.28, 30.0, 155.0, 787.0};
  const double ulp[4] = {0.01, 0.1, 1.0, 1.0};
  const auto t0 = std::chrono::steady_clock::now();
  double v[4];
  for (int n = 1; n <= 4; ++n) v[n - 1] = pi_q(n, d);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (int i = 0; i < 4; ++i) {
    const double rounded = std::round(v[i] / ulp[i]) * ulp[i];
    Check ch = upto("pi_q(" + std::to_string(i + 1) + ") = " + fmt("%.10g", v[i]) + " vs reference " + fmt("%g", reference[i]) +
                        " (deviation in units of the last reference digit)",
                    std::fabs(rounded - reference[i]) / ulp[i], 1.0 + 1e-9);
    c.checks.push_back(ch);
  }
  c.checks.push_back(upto("root-finding runtime [s]", secs, 1.0));
  return c;
}

CriterionResult check_classical_limits(double q) {
  CriterionResult c{2, "Classical limits at q=" + fmt("%.10g", q), true, {}, {}};
  const PhysicalConfig cfg = unit_cfg(q);
  const Deformation& d = cfg.d();
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
  for (int n = 1; n <= 5; ++n) e1 = std::fmax(e1, std::fabs(pi_q(n, d) - pi * n));
  c.checks.push_back(upto("max |pi_q(n) - pi n|, n<=5", e1, 1e-2));
  const auto levels = box_spectrum(5, cfg, false);
  for (const auto& s : levels) e2 = std::fmax(e2, rel(s.E_n, s.n * s.n * pi * pi / 2.0));
  c.checks.push_back(upto("max relative deviation of E_n from n^2 pi^2/2", e2, 1e-3));
  const cplx gauss_pre = std::polar(std::sqrt(1.0 / (2.0 * pi)), -pi / 4.0);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      KernelRequest r;
      r.x = -2.0 + 0.5 * i;
      r.x_prime = -2.0 + 0.5 * j;
      r.T = 1.0;
      r.cfg = cfg;
      const double dx = r.x - r.x_prime;
      const cplx g = gauss_pre * std::polar(1.0, dx * dx / 2.0);
      e3 = std::fmax(e3, std::abs(kernel(r).value - g) / std::abs(g));
    }
  c.checks.push_back(upto("max relative kernel deviation from the Gaussian kernel, x,x' in [-2,2], T=1", e3, 1e-3));
  const double samples[][2] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}, {0.5, 1}, {1, 0.5}, {0.25, 0.75}};
  for (const auto& s : samples) e4 = std::fmax(e4, std::fabs(hamiltonian(s[0], s[1], cfg) - s[1] * s[1] / 2.0));
  c.checks.push_back(upto("max |H(x,p) - p^2/2| on unit samples", e4, 1e-4));
  return c;
}

CriterionResult check_algebra() {
  CriterionResult c{3, "Algebra suite on monomials (degree <= 12, q in {1.1, 1.5, 2})", true, {}, {}};
  double e_hat = 0, e_mixed = 0, e_dmono = 0, e_conj = 0, e_su1 = 0, e_su2 = 0, e_su3 = 0, e_su3c = 0, e_binom = 0,
         e_rec = 0;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  for (double q : {1.1, 1.5, 2.0}) {
    const Deformation d(q);
    for (int n = 0; n <= 12; ++n) {
      const PowerSeries xn = PowerSeries::monomial(n);
      // hat-partial x - q x hat-partial = 1
      e_hat = std::fmax(e_hat, cancellation_gap(apply_hat_partial(multiply_x(xn), d),
                                                multiply_x(apply_hat_partial(xn, d)) * q, xn));
      // D x - q^{+-1} x D = q^{-+N}
      for (int s : {1, -1}) {
        e_mixed = std::fmax(e_mixed, cancellation_gap(apply_D(multiply_x(xn), d), multiply_x(apply_D(xn, d)) * d.pow(s),
                                                      apply_dilation(xn, -s, d)));
      }
      // pointwise D x^n = [n] x^{n-1}
      GridFunction f{[n](double x) { return cplx(std::pow(x, n)); }};
      for (double x : {0.3, 0.7, 1.3, 2.1}) {
        const double want = q_number(n, d) * std::pow(x, n - 1);
        const double got = apply_D(f, x, d).real();
        e_dmono = std::fmax(e_dmono, n == 0 ? std::fabs(got) : rel(got, want));
      }
      // D^2 = q^{N(N-1)/2} Dbar^2 q^{-N(N-1)/2}
      const PowerSeries lhs = apply_D(apply_D(xn, d), d);
      const PowerSeries rhs = apply_gauss_weight(apply_Dbar(apply_Dbar(apply_gauss_weight(xn, -1, d), d), d), +1, d);
      e_conj = std::fmax(e_conj, PowerSeries::max_relative_difference(lhs, rhs));
      // SU_q(2)-like relations
      auto Nh = [](const PowerSeries& p) { return apply_number_function(p, [](int m) { return m + 0.5; }); };
      auto D2 = [&](const PowerSeries& p) { return apply_D(apply_D(p, d), d); };
      const PowerSeries c1 = Nh(multiply_x(xn, 2)) - multiply_x(Nh(xn), 2);
      e_su1 = std::fmax(e_su1, PowerSeries::max_relative_difference(c1, multiply_x(xn, 2) * 2.0));
      if (n >= 2) {
        const PowerSeries c2 = Nh(D2(xn)) - D2(Nh(xn));
        e_su2 = std::fmax(e_su2, PowerSeries::max_relative_difference(c2, D2(xn) * -2.0));
      }
      const PowerSeries c3 = D2(multiply_x(xn, 2)) - multiply_x(D2(xn), 2);
      const PowerSeries literal = apply_number_function(xn, [&](int m) { return q_number(2.0 * (m + 0.5), d); });
      e_su3 = std::fmax(e_su3, PowerSeries::max_relative_difference(c3, literal));
      e_su3c = std::fmax(e_su3c, PowerSeries::max_relative_difference(c3, literal * q_number(2, d)));
    }
    for (int N = 0; N <= 10; ++N) {
      const QBinomialExpansion e = q_binomial_coeffs(N, d);
      const QBinomialExpansion e1 = q_binomial_coeffs(N + 1, d);
      for (int k = 0; k < 20; ++k) {
        const double x = U(rng), y = U(rng);
        double mag = 0.0;
        for (int m = 0; m <= N; ++m) mag += std::fabs(e.coeffs[m] * std::pow(x, m) * std::pow(y, N - m));
        e_binom = std::fmax(e_binom, std::fabs(e.evaluate(x, y) - q_binomial_eval_product(x, y, N, d)) / std::fmax(mag, 1e-300));
        // (x +. y)^{N+1} = (x + q^N y) (x +. y/q)^N, both sides from the summed form
        const double lhs = e1.evaluate(x, y);
        const double rhs = (x + d.pow(N) * y) * e.evaluate(x, y / q);
        double mag1 = 0.0;
        for (int m = 0; m <= N + 1; ++m) mag1 += std::fabs(e1.coeffs[m] * std::pow(x, m) * std::pow(y, N + 1 - m));
        e_rec = std::fmax(e_rec, std::fabs(lhs - rhs) / std::fmax(mag1, 1e-300));
      }
    }
  }
  const double tol = 1e-12;
  c.checks.push_back(upto("hat-partial x - q x hat-partial = 1 (error / sum of |terms|)", e_hat, tol));
  c.checks.push_back(upto("D x - q^{+-1} x D = q^{-+N} (error / sum of |terms|)", e_mixed, tol));
  c.checks.push_back(upto("D x^n = [n] x^{n-1} (pointwise)", e_dmono, tol));
  c.checks.push_back(upto("D^2 = q^{N(N-1)/2} Dbar^2 q^{-N(N-1)/2}", e_conj, tol));
  c.checks.push_back(upto("[N+1/2, x^2] = 2 x^2", e_su1, tol));
  c.checks.push_back(upto("[N+1/2, D^2] = -2 D^2", e_su2, tol));
  c.checks.push_back(upto("[D^2, x^2] = [2(N+1/2)] (literal form)", e_su3, tol));
  c.notes.push_back("[D^2, x^2] = [2][2(N+1/2)] (relation with the factor [2]): max rel. error " + fmt("%.3e", e_su3c));
  c.checks.push_back(upto("q-binomial sum = product (error / sum of |terms|)", e_binom, tol));
  c.checks.push_back(upto("recursion (x+.y)^{N+1} = (x+q^N y)(x+.y/q)^N (error / sum of |terms|)", e_rec, tol));
  return c;
}

namespace {

using mp50 = boost::multiprecision::cpp_bin_float_50;

mp50 eq_minus_mp(const mp50& t, const mp50& q) {
  // sum (-t)^n / [n]!
  const mp50 lam = q - 1 / q;
  mp50 s = 0, term = 1, qn = 1, qmn = 1;
  for (int n = 1; n < 4000; ++n) {
    s += term;
    qn *= q;
    qmn /= q;
    term *= -t * lam / (qn - qmn);
    if (n > 4 && abs(term) < mp50("1e-45") * (abs(s) + mp50("1e-60"))) break;
  }
  return s + term;
}

}  // namespace

std::optional<MomentIntegral> gamma_moment_quadrature(double q_in, int n) {
  const mp50 q(q_in);
  auto f = [&](const mp50& t) { return eq_minus_mp(t, q) * pow(t, n); };
  double t_star = 0.0, best = INFINITY;
  for (int t = 1; t <= 400; ++t) {
    const double v = fabs(static_cast<double>(f(mp50(t))));
    if (v < 1e-16) {
      t_star = t;
      break;
    }
    best = std::fmin(best, v);
    if (v > 1e3 * best) return std::nullopt;  // turned back up
  }
  if (t_star == 0.0) return std::nullopt;
  mp50 err;
  const mp50 val = boost::math::quadrature::gauss_kronrod<mp50, 31>::integrate(f, mp50(0), mp50(t_star), 15, mp50("1e-20"), &err);
  MomentIntegral m;
  m.value = static_cast<double>(val);
  m.t_star = t_star;
  m.tail_bound = fabs(static_cast<double>(f(mp50(t_star)))) + static_cast<double>(err);
  return m;
}

CriterionResult check_special_functions() {
  CriterionResult c{4, "Special-function identities", true, {}, {}};
  double e_re = 0.0;
  for (double q : {1.2, 1.5}) {
    const Deformation d(q);
    for (int i = 0; i <= 100; ++i) {
      const double x = -5.0 + 0.1 * i;
      for (int s : {1, -1}) {
        const cplx v = eq_exp(cplx(0, x), d).value * eq_exp(cplx(0, -d.pow(s) * x), d).value;
        e_re = std::fmax(e_re, std::fabs(v.real() - 1.0));
      }
    }
  }
  c.checks.push_back(upto("|Re{e_q(ix) e_q(-i q^{+-1} x)} - 1|, |x|<=5, q in {1.2,1.5}", e_re, 1e-9));

  double e_gamma = 0.0;
  for (double q : {1.0 + 1e-5, 1.01}) {
    const Deformation d(q);
    const double g1 = gamma_q(d).gamma1;
    for (int n = 0; n <= 4; ++n) {
      const auto m = gamma_moment_quadrature(q, n);
      if (!m) {
        e_gamma = INFINITY;
        continue;
      }
      e_gamma = std::fmax(e_gamma, rel(m->value, q_factorial(n, d) * g1));
    }
  }
  c.checks.push_back(upto("Gamma_q moment identity, n<=4, q in {1+1e-5, 1.01} (50-digit quadrature)", e_gamma, 1e-8));
  for (double q : {1.05, 1.5}) {
    const auto m = gamma_moment_quadrature(q, q == 1.05 ? 4 : 0);
    c.notes.push_back("q=" + fmt("%g", q) + (q == 1.05 ? ", n=4" : ", n=0") +
                      (m ? ": truncated integral " + fmt("%.15g", m->value)
                         : ": integrand e_q(-t) t^n does not fall below 1e-16 before growing again; the ordinary integral does not exist"));
  }

  // ebar factorization limit at q=1.5
  {
    const Deformation d(1.5);
    double gap200 = 0.0;
    bool monotone = true;
    for (int i = 0; i <= 40; ++i) {
      const double x = -2.0 + 0.1 * i;
      const double eb = eq_exp_bar(cplx(x), d).value.real();
      double prev = INFINITY;
      for (int N : {2, 5, 10, 20, 40, 80, 200}) {
        const double gap = std::fabs(eb - q_binomial_eval_product(1.0, x / q_number(N, d), N, d));
        if (prev > 1e-13 && gap > prev) monotone = false;
        prev = gap;
        if (N == 200) gap200 = std::fmax(gap200, gap);
      }
    }
    c.checks.push_back(upto("ebar_q factorization gap at N=200, q=1.5, x in [-2,2]", gap200, 1e-6));
    c.checks.push_back({"gap decreases monotonically in N (above rounding level)", monotone ? 1.0 : 0.0, 1.0, monotone});
  }
  // sbar series vs product
  {
    const Deformation d(1.5);
    std::vector<double> zeros;
    for (int n = 1; n <= 8; ++n) zeros.push_back(pi_q(n, d));
    double e = 0.0;
    const double xmax = zeros[3];
    for (int i = 1; i <= 400; ++i) {
      const double x = xmax * i / 400.0;
      const RealSeries s = barsin_q(x, d);
      const double p = barsin_product(x, zeros, d);
      e = std::fmax(e, std::fabs(s.value - p) / std::fmax(std::fabs(s.value), s.max_term_magnitude));
    }
    c.checks.push_back(upto("sbar_q series vs product (8 zeros + tail) on (0, pi_q(4)], error / peak term", e, 1e-8));
  }
  return c;
}

CriterionResult check_jackson() {
  CriterionResult c{5, "Jackson integral", true, {}, {}};
  double e = 0.0;
  for (double q : {1.1, 1.5, 2.0}) {
    const Deformation d(q);
    for (int n = 1; n <= 8; ++n) {
      GridFunction f{[&, n](double x) { return cplx(q_number(n, d) * std::pow(x, n - 1)); }};
      for (double b : {0.5, 1.0, 2.0}) {
        e = std::fmax(e, rel(q_integral(f, 0.0, b, d).real(), std::pow(b, n)));
        e = std::fmax(e, rel(q_integral(f, 0.25, b, d).real(), std::pow(b, n) - std::pow(0.25, n)));
      }
    }
  }
  c.checks.push_back(upto("fundamental theorem on [n] x^{n-1}, n<=8", e, 1e-12));
  const Deformation d(1.0 + 1e-5);
  GridFunction x2{[](double x) { return cplx(x * x); }};
  c.checks.push_back(upto("|int_0^1 x^2 d_qx - 1/3| at q=1+1e-5", std::fabs(q_integral(x2, 0.0, 1.0, d).real() - 1.0 / 3.0), 1e-4));
  return c;
}

CriterionResult check_spectral_residuals() {
  CriterionResult c{6, "Spectral residuals at q=1.5, n<=4", true, {}, {}};
  const PhysicalConfig cfg = unit_cfg(1.5);
  const Deformation& d = cfg.d();
  const double q = d.q(), L = cfg.length;
  double e_eig = 0, e_zero = 0, e_mixed = 0, e_edge = 0;
  for (int n = 1; n <= 4; ++n) {
    const double k = pi_q(n, d) / L;
    const GridFunction S = eigenfunction(n, EigenVariant::Sbar, cfg);
    double smax = 0.0;
    for (int i = 1; i <= 2000; ++i) smax = std::fmax(smax, std::abs(S(L * i / 2000.0)));
    GridFunction DbS{[&](double x) { return apply_Dbar(S, x, d); }};
    GridFunction DS{[&](double x) { return apply_D(S, x, d); }};
    for (int j = 0; j <= 60; ++j) {
      const double x = L * std::pow(q, -j / 4.0);
      const cplx r1 = apply_Dbar(DbS, x, d) + k * k * S(x);
      e_eig = std::fmax(e_eig, std::abs(r1) / (k * k * smax));
      const cplx r2 = apply_D(DS, x, d) + k * k / q * S(x / (q * q));
      e_mixed = std::fmax(e_mixed, std::abs(r2) / (k * k * smax));
    }
    const RealSeries z = barsin_q(pi_q(n, d), d);
    e_zero = std::fmax(e_zero, std::fabs(z.value) / z.max_term_magnitude);
    e_edge = std::fmax(e_edge, std::abs(S(L)) / smax);
  }
  c.checks.push_back(upto("|Dbar^2 Sbar_n + k^2 Sbar_n| / (k^2 max|Sbar_n|) on a geometric grid", e_eig, 1e-8));
  c.checks.push_back(upto("|sbar_q(pi_q(n))| / peak term", e_zero, 1e-9));
  c.checks.push_back(upto("|D^2 Sbar_n(x) + k^2/q Sbar_n(x/q^2)| / (k^2 max|Sbar_n|)", e_mixed, 1e-10));
  c.checks.push_back(upto("|Sbar_n(L)| / max|Sbar_n|", e_edge, 1e-9));
  return c;
}

CriterionResult check_lagrange() {
  CriterionResult c{7, "Lagrange inversion", true, {}, {}};
  const Deformation d(1.01);
  const InversionTable t = lagrange_table(d);
  double e = 0.0;
  for (int n = 1; n <= 3; ++n) e = std::fmax(e, rel(pi_q_series(n, t).value, pi_q(n, d)));
  c.checks.push_back(upto("pi_q_series vs root, q=1.01, n<=3 (relative)", e, 1e-6));
  double eb = 0.0;
  for (double q : {1.01, 1.2, 1.5, 2.0, 3.0}) {
    const InversionTable s = lagrange_table(Deformation(q));
    const double a3 = s.a[1], a5 = s.a[2], a7 = s.a[3];
    eb = std::fmax(eb, rel(s.b[1], -a3));
    eb = std::fmax(eb, rel(s.b[2], 3 * a3 * a3 - a5));
    eb = std::fmax(eb, rel(s.b[3], -a7 + 8 * a3 * a5 - 12 * a3 * a3 * a3));
  }
  c.checks.push_back(upto("closed-form b3,b5,b7 vs reversion formulas in a_k", eb, 1e-13));
  c.checks.push_back(upto("|b3(1.5) - 0.0626565|", std::fabs(lagrange_table(Deformation(1.5)).b[1] - 0.0626565), 1e-6));
  c.notes.push_back("b7(1.5) = " + fmt("%.10e", lagrange_table(Deformation(1.5)).b[3]));
  const InversionTable t12 = lagrange_table(Deformation(1.2));
  for (int n = 1; n <= 3; ++n)
    c.notes.push_back("q=1.2, n=" + std::to_string(n) + ": series/root - 1 = " +
                      fmt("%.3e", pi_q_series(n, t12).value / pi_q(n, Deformation(1.2)) - 1.0));
  return c;
}

CriterionResult check_kernel() {
  CriterionResult c{8, "Propagation kernel", true, {}, {}};
  const PhysicalConfig cfg = unit_cfg(1.5);
  const double q = cfg.d().q();
  const cplx pre = kernel_prefactor(1.0, cfg);
  double e = 0.0, lo = INFINITY, hi = -INFINITY;
  for (int s : {1, -1}) {
    cplx first{};
    for (int i = 0; i <= 30; ++i) {
      const double x = 0.5 + 1.5 * i / 30.0;
      KernelRequest r;
      r.x = s == 1 ? q * x : x / q;
      r.x_prime = x;
      r.T = 1.0;
      r.cfg = cfg;
      const cplx k = kernel(r).value;
      if (i == 0) first = k;
      e = std::fmax(e, std::abs(k - pre) / std::abs(pre));
      const double dev = std::abs(k - first) / std::abs(pre);
      lo = std::fmin(lo, dev);
      hi = std::fmax(hi, dev);
    }
  }
  c.checks.push_back(upto("|K(q^{+-1}x, x) - prefactor| / |prefactor|, q=1.5, T=1", e, 1e-10));
  c.checks.push_back(upto("variation of K(q^{+-1}x, x) over x in [0.5, 2]", hi - lo, 1e-10));
  const ShortTimeCheck a = short_time_kernel_check(1.0, 0.5, 1.0, cfg);
  const ShortTimeCheck b = short_time_kernel_check(1.0, 0.5, 0.5, cfg);
  const double ratio = b.gap / a.gap;
  c.checks.push_back({"T-halving gap ratio (x=1, x'=0.5, T=1 -> 0.5) within 4 +- 20%", ratio, 4.0, std::fabs(ratio - 4.0) <= 0.8});
  return c;
}

CriterionResult check_classical_dynamics() {
  CriterionResult c{9, "Classical dynamics at q=1.5", true, {}, {}};
  const PhysicalConfig cfg = unit_cfg(1.5);
  const double K = velocity_scale(cfg);
  const double A = 1.0, w = 2.0 * K / (A * A), period = 2.0 * pi / w;
  // sine solution residual over one period
  double e_res = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double t = (i + 0.5) * period / 400.0;
    const double x = A * std::sin(w * t), v = A * w * std::cos(w * t);
    const Sheet s = std::cos(2.0 * w * t) >= 0.0 ? Sheet::principal : Sheet::reflected;
    e_res = std::fmax(e_res, std::fabs(-w * w * x - eom_rhs(x, v, cfg, s)) / (w * w * A));
  }
  c.checks.push_back(upto("sine-solution EOM residual over one period / (omega^2 A)", e_res, 1e-8));
  // integrate ten periods
  const double t0 = 0.3 / w;
  const Trajectory tr =
      integrate_trajectory({t0, A * std::sin(w * t0), A * w * std::cos(w * t0)}, t0 + 10 * period, period / 400.0, cfg);
  double e_traj = 0.0;
  for (const auto& st : tr.states) e_traj = std::fmax(e_traj, std::fabs(st.x - A * std::sin(w * st.t)) / A);
  if (tr.halt_reason) e_traj = INFINITY;
  c.checks.push_back(upto("trajectory vs A sin(omega t) over 10 periods / A", e_traj, 1e-6));
  c.checks.push_back(upto("first-integral C drift (relative)", tr.max_C_drift, 1e-6));
  // H = E phase portrait
  const double E = 1.0;
  const EquiEnergyCurve curve = equi_energy_trajectory(E, cfg, 0.0, 12.0 * straight_line_momentum(E, cfg), 600, 3);
  double worst = 0.0;
  for (const auto& p : curve.points) worst = std::fmax(worst, p.x / curve.x_max - 1.0);
  c.checks.push_back(upto("max (x / x_max - 1) over H=E samples", worst, 1e-12));
  // locate dx/dp = 0 on the first branch: cos(beta p x) changes sign there
  const double p0 = curve.p0, xm = curve.x_max;
  auto y_of_p = [&](double p) {
    auto g = [&](double y) { return std::sin(y) / y - p0 / p; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const auto br = boost::math::tools::toms748_solve(g, 1e-300, pi, tol, it);
    return 0.5 * (br.first + br.second);
  };
  boost::math::tools::eps_tolerance<double> tol(52);
  std::uintmax_t it = 200;
  const auto br = boost::math::tools::toms748_solve([&](double p) { return std::cos(y_of_p(p)); }, 1.01 * p0, 3.0 * p0, tol, it);
  const double ps = 0.5 * (br.first + br.second);
  const double xs = y_of_p(ps) * xm * p0 / ps;
  c.checks.push_back(upto("stationary point p vs pi p0/2 (relative)", rel(ps, pi * p0 / 2.0), 1e-8));
  c.checks.push_back(upto("stationary point x vs x_max (relative)", rel(xs, xm), 1e-8));
  c.notes.push_back("integrator error estimate (step halving): " + fmt("%.3e", tr.error_estimate) + ", regime: " + tr.regime);
  return c;
}

CriterionResult check_uncertainty() {
  CriterionResult c{10, "Uncertainty relation, unit Gaussian at q=1.2", true, {}, {}};
  const PhysicalConfig cfg = unit_cfg(1.2);
  const double q = 1.2;
  GridFunction psi{[](double x) { return cplx(std::pow(pi, -0.25) * std::exp(-x * x / 2.0)); }};
  const UncertaintyReport u = uncertainty_check(psi, cfg);
  const double closed = 0.5 * std::sqrt(2.0 / (1.0 + q * q));
  c.checks.push_back({"dp dx = " + fmt("%.12f", u.dp * u.dx) + " >= bound - 1e-9", u.dp * u.dx - u.bound, -1e-9, u.satisfied});
  c.checks.push_back(upto("|bound - (hbar/2) sqrt(2/(1+q^2))|", std::fabs(u.bound - closed), 1e-8));
  return c;
}

CriterionResult check_orthogonality() {
  CriterionResult c{11, "Orthogonality diagnostic (Gram matrix)", true, {}, {}};
  const GramReport g = gram_matrix(4, unit_cfg(1.5));
  double ediag = 0.0;
  for (int i = 0; i < 4; ++i) ediag = std::fmax(ediag, std::fabs(g.gram[i][i] - 1.0));
  c.checks.push_back(upto("max |<S_n S_n> - 1|, q=1.5, n<=4", ediag, 1e-8));
  double eid = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      c.notes.push_back("q=1.5 <S_" + std::to_string(i + 1) + " S_" + std::to_string(j + 1) + "> = " + fmt("%.6e", g.gram[i][j]) +
                        ", boundary bracket = " + fmt("%.6e", g.bracket[i][j]));
      const double want = (g.k[i] * g.k[i] - g.k[j] * g.k[j]) * g.gram[i][j];
      eid = std::fmax(eid, std::fabs(g.bracket[i][j] - want) / std::fmax(std::fabs(want), 1e-300));
    }
  c.notes.push_back("bracket = (k_n^2 - k_m^2) <S_n S_m> holds to relative " + fmt("%.2e", eid));
  const GramReport g1 = gram_matrix(4, unit_cfg(1.0 + 1e-5));
  double eoff = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) eoff = std::fmax(eoff, std::fabs(g1.gram[i][j]));
  c.checks.push_back(upto("max off-diagonal |<S_n S_m>| at q=1+1e-5", eoff, 1e-3));
  return c;
}

VerifyReport run_verification(const VerifyOptions& opt) {
  VerifyReport r;
  r.criteria.push_back(check_reference_roots());
  r.criteria.push_back(check_classical_limits(opt.limit_q));
  r.criteria.push_back(check_algebra());
  r.criteria.push_back(check_special_functions());
  r.criteria.push_back(check_jackson());
  r.criteria.push_back(check_spectral_residuals());
  r.criteria.push_back(check_lagrange());
  r.criteria.push_back(check_kernel());
  r.criteria.push_back(check_classical_dynamics());
  r.criteria.push_back(check_uncertainty());
  r.criteria.push_back(check_orthogonality());
  return r;
}

std::string format_report(const VerifyReport& r) {
  std::ostringstream os;
  for (const auto& c : r.criteria) {
    os << (c.passed() ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "\n";
    for (const auto& ch : c.checks)
      os << "      " << (ch.passed ? "ok  " : "FAIL") << "  " << ch.name << ": " << fmt("%.6g", ch.measured)
         << " (limit " << fmt("%.3g", ch.threshold) << ")\n";
    for (const auto& n : c.notes) os << "      note  " << n << "\n";
  }
  return os.str();
}

}  // namespace qbox
