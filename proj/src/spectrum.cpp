#include "qbox/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbox/error.hpp"
#include "qbox/qfunctions.hpp"
#include "theta_impl.hpp"

namespace qbox {

using std::numbers::pi;

PhysicalConfig::PhysicalConfig(Deformation d, double hbar_, double mass_, double length_)
    : hbar(hbar_), mass(mass_), length(length_), deformation(d) {
  if (!(hbar > 0.0 && std::isfinite(hbar))) fail(Errc::invalid_argument, "hbar must be positive");
  if (!(mass > 0.0 && std::isfinite(mass))) fail(Errc::invalid_argument, "mass must be positive");
  if (!(length > 0.0 && std::isfinite(length))) fail(Errc::invalid_argument, "box length L must be positive");
}

double PhysicalConfig::momentum_factor() const noexcept {
  const double q = deformation.q();
  return (q + 1.0) / (2.0 * q);
}

double PhysicalConfig::m_q() const noexcept {
  const double c = momentum_factor();
  return c * c * mass;
}

double theta(double x, const Deformation& d) { return detail::theta_pair(x, d).value; }

double theta_derivative(double x, const Deformation& d) { return detail::theta_pair(x, d).derivative; }

double pi_q(double nu, const Deformation& d) {
  if (!(nu > 0.0 && std::isfinite(nu))) fail(Errc::invalid_argument, "pi_q: nu must be positive");
  const double target = pi * nu;
  // Theta(x) <= x, so the root is at least pi nu
  double lo = target;
  double hi = target * d.pow(2.0 * nu);
  const double grow = 2.0 * d.q() * d.q();
  int expansions = 0;
  while (theta(hi, d) < target) {
    lo = hi;
    hi *= grow;
    if (++expansions > 4000 || !std::isfinite(hi))
      fail(Errc::no_convergence, "pi_q: bracket expansion failed for nu=" + std::to_string(nu) + ", q=" + std::to_string(d.q()));
  }
  // Theta is concave on x > 0: Newton started at the left end approaches the
  // root monotonically; fall back to bisection if rounding pushes it outside.
  double x = lo;
  for (int it = 0; it < 500; ++it) {
    const detail::ThetaPair t = detail::theta_pair(x, d);
    const double f = t.value - target;
    if (f == 0.0) return x;
    if (f < 0.0)
      lo = x;
    else
      hi = x;
    double next = x - f / t.derivative;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 1e-15 * std::fabs(x)) return next;
    if (hi - lo <= 4e-16 * hi) return 0.5 * (lo + hi);
    x = next;
  }
  fail(Errc::no_convergence, "pi_q: Newton iteration did not converge for nu=" + std::to_string(nu));
}

InversionTable lagrange_table(const Deformation& d) {
  const double h = d.log_q(), w = d.one_minus_p();
  auto u = [&](int m) { return std::pow(w, m) / (-std::expm1(-2.0 * h * m)); };  // (1-p)^m/(1-p^m)
  InversionTable t;
  t.q = d.q();
  t.a = {1.0, -u(3) / 3.0, u(5) / 5.0, -u(7) / 7.0};
  const double u3 = u(3), u5 = u(5), u7 = u(7);
  t.b[0] = 1.0;
  t.b[1] = u3 / 3.0;
  t.b[2] = -u5 / 5.0 + u3 * u3 / 3.0;
  t.b[3] = u7 / 7.0 - (8.0 / 15.0) * u3 * u5 + (4.0 / 9.0) * u3 * u3 * u3;
  return t;
}

PiQSeries pi_q_series(double nu, const InversionTable& t) {
  const double y = pi * nu, y2 = y * y;
  const double last = t.b[3] * y * y2 * y2 * y2;
  PiQSeries s;
  s.value = y * (t.b[0] + y2 * (t.b[1] + y2 * (t.b[2] + y2 * t.b[3])));
  s.last_term_ratio = s.value != 0.0 ? std::fabs(last / s.value) : 0.0;
  return s;
}

namespace {

void check_level(int n) {
  if (n < 1 || n > 200) fail(Errc::invalid_argument, "eigenlevel n must be in [1, 200], got " + std::to_string(n));
}

double wavenumber(int n, const PhysicalConfig& cfg) {
  check_level(n);
  return pi_q(n, cfg.d()) / cfg.length;
}

}  // namespace

double normalize_eigenfunction(int n, const PhysicalConfig& cfg) {
  const double k = wavenumber(n, cfg);
  const Deformation& d = cfg.d();
  GridFunction f{[&](double x) {
                   const double s = sin_q(k * x, d).value;
                   return std::complex<double>(s * s);
                 },
                 "[0, L]"};
  const JacksonResult r = q_integral(f, 0.0, cfg.length / d.q(), d);
  if (!(r.real() > 0.0)) fail(Errc::internal, "normalize_eigenfunction: non-positive self inner product");
  return 1.0 / std::sqrt(r.real());
}

std::vector<SpectrumEntry> box_spectrum(int n_max, const PhysicalConfig& cfg, bool with_normalization) {
  if (n_max < 1) fail(Errc::invalid_argument, "box_spectrum: n_max must be >= 1");
  check_level(n_max);
  std::vector<SpectrumEntry> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    SpectrumEntry e;
    e.n = n;
    e.pi_q = pi_q(n, cfg.d());
    e.k_n = e.pi_q / cfg.length;
    e.E_n = cfg.hbar * cfg.hbar * e.k_n * e.k_n / (2.0 * cfg.m_q());
    e.N_n = with_normalization ? normalize_eigenfunction(n, cfg) : 0.0;
    out.push_back(e);
  }
  return out;
}

PowerSeries eigen_series(int n, EigenVariant v, const PhysicalConfig& cfg, double reach) {
  const double k = wavenumber(n, cfg);
  const Deformation& d = cfg.d();
  const double X = reach * cfg.length;
  std::vector<double> c{0.0, k};
  double term = k * X, peak = std::fabs(term);
  int quiet = 0;
  for (int m = 3; m < 1024; m += 2) {
    const double w = v == EigenVariant::S ? q_number(m - 1, d) * q_number(m, d)
                                          : q_number_base2(m - 1, d) * q_number_base2(m, d);
    const double cm = -c[m - 2] * k * k / w;
    c.push_back(0.0);
    c.push_back(cm);
    term = cm * std::pow(X, m);
    peak = std::fmax(peak, std::fabs(term));
    quiet = std::fabs(term) < 1e-17 * peak ? quiet + 1 : 0;
    if (quiet >= 3 || cm == 0.0) return PowerSeries(std::move(c));
  }
  fail(Errc::no_convergence, "eigen_series: truncation degree exceeds 1024");
}

GridFunction eigenfunction(int n, EigenVariant v, const PhysicalConfig& cfg) {
  const double k = wavenumber(n, cfg);
  const double N = normalize_eigenfunction(n, cfg);
  const Deformation d = cfg.d();
  if (v == EigenVariant::S)
    return {[=](double x) { return std::complex<double>(N * sin_q(k * x, d).value); }, "[0, L]"};
  return {[=](double x) { return std::complex<double>(N * barsin_q(k * x, d).value); }, "[0, L]"};
}

GramReport gram_matrix(int n_max, const PhysicalConfig& cfg) {
  if (n_max < 2) fail(Errc::invalid_argument, "gram_matrix: n_max must be >= 2");
  check_level(n_max);
  const Deformation& d = cfg.d();
  GramReport g;
  g.n_max = n_max;
  g.x0 = cfg.length / d.q();
  std::vector<double> N(n_max);
  g.k.resize(n_max);
  for (int i = 0; i < n_max; ++i) {
    g.k[i] = wavenumber(i + 1, cfg);
    N[i] = normalize_eigenfunction(i + 1, cfg);
  }
  auto S = [&](int i, double x) { return N[i] * sin_q(g.k[i] * x, d).value; };

  std::vector<CompensatedSum> acc(n_max * n_max);
  const double lam = d.lambda(), p = d.p(), q = d.q();
  double x = g.x0 / q;
  const std::size_t cap = std::max<std::size_t>(10000, static_cast<std::size_t>(std::ceil(64.0 / d.log_q())));
  std::vector<double> s(n_max);
  int quiet = 0;
  for (std::size_t it = 0;; ++it) {
    if (it >= cap) fail(Errc::no_convergence, "gram_matrix: lattice sum did not converge");
    double sup = 0.0;
    for (int i = 0; i < n_max; ++i) {
      s[i] = S(i, x);
      sup = std::fmax(sup, s[i] * s[i]);
    }
    for (int i = 0; i < n_max; ++i)
      for (int j = 0; j <= i; ++j) acc[i * n_max + j].add(lam * x * s[i] * s[j]);
    x *= p;
    quiet = (q * x * sup <= 1e-16) ? quiet + 1 : 0;
    if (quiet >= 2) break;
  }
  g.gram.assign(n_max, std::vector<double>(n_max));
  g.bracket.assign(n_max, std::vector<double>(n_max));
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j <= i; ++j) g.gram[i][j] = g.gram[j][i] = acc[i * n_max + j].value();

  std::vector<double> s_qx0(n_max), ds_x0(n_max);
  for (int i = 0; i < n_max; ++i) {
    GridFunction f{[&, i](double y) { return std::complex<double>(S(i, y)); }, "[0, L]"};
    s_qx0[i] = S(i, q * g.x0);
    ds_x0[i] = apply_D(f, g.x0, d).real();
  }
  for (int i = 0; i < n_max; ++i)
    for (int j = 0; j < n_max; ++j) g.bracket[i][j] = s_qx0[i] * ds_x0[j] - s_qx0[j] * ds_x0[i];
  return g;
}

std::complex<double> phase_function(int m, double x, const PhysicalConfig& cfg) {
  if (m == 0) fail(Errc::invalid_argument, "phase_function: m must be nonzero");
  if (x == 0.0) fail(Errc::domain, "phase_function: x = 0 is singular");
  const double phase = 2.0 * pi * m * std::log(std::fabs(x / cfg.length)) / cfg.d().log_q();
  return std::polar(1.0, phase);
}

}  // namespace qbox
