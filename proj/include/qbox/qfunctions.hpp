#pragma once

#include <complex>
#include <span>

#include "qbox/qcore.hpp"
#include "qbox/series.hpp"

namespace qbox {

inline constexpr int kDefaultSeriesCap = 512;

using RealSeries = SeriesEvalReport<double>;
using ComplexSeries = SeriesEvalReport<std::complex<double>>;

// e_q(z) = sum z^n/[n]!
ComplexSeries eq_exp(std::complex<double> z, const Deformation& d, int cap = kDefaultSeriesCap);
// ebar_q(z) = sum z^n/[n,q^2]!
ComplexSeries eq_exp_bar(std::complex<double> z, const Deformation& d, int cap = kDefaultSeriesCap);

RealSeries sin_q(double x, const Deformation& d, int cap = kDefaultSeriesCap);
RealSeries cos_q(double x, const Deformation& d, int cap = kDefaultSeriesCap);
RealSeries barsin_q(double x, const Deformation& d, int cap = kDefaultSeriesCap);
RealSeries barcos_q(double x, const Deformation& d, int cap = kDefaultSeriesCap);

struct QTrigValues {
  RealSeries sin_q, cos_q, barsin_q, barcos_q;
};

QTrigValues q_trig(double x, const Deformation& d);

struct QGamma {
  double gamma1 = 1.0;
  double quadrature_error_estimate = 0.0;

  // Gamma_q[n] = [n-1]! Gamma_q[1]
  double gamma(int n, const Deformation& d) const;
};

// Gamma_q[1] in closed form, ln q / sinh(ln q). See README for why the
// ordinary integral is not used directly.
QGamma gamma_q(const Deformation& d);

// x prod_{n=1}^{M} (1 - (x/z_n)^2) times an estimate of the omitted factors
double barsin_product(double x, std::span<const double> zeros, const Deformation& d);
// prod_{n=1}^{M} (1 - (x/h_n)^2) with h_n = pi_q(n - 1/2), plus tail estimate
double barcos_product(double x, std::span<const double> half_zeros, const Deformation& d);

}  // namespace qbox
