#pragma once

// Theta(x) = sum_k atan((1-p) p^k x), p = q^-2, and its derivative.
// Head terms are summed while (1-p) p^k |x| > 1/4; the remainder is
// Theta(p^K x), expanded in its odd power series
//   Theta(y) = sum_j (-1)^j (1-p)^{2j+1} / ((2j+1)(1-p^{2j+1})) y^{2j+1}.

#include <cmath>

#include "qbox/qcore.hpp"
#include "qbox/series.hpp"

namespace qbox::detail {

struct ThetaPair {
  double value;
  double derivative;
};

inline ThetaPair theta_pair(double x, const Deformation& d) {
  const double sgn = x < 0 ? -1.0 : 1.0;
  x = std::fabs(x);
  const double omp = d.one_minus_p(), p = d.p(), h = d.log_q();
  CompensatedSum v, dv;
  double a = omp, scale = 1.0;  // a = (1-p) p^k, scale = p^k
  while (a * x > 0.25) {
    const double u = a * x;
    v.add(std::atan(u));
    dv.add(a / (1.0 + u * u));
    a *= p;
    scale *= p;
  }
  const double y = scale * x;
  // odd power series in u = (1-p) y with |u| <= 1/4
  const double u = omp * y, u2 = u * u;
  double ue = 1.0;  // u^{2j}
  for (int j = 0; j < 200; ++j) {
    const int m = 2 * j + 1;
    const double c = (j % 2 == 0 ? 1.0 : -1.0) / (-std::expm1(-2.0 * h * m));  // (-1)^j/(1-p^m)
    const double tv = c * ue * u / m;
    const double td = c * ue * omp * scale;
    v.add(tv);
    dv.add(td);
    ue *= u2;
    if (ue < 1e-18) break;
  }
  return {sgn * v.value(), dv.value()};
}

// Root of Theta(z) = target for z >= start, assuming Theta(start) <= target.
// Theta is concave on x > 0, so Newton iterates from the left never overshoot.
inline double theta_newton_from_left(double start, double target, const Deformation& d, int max_iter = 200) {
  double z = start;
  for (int it = 0; it < max_iter; ++it) {
    const ThetaPair t = theta_pair(z, d);
    const double step = (target - t.value) / t.derivative;
    if (!(step > 0.0)) return z;
    z += step;
    if (step <= 1e-15 * z) return z;
  }
  return z;
}

}  // namespace qbox::detail
