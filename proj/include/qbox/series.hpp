#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <string>

#include "qbox/error.hpp"

namespace qbox {

// Neumaier compensated accumulator
class CompensatedSum {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::fabs(s_) >= std::fabs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0, c_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

template <class T>
struct SeriesEvalReport {
  T value{};
  int terms_used = 0;
  double max_term_magnitude = 0.0;
  double cancellation_ratio = 1.0;

  bool unreliable() const { return cancellation_ratio > 1e12; }
};

namespace detail {

template <class T>
struct AccumFor;
template <>
struct AccumFor<double> {
  using type = CompensatedSum;
};
template <>
struct AccumFor<std::complex<double>> {
  using type = ComplexCompensatedSum;
};

// Sums term_0 + term_1 + ... where next(n, term_{n-1}) yields term_n.
// Stops after three consecutive terms below tol * max(|partial|, eps * peak).
template <class T, class Next>
SeriesEvalReport<T> sum_series(T first, Next next, double tol, int cap, const char* what) {
  typename AccumFor<T>::type acc;
  SeriesEvalReport<T> r;
  T term = first;
  int quiet = 0;
  for (int n = 0;; ++n) {
    if (n >= cap)
      fail(Errc::no_convergence, std::string(what) + ": series not converged within " + std::to_string(cap) + " terms");
    if (n > 0) term = next(n, term);
    const double mag = std::abs(term);
    if (!std::isfinite(mag)) fail(Errc::overflow, std::string(what) + ": term overflow at index " + std::to_string(n));
    acc.add(term);
    r.max_term_magnitude = std::fmax(r.max_term_magnitude, mag);
    const double scale = std::fmax(std::abs(acc.value()), DBL_EPSILON * r.max_term_magnitude);
    quiet = (mag <= tol * scale) ? quiet + 1 : 0;
    r.terms_used = n + 1;
    if (quiet >= 3) break;
  }
  r.value = acc.value();
  r.cancellation_ratio = std::fmax(1.0, r.max_term_magnitude / std::fmax(std::abs(r.value), DBL_EPSILON));
  return r;
}

}  // namespace detail
}  // namespace qbox
