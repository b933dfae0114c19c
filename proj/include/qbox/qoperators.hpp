#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qbox/physics.hpp"
#include "qbox/qcore.hpp"
#include "qbox/series.hpp"

namespace qbox {

// Truncated power series c_0 + c_1 x + ... + c_M x^M
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<double> coeffs) : c_(std::move(coeffs)) {}
  static PowerSeries monomial(int n, double coeff = 1.0);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double coeff(int n) const noexcept { return n >= 0 && n < static_cast<int>(c_.size()) ? c_[n] : 0.0; }
  std::span<const double> coeffs() const noexcept { return c_; }
  std::vector<double>& mutable_coeffs() noexcept { return c_; }

  SeriesEvalReport<double> evaluate(double x) const;
  double operator()(double x) const { return evaluate(x).value; }

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(double s) const;

  // largest |a_n - b_n| relative to the largest coefficient of either
  static double max_relative_difference(const PowerSeries& a, const PowerSeries& b);

 private:
  std::vector<double> c_;
};

// Pointwise operators: a deterministic evaluator plus a note on where it is valid.
struct GridFunction {
  std::function<std::complex<double>(double)> eval;
  std::string domain = "(-inf, inf)";

  std::complex<double> operator()(double x) const { return eval(x); }
};

// (f(qx) - f(x/q)) / ((q - 1/q) x)
std::complex<double> apply_D(const GridFunction& f, double x, const Deformation& d);
// (f(q^2 x) - f(x)) / ((q^2 - 1) x)
std::complex<double> apply_Dbar(const GridFunction& f, double x, const Deformation& d);

// Coefficient maps
PowerSeries apply_D(const PowerSeries& p, const Deformation& d);           // c_n x^n -> c_n [n] x^{n-1}
PowerSeries apply_Dbar(const PowerSeries& p, const Deformation& d);        // c_n x^n -> c_n [n,q^2] x^{n-1}
PowerSeries apply_hat_partial(const PowerSeries& p, const Deformation& d); // c_n x^n -> c_n (q^n-1)/(q-1) x^{n-1}
// c_n -> c_n q^{sign n(n-1)/2}
PowerSeries apply_gauss_weight(const PowerSeries& p, int sign, const Deformation& d);
// c_n -> c_n q^{k n}, i.e. the operator q^{k N}
PowerSeries apply_dilation(const PowerSeries& p, double k, const Deformation& d);
// multiply by x^k
PowerSeries multiply_x(const PowerSeries& p, int k = 1);
// c_n -> c_n g(n), for diagonal operators written as functions of N
PowerSeries apply_number_function(const PowerSeries& p, const std::function<double(int)>& g);

struct JacksonOptions {
  double tol = 1e-15;          // relative tail tolerance
  std::size_t max_points = 0;  // 0: max(1e4, 64/ln q)
};

struct JacksonResult {
  std::complex<double> value;
  std::size_t points = 0;
  double tail_bound = 0.0;

  double real() const { return value.real(); }
};

// int_a^b f d_q x as the lattice sum I(b) - I(a),
// I(x) = sum_k (q - 1/q) x q^{-(2k+1)} f(x q^{-(2k+1)})
JacksonResult q_integral(const GridFunction& f, double a, double b, const Deformation& d, JacksonOptions opt = {});

// -i hbar (q+1)/(2q) D f
std::complex<double> momentum_apply(const GridFunction& f, double x, const PhysicalConfig& cfg);

struct UncertaintyReport {
  double dp = 0.0;
  double dx = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  double overlap = 0.0;  // |int psi*(x) psi(qx) + psi*(qx) psi(x) dx| / 2
};

UncertaintyReport uncertainty_check(const GridFunction& psi, const PhysicalConfig& cfg);

}  // namespace qbox
