#pragma once

#include <vector>

namespace qbox {

// Deformation parameter. Inputs 0 < q < 1 are mapped to 1/q; q == 1 is rejected.
class Deformation {
 public:
  explicit Deformation(double q, double tol = 1e-12);

  double q() const noexcept { return q_; }
  double lambda() const noexcept { return lambda_; }  // q - 1/q
  double log_q() const noexcept { return h_; }
  double tol() const noexcept { return tol_; }
  // p = q^-2 and 1 - p, both kept accurate near q = 1
  double p() const noexcept { return p_; }
  double one_minus_p() const noexcept { return omp_; }
  bool remapped() const noexcept { return remapped_; }

  // q^k for real k
  double pow(double k) const;

 private:
  double q_, h_, lambda_, tol_, p_, omp_;
  bool remapped_ = false;
};

// [a] = (q^a - q^-a)/(q - q^-1)
double q_number(double a, const Deformation& d);
// [n, q^2] = (q^{2n} - 1)/(q^2 - 1)
double q_number_base2(int n, const Deformation& d);
// [n]! and [n, q^2]!
double q_factorial(int n, const Deformation& d);
double q_factorial_base2(int n, const Deformation& d);

struct QBinomialExpansion {
  int order = 0;
  std::vector<double> coeffs;  // coeffs[n] multiplies x^n y^(N-n)

  double evaluate(double x, double y) const;
};

QBinomialExpansion q_binomial_coeffs(int N, const Deformation& d);

// prod_{k=0}^{N-1} (x + q^{N-1-2k} y)
double q_binomial_eval_product(double x, double y, int N, const Deformation& d);

}  // namespace qbox
