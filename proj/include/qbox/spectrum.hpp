#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qbox/physics.hpp"
#include "qbox/qcore.hpp"
#include "qbox/qoperators.hpp"

namespace qbox {

// Theta(x) = sum_k atan((1 - q^-2) q^-2k x)
double theta(double x, const Deformation& d);
double theta_derivative(double x, const Deformation& d);

// Root of Theta(x) = pi nu. Integer nu gives zeros of sbar_q, half-integer nu zeros of cbar_q.
double pi_q(double nu, const Deformation& d);
// Zero of cbar_q with index n >= 1, i.e. pi_q(n - 1/2)
inline double pi_q_half(int n, const Deformation& d) { return pi_q(n - 0.5, d); }

struct InversionTable {
  double q = 0.0;
  std::array<double, 4> a{};  // a1, a3, a5, a7
  std::array<double, 4> b{};  // b1, b3, b5, b7
};

InversionTable lagrange_table(const Deformation& d);

struct PiQSeries {
  double value = 0.0;
  // |b7 (pi nu)^7| / |value|: size of the last retained term, a crude accuracy indicator
  double last_term_ratio = 0.0;
};

// sum_{k in 1,3,5,7} b_k (pi nu)^k; an asymptotic small-argument expansion
PiQSeries pi_q_series(double nu, const InversionTable& table);

struct SpectrumEntry {
  int n = 0;
  double pi_q = 0.0;
  double k_n = 0.0;
  double E_n = 0.0;
  double N_n = 0.0;
};

std::vector<SpectrumEntry> box_spectrum(int n_max, const PhysicalConfig& cfg, bool with_normalization = true);

enum class EigenVariant { S, Sbar };

// Unnormalized series sin_q(k x) (S) or sbar_q(k x) (Sbar), truncated so the
// dropped tail is below 1e-14 of the peak term at x = reach * L
PowerSeries eigen_series(int n, EigenVariant v, const PhysicalConfig& cfg, double reach = 1.0);

// N_n > 0 with <S_n S_n> = 1 over [0, L/q] in the Jackson measure
double normalize_eigenfunction(int n, const PhysicalConfig& cfg);

// N_n sin_q(k_n x) or N_n sbar_q(k_n x), evaluated by adaptive series
GridFunction eigenfunction(int n, EigenVariant v, const PhysicalConfig& cfg);

struct GramReport {
  int n_max = 0;
  double x0 = 0.0;                          // L/q
  std::vector<std::vector<double>> gram;     // <S_n S_m>
  std::vector<std::vector<double>> bracket;  // S_n(q x0) DS_m(x0) - S_m(q x0) DS_n(x0)
  std::vector<double> k;                    // k_1..k_nmax
};

GramReport gram_matrix(int n_max, const PhysicalConfig& cfg);

// Q_m(x) = exp(i 2 pi m log|x/L| / log q)
std::complex<double> phase_function(int m, double x, const PhysicalConfig& cfg);

}  // namespace qbox
