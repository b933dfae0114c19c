#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbox/error.hpp"
#include "qbox/qfunctions.hpp"
#include "qbox/spectrum.hpp"

using namespace qbox;
using std::numbers::pi;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct RootCase {
  double q, nu, value;
};

const RootCase kRoots[] = {
    {1.1, 0.5, 1.586273494677963},   {1.1, 1, 3.264792488707276},     {1.1, 1.5, 5.1256181708460405},
    {1.1, 2, 7.2575436024429193},    {1.1, 2.5, 9.7521089243581736},  {1.1, 3, 12.708929103520115},
    {1.1, 4, 20.480824533298762},    {1.1, 5, 31.739686904636401},    {1.1, 6, 48.151000384188293},
    {1.5, 0.5, 1.8213004429471443},  {1.5, 1, 5.2806428340743161},    {1.5, 1.5, 12.904110259889895},
    {1.5, 2, 30.002088919163865},    {1.5, 2.5, 68.45059457203901},   {1.5, 3, 154.95040179890236},
    {1.5, 4, 787.46523034528527},    {1.5, 5, 3989.5645853669218},    {1.5, 6, 20200.191200088697},
    {2, 0.5, 2.2392151451399376},    {2, 1, 10.265629290824516},      {2, 1.5, 42.271322141280551},
    {2, 2, 170.2726981773359},       {2, 2.5, 682.27303936180541},    {2, 3, 2730.2731244832369},
    {2, 4, 43690.273151069392},      {2, 5, 699050.2731527308},       {2, 6, 11184810.273152835},
    {1.01, 1, 3.1429567781837639},   {1.01, 2, 6.294094926847993},    {1.01, 3, 9.4615791915761653},
    {1.2, 1, 3.5808040195595561},    {1.2, 2, 9.8559724776489498},    {1.2, 3, 22.524973623647025},
};
}  // namespace

TEST(Theta, OddIncreasingAndDerivative) {
  const Deformation d(1.5);
  EXPECT_EQ(theta(0.0, d), 0.0);
  double prev = -1.0;
  for (double x = 0.1; x < 1e4; x *= 1.7) {
    EXPECT_EQ(theta(-x, d), -theta(x, d));
    const double t = theta(x, d);
    EXPECT_GT(t, prev);
    prev = t;
    const double h = 1e-6 * x;
    EXPECT_NEAR(theta_derivative(x, d), (theta(x + h, d) - theta(x - h, d)) / (2 * h), 1e-7 * theta_derivative(x, d));
  }
}

TEST(PiQ, ReferenceRoots) {
  for (const auto& c : kRoots) EXPECT_LT(rel(pi_q(c.nu, Deformation(c.q)), c.value), 1e-14) << c.q << " " << c.nu;
}

TEST(PiQ, ZerosOfTheBarredFunctions) {
  const Deformation d(1.5);
  for (int n = 1; n <= 4; ++n) {
    const auto s = barsin_q(pi_q(n, d), d);
    EXPECT_LT(std::fabs(s.value) / s.max_term_magnitude, 1e-14);
    const auto c = barcos_q(pi_q_half(n, d), d);
    EXPECT_LT(std::fabs(c.value) / c.max_term_magnitude, 1e-14);
  }
}

TEST(PiQ, ClassicalLimitAndInvalidInput) {
  const Deformation d(1.0 + 1e-6);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(pi_q(n, d), pi * n, 1e-4);
  EXPECT_THROW(pi_q(0.0, d), Error);
  EXPECT_THROW(pi_q(-1.0, d), Error);
}

TEST(Lagrange, CoefficientsAtOnePointFive) {
  const InversionTable t = lagrange_table(Deformation(1.5));
  EXPECT_EQ(t.b[0], 1.0);
  EXPECT_LT(rel(t.b[1], 0.0626566416040100), 1e-13);
  EXPECT_LT(rel(t.b[2], 0.00100634490925509), 1e-12);
  EXPECT_LT(rel(t.b[3], -1.05888233405645e-4), 1e-11);
}

TEST(Lagrange, SeriesAccuracyMatchesOracle) {
  const double oracle_err[] = {1.037e-13, 2.639e-11, 6.6975e-10};
  const Deformation d(1.01);
  const InversionTable t = lagrange_table(d);
  for (int n = 1; n <= 3; ++n) {
    const double err = pi_q_series(n, t).value / pi_q(n, d) - 1.0;
    EXPECT_NEAR(err, oracle_err[n - 1], 0.02 * oracle_err[n - 1] + 2e-15) << n;
  }
  // the expansion degrades quickly away from q = 1
  const Deformation d2(1.2);
  EXPECT_NEAR(pi_q_series(3, lagrange_table(d2)).value / pi_q(3, d2) - 1.0, 0.15026, 1e-4);
}

TEST(BoxSpectrum, EnergiesAndNormalization) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 2.0);
  const auto s = box_spectrum(4, cfg);
  ASSERT_EQ(s.size(), 4u);
  for (const auto& e : s) {
    EXPECT_LT(rel(e.k_n, pi_q(e.n, cfg.d()) / cfg.length), 1e-15);
    EXPECT_LT(rel(e.E_n, cfg.hbar * cfg.hbar * e.k_n * e.k_n / (2 * cfg.m_q())), 1e-14);
    EXPECT_GT(e.N_n, 0.0);
    EXPECT_LT(rel(e.N_n, normalize_eigenfunction(e.n, cfg)), 1e-14);
  }
  EXPECT_THROW(box_spectrum(0, cfg), Error);
}

TEST(Eigenfunctions, VanishAtTheWallAndSolveTheEquation) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  for (int n = 1; n <= 3; ++n) {
    const GridFunction f = eigenfunction(n, EigenVariant::Sbar, cfg);
    const double k = pi_q(n, cfg.d());
    const PowerSeries p = eigen_series(n, EigenVariant::Sbar, cfg);
    double peak = 0.0;
    for (double x = 0.01; x <= 1.0; x += 0.01) peak = std::fmax(peak, std::fabs(p(x)));
    EXPECT_LT(std::fabs(p(cfg.length)) / peak, 1e-12);
    const PowerSeries lhs = apply_Dbar(apply_Dbar(p, cfg.d()), cfg.d());
    for (double x : {0.2, 0.5, 0.8}) EXPECT_LT(std::fabs(lhs(x) + k * k * p(x)) / (k * k * peak), 1e-11);
    EXPECT_NEAR(f(0.0).real(), 0.0, 1e-300);
  }
  EXPECT_THROW(eigenfunction(0, EigenVariant::S, cfg), Error);
}

TEST(Gram, DiagonalIsUnitAndBracketIdentityHolds) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  const GramReport g = gram_matrix(3, cfg);
  for (int n = 0; n < 3; ++n) {
    EXPECT_NEAR(g.gram[n][n], 1.0, 1e-12);
    for (int m = 0; m < 3; ++m) {
      if (m == n) continue;
      const double want = (g.k[n] * g.k[n] - g.k[m] * g.k[m]) * g.gram[n][m];
      EXPECT_LT(std::fabs(g.bracket[n][m] - want) / std::fabs(want), 1e-10);
    }
  }
}

TEST(PhaseFunction, PeriodicUnderDilation) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  for (double x : {0.3, 0.9, 2.0}) {
    EXPECT_LT(std::abs(phase_function(2, x * 1.5, cfg) - phase_function(2, x, cfg)), 1e-13);
    EXPECT_NEAR(std::abs(phase_function(3, x, cfg)), 1.0, 1e-15);
  }
}
