#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbox/error.hpp"
#include "qbox/propagator.hpp"
#include "qbox/qfunctions.hpp"

using namespace qbox;
using cplx = std::complex<double>;
using std::numbers::pi;

namespace {
KernelRequest request(double x, double xp, double T, const PhysicalConfig& cfg) {
  KernelRequest r;
  r.x = x;
  r.x_prime = xp;
  r.T = T;
  r.cfg = cfg;
  return r;
}
}  // namespace

TEST(QDifferencePower, ProductDefinition) {
  const Deformation d(1.5);
  EXPECT_EQ(q_difference_power(1.0, 0.5, 0, d), 1.0);
  EXPECT_NEAR(q_difference_power(1.0, 0.5, 1, d), (1.0 - 1.5 * 0.5) * (1.0 - 0.5 / 1.5), 1e-15);
  double want = 1.0;
  for (int j = -3; j <= 3; j += 2) want *= 0.7 - std::pow(1.5, j) * 1.9;
  EXPECT_NEAR(q_difference_power(0.7, 1.9, 2, d), want, 1e-14 * std::fabs(want));
  EXPECT_EQ(q_difference_power(1.5, 1.0, 3, d), 0.0);
}

TEST(Kernel, PrefactorMagnitudeAndPhase) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  const cplx p = kernel_prefactor(2.0, cfg);
  EXPECT_NEAR(std::abs(p), std::sqrt(cfg.m_q() / (4 * pi)) / gamma_q(cfg.d()).gamma1, 1e-15);
  EXPECT_NEAR(std::arg(p), -pi / 4, 1e-15);
  EXPECT_THROW(kernel_prefactor(0.0, cfg), Error);
}

TEST(Kernel, DilationPairsReduceToPrefactor) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  const cplx pre = kernel_prefactor(1.0, cfg);
  for (double x : {0.5, 1.0, 1.7}) {
    EXPECT_LT(std::abs(kernel(request(1.5 * x, x, 1.0, cfg)).value - pre), 1e-15 * std::abs(pre));
    EXPECT_LT(std::abs(kernel(request(x / 1.5, x, 1.0, cfg)).value - pre), 1e-15 * std::abs(pre));
  }
}

TEST(Kernel, GaussianLimit) {
  const PhysicalConfig cfg(Deformation(1.0 + 1e-4), 1.0, 1.0, 1.0);
  const cplx g0 = std::sqrt(1.0 / (2 * pi)) * std::polar(1.0, -pi / 4);
  for (double x : {-1.0, 0.0, 1.5})
    for (double xp : {-2.0, 0.5}) {
      const double dx = x - xp;
      const cplx g = g0 * std::polar(1.0, dx * dx / 2);
      EXPECT_LT(std::abs(kernel(request(x, xp, 1.0, cfg)).value - g) / std::abs(g), 1e-3) << x << " " << xp;
    }
}

TEST(Kernel, ShortTimeGapShrinksLikeInverseSquareT) {
  const PhysicalConfig cfg(Deformation(1.5), 1.0, 1.0, 1.0);
  const double g1 = short_time_kernel_check(1.0, 0.5, 1.0, cfg).gap;
  const double g2 = short_time_kernel_check(1.0, 0.5, 0.5, cfg).gap;
  EXPECT_NEAR(g2 / g1, 4.0, 0.8);
}

TEST(Kernel, TruncationCarriesPartialSum) {
  const PhysicalConfig cfg(Deformation(1.0 + 1e-4), 1.0, 1.0, 1.0);
  KernelRequest r = request(3.0, -3.0, 0.05, cfg);
  r.max_terms = 8;
  try {
    kernel(r);
    FAIL() << "expected truncation";
  } catch (const KernelTruncationError& e) {
    EXPECT_EQ(e.code(), Errc::no_convergence);
    EXPECT_EQ(e.partial().terms_used, 8);
  }
}

TEST(PlaneWave, NormalizationConstant) {
  const Deformation d(1.5);
  EXPECT_NEAR(std::abs(plane_wave(0.0, 3.0, d)), 1.0 / std::sqrt(2 * pi * gamma_q(d).gamma1), 1e-15);
  const cplx w = plane_wave(0.4, 2.0, d);
  const double Nq = 1.0 / std::sqrt(2 * pi * gamma_q(d).gamma1);
  EXPECT_NEAR(w.real(), Nq * cos_q(0.8, d).value, 1e-14);
  EXPECT_NEAR(w.imag(), Nq * sin_q(0.8, d).value, 1e-14);
}
