#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qbox/classical.hpp"
#include "qbox/error.hpp"

using namespace qbox;
using std::numbers::pi;

namespace {
const PhysicalConfig kCfg(Deformation(1.5), 1.0, 1.0, 1.0);

double omega(double A) { return 2.0 * velocity_scale(kCfg) / (A * A); }
}  // namespace

TEST(Hamiltonian, ClosedFormAndClassicalLimit) {
  const double q = 1.5, lam = q - 1 / q, sig = q + 1 / q;
  const double G = sig / (kCfg.m_q() * lam * lam), b = lam / sig;
  EXPECT_NEAR(hamiltonian(0.7, 1.3, kCfg), G * std::pow(std::sin(b * 1.3 * 0.7), 2) / 0.49, 1e-14);
  EXPECT_THROW(hamiltonian(0.0, 1.0, kCfg), Error);
  const PhysicalConfig near(Deformation(1.0 + 1e-5), 1.0, 1.0, 1.0);
  EXPECT_NEAR(hamiltonian(1.0, 1.0, near), 0.5, 1e-5);
}

TEST(SineSolution, SatisfiesEquationAndFirstIntegral) {
  const double A = 1.3, w = omega(A);
  for (int i = 1; i < 50; ++i) {
    const double t = i * (pi / w) / 50.0;
    const double x = A * std::sin(w * t), v = A * w * std::cos(w * t);
    // sheet follows the sign of cos(2 w t)
    const Sheet s = std::cos(2 * w * t) >= 0 ? Sheet::principal : Sheet::reflected;
    EXPECT_NEAR(eom_rhs(x, v, kCfg, s), -w * w * x, 1e-10 * w * w * A);
    EXPECT_NEAR(first_integral(x, v, kCfg, s), -2.0 / (A * A), 1e-12);
  }
}

TEST(SineSolution, ArcsineDomainIsEnforced) {
  const double K = velocity_scale(kCfg);
  try {
    eom_rhs(1.0, 2.0 * K, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
}

TEST(Lagrangian, LegendreConsistency) {
  const double x = 0.8, v = 0.3;
  for (int n : {0, 1, -1})
    for (Sheet s : {Sheet::principal, Sheet::reflected}) {
      const double p = momentum_branch(x, v, n, kCfg, s);
      EXPECT_NEAR(lagrangian_n(x, v, n, kCfg, s), p * v - hamiltonian(x, p, kCfg), 1e-12);
    }
}

TEST(Integrator, TracksTheSineSolution) {
  const double A = 1.0, w = omega(A), T = 2 * pi / w, t0 = 0.3 / w;
  const Trajectory tr =
      integrate_trajectory({t0, A * std::sin(w * t0), A * w * std::cos(w * t0)}, t0 + 3 * T, T / 400, kCfg);
  EXPECT_FALSE(tr.halt_reason.has_value());
  EXPECT_NEAR(tr.C, -2.0, 1e-12);
  double err = 0.0;
  for (const auto& s : tr.states) err = std::fmax(err, std::fabs(s.x - A * std::sin(w * s.t)));
  EXPECT_LT(err, 1e-7);
  EXPECT_LT(tr.max_C_drift, 1e-7);
  EXPECT_LT(tr.error_estimate, 1e-7);
  EXPECT_EQ(tr.regime, "effective-model extrapolation");
  const Trajectory shrt = integrate_trajectory({t0, A * std::sin(w * t0), A * w * std::cos(w * t0)}, t0 + T / 4, T / 400, kCfg);
  EXPECT_EQ(shrt.regime, "short-time");
}

TEST(Integrator, RejectsBadArguments) {
  EXPECT_THROW(integrate_trajectory({0, 0.5, 0.1}, 1.0, 0.0, kCfg), Error);
  EXPECT_THROW(integrate_trajectory({0, 0.5, 0.1}, -1.0, 0.1, kCfg), Error);
  EXPECT_THROW(integrate_trajectory({0, 0.0, 0.1}, 1.0, 0.1, kCfg, Sheet::reflected), Error);
}

TEST(EquiEnergy, PointsLieOnTheCurveInsideTurningRadius) {
  const double E = 1.0;
  const EquiEnergyCurve c = equi_energy_trajectory(E, kCfg, 0.05, 10.0, 60, 2);
  EXPECT_NEAR(c.p0, std::sqrt((1.5 + 1 / 1.5) * kCfg.m_q() * E), 1e-14);
  EXPECT_FALSE(c.points.empty());
  EXPECT_FALSE(c.skipped_p.empty());  // |p| < p0 has no solution
  for (const auto& pt : c.points) {
    EXPECT_NEAR(hamiltonian(pt.x, pt.p, kCfg), E, 1e-10);
    EXPECT_LE(pt.x, c.x_max * (1 + 1e-12));
  }
  ASSERT_EQ(c.stationary.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(c.stationary[j].p, c.p0 * (2 * j + 1) * pi / 2, 1e-12);
    EXPECT_NEAR(hamiltonian(c.stationary[j].x, c.stationary[j].p, kCfg), E, 1e-12);
  }
  EXPECT_THROW(equi_energy_trajectory(-1.0, kCfg, 0.1, 1.0, 10), Error);
}
