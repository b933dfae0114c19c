#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "qbox/qbox.h"

namespace {
struct Ctx {
  qbox_context* c = nullptr;
  explicit Ctx(double q) { EXPECT_EQ(qbox_context_create(q, 1.0, 1.0, 1.0, 0.0, &c), QBOX_OK); }
  ~Ctx() { qbox_context_destroy(c); }
};
}  // namespace

TEST(CApi, ContextLifecycleAndErrors) {
  qbox_context* c = reinterpret_cast<qbox_context*>(0x1);
  EXPECT_EQ(qbox_context_create(1.0, 1, 1, 1, 0, &c), QBOX_INVALID_ARGUMENT);
  EXPECT_EQ(c, nullptr);
  EXPECT_NE(std::string(qbox_last_error()), "");
  EXPECT_EQ(qbox_context_create(1.5, -1, 1, 1, 0, &c), QBOX_INVALID_ARGUMENT);
  EXPECT_EQ(qbox_context_create(1.5, 1, 1, 1, 0, nullptr), QBOX_INVALID_ARGUMENT);
  qbox_context_destroy(nullptr);
  EXPECT_STREQ(qbox_status_string(QBOX_NO_CONVERGENCE), "no convergence");

  Ctx ctx(2.0 / 3.0);
  double q = 0;
  EXPECT_EQ(qbox_context_q(ctx.c, &q), QBOX_OK);
  EXPECT_NEAR(q, 1.5, 1e-15);
  double out = 0;
  EXPECT_EQ(qbox_q_number(nullptr, 2, &out), QBOX_INVALID_ARGUMENT);
  EXPECT_EQ(qbox_pi_q(ctx.c, -1.0, &out), QBOX_INVALID_ARGUMENT);
  EXPECT_EQ(qbox_hamiltonian(ctx.c, 0.0, 1.0, &out), QBOX_DOMAIN);
  EXPECT_EQ(std::string(qbox_last_error()).empty(), false);
  EXPECT_EQ(qbox_q_number(ctx.c, 2, &out), QBOX_OK);
  EXPECT_EQ(std::string(qbox_last_error()), "");
}

TEST(CApi, NumericEntryPoints) {
  Ctx ctx(1.5);
  double v = 0, r = 0;
  ASSERT_EQ(qbox_pi_q(ctx.c, 1, &v), QBOX_OK);
  EXPECT_NEAR(v, 5.2806428340743161, 1e-13);
  ASSERT_EQ(qbox_pi_q_series(ctx.c, 1, &v, &r), QBOX_OK);
  EXPECT_GT(r, 0.0);
  double b[4];
  ASSERT_EQ(qbox_lagrange_b(ctx.c, b), QBOX_OK);
  EXPECT_NEAR(b[1], 0.0626566416040100, 1e-15);
  ASSERT_EQ(qbox_gamma1(ctx.c, &v), QBOX_OK);
  EXPECT_NEAR(v, 0.97311625945959451675, 1e-15);
  double trig[4];
  ASSERT_EQ(qbox_q_trig(ctx.c, 5.28, trig), QBOX_OK);
  EXPECT_NEAR(trig[0], -4.269458424147623, 1e-12);
  ASSERT_EQ(qbox_theta(ctx.c, 5.2806428340743161, &v), QBOX_OK);
  EXPECT_NEAR(v, M_PI, 1e-14);

  qbox_spectrum_entry e[3];
  ASSERT_EQ(qbox_spectrum(ctx.c, 3, 1, e), QBOX_OK);
  EXPECT_EQ(e[2].n, 3);
  EXPECT_NEAR(e[2].pi_q, 154.95040179890236, 1e-11);
  EXPECT_GT(e[0].N_n, 0.0);

  qbox_kernel_value k;
  double pr, pi_;
  ASSERT_EQ(qbox_kernel(ctx.c, 1.5, 1.0, 1.0, &k), QBOX_OK);
  ASSERT_EQ(qbox_kernel_prefactor(ctx.c, 1.0, &pr, &pi_), QBOX_OK);
  EXPECT_NEAR(k.re, pr, 1e-14);
  EXPECT_NEAR(k.im, pi_, 1e-14);
}

TEST(CApi, TrajectoryAndPortraitHandles) {
  Ctx ctx(1.5);
  qbox_trajectory* tr = nullptr;
  ASSERT_EQ(qbox_trajectory_integrate(ctx.c, 0.0, 0.5, 0.2, 1.0, 0.01, 1, &tr), QBOX_OK);
  ASSERT_GT(qbox_trajectory_size(tr), 100u);
  double t, x, xd, C;
  ASSERT_EQ(qbox_trajectory_state(tr, 0, &t, &x, &xd, &C), QBOX_OK);
  EXPECT_EQ(x, 0.5);
  EXPECT_EQ(qbox_trajectory_state(tr, 1u << 30, &t, &x, &xd, &C), QBOX_INVALID_ARGUMENT);
  EXPECT_EQ(qbox_trajectory_halt_reason(tr), nullptr);
  EXPECT_LT(qbox_trajectory_drift(tr), 1e-6);
  qbox_trajectory_destroy(tr);

  qbox_portrait* pp = nullptr;
  ASSERT_EQ(qbox_portrait_compute(ctx.c, 1.0, 0.1, 5.0, 20, 1, &pp), QBOX_OK);
  const size_t n = qbox_portrait_size(pp);
  ASSERT_GE(n, 2u);
  qbox_phase_point p;
  ASSERT_EQ(qbox_portrait_point(pp, n - 1, &p), QBOX_OK);
  EXPECT_EQ(p.stationary, 1);
  EXPECT_NEAR(p.x, qbox_portrait_x_max(pp), 1e-15);
  qbox_portrait_destroy(pp);
}
