#include <gtest/gtest.h>

#include <cmath>

#include "qbox/error.hpp"
#include "qbox/qcore.hpp"
#include "qbox/series.hpp"

using namespace qbox;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
}  // namespace

TEST(Deformation, RejectsUndeformedAndInvalid) {
  EXPECT_THROW(Deformation(1.0), Error);
  EXPECT_THROW(Deformation(0.0), Error);
  EXPECT_THROW(Deformation(-2.0), Error);
  EXPECT_THROW(Deformation(NAN), Error);
  try {
    Deformation d(1.0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
  }
}

TEST(Deformation, InverseQIsRemapped) {
  const Deformation d(2.0 / 3.0);
  EXPECT_TRUE(d.remapped());
  EXPECT_NEAR(d.q(), 1.5, 1e-15);
  EXPECT_FALSE(Deformation(1.5).remapped());
}

TEST(Deformation, DerivedQuantitiesNearOne) {
  const Deformation d(1.0 + 1e-9);
  EXPECT_NEAR(d.one_minus_p() / 2e-9, 1.0, 1e-6);
  EXPECT_NEAR(d.lambda() / 2e-9, 1.0, 1e-6);
  EXPECT_EQ(Deformation(1.5).pow(1), 1.5);
  EXPECT_NEAR(Deformation(1.5).pow(-2), 1.0 / 2.25, 1e-16);
}

TEST(QNumber, ReferenceValues) {
  const Deformation d(1.5);
  EXPECT_LT(rel(q_number(5, d), 8.9544753086419753086), 1e-15);
  EXPECT_LT(rel(q_number(2.5, d), 2.8713463095958365484), 1e-14);
  EXPECT_LT(rel(q_number(-3, d), -3.6944444444444444444), 1e-15);
  EXPECT_LT(rel(q_number(70, d), 2544306221796.3023308), 1e-13);
  EXPECT_EQ(q_number(0, d), 0.0);
  EXPECT_EQ(q_number(1, d), 1.0);
}

TEST(QNumber, ApproachesIntegerNearOne) {
  const Deformation d(1.0 + 1e-8);
  for (int n = 1; n <= 10; ++n) EXPECT_NEAR(q_number(n, d), n, 1e-12 * n * n * n);
}

TEST(QNumber, Base2) {
  const Deformation d(1.5);
  EXPECT_DOUBLE_EQ(q_number_base2(1, d), 1.0);
  EXPECT_NEAR(q_number_base2(3, d), 1 + 2.25 + 2.25 * 2.25, 1e-13);
  EXPECT_LT(rel(q_factorial_base2(6, d), 2485307.800977868028), 1e-14);
}

TEST(QFactorial, ReferenceAndOverflow) {
  const Deformation d(1.5);
  EXPECT_EQ(q_factorial(0, d), 1.0);
  EXPECT_LT(rel(q_factorial(6, d), 5675.5936896408053618), 1e-14);
  EXPECT_THROW(q_factorial(-1, d), Error);
  try {
    q_factorial(400, Deformation(2.0));
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(QBinomial, CoefficientsArePalindromicAndMatchGaussianBinomial) {
  const Deformation d(1.3);
  for (int N = 0; N <= 10; ++N) {
    const auto e = q_binomial_coeffs(N, d);
    ASSERT_EQ(static_cast<int>(e.coeffs.size()), N + 1);
    for (int n = 0; n <= N; ++n) {
      const double want = q_factorial(N, d) / (q_factorial(n, d) * q_factorial(N - n, d));
      EXPECT_LT(rel(e.coeffs[n], want), 1e-13) << N << " " << n;
      EXPECT_EQ(e.coeffs[n], e.coeffs[N - n]);
    }
  }
}

TEST(QBinomial, SumEqualsProduct) {
  for (double q : {1.1, 1.5, 2.0}) {
    const Deformation d(q);
    for (int N = 1; N <= 12; ++N) {
      const auto e = q_binomial_coeffs(N, d);
      for (double x : {-1.3, 0.4, 2.0})
        for (double y : {-0.7, 0.9}) {
          double mag = 0.0;
          for (int n = 0; n <= N; ++n) mag += std::fabs(e.coeffs[n] * std::pow(x, n) * std::pow(y, N - n));
          EXPECT_LT(std::fabs(e.evaluate(x, y) - q_binomial_eval_product(x, y, N, d)) / mag, 1e-13);
        }
    }
  }
}

TEST(Series, CompensatedSumRecoversCancellation) {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1.0);
}

TEST(QBinomial, MinusVariantVanishesAtDilationOnlyForEvenOrder) {
  const Deformation d(1.5);
  const double y = 0.8;
  for (int N = 1; N <= 9; ++N) {
    const double v = q_binomial_eval_product(d.q() * y, -y, N, d);
    if (N % 2 == 0)
      EXPECT_EQ(v, 0.0) << N;
    else
      EXPECT_GT(std::fabs(v), 1e-3) << N;
  }
}
