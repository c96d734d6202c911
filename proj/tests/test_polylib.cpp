#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"

using namespace fracdg;

namespace {

// int_{-1}^{1} (1-x)^a (1+x)^{b+m} dx via the Beta function.
double shifted_moment(double a, double b, int m) {
  const double c = b + m;
  return std::exp((a + c + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(c + 1.0) -
                  std::lgamma(a + c + 2.0));
}

}  // namespace

TEST(Legendre, ClosedFormsUpToDegreeFour) {
  for (double t : {-1.0, -0.7, -0.1, 0.0, 0.35, 0.9, 1.0}) {
    const auto lv = legendre_values(5, t);
    EXPECT_DOUBLE_EQ(lv.values[0], 1.0);
    EXPECT_DOUBLE_EQ(lv.values[1], t);
    EXPECT_NEAR(lv.values[2], 0.5 * (3 * t * t - 1), 1e-15);
    EXPECT_NEAR(lv.values[3], 0.5 * (5 * t * t * t - 3 * t), 1e-15);
    EXPECT_NEAR(lv.values[4], (35 * std::pow(t, 4) - 30 * t * t + 3) / 8, 1e-15);
    EXPECT_NEAR(lv.derivatives[3], 0.5 * (15 * t * t - 3), 1e-14);
    EXPECT_NEAR(legendre(4, t), lv.values[4], 1e-15);
    EXPECT_NEAR(legendre_derivative(4, t), (140 * t * t * t - 60 * t) / 8, 1e-13);
  }
}

TEST(Legendre, EndpointValues) {
  for (int n = 0; n < 12; ++n) {
    EXPECT_DOUBLE_EQ(legendre(n, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(legendre(n, -1.0), n % 2 == 0 ? 1.0 : -1.0);
    EXPECT_NEAR(legendre_derivative(n, 1.0), 0.5 * n * (n + 1), 1e-12);
  }
}

TEST(GaussLegendre, ThreePointRule) {
  const QuadRule q = gauss_legendre(3);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_NEAR(q.nodes[0], -std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(q.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(q.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(q.weights[1], 8.0 / 9.0, 1e-15);
}

TEST(GaussLegendre, ExactForMonomialsUpToDegree2MMinus1) {
  for (int M = 1; M <= 40; ++M) {
    const QuadRule q = gauss_legendre(M);
    for (int d = 0; d <= 2 * M - 1; ++d) {
      const double exact = (d % 2 == 0) ? 2.0 / (d + 1) : 0.0;
      const double got = q.apply([d](double x) { return std::pow(x, d); });
      EXPECT_NEAR(got, exact, 1e-13 * std::max(1.0, std::abs(exact))) << "M=" << M << " d=" << d;
    }
  }
}

TEST(GaussJacobi, ExactForPolynomialsAgainstBetaMoments) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-0.95, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = U(rng), b = U(rng);
    for (int M : {1, 2, 5, 9, 16, 33}) {
      const QuadRule q = gauss_jacobi(M, a, b);
      for (int m = 0; m <= 2 * M - 1; ++m) {
        const double exact = shifted_moment(a, b, m);
        const double got = q.apply([m](double x) { return std::pow(1.0 + x, m); });
        EXPECT_NEAR(got, exact, 1e-12 * exact) << "a=" << a << " b=" << b << " M=" << M << " m=" << m;
      }
    }
  }
}

TEST(GaussJacobi, NodesSortedInteriorAndWeightsPositive) {
  for (double a : {-0.75, -0.25, 0.0, 0.5}) {
    for (double b : {-0.5, 0.0, 0.75}) {
      const QuadRule q = gauss_jacobi(24, a, b);
      double wsum = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k) {
        EXPECT_GT(q.nodes[k], -1.0);
        EXPECT_LT(q.nodes[k], 1.0);
        EXPECT_GT(q.weights[k], 0.0);
        if (k > 0) EXPECT_LT(q.nodes[k - 1], q.nodes[k]);
        wsum += q.weights[k];
      }
      EXPECT_NEAR(wsum, jacobi_moment0(a, b), 1e-14 * jacobi_moment0(a, b));
    }
  }
}

TEST(GaussJacobi, SymmetricWhenParametersEqual) {
  const QuadRule q = gauss_jacobi(11, -0.3, -0.3);
  for (std::size_t k = 0; k < q.size(); ++k) {
    EXPECT_EQ(q.nodes[k], -q.nodes[q.size() - 1 - k]);
    EXPECT_EQ(q.weights[k], q.weights[q.size() - 1 - k]);
  }
}

TEST(GaussJacobi, RejectsInvalidParameters) {
  EXPECT_THROW(gauss_jacobi(0, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(gauss_jacobi(4, -1.0, 0.0), InvalidArgument);
  EXPECT_THROW(gauss_jacobi(4, 0.0, -1.5), InvalidArgument);
}

TEST(Radau, SmallDegreesByHand) {
  const RadauPoints r1 = radau_points(1);
  ASSERT_EQ(r1.taus.size(), 2u);
  EXPECT_EQ(r1.taus[0], -1.0);
  EXPECT_EQ(r1.taus[1], 1.0);
  const RadauPoints r2 = radau_points(2);
  ASSERT_EQ(r2.taus.size(), 3u);
  EXPECT_NEAR(r2.taus[1], -1.0 / 3.0, 1e-15);
  EXPECT_EQ(r2.taus[2], 1.0);
}

TEST(Radau, ZerosOfPrMinusPrm1) {
  for (int r = 1; r <= 12; ++r) {
    const RadauPoints rp = radau_points(r);
    ASSERT_EQ(static_cast<int>(rp.taus.size()), r + 1);
    EXPECT_EQ(rp.taus.front(), -1.0);
    EXPECT_EQ(rp.taus.back(), 1.0);
    for (int j = 1; j <= r; ++j) {
      EXPECT_LE(std::abs(legendre(r, rp.taus[j]) - legendre(r - 1, rp.taus[j])), 1e-13);
      EXPECT_LT(rp.taus[j - 1], rp.taus[j]);
    }
  }
}
