#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"
#include "fracdg/reference.hpp"

using namespace fracdg;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarProblem cosine_problem(double lambda) {
  ScalarProblem p;
  p.alpha = 0.5;
  p.lambda = lambda;
  p.u0 = 1.0;
  p.T = 2.0;
  p.f = [](double t) { return std::cos(kPi * t); };
  return p;
}

// int_0^t (t - s)^{-1/2} u(s) ds / Gamma(1/2). The left half is mapped by
// s = (t/2) v^2 to absorb the sqrt(s) behaviour of u; the right half uses a
// Gauss-Jacobi rule for the (t - s)^{-1/2} factor.
double half_integral(const ScalarFunction& u, double t) {
  const double c = 0.5 * t;
  const QuadRule gl = gauss_legendre(40);
  double left = 0.0;
  for (std::size_t k = 0; k < gl.size(); ++k) {
    const double v = 0.5 * (gl.nodes[k] + 1.0);
    const double s = c * v * v;
    left += 0.5 * gl.weights[k] * u(s) * std::pow(t - s, -0.5) * 2.0 * c * v;
  }
  const QuadRule gj = gauss_jacobi(40, -0.5, 0.0);
  double right = 0.0;
  for (std::size_t k = 0; k < gj.size(); ++k) {
    const double s = c + 0.5 * c * (gj.nodes[k] + 1.0);
    right += gj.weights[k] * u(s);
  }
  right *= std::sqrt(0.5 * c);
  return (left + right) / std::sqrt(kPi);
}

}  // namespace

TEST(Erfcx, KnownValues) {
  EXPECT_EQ(erfcx(0.0), 1.0);
  EXPECT_NEAR(erfcx(1.0), 0.42758357615580700441, 1e-16);
  EXPECT_NEAR(erfcx(0.5), 0.61569034419292587487, 1e-16);
  EXPECT_NEAR(erfcx(5.0), 0.11070463773306862637, 1e-16);
  EXPECT_NEAR(erfcx(10.0), 0.056140992743822585858, 1e-17);
  for (double x : {50.0, 1e3, 1e6}) EXPECT_NEAR(erfcx(x) * x * std::sqrt(kPi), 1.0, 1.0 / (2 * x * x));
}

TEST(Erfcx, AgreesWithLibraryWhereSafe) {
  for (double x = 0.0; x < 5.0; x += 0.173) EXPECT_NEAR(erfcx(x), std::exp(x * x) * std::erfc(x), 4e-15 * erfcx(x));
  for (double x = 0.1; x < 30.0; x *= 1.3) EXPECT_LT(erfcx(x + 1e-3), erfcx(x));
  EXPECT_THROW(erfcx(-1.0), InvalidArgument);
}

TEST(OdeReference, NoMemoryTermIsAntiderivative) {
  const auto u = ode_reference(cosine_problem(0.0));
  for (double t : {0.0, 0.25, 1.0, 1.9})
    EXPECT_NEAR(u(t), 1.0 + std::sin(kPi * t) / kPi, 1e-14);
}

TEST(OdeReference, HomogeneousCaseIsMittagLeffler) {
  ScalarProblem p = cosine_problem(0.5);
  p.f = [](double) { return 0.0; };
  p.u0 = 2.0;
  const auto u = ode_reference(p);
  for (double t : {0.0, 0.01, 1.0, 2.0}) EXPECT_NEAR(u(t), 2.0 * erfcx(0.5 * std::sqrt(t)), 1e-15);
}

TEST(OdeReference, SatisfiesIntegratedEquation) {
  for (double lambda : {0.5, 2.0}) {
    const ScalarProblem p = cosine_problem(lambda);
    const auto u = ode_reference(p);
    for (double t : {0.05, 0.5, 1.3, 2.0}) {
      const double lhs = u(t) - p.u0 + lambda * half_integral(u, t);
      EXPECT_NEAR(lhs, std::sin(kPi * t) / kPi, 1e-12) << lambda << " " << t;
    }
  }
}

TEST(OdeReference, RequiresHalfOrder) {
  ScalarProblem p = cosine_problem(0.5);
  p.alpha = 0.6;
  EXPECT_THROW(ode_reference(p), InvalidArgument);
}

TEST(PdeTransform, BoundaryValuesAndSymmetry) {
  const PdeReferenceParams prm;
  for (Complex z : {Complex(1.0, 0.0), Complex(-2.0, 5.0), Complex(30.0, -40.0)}) {
    EXPECT_EQ(pde_transform(0.0, z, prm), Complex(0.0));
    EXPECT_EQ(pde_transform(2.0, z, prm), Complex(0.0));
    for (double x : {0.1, 0.7, 1.0})
      EXPECT_LE(std::abs(pde_transform(x, z, prm) - pde_transform(2.0 - x, z, prm)),
                1e-14 * std::abs(pde_transform(x, z, prm)));
  }
}

TEST(PdeTransform, InitialValueTheorem) {
  const PdeReferenceParams prm;
  const Complex z(1e6, 0.0);
  EXPECT_NEAR((z * pde_transform(1.0, z, prm)).real(), 1.0, 1e-3);
  EXPECT_NEAR((z * pde_transform(0.5, z, prm)).real(), 0.75, 1e-3);
}

TEST(PdeTransform, SolvesTransformedBoundaryValueProblem) {
  const PdeReferenceParams prm;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> X(0.05, 1.95), R(-1.0, 2.0), TH(-0.75 * kPi, 0.75 * kPi);
  const double h = 1e-3;
  for (int s = 0; s < 100; ++s) {
    const double x = X(rng);
    const Complex z = std::polar(std::pow(10.0, R(rng)), TH(rng));
    const Complex w2 = std::pow(z, prm.alpha);
    auto u = [&](double y) { return pde_transform(y, z, prm); };
    const Complex uxx =
        (-u(x + 2 * h) + 16.0 * u(x + h) - 30.0 * u(x) + 16.0 * u(x - h) - u(x - 2 * h)) / (12 * h * h);
    const Complex g = pde_transform_source(x, z, prm);
    const double scale = std::max(std::abs(g), std::abs(w2 * u(x)));
    EXPECT_LE(std::abs(w2 * u(x) - uxx - g), 1e-6 * scale) << x << " " << z;
  }
}

TEST(Contour, RuleShape) {
  const ContourRule rule = optimized_hyperbola(40, 0.1, 1.0);
  ASSERT_EQ(rule.nodes.size(), 81u);
  ASSERT_EQ(rule.weights.size(), 81u);
  EXPECT_GT(rule.d, 0.0);
  EXPECT_LT(rule.d, kPi / 2);
  EXPECT_LT(rule.log_error, std::log(1e-12));
  for (std::size_t k = 0; k < 40; ++k) EXPECT_LE(std::abs(rule.nodes[k] - std::conj(rule.nodes[80 - k])), 1e-12 * rule.mu);
}

TEST(Contour, InvertsKnownTransform) {
  // 1/(z + 1) <-> exp(-t).
  const ContourRule rule = optimized_hyperbola(40, 0.1, 1.0);
  for (double t : {0.1, 0.3, 1.0}) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      s += rule.weights[k] * std::exp(rule.nodes[k] * t) / (rule.nodes[k] + 1.0);
    EXPECT_NEAR(s.real(), std::exp(-t), 1e-12);
    EXPECT_LE(std::abs(s.imag()), 1e-12);
  }
}

TEST(PdeReference, SelfConvergenceUnderNodeDoubling) {
  const PdeReferenceParams prm;
  for (auto [a, b] : {std::pair{1e-3, 1e-2}, std::pair{0.1, 1.0}, std::pair{1.0, 10.0}}) {
    const PdeReference coarse(prm, a, b, 40), fine(prm, a, b, 80);
    for (double t : {a, std::sqrt(a * b), b})
      for (double x : {0.3, 1.0, 1.6}) {
        double im = 0.0;
        const double v = coarse.value(x, t, &im);
        EXPECT_LE(std::abs(v - fine.value(x, t)), 1e-9) << x << " " << t;
        EXPECT_LE(std::abs(im), 1e-10);
      }
  }
}

TEST(PdeReference, WindowedShapeProperties) {
  const PdeReferenceParams prm;
  const WindowedPdeReference ref(prm);
  EXPECT_EQ(ref.value(1.0, 0.0), 1.0);
  double prev = 0.0;
  for (double t : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const double d = std::abs(ref.value(1.0, t) - 1.0);
    EXPECT_GT(d, prev);
    prev = d;
  }
  EXPECT_LT(std::abs(ref.value(1.0, 1e-6) - 1.0), 1e-2);
  for (double t : {0.01, 0.5, 2.0}) {
    EXPECT_NEAR(ref.value(0.0, t), 0.0, 1e-14);
    EXPECT_NEAR(ref.value(0.4, t), ref.value(1.6, t), 1e-12);
    EXPECT_GT(ref.value(1.0, t), 0.0);
  }
  // Window edges see the same function from both sides.
  const PdeReference lo(prm, 0.1, 1.0), hi(prm, 1.0, 10.0);
  EXPECT_NEAR(lo.value(0.8, 1.0), hi.value(0.8, 1.0), 1e-12);
}
