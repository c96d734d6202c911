#include "fracdg/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"

namespace fracdg {

namespace {

// Continued fraction erfcx(x) = 1 / (sqrt(pi) (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))),
// evaluated with the modified Lentz algorithm.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x, C = x, D = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    D = x + a * D;
    D = (D == 0.0) ? 1.0 / tiny : 1.0 / D;
    C = x + a / C;
    if (C == 0.0) C = tiny;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

Complex expm1(Complex w) {
  const double a = w.real(), b = w.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

}  // namespace

double erfcx(double x) {
  detail::require(x >= 0.0, "erfcx: argument must be >= 0");
  if (x >= 4.0) return erfcx_continued_fraction(x);
  // exp(x^2) with the rounding error of x*x restored to first order.
  const double hi = x * x;
  const double lo = std::fma(x, x, -hi);
  return std::exp(hi) * (1.0 + lo) * std::erfc(x);
}

ScalarFunction ode_reference(const ScalarProblem& problem, double tol) {
  detail::require(problem.alpha == 0.5, "ode_reference: only alpha = 1/2 is supported");
  detail::require(problem.lambda >= 0.0, "ode_reference: lambda must be >= 0");
  const ScalarProblem p = problem;
  return [p, tol](double t) -> double {
    detail::require(t >= 0.0, "ode_reference: t must be >= 0");
    if (t == 0.0) return p.u0;
    const double st = std::sqrt(t);
    auto convolution = [&](int M) {
      const QuadRule rule = gauss_legendre(M);
      double sum = 0.0;
      for (std::size_t m = 0; m < rule.size(); ++m) {
        const double y = 0.5 * (1.0 + rule.nodes[m]);
        sum += 0.5 * rule.weights[m] * 2.0 * y * t * erfcx(p.lambda * y * st) * p.f((1.0 - y * y) * t);
      }
      return sum;
    };
    double prev = convolution(16);
    for (int M = 32; M <= 4096; M *= 2) {
      const double next = convolution(M);
      if (std::abs(next - prev) <= tol * std::max(1.0, std::abs(next)))
        return p.u0 * erfcx(p.lambda * st) + next;
      prev = next;
    }
    std::ostringstream msg;
    msg << "ode_reference: quadrature did not converge at t=" << t;
    throw NumericalError(msg.str());
  };
}

Complex pde_transform(double x, Complex z, const PdeReferenceParams& params) {
  const double L = params.L;
  detail::require(x >= 0.0 && x <= L, "pde_transform: x outside [0, L]");
  if (std::abs(z) < 1e-300 || std::abs(z + 1.0) < 1e-12)
    throw NumericalError("pde_transform: z too close to a singular point");
  const Complex omega = std::pow(z, 0.5 * params.alpha);
  const Complex denom = 1.0 + std::exp(-omega * L);
  if (std::abs(denom) < 1e-14) throw NumericalError("pde_transform: sinh(omega L) vanishes");
  // 1 - (sinh w(L-x) + sinh wx) / sinh wL, written without cancellation.
  const Complex Q = expm1(-omega * x) * expm1(-omega * (L - x)) / denom;
  const Complex u0_part = params.C0 / z * (x * (L - x) - 2.0 / (omega * omega) * Q);
  const Complex f_part = params.Cf / (z * (z + 1.0) * (z + 1.0)) * Q;
  return u0_part + f_part;
}

Complex pde_transform_source(double x, Complex z, const PdeReferenceParams& params) {
  const Complex omega2 = std::pow(z, params.alpha);
  return omega2 / z * (params.C0 * x * (params.L - x) + params.Cf / ((z + 1.0) * (z + 1.0)));
}

}  // namespace fracdg
