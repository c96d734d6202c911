#pragma once

#include <complex>
#include <map>
#include <unordered_map>
#include <vector>

#include "fracdg/dg_ode.hpp"

namespace fracdg {

using Complex = std::complex<double>;

/// Scaled complementary error function exp(x^2) erfc(x) for x >= 0.
double erfcx(double x);

/// Exact solution of u' + lambda d^{1/2} u = f, u(0) = u0 (alpha must be
/// 1/2): u(t) = u0 erfcx(lambda sqrt t) + int_0^1 2yt erfcx(lambda y sqrt t)
/// f((1-y^2)t) dy, by Gauss-Legendre in y with point doubling to `tol`.
ScalarFunction ode_reference(const ScalarProblem& problem, double tol = 1e-14);

/// Data of the 1D sub-diffusion test problem: u0 = C0 x (L - x),
/// f = Cf t exp(-t), homogeneous Dirichlet conditions on (0, L).
struct PdeReferenceParams {
  double alpha = 0.6;
  double L = 2.0;
  double C0 = 1.0;
  double Cf = 2.0;
};

/// Laplace transform of the solution at (x, z), omega = z^{alpha/2}.
/// Throws NumericalError when z is (numerically) a singular point.
Complex pde_transform(double x, Complex z, const PdeReferenceParams& params);

/// Right-hand side g(x, z) of omega^2 u~ - u~_xx = g.
Complex pde_transform_source(double x, Complex z, const PdeReferenceParams& params);

/// Equal-weight rule on the hyperbola z(u) = mu (1 + sin(iu - d)),
/// u_k = k h for k = -K..K. u(t) ~ sum_k weights[k] exp(nodes[k] t) u~(nodes[k]).
struct ContourRule {
  int K = 0;
  double mu = 0.0;
  double d = 0.0;
  double h = 0.0;
  /// Predicted log of the error bound used to choose the parameters.
  double log_error = 0.0;
  std::vector<Complex> nodes;
  std::vector<Complex> weights;
};

/// Rule with explicit shape parameters.
ContourRule hyperbola_rule(int K, double mu, double d, double h);

/// Parameters balancing the discretisation, truncation and rounding error
/// bounds uniformly for t in [t_min, t_max].
ContourRule optimized_hyperbola(int K, double t_min, double t_max);

/// Contour-inversion reference for the 1D problem on a fixed time window.
class PdeReference {
 public:
  PdeReference(PdeReferenceParams params, double t_min, double t_max, int K = 40);

  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }
  const ContourRule& rule() const { return rule_; }
  const PdeReferenceParams& params() const { return params_; }

  /// u(x, t); the imaginary residual of the contour sum is reported
  /// through `imag` when non-null.
  double value(double x, double t, double* imag = nullptr) const;

 private:
  const std::vector<Complex>& transform_at(double x) const;

  PdeReferenceParams params_;
  double t_min_, t_max_;
  ContourRule rule_;
  mutable std::unordered_map<double, std::vector<Complex>> cache_;
};

/// PdeReference over (0, T] split into decade windows [10^{m-1}, 10^m].
class WindowedPdeReference {
 public:
  explicit WindowedPdeReference(PdeReferenceParams params, int K = 40);

  /// u(x, t); t = 0 returns u0(x).
  double value(double x, double t) const;
  const PdeReferenceParams& params() const { return params_; }

 private:
  PdeReferenceParams params_;
  int K_;
  mutable std::map<int, PdeReference> windows_;
};

}  // namespace fracdg
