#pragma once

#include <functional>
#include <vector>

namespace fracdg {

/// Weight function attached to a Gauss rule on [-1, 1]:
/// 1 for Legendre, (1-x)^a (1+x)^b for Jacobi.
struct WeightKind {
  enum class Family { legendre, jacobi };
  Family family = Family::legendre;
  double a = 0.0;
  double b = 0.0;

  static WeightKind legendre() { return {}; }
  static WeightKind jacobi(double a, double b) { return {Family::jacobi, a, b}; }
};

/// Nodes (strictly increasing, inside (-1,1)) and positive weights of a
/// Gauss rule for the given weight function.
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  WeightKind weight_kind;

  std::size_t size() const { return nodes.size(); }

  /// Sum of w_k f(x_k).
  double apply(const std::function<double(double)>& f) const;
};

/// Values and first derivatives of P_0, ..., P_{count-1} at one point.
struct LegendreValues {
  std::vector<double> values;
  std::vector<double> derivatives;
};

/// P_0(tau) .. P_{r-1}(tau) and their derivatives by the three-term
/// recurrence. Requires r >= 1.
LegendreValues legendre_values(int r, double tau);

/// P_n(tau) alone.
double legendre(int n, double tau);

/// Derivative P'_n(tau).
double legendre_derivative(int n, double tau);

/// M-point Gauss-Legendre rule, exact for polynomials of degree 2M-1.
QuadRule gauss_legendre(int M);

/// M-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b, a, b > -1.
///
/// Nodes come from the symmetric tridiagonal Jacobi matrix (Golub-Welsch),
/// are polished by Newton steps on the orthonormal recurrence, and the
/// weights are recomputed from the Christoffel function
/// 1 / sum_k p_k(x)^2, which keeps them accurate to a few ulps.
QuadRule gauss_jacobi(int M, double a, double b);

/// Integral of (1-x)^a (1+x)^b over [-1, 1].
double jacobi_moment0(double a, double b);

/// Right-Radau points for degree r: tau_0 = -1 followed by the r zeros
/// of P_r - P_{r-1} in (-1, 1], ascending, with tau_r = 1 exactly.
struct RadauPoints {
  int degree = 0;
  std::vector<double> taus;
};

RadauPoints radau_points(int r);

}  // namespace fracdg
