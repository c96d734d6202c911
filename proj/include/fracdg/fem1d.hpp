#pragma once

#include <functional>
#include <vector>

#include "fracdg/coefficients.hpp"

namespace fracdg {

/// Continuous piecewise degree-p Lagrange elements on E uniform
/// subintervals of (0, L), homogeneous Dirichlet conditions. Nodes are
/// equispaced within each element; free node q sits at x = (q + 1) h / p.
class FemSpace1D {
 public:
  FemSpace1D(double L, int elements, int degree);

  double length() const { return L_; }
  int elements() const { return E_; }
  int degree() const { return p_; }
  double element_size() const { return L_ / E_; }
  /// Number of free nodes, E p - 1.
  int dimension() const { return E_ * p_ - 1; }
  /// Coordinates of the free nodes.
  std::vector<double> free_nodes() const;

  /// Local shape functions (values and x-derivatives) of an element at
  /// local coordinate xi in [0, 1].
  void shape(double xi, std::vector<double>& values, std::vector<double>& derivatives) const;
  /// Global node index (0..E p) of local node a on element e.
  int global_node(int e, int a) const { return e * p_ + a; }
  /// Free-node index of a global node, or -1 for a boundary node.
  int dof(int global) const { return (global == 0 || global == E_ * p_) ? -1 : global - 1; }

  /// Nodal interpolant of g.
  Vector interpolate(const std::function<double(double)>& g) const;
  /// Finite element function with coefficients c evaluated at x in [0, L].
  double evaluate(const Vector& c, double x) const;

 private:
  double L_;
  int E_;
  int p_;
};

struct SpatialOperators {
  Matrix M;  ///< mass
  Matrix A;  ///< stiffness
};

SpatialOperators assemble(const FemSpace1D& space);

/// <g, phi_q> by p + 4 Gauss points per element.
Vector load_vector(const FemSpace1D& space, const std::function<double(double)>& g);

/// Coefficients of the L2 projection of g.
Vector l2_project(const FemSpace1D& space, const std::function<double(double)>& g);

/// Per-element Gauss rule with p + 4 points and the matrix of basis values
/// at those points, for L2 norms of finite element functions.
struct NormRule {
  std::vector<double> x;
  std::vector<double> w;
  Matrix basis;  ///< basis(m, q) = phi_q(x[m])
};

NormRule norm_rule(const FemSpace1D& space);

}  // namespace fracdg
