#pragma once

#include <functional>
#include <vector>

#include "fracdg/coefficients.hpp"
#include "fracdg/dg_ode.hpp"
#include "fracdg/fem1d.hpp"
#include "fracdg/mesh.hpp"

namespace fracdg {

using SpaceTimeFunction = std::function<double(double x, double t)>;

/// u_t + d^{1-alpha} (-u_xx) = f on (0, L) x (0, T], u = 0 at x = 0, L.
struct PdeProblem {
  double alpha = 0.6;
  double L = 2.0;
  std::function<double(double)> u0 = [](double) { return 0.0; };
  SpaceTimeFunction f = [](double, double) { return 0.0; };
  double T = 1.0;
};

/// dG-in-time solution with coefficient blocks U^{nj} in R^P.
class PdeDGSolution {
 public:
  PdeDGSolution(TimeMesh mesh, int r, std::vector<Matrix> blocks, Vector U0);

  const TimeMesh& mesh() const { return mesh_; }
  int r() const { return r_; }
  int dimension() const { return static_cast<int>(U0_.size()); }
  /// blocks()[n-1] is r x P with row j-1 holding U^{nj}.
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Vector& initial() const { return U0_; }

  /// Spatial coefficients of U at reference coordinate tau of interval n.
  Vector local_coefficients(int n, double tau) const;
  Vector left_limit_at_end(int n) const;
  Vector right_limit_at_start(int n) const;
  /// [[U]]^{n-1}, with U^0_- = U0.
  Vector jump(int n) const;
  /// Spatial coefficients at time t; t = 0 with the left side gives U0.
  Vector coefficients_at(double t, Side side) const;

  double max_step_residual = 0.0;
  double max_history_magnitude = 0.0;
  /// Number of step-matrix factorizations performed.
  int factorizations = 0;

 private:
  TimeMesh mesh_;
  int r_;
  std::vector<Matrix> blocks_;
  Vector U0_;
};

/// Block load F^n (length r P, block i-1 holding F^{ni}) for the
/// time-interval n: Gauss-Legendre in time (r + 4 points) and
/// load_vector in space.
Vector pde_load(const PdeProblem& problem, const TimeMesh& mesh, const FemSpace1D& space, int n, int r);

/// Steps (G x M + H^{n0} x A) U^n = F^n - sum_{l<n} (H^{n,n-l} x A) U^l
/// + {(psi x M) U0 | (K x M) U^{n-1}} for given operators.
PdeDGSolution solve_kron(const SpatialOperators& ops, const Vector& U0,
                         const std::function<Vector(int)>& load, const TimeMesh& mesh, int r,
                         const CoeffSet& coeffs);

/// Assembles the FEM operators, projects u0 and steps the full problem.
PdeDGSolution solve_pde(const PdeProblem& problem, const TimeMesh& mesh, int r,
                        const FemSpace1D& space, const CoeffSet& coeffs);

/// U(x, t) for the finite element space the solution was computed in.
double eval_pde_solution(const PdeDGSolution& sol, const FemSpace1D& space, double x, double t, Side side);

/// L2(0, L) norm of the finite element function c minus g, by the per-element
/// Gauss rule of norm_rule.
double l2_error(const NormRule& rule, const Vector& c, const std::vector<double>& g_at_points);

/// L2 norm of a finite element function.
double l2_norm(const NormRule& rule, const Vector& c);

/// Reconstruction applied to each spatial degree of freedom. Returns r + 1
/// rows per interval.
std::vector<Matrix> reconstruct_pde(const PdeDGSolution& sol);

/// Per-interval data for comparing dG and reconstruction errors with jumps.
struct IntervalErrors {
  std::vector<double> jump_norm;   ///< ||[[U]]^{n-1}||
  std::vector<double> dg_error;    ///< sampled sup over I_n of ||U - u||
  std::vector<double> recon_error; ///< sampled sup over I_n of ||Uhat - u||
};

IntervalErrors pde_interval_errors(const PdeDGSolution& sol, const FemSpace1D& space,
                                   const SpaceTimeFunction& reference, int samples);

}  // namespace fracdg
