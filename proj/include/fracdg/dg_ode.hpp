#pragma once

#include <functional>
#include <vector>

#include "fracdg/coefficients.hpp"
#include "fracdg/mesh.hpp"
#include "fracdg/polylib.hpp"

namespace fracdg {

using ScalarFunction = std::function<double(double)>;

/// u' + lambda d^{1-alpha} u = f on (0, T], u(0) = u0.
struct ScalarProblem {
  double alpha = 0.5;
  double lambda = 0.0;
  ScalarFunction f = [](double) { return 0.0; };
  double u0 = 0.0;
  double T = 1.0;
};

/// Which one-sided limit to take at a mesh level.
enum class Side { left, right };

/// Piecewise-polynomial dG solution: on interval n,
/// U(t) = sum_j U^{nj} P_{j-1}(tau) with t the affine image of tau.
class DGSolution {
 public:
  DGSolution(TimeMesh mesh, int r, double alpha, Matrix coeffs, double u0);

  const TimeMesh& mesh() const { return mesh_; }
  int r() const { return r_; }
  double alpha() const { return alpha_; }
  double initial_value() const { return u0_; }
  /// Row n-1 holds U^{n1}..U^{nr}.
  const Matrix& coeffs() const { return coeffs_; }

  /// U at reference coordinate tau of interval n.
  double local_value(int n, double tau) const;
  /// U^n_- = sum_j U^{nj}.
  double left_limit_at_end(int n) const;
  /// U^{n-1}_+ = sum_j (-1)^{j-1} U^{nj}.
  double right_limit_at_start(int n) const;
  /// [[U]]^{n-1} = U^{n-1}_+ - U^{n-1}_-, with U^0_- = u0.
  double jump(int n) const;
  /// Value at t in [0, T]; at a mesh level `side` picks the limit. At t = 0
  /// the left side gives u0.
  double evaluate(double t, Side side) const;

  /// Largest relative residual of the per-step linear systems.
  double max_step_residual = 0.0;
  /// Largest |history term| encountered (zero in the classical limit).
  double max_history_magnitude = 0.0;
  /// Number of step-matrix factorizations performed.
  int factorizations = 0;

 private:
  TimeMesh mesh_;
  int r_;
  double alpha_;
  Matrix coeffs_;
  double u0_;
};

/// F^{ni} = int_{I_n} f psi_{ni} dt by Gauss-Legendre with `points`
/// nodes (0 selects r + 4).
Vector f_moments(const ScalarFunction& f, const TimeMesh& mesh, int n, int r, int points = 0);

struct OdeSolveOptions {
  /// Accumulate the memory sum from the most recent interval backwards.
  bool reverse_history = false;
};

/// Time-marches the r x r step systems
/// (G + lambda H^{n0}) U^n = F^n - lambda sum_{l<n} H^{n,n-l} U^l + jump term.
DGSolution solve_ode(const ScalarProblem& problem, const TimeMesh& mesh, int r,
                     const CoeffSet& coeffs, const OdeSolveOptions& opts = {});

/// Pointwise errors at the right-Radau points of each interval.
struct ErrorTable {
  /// errors(n-1, j) = E^n_j for 0 <= j <= r.
  Matrix errors;
  /// weighted_max[j] = max_n (t*_{nj})^{r-alpha} E^n_j.
  std::vector<double> weighted_max;
};

ErrorTable error_table(const DGSolution& sol, const ScalarFunction& exact,
                       const RadauPoints& radau);

}  // namespace fracdg
