#pragma once

#include <vector>

#include "fracdg/dg_ode.hpp"

namespace fracdg {

/// Degree-raised post-processed solution: r + 1 Legendre coefficients per
/// interval, continuous across mesh levels.
class ReconstructedSolution {
 public:
  ReconstructedSolution(TimeMesh mesh, int r, Matrix coeffs, double u0);

  const TimeMesh& mesh() const { return mesh_; }
  /// Degree of the source dG solution; each interval carries r + 1 coefficients.
  int source_degree() const { return r_; }
  /// Row n-1 holds Uhat^{n1}..Uhat^{n,r+1}.
  const Matrix& coeffs() const { return coeffs_; }

  double local_value(int n, double tau) const;
  double evaluate(double t, Side side) const;

 private:
  TimeMesh mesh_;
  int r_;
  Matrix coeffs_;
  double u0_;
};

/// Coefficient rule on one interval for vector-valued coefficients. U holds
/// U^{n1}..U^{nr} as rows (one column per degree of freedom); jump is
/// [[U]]^{n-1}. Returns r + 1 rows.
Matrix reconstruct_block(const Matrix& U, const Vector& jump);

ReconstructedSolution reconstruct(const DGSolution& sol);

/// Reference coordinates used for sup-norm sampling: `samples` Chebyshev
/// points of the first kind plus both endpoints.
std::vector<double> sampling_taus(int samples);

/// Per-interval max |Uhat - exact| over the sampling grid (one-sided at the
/// endpoints).
std::vector<double> recon_interval_errors(const ReconstructedSolution& rec,
                                          const ScalarFunction& exact, int samples);

/// Same sampling for the dG solution itself.
std::vector<double> dg_interval_errors(const DGSolution& sol, const ScalarFunction& exact,
                                       int samples);

double recon_max_error(const ReconstructedSolution& rec, const ScalarFunction& exact,
                       int samples_per_interval);

}  // namespace fracdg
