#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

#include "fracdg/mesh.hpp"

namespace fracdg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Time-stepping matrices for the Legendre basis Psi_j = P_{j-1} on each
// interval. Indices in the mathematical description run from 1; Eigen
// storage is 0-based, so entry (i-1, j-1) holds the (i, j) coefficient.

/// Jump/derivative matrix: (-1)^{i+j} for i >= j, 1 for i < j.
Matrix g_matrix(int r);

/// Upwind transfer matrix: every entry in row i equals (-1)^{i-1}.
Matrix k_matrix(int r_now, int r_prev);

/// Diagonal memory block H^{n,0} for a step of length k.
///
/// Uses the integration-by-parts representation with a Gauss-Jacobi rule
/// for the (1-sigma)^{alpha-1} endpoint term, a Gauss-Jacobi rule in y for
/// the (1+y)^{alpha-1} weight of the double integral, and Gauss-Legendre
/// in z for the polynomial inner integral. Point counts are the exactness
/// counts plus two. alpha is accepted in (0, 1].
Matrix h0_matrix(double alpha, int r, double k = 1.0);

struct HistoryOptions {
  /// Convergence threshold on successive point-doubling iterates, applied
  /// to the matrix divided by k_n^alpha.
  double atol = 1e-14;
  /// First point count of the doubling sequence.
  int start_points = 4;
  /// Largest point count tried before giving up.
  int max_points = 128;
  /// Lags l >= 2 whose matrix max-norm falls below drop_tol are dropped
  /// from the uniform cache (0 disables the cutoff).
  double drop_tol = 0.0;
};

/// Adjacent-interval block (lag 1) with every rule using M points.
/// ratio = k_n / k_{n-1}; the result is for k_{n-1} = 1 and must be scaled
/// by k_{n-1}^alpha.
Matrix h1_fixed(double alpha, int r, double ratio, int M);

/// Lag >= 2 block from the smooth (1 + Delta)^{alpha-2} kernel on an M x M
/// tensor Gauss-Legendre grid.
Matrix hfar_fixed(double alpha, int r, const IntervalGeometry& geo, int M);

/// Lag >= 2 block via the A/B/C boundary-term representation (cross-check
/// path) on M-point Gauss-Legendre rules.
Matrix hfar_abc_fixed(double alpha, int r, const IntervalGeometry& geo, int M);

/// Memory block H^{n, lbar} for 1 <= lbar <= n-1 on an arbitrary mesh,
/// with point doubling until successive iterates agree to opts.atol.
/// Throws NumericalError (reporting the last delta) if the cap is reached.
Matrix h_matrix(double alpha, int r, const TimeMesh& mesh, int n, int lbar,
                const HistoryOptions& opts = {});

/// Same as h_matrix for lbar >= 2 but through the A/B/C representation.
Matrix h_matrix_abc(double alpha, int r, const TimeMesh& mesh, int n, int lbar,
                    const HistoryOptions& opts = {});

/// Unit-step uniform-mesh block H^{lbar}; lbar = 0 gives h0_matrix.
Matrix h_uniform(double alpha, int r, int lbar, const HistoryOptions& opts = {});

/// Smallest M in [1, 12] with max_ij |H^{lbar}(M) - H^{lbar}(12)| < atol
/// on the uniform unit mesh.
int gauss_points_required(double alpha, int r, int lbar, double atol);

/// Independent oracle: evaluates the defining integral of H^{n, lbar}
/// (derivative of the memory convolution against the test function) by
/// composite Gauss-Legendre quadrature on geometrically graded partitions
/// toward each weak singularity, refining until two levels agree to tol.
/// lbar = 0 is accepted.
Matrix oracle_h(double alpha, int r, const TimeMesh& mesh, int n, int lbar, double tol);

/// G, K and memory blocks for one (alpha, r, mesh) combination.
///
/// On uniform meshes every block is taken from a unit-step cache indexed
/// by lag and scaled by k^alpha. Otherwise blocks are evaluated per
/// (n, lbar) on demand.
class CoeffSet {
 public:
  /// Uniform cache holding lags 0..max_lag at unit step.
  static CoeffSet uniform(double alpha, int r, int max_lag, const HistoryOptions& opts = {});
  /// Picks the uniform cache when the mesh is uniform.
  static CoeffSet for_mesh(double alpha, int r, const TimeMesh& mesh,
                           const HistoryOptions& opts = {});

  double alpha() const { return alpha_; }
  int r() const { return r_; }
  const Matrix& G() const { return G_; }
  const Matrix& K() const { return K_; }
  /// H^0 at unit step.
  const Matrix& H0() const { return H0_; }
  bool has_uniform_cache() const { return uniform_; }
  int max_cached_lag() const { return static_cast<int>(history_.size()); }
  /// Unit-step cached block for lag >= 1 (uniform cache only).
  const Matrix& history(int lbar) const;

  /// k_n^alpha, with the nominal step T/N on uniform meshes.
  double step_scale(const TimeMesh& mesh, int n) const;
  /// H^{n,0} for the given step length.
  Matrix diagonal_block(const TimeMesh& mesh, int n) const;
  /// H^{n, lbar}, lbar >= 1, scaled to the mesh. Returns std::nullopt for
  /// lags dropped by the cutoff.
  std::optional<Matrix> memory_block(const TimeMesh& mesh, int n, int lbar) const;

  /// Number of memory_block calls served from the uniform cache.
  std::size_t cache_hits() const { return cache_hits_; }
  /// Distinct lags served from the cache.
  std::size_t distinct_lags_used() const;

  /// True if (alpha, r, mesh) are consistent with this set.
  bool matches(double alpha, int r, const TimeMesh& mesh) const;

 private:
  CoeffSet() = default;
  double alpha_ = 0.0;
  int r_ = 0;
  bool uniform_ = false;
  HistoryOptions opts_;
  Matrix G_, K_, H0_;
  std::vector<Matrix> history_;  // history_[lbar-1]
  int cutoff_lag_ = 0;           // 0 = no cutoff
  mutable std::size_t cache_hits_ = 0;
  mutable std::vector<bool> lag_used_;
};

}  // namespace fracdg
