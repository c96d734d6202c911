#include "fracdg/dg_pde.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"
#include "fracdg/reconstruction.hpp"

namespace fracdg {

PdeDGSolution::PdeDGSolution(TimeMesh mesh, int r, std::vector<Matrix> blocks, Vector U0)
    : mesh_(std::move(mesh)), r_(r), blocks_(std::move(blocks)), U0_(std::move(U0)) {
  detail::require(static_cast<int>(blocks_.size()) == mesh_.size(), "PdeDGSolution: one block per interval");
  for (const Matrix& B : blocks_)
    detail::require(B.rows() == r_ && B.cols() == U0_.size(), "PdeDGSolution: block has the wrong shape");
}

Vector PdeDGSolution::local_coefficients(int n, double tau) const {
  const auto lv = legendre_values(r_, tau);
  Vector c = Vector::Zero(U0_.size());
  for (int j = 0; j < r_; ++j) c += lv.values[j] * blocks_[n - 1].row(j).transpose();
  return c;
}

Vector PdeDGSolution::left_limit_at_end(int n) const { return blocks_[n - 1].colwise().sum().transpose(); }

Vector PdeDGSolution::right_limit_at_start(int n) const {
  Vector c = Vector::Zero(U0_.size());
  for (int j = 0; j < r_; ++j) c += (j % 2 == 0 ? 1.0 : -1.0) * blocks_[n - 1].row(j).transpose();
  return c;
}

Vector PdeDGSolution::jump(int n) const {
  return right_limit_at_start(n) - (n == 1 ? U0_ : left_limit_at_end(n - 1));
}

Vector PdeDGSolution::coefficients_at(double t, Side side) const {
  detail::require(t >= 0.0 && t <= mesh_.final_time(), "PdeDGSolution: time outside [0, T]");
  if (t == 0.0 && side == Side::left) return U0_;
  const int n = mesh_.locate(t, side == Side::left);
  return local_coefficients(n, mesh_.reference_coordinate(n, t));
}

Vector pde_load(const PdeProblem& problem, const TimeMesh& mesh, const FemSpace1D& space, int n, int r) {
  const int P = space.dimension();
  const QuadRule rule = gauss_legendre(r + 4);
  const double half = 0.5 * mesh.step(n);
  Vector F = Vector::Zero(static_cast<Eigen::Index>(r) * P);
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const double tau = rule.nodes[m];
    const double t = mesh.affine_map(n, tau);
    const Vector b = load_vector(space, [&](double x) { return problem.f(x, t); });
    const auto lv = legendre_values(r, tau);
    for (int i = 0; i < r; ++i) F.segment(i * P, P) += half * rule.weights[m] * lv.values[i] * b;
  }
  return F;
}

namespace {

Matrix kron(const Matrix& X, const Matrix& Y) {
  Matrix out(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) out.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
  return out;
}

// Row i-1 of the r x P block matrix is block i of the stacked vector.
Matrix as_blocks(const Vector& v, int r, int P) {
  Matrix B(r, P);
  for (int i = 0; i < r; ++i) B.row(i) = v.segment(i * P, P).transpose();
  return B;
}

Vector stacked(const Matrix& B) {
  const auto r = B.rows(), P = B.cols();
  Vector v(r * P);
  for (Eigen::Index i = 0; i < r; ++i) v.segment(i * P, P) = B.row(i).transpose();
  return v;
}

}  // namespace

PdeDGSolution solve_kron(const SpatialOperators& ops, const Vector& U0, const std::function<Vector(int)>& load,
                         const TimeMesh& mesh, int r, const CoeffSet& coeffs) {
  const int P = static_cast<int>(ops.M.rows());
  detail::require(ops.M.cols() == P && ops.A.rows() == P && ops.A.cols() == P && U0.size() == P,
                  "solve_kron: operator dimensions are inconsistent");
  detail::require(coeffs.r() == r, "solve_kron: coefficient set has the wrong r");
  detail::require(coeffs.matches(coeffs.alpha(), r, mesh), "solve_kron: coefficient set does not match the mesh");
  const int N = mesh.size();
  const Matrix GM = kron(coeffs.G(), ops.M);

  std::vector<Matrix> blocks;
  std::vector<Matrix> W;  // W[l-1] = rows A U^{lj}
  blocks.reserve(N);
  W.reserve(N);
  Eigen::PartialPivLU<Matrix> lu;
  double factored_scale = -1.0;
  int factorizations = 0;
  double max_residual = 0.0, max_history = 0.0;
  Matrix S;

  for (int n = 1; n <= N; ++n) {
    if (const double scale = coeffs.step_scale(mesh, n); scale != factored_scale) {
      S = GM + kron(coeffs.diagonal_block(mesh, n), ops.A);
      lu.compute(S);
      factored_scale = scale;
      ++factorizations;
      if (!(lu.rcond() > 1e-14)) {
        std::ostringstream msg;
        msg << "solve_kron: step matrix factorization failed at n=" << n;
        throw NumericalError(msg.str());
      }
    }

    Vector rhs = load(n);
    detail::require(rhs.size() == static_cast<Eigen::Index>(r) * P, "solve_kron: load has the wrong size");
    const Vector Mprev = ops.M * (n == 1 ? U0 : Vector(blocks.back().colwise().sum().transpose()));
    for (int i = 0; i < r; ++i) rhs.segment(i * P, P) += (i % 2 == 0 ? 1.0 : -1.0) * Mprev;

    Matrix history = Matrix::Zero(r, P);
    for (int l = 1; l < n; ++l)
      if (auto H = coeffs.memory_block(mesh, n, n - l)) history.noalias() += *H * W[l - 1];
    if (n > 1) max_history = std::max(max_history, history.cwiseAbs().maxCoeff());
    rhs -= stacked(history);

    const Vector x = lu.solve(rhs);
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), S.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff());
    if (scale > 0.0) max_residual = std::max(max_residual, (S * x - rhs).cwiseAbs().maxCoeff() / scale);
    Matrix U = as_blocks(x, r, P);
    W.push_back(U * ops.A);  // A symmetric: row j of U A is (A U^{nj})^T
    blocks.push_back(std::move(U));
  }

  PdeDGSolution sol(mesh, r, std::move(blocks), U0);
  sol.max_step_residual = max_residual;
  sol.max_history_magnitude = max_history;
  sol.factorizations = factorizations;
  return sol;
}

PdeDGSolution solve_pde(const PdeProblem& problem, const TimeMesh& mesh, int r, const FemSpace1D& space,
                        const CoeffSet& coeffs) {
  detail::require(coeffs.matches(problem.alpha, r, mesh), "solve_pde: coefficient set does not match (alpha, r, mesh)");
  detail::require(std::abs(space.length() - problem.L) <= 1e-14 * problem.L, "solve_pde: space length differs from L");
  const SpatialOperators ops = assemble(space);
  const Vector U0 = l2_project(space, problem.u0);
  return solve_kron(ops, U0, [&](int n) { return pde_load(problem, mesh, space, n, r); }, mesh, r, coeffs);
}

double eval_pde_solution(const PdeDGSolution& sol, const FemSpace1D& space, double x, double t, Side side) {
  return space.evaluate(sol.coefficients_at(t, side), x);
}

double l2_error(const NormRule& rule, const Vector& c, const std::vector<double>& g_at_points) {
  detail::require(g_at_points.size() == rule.x.size(), "l2_error: sample count mismatch");
  const Vector v = rule.basis * c;
  double sum = 0.0;
  for (std::size_t m = 0; m < rule.x.size(); ++m) {
    const double e = v[static_cast<Eigen::Index>(m)] - g_at_points[m];
    sum += rule.w[m] * e * e;
  }
  return std::sqrt(sum);
}

double l2_norm(const NormRule& rule, const Vector& c) {
  return l2_error(rule, c, std::vector<double>(rule.x.size(), 0.0));
}

std::vector<Matrix> reconstruct_pde(const PdeDGSolution& sol) {
  std::vector<Matrix> out;
  out.reserve(sol.blocks().size());
  for (int n = 1; n <= sol.mesh().size(); ++n) out.push_back(reconstruct_block(sol.blocks()[n - 1], sol.jump(n)));
  return out;
}

IntervalErrors pde_interval_errors(const PdeDGSolution& sol, const FemSpace1D& space,
                                   const SpaceTimeFunction& reference, int samples) {
  const NormRule rule = norm_rule(space);
  const auto recon = reconstruct_pde(sol);
  const auto taus = sampling_taus(samples);
  const TimeMesh& mesh = sol.mesh();
  const int r = sol.r();
  IntervalErrors out;
  std::vector<double> u(rule.x.size());
  for (int n = 1; n <= mesh.size(); ++n) {
    out.jump_norm.push_back(l2_norm(rule, sol.jump(n)));
    double dg = 0.0, rc = 0.0;
    for (double tau : taus) {
      const double t = mesh.affine_map(n, tau);
      for (std::size_t m = 0; m < u.size(); ++m) u[m] = reference(rule.x[m], t);
      dg = std::max(dg, l2_error(rule, sol.local_coefficients(n, tau), u));
      const auto lv = legendre_values(r + 1, tau);
      Vector c = Vector::Zero(sol.dimension());
      for (int j = 0; j <= r; ++j) c += lv.values[j] * recon[n - 1].row(j).transpose();
      rc = std::max(rc, l2_error(rule, c, u));
    }
    out.dg_error.push_back(dg);
    out.recon_error.push_back(rc);
  }
  return out;
}

}  // namespace fracdg
