#include "fracdg/dg_ode.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

#include "fracdg/errors.hpp"

namespace fracdg {

DGSolution::DGSolution(TimeMesh mesh, int r, double alpha, Matrix coeffs, double u0)
    : mesh_(std::move(mesh)), r_(r), alpha_(alpha), coeffs_(std::move(coeffs)), u0_(u0) {
  detail::require(coeffs_.rows() == mesh_.size() && coeffs_.cols() == r_,
                  "DGSolution: coefficient array has the wrong shape");
}

double DGSolution::local_value(int n, double tau) const {
  const auto lv = legendre_values(r_, tau);
  double u = 0.0;
  for (int j = 0; j < r_; ++j) u += coeffs_(n - 1, j) * lv.values[j];
  return u;
}

double DGSolution::left_limit_at_end(int n) const { return coeffs_.row(n - 1).sum(); }

double DGSolution::right_limit_at_start(int n) const {
  double u = 0.0;
  for (int j = 0; j < r_; ++j) u += (j % 2 == 0 ? 1.0 : -1.0) * coeffs_(n - 1, j);
  return u;
}

double DGSolution::jump(int n) const {
  const double before = (n == 1) ? u0_ : left_limit_at_end(n - 1);
  return right_limit_at_start(n) - before;
}

double DGSolution::evaluate(double t, Side side) const {
  detail::require(t >= 0.0 && t <= mesh_.final_time(), "evaluate: time outside [0, T]");
  if (t == 0.0 && side == Side::left) return u0_;
  const int n = mesh_.locate(t, side == Side::left);
  return local_value(n, mesh_.reference_coordinate(n, t));
}

Vector f_moments(const ScalarFunction& f, const TimeMesh& mesh, int n, int r, int points) {
  const QuadRule rule = gauss_legendre(points > 0 ? points : r + 4);
  const double half = 0.5 * mesh.step(n);
  Vector F = Vector::Zero(r);
  for (std::size_t m = 0; m < rule.size(); ++m) {
    const double tau = rule.nodes[m];
    const auto lv = legendre_values(r, tau);
    const double w = half * rule.weights[m] * f(mesh.affine_map(n, tau));
    for (int i = 0; i < r; ++i) F[i] += w * lv.values[i];
  }
  return F;
}

DGSolution solve_ode(const ScalarProblem& problem, const TimeMesh& mesh, int r,
                     const CoeffSet& coeffs, const OdeSolveOptions& opts) {
  detail::require(problem.lambda >= 0.0, "solve_ode: lambda must be >= 0");
  detail::require(coeffs.matches(problem.alpha, r, mesh),
                  "solve_ode: coefficient set does not match (alpha, r, mesh)");
  const int N = mesh.size();
  Matrix U = Matrix::Zero(N, r);
  const Matrix& G = coeffs.G();
  const Matrix& K = coeffs.K();
  const double lambda = problem.lambda;

  double max_residual = 0.0, max_history = 0.0;
  Eigen::PartialPivLU<Matrix> lu;
  double factored_scale = -1.0;
  int factorizations = 0;

  for (int n = 1; n <= N; ++n) {
    const Matrix S = G + lambda * coeffs.diagonal_block(mesh, n);
    if (const double scale = coeffs.step_scale(mesh, n); scale != factored_scale) {
      lu.compute(S);
      factored_scale = scale;
      ++factorizations;
      if (!(lu.rcond() > 1e-14)) {
        std::ostringstream msg;
        msg << "solve_ode: singular step matrix at n=" << n;
        throw NumericalError(msg.str());
      }
    }

    Vector rhs = f_moments(problem.f, mesh, n, r);
    if (n == 1) {
      for (int i = 0; i < r; ++i) rhs[i] += (i % 2 == 0 ? 1.0 : -1.0) * problem.u0;
    } else {
      rhs += K * U.row(n - 2).transpose();
    }

    Vector history = Vector::Zero(r);
    if (lambda != 0.0) {
      for (int step = 0; step < n - 1; ++step) {
        const int l = opts.reverse_history ? n - 1 - step : 1 + step;
        if (auto H = coeffs.memory_block(mesh, n, n - l)) history += *H * U.row(l - 1).transpose();
      }
      history *= lambda;
    }
    max_history = std::max(max_history, history.cwiseAbs().maxCoeff());
    rhs -= history;

    const Vector x = lu.solve(rhs);
    const double scale = std::max(rhs.cwiseAbs().maxCoeff(), S.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff());
    if (scale > 0.0) max_residual = std::max(max_residual, (S * x - rhs).cwiseAbs().maxCoeff() / scale);
    U.row(n - 1) = x.transpose();
  }

  DGSolution sol(mesh, r, problem.alpha, std::move(U), problem.u0);
  sol.max_step_residual = max_residual;
  sol.max_history_magnitude = max_history;
  sol.factorizations = factorizations;
  return sol;
}

ErrorTable error_table(const DGSolution& sol, const ScalarFunction& exact, const RadauPoints& radau) {
  const int r = sol.r();
  detail::require(radau.degree == r, "error_table: Radau degree must equal r");
  const TimeMesh& mesh = sol.mesh();
  const int N = mesh.size();
  ErrorTable table{Matrix::Zero(N, r + 1), std::vector<double>(r + 1, 0.0)};
  const double weight_power = r - sol.alpha();
  for (int n = 1; n <= N; ++n) {
    for (int j = 0; j <= r; ++j) {
      const double tau = radau.taus[j];
      const double t = mesh.affine_map(n, tau);
      // local_value at tau = -1 / +1 gives the right / left limits.
      const double e = std::abs(sol.local_value(n, tau) - exact(t));
      table.errors(n - 1, j) = e;
      table.weighted_max[j] = std::max(table.weighted_max[j], std::pow(t, weight_power) * e);
    }
  }
  return table;
}

}  // namespace fracdg
