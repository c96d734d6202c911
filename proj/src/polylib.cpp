#include "fracdg/polylib.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdg/errors.hpp"

namespace fracdg {

double QuadRule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
  return sum;
}

LegendreValues legendre_values(int r, double tau) {
  detail::require(r >= 1, "legendre_values: r must be >= 1");
  LegendreValues out;
  out.values.resize(r);
  out.derivatives.resize(r);
  out.values[0] = 1.0;
  out.derivatives[0] = 0.0;
  if (r > 1) {
    out.values[1] = tau;
    out.derivatives[1] = 1.0;
  }
  for (int n = 1; n + 1 < r; ++n) {
    // (n+1) P_{n+1} = (2n+1) tau P_n - n P_{n-1}
    out.values[n + 1] = ((2 * n + 1) * tau * out.values[n] - n * out.values[n - 1]) / (n + 1);
    // P'_{n+1} = P'_{n-1} + (2n+1) P_n
    out.derivatives[n + 1] = out.derivatives[n - 1] + (2 * n + 1) * out.values[n];
  }
  return out;
}

double legendre(int n, double tau) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = tau;
  for (int m = 1; m < n; ++m) {
    const double next = ((2 * m + 1) * tau * cur - m * prev) / (m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double legendre_derivative(int n, double tau) {
  if (n == 0) return 0.0;
  return legendre_values(n + 1, tau).derivatives[n];
}

double jacobi_moment0(double a, double b) {
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

namespace {

struct Recurrence {
  std::vector<double> alpha;      // alpha_0 .. alpha_{M-1}
  std::vector<double> sqrt_beta;  // sqrt(beta_0 = mu0), sqrt(beta_1) .. sqrt(beta_{M-1})
};

// Monic Jacobi recurrence p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}.
Recurrence jacobi_recurrence(int M, double a, double b) {
  Recurrence rec;
  rec.alpha.resize(M);
  rec.sqrt_beta.resize(M);
  const double ab = a + b;
  rec.alpha[0] = (b - a) / (ab + 2.0);
  rec.sqrt_beta[0] = std::sqrt(jacobi_moment0(a, b));
  for (int k = 1; k < M; ++k) {
    const double s = 2.0 * k + ab;
    rec.alpha[k] = (b * b - a * a) / (s * (s + 2.0));
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    rec.sqrt_beta[k] = std::sqrt(beta);
  }
  return rec;
}

// Orthonormal polynomials p_0..p_{M-1} at x; returns sum of squares and
// (a multiple of) p_M with its derivative.
struct OrthoEval {
  double christoffel_sum;
  double pm;
  double dpm;
};

OrthoEval eval_orthonormal(const Recurrence& rec, double x) {
  const int M = static_cast<int>(rec.alpha.size());
  double p_prev = 0.0, dp_prev = 0.0;
  double p = 1.0 / rec.sqrt_beta[0], dp = 0.0;
  double sum = p * p;
  for (int k = 0; k < M; ++k) {
    const double sb_k = (k == 0) ? 0.0 : rec.sqrt_beta[k];
    const double sb_next = (k + 1 < M) ? rec.sqrt_beta[k + 1] : 1.0;
    const double p_next = ((x - rec.alpha[k]) * p - sb_k * p_prev) / sb_next;
    const double dp_next = (p + (x - rec.alpha[k]) * dp - sb_k * dp_prev) / sb_next;
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
    if (k + 1 < M) sum += p * p;
  }
  return {sum, p, dp};
}

}  // namespace

QuadRule gauss_jacobi(int M, double a, double b) {
  detail::require(M >= 1, "gauss_jacobi: M must be >= 1");
  detail::require(a > -1.0 && b > -1.0, "gauss_jacobi: exponents must exceed -1");

  const Recurrence rec = jacobi_recurrence(M, a, b);
  Eigen::VectorXd diag(M);
  Eigen::VectorXd sub(std::max(M - 1, 1));
  for (int k = 0; k < M; ++k) diag[k] = rec.alpha[k];
  for (int k = 1; k < M; ++k) sub[k - 1] = rec.sqrt_beta[k];
  if (M == 1) sub[0] = 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(std::max(M - 1, 0)), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("gauss_jacobi: eigen-solve failed");

  QuadRule rule;
  rule.weight_kind = (a == 0.0 && b == 0.0) ? WeightKind::legendre() : WeightKind::jacobi(a, b);
  rule.nodes.resize(M);
  rule.weights.resize(M);
  for (int i = 0; i < M; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const OrthoEval e = eval_orthonormal(rec, x);
      if (e.dpm == 0.0) break;
      const double dx = e.pm / e.dpm;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / eval_orthonormal(rec, x).christoffel_sum;
  }
  // Exact symmetry of the Legendre/Gegenbauer case.
  if (a == b) {
    for (int i = 0; i < M / 2; ++i) {
      const double x = 0.5 * (rule.nodes[M - 1 - i] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[M - 1 - i] + rule.weights[i]);
      rule.nodes[i] = -x;
      rule.nodes[M - 1 - i] = x;
      rule.weights[i] = rule.weights[M - 1 - i] = w;
    }
    if (M % 2 == 1) rule.nodes[M / 2] = 0.0;
  }
  return rule;
}

QuadRule gauss_legendre(int M) { return gauss_jacobi(M, 0.0, 0.0); }

RadauPoints radau_points(int r) {
  detail::require(r >= 1, "radau_points: r must be >= 1");
  auto f = [r](double x) { return legendre(r, x) - legendre(r - 1, x); };
  auto df = [r](double x) {
    const auto lv = legendre_values(r + 1, x);
    return lv.derivatives[r] - lv.derivatives[r - 1];
  };

  RadauPoints out;
  out.degree = r;
  out.taus.push_back(-1.0);

  // Brackets from sign changes over Chebyshev extrema (open interval).
  const int m = 64 * r + 64;
  std::vector<double> grid;
  for (int k = m - 1; k >= 1; --k) grid.push_back(std::cos(std::numbers::pi * k / m));
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double lo = grid[k], hi = grid[k + 1];
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) {
      out.taus.push_back(lo);
      continue;
    }
    if (flo * fhi > 0.0) continue;
    double x = 0.5 * (lo + hi);
    double fx = f(x);
    for (int it = 0; it < 200 && std::abs(fx) > 1e-15; ++it) {
      const double d = df(x);
      double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (fx * flo < 0.0) {
        hi = x;
      } else {
        lo = x;
        flo = fx;
      }
      if (std::abs(next - x) <= 1e-17) {
        x = next;
        break;
      }
      x = next;
      fx = f(x);
    }
    fx = f(x);
    if (std::abs(fx) > 1e-13) {
      std::ostringstream msg;
      msg << "radau_points: root finder did not converge (r=" << r << ", residual=" << fx << ")";
      throw NumericalError(msg.str());
    }
    out.taus.push_back(x);
  }
  out.taus.push_back(1.0);
  if (static_cast<int>(out.taus.size()) != r + 1) {
    std::ostringstream msg;
    msg << "radau_points: found " << out.taus.size() - 1 << " zeros for r=" << r;
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace fracdg
