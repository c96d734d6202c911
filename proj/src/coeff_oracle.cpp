// Brute-force evaluation of the memory coefficients straight from their
// definition, kept apart from the quadrature representations in
// coefficients.cpp so it can serve as an independent check.

#include <cmath>
#include <functional>
#include <sstream>

#include "fracdg/coefficients.hpp"
#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"

namespace fracdg {

namespace {

// Composite Gauss-Legendre on [0, length], in offsets from the singular
// endpoint, with breakpoints graded geometrically (ratio `ratio`, `levels`
// pieces) and `m` points per piece. The innermost piece touching the singular endpoint is integrated
// as well; its contribution is below the tolerance by construction.
struct GradedRule {
  std::vector<double> offsets;  // distance from the graded endpoint
  std::vector<double> weights;
};

GradedRule graded_rule(double length, int levels, int m, double ratio) {
  const QuadRule gl = gauss_legendre(m);
  GradedRule out;
  std::vector<double> breaks;  // distances from the singular endpoint
  breaks.push_back(0.0);
  for (int l = levels; l >= 1; --l) breaks.push_back(length * std::pow(ratio, l));
  breaks.push_back(length);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    for (int q = 0; q < m; ++q) {
      const double d = lo + 0.5 * (hi - lo) * (1.0 + gl.nodes[q]);
      out.offsets.push_back(d);
      out.weights.push_back(0.5 * (hi - lo) * gl.weights[q]);
    }
  }
  return out;
}

struct Resolution {
  int levels;
  int points;
};

class DefinitionOracle {
 public:
  DefinitionOracle(double alpha, int r, const TimeMesh& mesh, int n, int l, Resolution res)
      : alpha_(alpha), r_(r), mesh_(mesh), n_(n), l_(l), res_(res),
        gamma_(std::tgamma(alpha)) {}

  Matrix evaluate() const {
    // d/dt of the memory convolution behaves like (t - t_{n-1})^{alpha-1}
    // for lag 0 and lag 1; grade toward t_{n-1} in all cases. Offsets are
    // carried explicitly so t - s never suffers cancellation.
    const double k = mesh_.step(n_);
    const GradedRule outer = graded_rule(k, res_.levels, res_.points, kRatio);
    Matrix H = Matrix::Zero(r_, r_);
    for (std::size_t q = 0; q < outer.offsets.size(); ++q) {
      const double d = outer.offsets[q];
      const Vector drho = memory_derivative(d);
      const auto psi = legendre_values(r_, 2.0 * d / k - 1.0);
      for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) H(i, j) += outer.weights[q] * psi.values[i] * drho[j];
    }
    return H;
  }

 private:
  static constexpr double kRatio = 0.15;

  double omega(double x) const { return std::pow(x, alpha_ - 1.0) / gamma_; }

  // d/dt int omega_alpha(t - s) psi_{l j}(s) ds over I_l (or [t_{n-1}, t]
  // for lag 0) at t = t_{n-1} + d, for each j.
  Vector memory_derivative(double d) const {
    Vector out = Vector::Zero(r_);
    const double k = mesh_.step(l_);
    const double gap = mesh_.level(n_ - 1) - mesh_.level(l_);  // t_{n-1} - t_l, 0 for lag 1
    const bool same = (l_ == n_);
    const double to_left = same ? d : gap + d + k;   // t - (left end)
    const double to_right = same ? 0.0 : gap + d;    // t - (right end)
    const double length = same ? d : k;
    // Boundary terms omega(t - left) psi(left) - omega(t - right) psi(right);
    // the latter is absent for lag 0 where the upper limit moves with t.
    for (int j = 0; j < r_; ++j) {
      const double psi_left = (j % 2 == 0) ? 1.0 : -1.0;
      out[j] += omega(to_left) * psi_left;
      if (!same) out[j] -= omega(to_right);
    }
    if (r_ == 1 || length <= 0.0) return out;
    // Convolution with psi'; kernel is singular (or nearly) at the right end.
    const GradedRule inner = graded_rule(length, res_.levels, res_.points, kRatio);
    for (std::size_t q = 0; q < inner.offsets.size(); ++q) {
      const double e = inner.offsets[q];  // distance of s from the right end
      const double tau = same ? 2.0 * (d - e) / k - 1.0 : 1.0 - 2.0 * e / k;
      const auto lv = legendre_values(r_, tau);
      const double w = inner.weights[q] * omega(to_right + e) * 2.0 / k;
      for (int j = 1; j < r_; ++j) out[j] += w * lv.derivatives[j];
    }
    return out;
  }

  double alpha_;
  int r_;
  const TimeMesh& mesh_;
  int n_, l_;
  Resolution res_;
  double gamma_;
};

}  // namespace

Matrix oracle_h(double alpha, int r, const TimeMesh& mesh, int n, int lbar, double tol) {
  detail::require(alpha > 0.0 && alpha <= 1.0, "oracle_h: alpha must lie in (0, 1]");
  detail::require(r >= 1, "oracle_h: r must be >= 1");
  detail::require(tol >= 1e-11, "oracle_h: tolerance must be >= 1e-11");
  detail::require(n >= 1 && n <= mesh.size(), "oracle_h: interval index out of range");
  detail::require(lbar >= 0 && lbar <= n - 1, "oracle_h: lag out of range");

  const int l = n - lbar;
  // The unresolved innermost piece contributes O((ratio^levels)^alpha).
  const int levels = static_cast<int>(std::ceil(std::log(tol * 1e-3) / (alpha * std::log(0.15)))) + 2;
  Resolution res{levels, 8};
  Matrix prev = DefinitionOracle(alpha, r, mesh, n, l, res).evaluate();
  double delta = 0.0;
  const double scale = std::max(1.0, prev.cwiseAbs().maxCoeff());
  for (int round = 0; round < 5; ++round) {
    res.points += 6;
    res.levels += 4;
    Matrix next = DefinitionOracle(alpha, r, mesh, n, l, res).evaluate();
    delta = (next - prev).cwiseAbs().maxCoeff() / scale;
    if (delta < 0.1 * tol) return next;
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << "oracle_h: adaptivity budget exceeded (last delta " << delta << ")";
  throw NumericalError(msg.str());
}

}  // namespace fracdg
