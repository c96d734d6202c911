#include "fracdg/fem1d.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"

namespace fracdg {

FemSpace1D::FemSpace1D(double L, int elements, int degree) : L_(L), E_(elements), p_(degree) {
  detail::require(L > 0.0, "FemSpace1D: L must be positive");
  detail::require(elements >= 1, "FemSpace1D: need at least one element");
  detail::require(degree >= 1, "FemSpace1D: degree must be >= 1");
  detail::require(elements * degree >= 2, "FemSpace1D: space has no free nodes");
}

std::vector<double> FemSpace1D::free_nodes() const {
  std::vector<double> x(dimension());
  const double step = element_size() / p_;
  for (int q = 0; q < dimension(); ++q) x[q] = (q + 1) * step;
  return x;
}

void FemSpace1D::shape(double xi, std::vector<double>& values, std::vector<double>& derivatives) const {
  values.assign(p_ + 1, 0.0);
  derivatives.assign(p_ + 1, 0.0);
  const double scale = 1.0 / element_size();
  for (int a = 0; a <= p_; ++a) {
    const double xa = static_cast<double>(a) / p_;
    double v = 1.0, dv = 0.0;
    for (int b = 0; b <= p_; ++b) {
      if (b == a) continue;
      const double xb = static_cast<double>(b) / p_;
      const double factor = (xi - xb) / (xa - xb);
      dv = dv * factor + v / (xa - xb);
      v *= factor;
    }
    values[a] = v;
    derivatives[a] = dv * scale;
  }
}

Vector FemSpace1D::interpolate(const std::function<double(double)>& g) const {
  const auto x = free_nodes();
  Vector c(dimension());
  for (int q = 0; q < dimension(); ++q) c[q] = g(x[q]);
  return c;
}

double FemSpace1D::evaluate(const Vector& c, double x) const {
  detail::require(x >= 0.0 && x <= L_, "FemSpace1D::evaluate: x outside [0, L]");
  detail::require(c.size() == dimension(), "FemSpace1D::evaluate: coefficient size mismatch");
  const double h = element_size();
  const int e = std::min(E_ - 1, static_cast<int>(x / h));
  std::vector<double> v, dv;
  shape(x / h - e, v, dv);
  double u = 0.0;
  for (int a = 0; a <= p_; ++a) {
    const int q = dof(global_node(e, a));
    if (q >= 0) u += c[q] * v[a];
  }
  return u;
}

SpatialOperators assemble(const FemSpace1D& space) {
  const int P = space.dimension(), p = space.degree();
  const double h = space.element_size();
  SpatialOperators ops{Matrix::Zero(P, P), Matrix::Zero(P, P)};
  const QuadRule mass_rule = gauss_legendre(p + 1);
  const QuadRule stiff_rule = gauss_legendre(p);
  std::vector<double> v, dv;

  Matrix Me = Matrix::Zero(p + 1, p + 1), Ae = Matrix::Zero(p + 1, p + 1);
  for (std::size_t m = 0; m < mass_rule.size(); ++m) {
    space.shape(0.5 * (1.0 + mass_rule.nodes[m]), v, dv);
    const double w = 0.5 * h * mass_rule.weights[m];
    for (int a = 0; a <= p; ++a)
      for (int b = 0; b <= p; ++b) Me(a, b) += w * v[a] * v[b];
  }
  for (std::size_t m = 0; m < stiff_rule.size(); ++m) {
    space.shape(0.5 * (1.0 + stiff_rule.nodes[m]), v, dv);
    const double w = 0.5 * h * stiff_rule.weights[m];
    for (int a = 0; a <= p; ++a)
      for (int b = 0; b <= p; ++b) Ae(a, b) += w * dv[a] * dv[b];
  }
  Me = 0.5 * (Me + Me.transpose()).eval();
  Ae = 0.5 * (Ae + Ae.transpose()).eval();

  for (int e = 0; e < space.elements(); ++e) {
    for (int a = 0; a <= p; ++a) {
      const int qa = space.dof(space.global_node(e, a));
      if (qa < 0) continue;
      for (int b = 0; b <= p; ++b) {
        const int qb = space.dof(space.global_node(e, b));
        if (qb < 0) continue;
        ops.M(qa, qb) += Me(a, b);
        ops.A(qa, qb) += Ae(a, b);
      }
    }
  }
  return ops;
}

Vector load_vector(const FemSpace1D& space, const std::function<double(double)>& g) {
  const int p = space.degree();
  const double h = space.element_size();
  const QuadRule rule = gauss_legendre(p + 4);
  Vector b = Vector::Zero(space.dimension());
  std::vector<double> v, dv;
  for (int e = 0; e < space.elements(); ++e) {
    for (std::size_t m = 0; m < rule.size(); ++m) {
      const double xi = 0.5 * (1.0 + rule.nodes[m]);
      space.shape(xi, v, dv);
      const double w = 0.5 * h * rule.weights[m] * g((e + xi) * h);
      for (int a = 0; a <= p; ++a) {
        const int q = space.dof(space.global_node(e, a));
        if (q >= 0) b[q] += w * v[a];
      }
    }
  }
  return b;
}

Vector l2_project(const FemSpace1D& space, const std::function<double(double)>& g) {
  const Matrix M = assemble(space).M;
  const Vector b = load_vector(space, g);
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) throw NumericalError("l2_project: mass matrix is not positive definite");
  const Vector c = llt.solve(b);
  const double scale = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  if ((M * c - b).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NumericalError("l2_project: projection residual too large");
  return c;
}

NormRule norm_rule(const FemSpace1D& space) {
  const int p = space.degree();
  const double h = space.element_size();
  const QuadRule rule = gauss_legendre(p + 4);
  const int nq = space.elements() * static_cast<int>(rule.size());
  NormRule out{{}, {}, Matrix::Zero(nq, space.dimension())};
  std::vector<double> v, dv;
  int row = 0;
  for (int e = 0; e < space.elements(); ++e) {
    for (std::size_t m = 0; m < rule.size(); ++m, ++row) {
      const double xi = 0.5 * (1.0 + rule.nodes[m]);
      space.shape(xi, v, dv);
      out.x.push_back((e + xi) * h);
      out.w.push_back(0.5 * h * rule.weights[m]);
      for (int a = 0; a <= p; ++a) {
        const int q = space.dof(space.global_node(e, a));
        if (q >= 0) out.basis(row, q) = v[a];
      }
    }
  }
  return out;
}

}  // namespace fracdg
