#include "fracdg/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracdg/errors.hpp"
#include "fracdg/polylib.hpp"

namespace fracdg {

namespace {

void check_alpha(double alpha) {
  detail::require(alpha > 0.0 && alpha <= 1.0, "coefficients: alpha must lie in (0, 1]");
}

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

// P_{j}(x) for j < r at each node, as an r x M matrix, plus derivatives.
struct LegendreTable {
  Matrix values;
  Matrix derivatives;
};

LegendreTable tabulate(int r, const std::vector<double>& xs) {
  LegendreTable t{Matrix(r, xs.size()), Matrix(r, xs.size())};
  for (std::size_t m = 0; m < xs.size(); ++m) {
    const auto lv = legendre_values(r, xs[m]);
    for (int j = 0; j < r; ++j) {
      t.values(j, m) = lv.values[j];
      t.derivatives(j, m) = lv.derivatives[j];
    }
  }
  return t;
}

// Gauss-Legendre rule mapped to [0, 1].
QuadRule unit_interval_rule(int M) {
  QuadRule rule = gauss_legendre(M);
  for (std::size_t m = 0; m < rule.size(); ++m) {
    rule.nodes[m] = 0.5 * (1.0 + rule.nodes[m]);
    rule.weights[m] *= 0.5;
  }
  return rule;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

Matrix g_matrix(int r) {
  detail::require(r >= 1, "g_matrix: r must be >= 1");
  Matrix G(r, r);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) G(i - 1, j - 1) = (i >= j) ? sign_pow(i + j) : 1.0;
  return G;
}

Matrix k_matrix(int r_now, int r_prev) {
  detail::require(r_now >= 1 && r_prev >= 1, "k_matrix: sizes must be >= 1");
  Matrix K(r_now, r_prev);
  for (int i = 1; i <= r_now; ++i) K.row(i - 1).setConstant(sign_pow(i - 1));
  return K;
}

Matrix h0_matrix(double alpha, int r, double k) {
  check_alpha(alpha);
  detail::require(r >= 1, "h0_matrix: r must be >= 1");
  detail::require(k > 0.0, "h0_matrix: step must be positive");

  const int max_points = r + 2;
  std::vector<QuadRule> sigma_rules, y_rules, z_rules;
  for (int M = 1; M <= max_points; ++M) {
    sigma_rules.push_back(gauss_jacobi(M, alpha - 1.0, 0.0));
    y_rules.push_back(gauss_jacobi(M, 0.0, alpha - 1.0));
    z_rules.push_back(gauss_legendre(M));
  }
  auto ceil_half = [](int m) { return (m + 1) / 2; };

  Matrix H(r, r);
  const double prefactor = std::pow(0.5 * k, alpha) / std::tgamma(alpha);
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      const QuadRule& rs = sigma_rules[ceil_half(j) + 2 - 1];
      double endpoint = 0.0;
      for (std::size_t m = 0; m < rs.size(); ++m)
        endpoint += rs.weights[m] * legendre(j - 1, rs.nodes[m]);

      double inner = 0.0;
      if (i >= 2) {
        const int count = std::max(ceil_half(i + j) - 1, 1) + 2;
        const QuadRule& ry = y_rules[count - 1];
        const QuadRule& rz = z_rules[count - 1];
        for (std::size_t a = 0; a < ry.size(); ++a) {
          const double y = ry.nodes[a];
          double phi = 0.0;
          for (std::size_t b = 0; b < rz.size(); ++b) {
            const double z = rz.nodes[b];
            const double s = 0.5 * (1.0 - y) * (1.0 + z) - 1.0;
            const double t = 1.0 - 0.5 * (1.0 - y) * (1.0 - z);
            phi += rz.weights[b] * legendre(j - 1, s) * legendre_derivative(i - 1, t);
          }
          inner += ry.weights[a] * (1.0 - y) * 0.5 * phi;
        }
      }
      H(i - 1, j - 1) = prefactor * (endpoint - inner);
    }
  }
  return H;
}

Matrix h1_fixed(double alpha, int r, double ratio, int M) {
  check_alpha(alpha);
  detail::require(ratio > 0.0, "h1_fixed: step ratio must be positive");
  detail::require(M >= 1, "h1_fixed: M must be >= 1");

  const double rho = ratio;
  const double c = std::pow(1.0 + rho, 1.0 - alpha);

  const QuadRule gl = gauss_legendre(M);
  const QuadRule gj_b = gauss_jacobi(M, alpha - 1.0, 0.0);
  const QuadRule gj_tau = gauss_jacobi(M, 0.0, alpha);
  const QuadRule gj_sigma = gauss_jacobi(M, alpha, 0.0);
  const QuadRule unit = unit_interval_rule(M);

  Vector A = Vector::Zero(r), B = Vector::Zero(r);
  {
    const LegendreTable p = tabulate(r, gl.nodes);
    for (int m = 0; m < M; ++m) {
      const double w = gl.weights[m] * std::pow(2.0 * rho + 1.0 - gl.nodes[m], alpha - 1.0);
      A += w * p.values.col(m);
    }
    const LegendreTable pb = tabulate(r, gj_b.nodes);
    for (int m = 0; m < M; ++m) B += gj_b.weights[m] * pb.values.col(m);
  }
  A *= c;
  B *= c;

  Matrix C = Matrix::Zero(r, r);
  // First Duffy half: outer tau with weight (1+tau)^alpha, inner z in [0,1].
  {
    const LegendreTable ptau = tabulate(r, gj_tau.nodes);
    for (int a = 0; a < M; ++a) {
      const double tau = gj_tau.nodes[a];
      Vector inner = Vector::Zero(r);
      for (int b = 0; b < M; ++b) {
        const double z = unit.nodes[b];
        const auto lv = legendre_values(r, 1.0 - z * (1.0 + tau));
        const double w = unit.weights[b] * std::pow(rho + z, alpha - 1.0);
        for (int j = 0; j < r; ++j) inner[j] += w * lv.values[j];
      }
      C += gj_tau.weights[a] * ptau.derivatives.col(a) * inner.transpose();
    }
  }
  // Second half: outer sigma with weight (1-sigma)^alpha.
  {
    const LegendreTable psig = tabulate(r, gj_sigma.nodes);
    for (int a = 0; a < M; ++a) {
      const double sigma = gj_sigma.nodes[a];
      Vector inner = Vector::Zero(r);
      for (int b = 0; b < M; ++b) {
        const double z = unit.nodes[b];
        const auto lv = legendre_values(r, z * (1.0 - sigma) - 1.0);
        const double w = unit.weights[b] * std::pow(rho * z + 1.0, alpha - 1.0);
        for (int i = 0; i < r; ++i) inner[i] += w * lv.derivatives[i];
      }
      C += gj_sigma.weights[a] * inner * psig.values.col(a).transpose();
    }
  }
  C *= c;

  // D = (k_n + k_{n-1})/2 with k_{n-1} = 1.
  const double D = 0.5 * (1.0 + rho);
  const double prefactor = std::pow(D, alpha - 1.0) / std::tgamma(alpha) * 0.5;
  Matrix H(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) H(i, j) = prefactor * (A[j] - sign_pow(i) * B[j] - C(i, j));
  return H;
}

Matrix hfar_fixed(double alpha, int r, const IntervalGeometry& geo, int M) {
  check_alpha(alpha);
  const QuadRule gl = gauss_legendre(M);
  const LegendreTable p = tabulate(r, gl.nodes);
  Matrix kernel(M, M);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      kernel(a, b) = gl.weights[a] * gl.weights[b] *
                     std::pow(1.0 + geo.delta(gl.nodes[a], gl.nodes[b]), alpha - 2.0);
  const double prefactor = -(1.0 - alpha) / std::tgamma(alpha) * geo.k_now * geo.k_past / 4.0 *
                           std::pow(geo.distance, alpha - 2.0);
  return prefactor * (p.values * kernel * p.values.transpose());
}

Matrix hfar_abc_fixed(double alpha, int r, const IntervalGeometry& geo, int M) {
  check_alpha(alpha);
  const QuadRule gl = gauss_legendre(M);
  const LegendreTable p = tabulate(r, gl.nodes);
  Vector A = Vector::Zero(r), B = Vector::Zero(r);
  Matrix kernel(M, M);
  for (int b = 0; b < M; ++b) {
    const double s = gl.nodes[b];
    A += gl.weights[b] * std::pow(1.0 + geo.delta(1.0, s), alpha - 1.0) * p.values.col(b);
    B += gl.weights[b] * std::pow(1.0 + geo.delta(-1.0, s), alpha - 1.0) * p.values.col(b);
    for (int a = 0; a < M; ++a)
      kernel(a, b) = gl.weights[a] * gl.weights[b] *
                     std::pow(1.0 + geo.delta(gl.nodes[a], s), alpha - 1.0);
  }
  const Matrix C = p.derivatives * kernel * p.values.transpose();
  const double prefactor = std::pow(geo.distance, alpha - 1.0) / std::tgamma(alpha) * geo.k_past / 2.0;
  Matrix H(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) H(i, j) = prefactor * (A[j] - sign_pow(i) * B[j] - C(i, j));
  return H;
}

namespace {

template <class Eval>
Matrix doubling(Eval&& eval, double scale, const HistoryOptions& opts, const char* what) {
  int M = std::max(opts.start_points, 1);
  Matrix prev = eval(M);
  double delta = 0.0;
  while (M < opts.max_points) {
    M = std::min(2 * M, opts.max_points);
    Matrix next = eval(M);
    delta = max_abs_diff(next, prev) / scale;
    if (delta < opts.atol) return next;
    prev = std::move(next);
  }
  std::ostringstream msg;
  msg << what << ": no convergence with " << opts.max_points << " points (last delta " << delta
      << ")";
  throw NumericalError(msg.str());
}

void check_lag(const TimeMesh& mesh, int n, int lbar) {
  detail::require(n >= 1 && n <= mesh.size(), "h_matrix: interval index out of range");
  detail::require(lbar >= 1 && lbar <= n - 1, "h_matrix: lag must satisfy 1 <= lbar <= n-1");
}

}  // namespace

Matrix h_matrix(double alpha, int r, const TimeMesh& mesh, int n, int lbar,
                const HistoryOptions& opts) {
  check_alpha(alpha);
  check_lag(mesh, n, lbar);
  const double scale = std::pow(mesh.step(n), alpha);
  if (lbar == 1) {
    const double k_prev = mesh.step(n - 1);
    const double rho = mesh.step(n) / k_prev;
    const double kfac = std::pow(k_prev, alpha);
    return doubling([&](int M) { return Matrix(kfac * h1_fixed(alpha, r, rho, M)); }, scale, opts,
                    "h_matrix(lag 1)");
  }
  const IntervalGeometry geo = interval_geometry(mesh, n, n - lbar);
  return doubling([&](int M) { return hfar_fixed(alpha, r, geo, M); }, scale, opts, "h_matrix");
}

Matrix h_matrix_abc(double alpha, int r, const TimeMesh& mesh, int n, int lbar,
                    const HistoryOptions& opts) {
  check_alpha(alpha);
  check_lag(mesh, n, lbar);
  detail::require(lbar >= 2, "h_matrix_abc: lag must be >= 2");
  const IntervalGeometry geo = interval_geometry(mesh, n, n - lbar);
  const double scale = std::pow(mesh.step(n), alpha);
  return doubling([&](int M) { return hfar_abc_fixed(alpha, r, geo, M); }, scale, opts,
                  "h_matrix_abc");
}

Matrix h_uniform(double alpha, int r, int lbar, const HistoryOptions& opts) {
  detail::require(lbar >= 0, "h_uniform: lag must be >= 0");
  if (lbar == 0) return h0_matrix(alpha, r, 1.0);
  if (lbar == 1)
    return doubling([&](int M) { return h1_fixed(alpha, r, 1.0, M); }, 1.0, opts, "h_uniform");
  const IntervalGeometry geo{1.0, 1.0, static_cast<double>(lbar)};
  return doubling([&](int M) { return hfar_fixed(alpha, r, geo, M); }, 1.0, opts, "h_uniform");
}

int gauss_points_required(double alpha, int r, int lbar, double atol) {
  detail::require(lbar >= 1, "gauss_points_required: lag must be >= 1");
  constexpr int reference_points = 12;
  const IntervalGeometry geo{1.0, 1.0, static_cast<double>(lbar)};
  auto eval = [&](int M) {
    return lbar == 1 ? h1_fixed(alpha, r, 1.0, M) : hfar_fixed(alpha, r, geo, M);
  };
  const Matrix reference = eval(reference_points);
  for (int M = 1; M < reference_points; ++M)
    if (max_abs_diff(eval(M), reference) < atol) return M;
  return reference_points;
}

// ---------------------------------------------------------------------------

CoeffSet CoeffSet::uniform(double alpha, int r, int max_lag, const HistoryOptions& opts) {
  check_alpha(alpha);
  detail::require(r >= 1, "CoeffSet: r must be >= 1");
  detail::require(max_lag >= 0, "CoeffSet: max_lag must be >= 0");
  CoeffSet set;
  set.alpha_ = alpha;
  set.r_ = r;
  set.uniform_ = true;
  set.opts_ = opts;
  set.G_ = g_matrix(r);
  set.K_ = k_matrix(r, r);
  set.H0_ = h0_matrix(alpha, r, 1.0);
  set.history_.reserve(max_lag);
  for (int lbar = 1; lbar <= max_lag; ++lbar) {
    set.history_.push_back(h_uniform(alpha, r, lbar, opts));
    if (opts.drop_tol > 0.0 && lbar >= 2 &&
        set.history_.back().cwiseAbs().maxCoeff() < opts.drop_tol) {
      set.cutoff_lag_ = lbar;
      break;
    }
  }
  set.lag_used_.assign(set.history_.size() + 1, false);
  return set;
}

CoeffSet CoeffSet::for_mesh(double alpha, int r, const TimeMesh& mesh, const HistoryOptions& opts) {
  if (mesh.is_uniform()) return uniform(alpha, r, mesh.size() - 1, opts);
  check_alpha(alpha);
  detail::require(r >= 1, "CoeffSet: r must be >= 1");
  CoeffSet set;
  set.alpha_ = alpha;
  set.r_ = r;
  set.uniform_ = false;
  set.opts_ = opts;
  set.G_ = g_matrix(r);
  set.K_ = k_matrix(r, r);
  set.H0_ = h0_matrix(alpha, r, 1.0);
  return set;
}

const Matrix& CoeffSet::history(int lbar) const {
  detail::require(uniform_, "CoeffSet: no uniform cache");
  detail::require(lbar >= 1 && lbar <= max_cached_lag(), "CoeffSet: lag outside the cache");
  return history_[lbar - 1];
}

double CoeffSet::step_scale(const TimeMesh& mesh, int n) const {
  // Uniform meshes use the nominal step so every interval shares one scale.
  const double k = uniform_ ? mesh.final_time() / mesh.size() : mesh.step(n);
  return std::pow(k, alpha_);
}

Matrix CoeffSet::diagonal_block(const TimeMesh& mesh, int n) const { return step_scale(mesh, n) * H0_; }

std::optional<Matrix> CoeffSet::memory_block(const TimeMesh& mesh, int n, int lbar) const {
  if (!uniform_) return h_matrix(alpha_, r_, mesh, n, lbar, opts_);
  if (cutoff_lag_ > 0 && lbar >= cutoff_lag_) return std::nullopt;
  detail::require(lbar >= 1 && lbar <= max_cached_lag(), "CoeffSet: lag outside the cache");
  ++cache_hits_;
  lag_used_[lbar] = true;
  return step_scale(mesh, n) * history_[lbar - 1];
}

std::size_t CoeffSet::distinct_lags_used() const {
  return static_cast<std::size_t>(std::count(lag_used_.begin(), lag_used_.end(), true));
}

bool CoeffSet::matches(double alpha, int r, const TimeMesh& mesh) const {
  if (alpha != alpha_ || r != r_) return false;
  if (uniform_) return mesh.is_uniform() && (cutoff_lag_ > 0 || max_cached_lag() >= mesh.size() - 1);
  return true;
}

}  // namespace fracdg
