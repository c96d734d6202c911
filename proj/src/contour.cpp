#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <utility>

#include "fracdg/errors.hpp"
#include "fracdg/reference.hpp"

namespace fracdg {

namespace {

constexpr double kPi = std::numbers::pi;

struct Shape {
  double d = 0.0;
  double h = 0.0;
  double mu_tmin = 0.0;  // mu * t_min
  double log_error = std::numeric_limits<double>::infinity();
};

// Worst log error over the window for asymptotic angle d, strip half-width
// a < d and step h, with mu chosen where the growing bounds meet the
// decaying truncation bound.
Shape balance(int K, double ratio, double d, double a, double h) {
  Shape s{d, h, 0.0, std::numeric_limits<double>::infinity()};
  const double truncation = 1.0 - std::sin(d) * std::cosh(K * h);
  if (truncation >= 0.0) return s;
  const double upper = -2.0 * kPi * (kPi / 2.0 - d) / h;
  // growing bounds p * m + q in m = mu * t_min
  const double p_lower = ratio * (1.0 - std::sin(d - a));
  const double q_lower = -2.0 * kPi * a / h;
  const double p_round = ratio * (1.0 - std::sin(d));
  const double q_round = std::log(std::numeric_limits<double>::epsilon());
  const double m_lower = q_lower / (truncation - p_lower);
  const double m_round = q_round / (truncation - p_round);
  const double m = std::min(m_lower, m_round);
  s.mu_tmin = m;
  s.log_error = std::max(upper, truncation * m);
  return s;
}

Shape optimize(int K, double ratio) {
  Shape best;
  double d_lo = 0.02, d_hi = 1.55, f_lo = 0.02, f_hi = 0.98, hk_lo = 0.05, hk_hi = 6.0;
  for (int pass = 0; pass < 4; ++pass) {
    constexpr int n = 48;
    const double dd = (d_hi - d_lo) / n, df = (f_hi - f_lo) / n, dh = (hk_hi - hk_lo) / n;
    double best_f = 0.5;
    for (int i = 0; i <= n; ++i) {
      const double d = d_lo + i * dd;
      for (int j = 0; j <= n; ++j) {
        const double frac = f_lo + j * df;
        for (int l = 0; l <= n; ++l) {
          const double h = (hk_lo + l * dh) / K;
          const Shape s = balance(K, ratio, d, frac * d, h);
          if (s.log_error < best.log_error) {
            best = s;
            best_f = frac;
          }
        }
      }
    }
    const double hk = best.h * K;
    d_lo = std::max(0.01, best.d - 2 * dd);
    d_hi = std::min(kPi / 2 - 1e-6, best.d + 2 * dd);
    f_lo = std::max(1e-3, best_f - 2 * df);
    f_hi = std::min(1.0 - 1e-3, best_f + 2 * df);
    hk_lo = std::max(1e-3, hk - 2 * dh);
    hk_hi = hk + 2 * dh;
  }
  return best;
}

Shape cached_shape(int K, double ratio) {
  static std::mutex lock;
  static std::map<std::pair<int, double>, Shape> cache;
  std::lock_guard<std::mutex> guard(lock);
  const auto key = std::make_pair(K, ratio);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, optimize(K, ratio)).first;
  return it->second;
}

}  // namespace

ContourRule hyperbola_rule(int K, double mu, double d, double h) {
  detail::require(K >= 1, "hyperbola_rule: K must be >= 1");
  detail::require(mu > 0.0 && h > 0.0, "hyperbola_rule: mu and h must be positive");
  detail::require(d > 0.0 && d < kPi / 2, "hyperbola_rule: d must lie in (0, pi/2)");
  ContourRule rule{K, mu, d, h, 0.0, {}, {}};
  for (int k = -K; k <= K; ++k) {
    const Complex w(-d, k * h);  // i u - d
    rule.nodes.push_back(mu * (1.0 + std::sin(w)));
    rule.weights.push_back(h * mu * std::cos(w) / (2.0 * kPi));
  }
  return rule;
}

ContourRule optimized_hyperbola(int K, double t_min, double t_max) {
  detail::require(t_min > 0.0 && t_max >= t_min, "optimized_hyperbola: need 0 < t_min <= t_max");
  const Shape s = cached_shape(K, t_max / t_min);
  ContourRule rule = hyperbola_rule(K, s.mu_tmin / t_min, s.d, s.h);
  rule.log_error = s.log_error;
  return rule;
}

PdeReference::PdeReference(PdeReferenceParams params, double t_min, double t_max, int K)
    : params_(params), t_min_(t_min), t_max_(t_max), rule_(optimized_hyperbola(K, t_min, t_max)) {}

const std::vector<Complex>& PdeReference::transform_at(double x) const {
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  std::vector<Complex> values;
  values.reserve(rule_.nodes.size());
  for (const Complex& z : rule_.nodes) values.push_back(pde_transform(x, z, params_));
  return cache_.emplace(x, std::move(values)).first->second;
}

double PdeReference::value(double x, double t, double* imag) const {
  const double slack = 1e-12 * t_max_;
  detail::require(t >= t_min_ - slack && t <= t_max_ + slack, "PdeReference: t outside the window");
  const auto& ut = transform_at(x);
  Complex sum = 0.0;
  for (std::size_t k = 0; k < ut.size(); ++k) sum += rule_.weights[k] * std::exp(rule_.nodes[k] * t) * ut[k];
  if (imag) *imag = sum.imag();
  return sum.real();
}

WindowedPdeReference::WindowedPdeReference(PdeReferenceParams params, int K) : params_(params), K_(K) {}

double WindowedPdeReference::value(double x, double t) const {
  detail::require(t >= 0.0, "WindowedPdeReference: t must be >= 0");
  if (t == 0.0) return params_.C0 * x * (params_.L - x);
  const int m = static_cast<int>(std::ceil(std::log10(t) - 1e-12));
  auto it = windows_.find(m);
  if (it == windows_.end())
    it = windows_.emplace(m, PdeReference(params_, std::pow(10.0, m - 1), std::pow(10.0, m), K_)).first;
  return it->second.value(x, t);
}

}  // namespace fracdg
