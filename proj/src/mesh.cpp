#include "fracdg/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "fracdg/errors.hpp"

namespace fracdg {

std::string to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::uniform: return "uniform";
    case MeshKind::graded: return "graded";
    case MeshKind::composite: return "composite";
    case MeshKind::explicit_levels: return "explicit";
  }
  return "unknown";
}

TimeMesh::TimeMesh(std::vector<double> levels, MeshKind kind, double q)
    : levels_(std::move(levels)), kind_(kind), q_(q) {}

TimeMesh TimeMesh::uniform(int N, double T) {
  detail::require(N >= 1, "mesh: N must be >= 1");
  detail::require(T > 0.0, "mesh: T must be positive");
  std::vector<double> t(N + 1);
  for (int n = 0; n <= N; ++n) t[n] = T * n / N;
  t[N] = T;
  return TimeMesh(std::move(t), MeshKind::uniform, 1.0);
}

TimeMesh TimeMesh::graded(int N, double T, double q) {
  detail::require(N >= 1, "mesh: N must be >= 1");
  detail::require(T > 0.0, "mesh: T must be positive");
  detail::require(q >= 1.0, "mesh: grading exponent q must be >= 1");
  std::vector<double> t(N + 1);
  for (int n = 0; n <= N; ++n) t[n] = T * std::pow(static_cast<double>(n) / N, q);
  t[N] = T;
  return TimeMesh(std::move(t), q == 1.0 ? MeshKind::uniform : MeshKind::graded, q);
}

TimeMesh TimeMesh::composite(int N_graded, double t_switch, double q, int N_uniform, double T) {
  detail::require(N_uniform >= 1, "mesh: composite mesh needs uniform steps");
  detail::require(T > t_switch, "mesh: final time must exceed the grading switch time");
  TimeMesh head = graded(N_graded, t_switch, q);
  std::vector<double> t = head.levels_;
  const double span = T - t_switch;
  for (int n = 1; n <= N_uniform; ++n) t.push_back(t_switch + span * n / N_uniform);
  t.back() = T;
  return TimeMesh(std::move(t), MeshKind::composite, q);
}

TimeMesh TimeMesh::from_levels(std::vector<double> levels) {
  detail::require(levels.size() >= 2, "mesh: need at least two levels");
  detail::require(levels.front() == 0.0, "mesh: first level must be 0");
  for (std::size_t n = 1; n < levels.size(); ++n)
    detail::require(levels[n] > levels[n - 1], "mesh: levels must be strictly increasing");
  return TimeMesh(std::move(levels), MeshKind::explicit_levels, 1.0);
}

double TimeMesh::step(int n) const {
  detail::require(n >= 1 && n <= size(), "mesh: interval index out of range");
  return levels_[n] - levels_[n - 1];
}

double TimeMesh::max_step() const {
  double k = 0.0;
  for (int n = 1; n <= size(); ++n) k = std::max(k, step(n));
  return k;
}

double TimeMesh::affine_map(int n, double tau) const {
  detail::require(n >= 1 && n <= size(), "mesh: interval index out of range");
  if (tau == -1.0) return levels_[n - 1];
  if (tau == 1.0) return levels_[n];
  return 0.5 * ((1.0 - tau) * levels_[n - 1] + (1.0 + tau) * levels_[n]);
}

double TimeMesh::reference_coordinate(int n, double t) const {
  const double a = levels_.at(n - 1), b = levels_.at(n);
  if (t == a) return -1.0;
  if (t == b) return 1.0;
  return (2.0 * t - a - b) / (b - a);
}

double TimeMesh::midpoint(int n) const { return affine_map(n, 0.0); }

int TimeMesh::locate(double t, bool prefer_left) const {
  detail::require(t >= 0.0 && t <= final_time(), "mesh: time outside [0, T]");
  auto it = prefer_left ? std::lower_bound(levels_.begin(), levels_.end(), t)
                        : std::upper_bound(levels_.begin(), levels_.end(), t);
  int n = static_cast<int>(it - levels_.begin());
  return std::clamp(n, 1, size());
}

bool TimeMesh::is_uniform() const {
  const double k = final_time() / size();
  for (int n = 1; n <= size(); ++n)
    if (std::abs(step(n) - k) > 8.0 * 2.220446049250313e-16 * final_time()) return false;
  return true;
}

IntervalGeometry interval_geometry(const TimeMesh& mesh, int n, int l) {
  detail::require(1 <= l && l <= n && n <= mesh.size(), "mesh: bad interval pair");
  return {mesh.step(n), mesh.step(l), mesh.midpoint(n) - mesh.midpoint(l)};
}

double step_ratio(const TimeMesh& mesh, int n) {
  detail::require(n >= 2, "mesh: step ratio needs n >= 2");
  return mesh.step(n) / mesh.step(n - 1);
}

}  // namespace fracdg
