#pragma once

#include <string>
#include <vector>

namespace fracdg {

enum class MeshKind { uniform, graded, composite, explicit_levels };

std::string to_string(MeshKind kind);

/// Time levels 0 = t_0 < t_1 < ... < t_N = T. Intervals are numbered
/// 1..N, interval n being (t_{n-1}, t_n).
class TimeMesh {
 public:
  /// t_n = n T / N.
  static TimeMesh uniform(int N, double T);
  /// t_n = (n/N)^q T, q >= 1.
  static TimeMesh graded(int N, double T, double q);
  /// Graded with N_graded steps on [0, t_switch] followed by N_uniform
  /// equal steps on [t_switch, T].
  static TimeMesh composite(int N_graded, double t_switch, double q, int N_uniform, double T);
  /// Any strictly increasing levels starting at 0.
  static TimeMesh from_levels(std::vector<double> levels);

  int size() const { return static_cast<int>(levels_.size()) - 1; }
  double final_time() const { return levels_.back(); }
  const std::vector<double>& levels() const { return levels_; }
  double level(int n) const { return levels_.at(n); }
  MeshKind kind() const { return kind_; }
  double grading() const { return q_; }

  /// k_n = t_n - t_{n-1}, 1 <= n <= N.
  double step(int n) const;
  double max_step() const;
  /// Affine map of [-1, 1] onto [t_{n-1}, t_n]; exact at both endpoints.
  double affine_map(int n, double tau) const;
  /// Inverse of affine_map on interval n.
  double reference_coordinate(int n, double t) const;
  /// Midpoint t_{n-1/2}.
  double midpoint(int n) const;
  /// Interval containing t; ties at interior levels resolve to the left
  /// interval when prefer_left, else the right one.
  int locate(double t, bool prefer_left) const;
  /// True when every step equals T/N up to rounding.
  bool is_uniform() const;

 private:
  TimeMesh(std::vector<double> levels, MeshKind kind, double q);
  std::vector<double> levels_;
  MeshKind kind_;
  double q_;
};

/// Geometry linking interval n with an earlier (or the same) interval l.
struct IntervalGeometry {
  double k_now;     // k_n
  double k_past;    // k_l
  double distance;  // D = t_{n-1/2} - t_{l-1/2}
  /// Delta(tau, sigma) = (tau k_n - sigma k_l) / (2 D); requires D > 0.
  double delta(double tau, double sigma) const {
    return (tau * k_now - sigma * k_past) / (2.0 * distance);
  }
};

IntervalGeometry interval_geometry(const TimeMesh& mesh, int n, int l);

/// rho_n = k_n / k_{n-1}, n >= 2.
double step_ratio(const TimeMesh& mesh, int n);

}  // namespace fracdg
