#include "fracdg/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracdg/errors.hpp"

namespace fracdg {

ReconstructedSolution::ReconstructedSolution(TimeMesh mesh, int r, Matrix coeffs, double u0)
    : mesh_(std::move(mesh)), r_(r), coeffs_(std::move(coeffs)), u0_(u0) {
  detail::require(coeffs_.rows() == mesh_.size() && coeffs_.cols() == r_ + 1,
                  "ReconstructedSolution: coefficient array has the wrong shape");
}

double ReconstructedSolution::local_value(int n, double tau) const {
  const auto lv = legendre_values(r_ + 1, tau);
  double u = 0.0;
  for (int j = 0; j <= r_; ++j) u += coeffs_(n - 1, j) * lv.values[j];
  return u;
}

double ReconstructedSolution::evaluate(double t, Side side) const {
  detail::require(t >= 0.0 && t <= mesh_.final_time(), "evaluate: time outside [0, T]");
  if (t == 0.0 && side == Side::left) return u0_;
  const int n = mesh_.locate(t, side == Side::left);
  return local_value(n, mesh_.reference_coordinate(n, t));
}

Matrix reconstruct_block(const Matrix& U, const Vector& jump) {
  const auto r = U.rows();
  detail::require(r >= 1 && jump.size() == U.cols(), "reconstruct_block: shape mismatch");
  Matrix out = Matrix::Zero(r + 1, U.cols());
  out.topRows(r) = U;
  const double half = (r % 2 == 0) ? 0.5 : -0.5;  // (1/2)(-1)^r
  out.row(r - 1) += half * jump.transpose();
  out.row(r) = -half * jump.transpose();
  return out;
}

ReconstructedSolution reconstruct(const DGSolution& sol) {
  const int N = sol.mesh().size();
  const int r = sol.r();
  Matrix C(N, r + 1);
  Vector jump(1);
  for (int n = 1; n <= N; ++n) {
    jump[0] = sol.jump(n);
    C.row(n - 1) = reconstruct_block(sol.coeffs().row(n - 1).transpose(), jump).transpose();
  }
  return ReconstructedSolution(sol.mesh(), r, std::move(C), sol.initial_value());
}

std::vector<double> sampling_taus(int samples) {
  detail::require(samples >= 1, "sampling_taus: need at least one sample");
  std::vector<double> taus{-1.0};
  for (int m = samples - 1; m >= 0; --m)
    taus.push_back(std::cos(std::numbers::pi * (2 * m + 1) / (2.0 * samples)));
  taus.push_back(1.0);
  return taus;
}

namespace {

template <class Local>
std::vector<double> interval_errors(const TimeMesh& mesh, Local&& local, const ScalarFunction& exact,
                                    int samples) {
  const auto taus = sampling_taus(samples);
  std::vector<double> out(mesh.size(), 0.0);
  for (int n = 1; n <= mesh.size(); ++n)
    for (double tau : taus)
      out[n - 1] = std::max(out[n - 1], std::abs(local(n, tau) - exact(mesh.affine_map(n, tau))));
  return out;
}

}  // namespace

std::vector<double> recon_interval_errors(const ReconstructedSolution& rec,
                                          const ScalarFunction& exact, int samples) {
  return interval_errors(rec.mesh(), [&](int n, double tau) { return rec.local_value(n, tau); },
                         exact, samples);
}

std::vector<double> dg_interval_errors(const DGSolution& sol, const ScalarFunction& exact,
                                       int samples) {
  return interval_errors(sol.mesh(), [&](int n, double tau) { return sol.local_value(n, tau); },
                         exact, samples);
}

double recon_max_error(const ReconstructedSolution& rec, const ScalarFunction& exact,
                       int samples_per_interval) {
  detail::require(samples_per_interval >= 10, "recon_max_error: need at least 10 samples");
  const auto e = recon_interval_errors(rec, exact, samples_per_interval);
  return *std::max_element(e.begin(), e.end());
}

}  // namespace fracdg
