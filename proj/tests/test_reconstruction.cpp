#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracdg/dg_ode.hpp"
#include "fracdg/errors.hpp"
#include "fracdg/reconstruction.hpp"
#include "fracdg/reference.hpp"

using namespace fracdg;

namespace {

ScalarProblem cosine_problem(double T) {
  ScalarProblem p;
  p.alpha = 0.5;
  p.lambda = 0.5;
  p.u0 = 1.0;
  p.T = T;
  p.f = [](double t) { return std::cos(std::numbers::pi * t); };
  return p;
}

DGSolution solve(const ScalarProblem& p, const TimeMesh& m, int r) {
  return solve_ode(p, m, r, CoeffSet::for_mesh(p.alpha, r, m));
}

}  // namespace

TEST(Reconstruction, ZeroJumpLeavesSolutionUnchanged) {
  const Matrix U = (Matrix(3, 2) << 1.0, 2.0, 0.5, -1.0, 0.25, 0.0).finished();
  const Matrix R = reconstruct_block(U, Vector::Zero(2));
  EXPECT_EQ(R.topRows(3), U);
  EXPECT_EQ(R.row(3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Reconstruction, PiecewiseConstantBecomesLinearInterpolant) {
  // r = 1 with U = c on I_n and U^{n-1}_- = b: the reconstruction is the line
  // through (tau = -1, b) and (tau = 1, c).
  const double c = 0.7, b = 0.2;
  const Matrix R = reconstruct_block(Matrix::Constant(1, 1, c), Vector::Constant(1, c - b));
  for (double tau : {-1.0, -0.3, 0.4, 1.0})
    EXPECT_NEAR(R(0, 0) + R(1, 0) * tau, c + 0.5 * (c - b) * (tau - 1.0), 1e-15);
  EXPECT_NEAR(R(0, 0) - R(1, 0), b, 1e-15);
  EXPECT_NEAR(R(0, 0) + R(1, 0), c, 1e-15);
}

TEST(Reconstruction, InterpolatesAtInteriorRadauPoints) {
  for (int r = 2; r <= 5; ++r) {
    const DGSolution s = solve(cosine_problem(2.0), TimeMesh::graded(7, 2.0, 2.0), r);
    const ReconstructedSolution rec = reconstruct(s);
    const RadauPoints rp = radau_points(r);
    for (int n = 1; n <= 7; ++n)
      for (int j = 1; j <= r - 1; ++j)
        EXPECT_NEAR(rec.local_value(n, rp.taus[j]), s.local_value(n, rp.taus[j]), 1e-13);
  }
}

TEST(Reconstruction, DifferenceIsMultipleOfRadauPolynomial) {
  for (int r = 1; r <= 5; ++r) {
    const DGSolution s = solve(cosine_problem(2.0), TimeMesh::uniform(6, 2.0), r);
    const ReconstructedSolution rec = reconstruct(s);
    for (int n = 1; n <= 6; ++n) {
      const double a = 0.5 * ((r % 2 == 0) ? 1.0 : -1.0) * s.jump(n);
      for (int k = 0; k < 20; ++k) {
        const double tau = -1.0 + 2.0 * k / 19;
        const double diff = s.local_value(n, tau) - rec.local_value(n, tau);
        EXPECT_NEAR(diff, a * (legendre(r, tau) - legendre(r - 1, tau)), 1e-13);
      }
    }
  }
}

TEST(Reconstruction, ContinuousAcrossLevels) {
  const DGSolution s = solve(cosine_problem(1.0), TimeMesh::graded(12, 1.0, 3.0), 3);
  const ReconstructedSolution rec = reconstruct(s);
  EXPECT_NEAR(rec.local_value(1, -1.0), 1.0, 1e-13);
  for (int n = 1; n < 12; ++n) {
    EXPECT_NEAR(rec.local_value(n, 1.0), s.left_limit_at_end(n), 1e-13);
    EXPECT_NEAR(rec.local_value(n + 1, -1.0), rec.local_value(n, 1.0), 1e-13);
  }
}

TEST(Reconstruction, MaxErrorAgainstItselfIsZero) {
  const DGSolution s = solve(cosine_problem(1.0), TimeMesh::uniform(5, 1.0), 3);
  const ReconstructedSolution rec = reconstruct(s);
  EXPECT_LE(recon_max_error(rec, [&](double t) { return rec.evaluate(t, Side::right); }, 12), 1e-15);
  EXPECT_THROW(recon_max_error(rec, [](double) { return 0.0; }, 5), InvalidArgument);
}

TEST(Reconstruction, SamplingGridIncludesEndpoints) {
  const auto taus = sampling_taus(10);
  ASSERT_EQ(taus.size(), 12u);
  EXPECT_EQ(taus.front(), -1.0);
  EXPECT_EQ(taus.back(), 1.0);
  for (std::size_t i = 1; i < taus.size(); ++i) EXPECT_LT(taus[i - 1], taus[i]);
}

TEST(Reconstruction, BeatsDgSolutionAwayFromOrigin) {
  const ScalarProblem p = cosine_problem(2.0);
  const DGSolution s = solve(p, TimeMesh::uniform(10, 2.0), 3);
  const auto exact = ode_reference(p);
  const auto e_dg = dg_interval_errors(s, exact, 20);
  const auto e_rec = recon_interval_errors(reconstruct(s), exact, 20);
  for (int n = 2; n <= 10; ++n) EXPECT_LT(e_rec[n - 1], e_dg[n - 1]);
}
