#include <gtest/gtest.h>

#include <cmath>

#include "fracdg/errors.hpp"
#include "fracdg/mesh.hpp"

using namespace fracdg;

TEST(TimeMesh, UniformLevels) {
  const TimeMesh m = TimeMesh::uniform(5, 2.0);
  ASSERT_EQ(m.size(), 5);
  EXPECT_EQ(m.level(0), 0.0);
  EXPECT_EQ(m.final_time(), 2.0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(m.step(n), 0.4, 1e-15);
  EXPECT_TRUE(m.is_uniform());
  EXPECT_EQ(m.kind(), MeshKind::uniform);
}

TEST(TimeMesh, GradedFormula) {
  const TimeMesh m = TimeMesh::graded(8, 1.0, 3.0);
  for (int n = 0; n <= 8; ++n) EXPECT_NEAR(m.level(n), std::pow(n / 8.0, 3.0), 1e-15);
  EXPECT_FALSE(m.is_uniform());
  EXPECT_EQ(m.kind(), MeshKind::graded);
  for (int n = 2; n <= 8; ++n) EXPECT_GT(m.step(n), m.step(n - 1));
}

TEST(TimeMesh, GradingOneIsUniform) {
  const TimeMesh m = TimeMesh::graded(7, 1.5, 1.0);
  EXPECT_TRUE(m.is_uniform());
  EXPECT_EQ(m.kind(), MeshKind::uniform);
}

TEST(TimeMesh, CompositeGradedThenUniform) {
  const double q = (3 + 0.6) / 0.6;
  const TimeMesh m = TimeMesh::composite(34, 1.0, q, 6, 2.0);
  ASSERT_EQ(m.size(), 40);
  EXPECT_EQ(m.level(34), 1.0);
  EXPECT_EQ(m.final_time(), 2.0);
  EXPECT_NEAR(m.level(1), std::pow(1.0 / 34, q), 1e-25);
  for (int n = 35; n <= 40; ++n) EXPECT_NEAR(m.step(n), 1.0 / 6, 1e-15);
  EXPECT_EQ(m.kind(), MeshKind::composite);
}

TEST(TimeMesh, AffineMapExactAtEndpoints) {
  const TimeMesh m = TimeMesh::graded(9, 2.0, 2.5);
  for (int n = 1; n <= 9; ++n) {
    EXPECT_EQ(m.affine_map(n, -1.0), m.level(n - 1));
    EXPECT_EQ(m.affine_map(n, 1.0), m.level(n));
    EXPECT_NEAR(m.reference_coordinate(n, m.affine_map(n, 0.3)), 0.3, 1e-12);
  }
}

TEST(TimeMesh, LocateResolvesTiesBySide) {
  const TimeMesh m = TimeMesh::uniform(4, 1.0);
  EXPECT_EQ(m.locate(0.5, true), 2);
  EXPECT_EQ(m.locate(0.5, false), 3);
  EXPECT_EQ(m.locate(0.6, true), 3);
  EXPECT_EQ(m.locate(0.0, false), 1);
  EXPECT_EQ(m.locate(1.0, false), 4);
  EXPECT_THROW(m.locate(1.5, true), InvalidArgument);
}

TEST(TimeMesh, RejectsInvalidInput) {
  EXPECT_THROW(TimeMesh::uniform(0, 1.0), InvalidArgument);
  EXPECT_THROW(TimeMesh::uniform(3, -1.0), InvalidArgument);
  EXPECT_THROW(TimeMesh::graded(3, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(TimeMesh::from_levels({0.0, 0.5, 0.5}), InvalidArgument);
  EXPECT_THROW(TimeMesh::from_levels({0.1, 0.5}), InvalidArgument);
  EXPECT_THROW(TimeMesh::composite(4, 2.0, 2.0, 3, 1.0), InvalidArgument);
}

TEST(IntervalGeometry, DistanceAndDelta) {
  const TimeMesh m = TimeMesh::from_levels({0.0, 0.5, 1.5, 3.0});
  const IntervalGeometry g = interval_geometry(m, 3, 1);
  EXPECT_DOUBLE_EQ(g.k_now, 1.5);
  EXPECT_DOUBLE_EQ(g.k_past, 0.5);
  EXPECT_DOUBLE_EQ(g.distance, 2.25 - 0.25);
  EXPECT_DOUBLE_EQ(g.delta(1.0, -1.0), (1.5 + 0.5) / 4.0);
  EXPECT_DOUBLE_EQ(step_ratio(m, 3), 1.5);
}
