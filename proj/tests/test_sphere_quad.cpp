#include <gtest/gtest.h>

#include <cmath>

#include "extomo/sphere_quad.hpp"

using namespace extomo;

TEST(SphereGrid, CircleMeasureAndMoments) {
  auto g = make_circle_grid(64);
  EXPECT_EQ(g->dim, 2);
  EXPECT_EQ(g->size(), 64u);
  EXPECT_NEAR(g->total_measure(), 2 * kPi, 1e-13);
  // int cos^2 = pi, int cos^40 = 2 pi C(40,20) / 2^40
  EXPECT_NEAR(g->integrate([](const Vec& x) { return x.x() * x.x(); }), kPi, 1e-13);
  double c40 = 2 * kPi * std::exp(std::lgamma(41.0) - 2 * std::lgamma(21.0)) / std::pow(2.0, 40);
  EXPECT_NEAR(g->integrate([](const Vec& x) { return std::pow(x.x(), 40); }), c40, 1e-13);
  for (const auto& x : g->nodes) EXPECT_NEAR(x.norm(), 1.0, 1e-15);
}

TEST(SphereGrid, SphereMeasureAndMoments) {
  auto g = make_sphere_grid(16, 32);
  EXPECT_EQ(g->dim, 3);
  EXPECT_EQ(g->size(), 16u * 32u);
  EXPECT_NEAR(g->total_measure(), 4 * kPi, 1e-12);
  EXPECT_NEAR(g->integrate([](const Vec& x) { return x.z() * x.z(); }), 4 * kPi / 3, 1e-12);
  // int x^4 over S^2 = 4 pi / 5
  EXPECT_NEAR(g->integrate([](const Vec& x) { return std::pow(x.x(), 4); }), 4 * kPi / 5, 1e-12);
  EXPECT_NEAR(g->integrate([](const Vec& x) { return x.x() * x.y() * x.z(); }), 0.0, 1e-13);
}

TEST(SphereGrid, RefineDoublesResolution) {
  auto c = make_circle_grid(10);
  auto c2 = refine_grid(*c);
  EXPECT_EQ(c2->size(), 20u);
  auto s = make_sphere_grid(6, 12);
  auto s2 = refine_grid(*s);
  EXPECT_EQ(s2->n_polar, 12);
  EXPECT_EQ(s2->n_az, 24);
  EXPECT_GT(s2->exactness, s->exactness);
}

TEST(SphereGrid, NearestNode) {
  auto g = make_sphere_grid(8, 16);
  for (std::size_t j = 0; j < g->size(); j += 7) EXPECT_EQ(g->nearest(g->nodes[j]), j);
}

TEST(SphereGrid, RejectsBadSizes) {
  EXPECT_THROW(make_circle_grid(2), InvalidArgument);
  EXPECT_THROW(make_sphere_grid(0, 8), InvalidArgument);
}

TEST(Geometry, ReflectionAndProjection) {
  Vec om(0, 0, 1), xi(0.6, 0, 0.8);
  Vec r = reflect(om, xi);
  EXPECT_NEAR((r - Vec(0.6, 0, -0.8)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((reflect(om, r) - xi).norm(), 0.0, 1e-15);
  Vec p = project_perp(om, Vec(1, 2, 3));
  EXPECT_NEAR((p - Vec(1, 2, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((perp2(Vec(1, 0, 0)) - Vec(0, 1, 0)).norm(), 0.0, 1e-15);
}

TEST(Geometry, FrameIsOrthonormal) {
  for (const Vec& om : {Vec(0, 0, 1), Vec(1, 0, 0), Vec(0.3, -0.4, 0.5).normalized()}) {
    Vec e1, e2;
    orthonormal_frame(om, e1, e2);
    EXPECT_NEAR(e1.norm(), 1, 1e-14);
    EXPECT_NEAR(e2.norm(), 1, 1e-14);
    EXPECT_NEAR(e1.dot(e2), 0, 1e-14);
    EXPECT_NEAR(e1.dot(om), 0, 1e-14);
    EXPECT_NEAR(e2.dot(om), 0, 1e-14);
  }
}

TEST(Geometry, GeodesicDistanceAndPoints) {
  EXPECT_NEAR(geodesic_distance(Vec(1, 0, 0), Vec(0, 1, 0)), kPi / 2, 1e-15);
  EXPECT_NEAR(geodesic_distance(Vec(1, 0, 0), Vec(-1, 0, 0)), kPi, 1e-15);
  Vec p = spherical_point(3, kPi / 2, 0);
  EXPECT_NEAR((p - Vec(1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_THROW(reflect(Vec(2, 0, 0), Vec(1, 0, 0)), InvalidArgument);
}

TEST(Geometry, CirclePoissonKernelHasMassTwoPi) {
  auto g = make_circle_grid(512);
  for (double r : {0.1, 0.5, 0.9}) {
    double m = g->integrate([r](const Vec& x) { return poisson_kernel_circle(r, std::atan2(x.y(), x.x())); });
    EXPECT_NEAR(m, 2 * kPi, 1e-10) << r;
  }
}
