#include <gtest/gtest.h>

#include <cmath>

#include "extomo/density.hpp"
#include "extomo/experiments.hpp"

using namespace extomo;

TEST(Density, ConstantNorms) {
  auto s = make_sphere_grid(12, 24);
  Density one = Density::constant(s, 1.0);
  EXPECT_NEAR(one.norm(1), 4 * kPi, 1e-12);
  EXPECT_NEAR(one.norm(2), std::sqrt(4 * kPi), 1e-12);
  EXPECT_NEAR(one.norm(kInf), 1.0, 0);
  EXPECT_NEAR(one.integral().real(), 4 * kPi, 1e-12);
  // a single level set: ||1||_{L^{p,r}} = |S^2|^{1/p} for every r
  EXPECT_NEAR(one.lorentz_norm(2, 1), std::sqrt(4 * kPi), 1e-12);
  EXPECT_NEAR(one.lorentz_norm(2, kInf), std::sqrt(4 * kPi), 1e-12);
}

TEST(Density, ZeroAndPredicates) {
  auto c = make_circle_grid(16);
  Density z = Density::zero(c);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.norm(2), 0.0);
  Density g = Density::constant(c, cplx(0, 1));
  EXPECT_FALSE(g.is_real());
  EXPECT_TRUE(g.abs().is_real());
}

TEST(Density, ExactModeEvaluatesOffNode) {
  auto c = make_circle_grid(32);
  Density g = Density::sample(c, [](const Vec& x) { return cplx(x.x() * x.x(), 0); });
  Vec p(std::cos(0.123), std::sin(0.123), 0);
  EXPECT_NEAR(g.at(p).real(), std::pow(std::cos(0.123), 2), 1e-15);
}

TEST(Density, CircleInterpolationIsExactForTrigPolynomials) {
  auto c = make_circle_grid(32);
  Density g = Density::sample(c, [](const Vec& x) {
                return cplx(1 + x.x() - 0.5 * x.y() + 2 * x.x() * x.y(), 0);
              }).with_mode(OffNode::interpolate);
  for (double th : {0.1, 1.7, 4.2}) {
    Vec p(std::cos(th), std::sin(th), 0);
    double want = 1 + p.x() - 0.5 * p.y() + 2 * p.x() * p.y();
    EXPECT_NEAR(g.at(p).real(), want, 1e-12) << th;
  }
}

TEST(Density, ReflectionCombineAndScale) {
  auto s = make_sphere_grid(8, 16);
  Density g = Density::sample(s, [](const Vec& x) { return cplx(x.z(), 0); });
  Density r = g.reflected_origin();
  for (std::size_t j = 0; j < s->size(); ++j) EXPECT_NEAR(r[j].real(), -g[j].real(), 1e-14);
  Density sum = Density::combine(1.0, g, 1.0, r);
  EXPECT_NEAR(sum.norm(kInf), 0.0, 1e-14);
  EXPECT_NEAR(g.scaled(3.0).norm(2), 3 * g.norm(2), 1e-12);
  EXPECT_NEAR(g.abs_squared().integral().real(), std::pow(g.norm(2), 2), 1e-12);
}

TEST(Density, KnappCapMeasure) {
  auto s = make_sphere_grid(200, 400);
  double r = 0.3;
  Density cap = knapp_cap_density(s, {Vec(0, 0, 1), r, Vec::Zero()});
  // |cap| = 2 pi (1 - cos r); first-order accurate for the indicator
  EXPECT_NEAR(cap.norm(1), 2 * kPi * (1 - std::cos(r)), 2e-2 * 2 * kPi * (1 - std::cos(r)));
  EXPECT_THROW(knapp_cap_density(s, {Vec(0, 0, 1), 2.0, Vec::Zero()}), InvalidArgument);
}

TEST(Density, BumpIsSmoothAndSupported) {
  auto s = make_sphere_grid(24, 48);
  Vec c(0, 0, 1);
  Density b = cap_bump_density(s, c, 0.5);
  EXPECT_NEAR(b.at(c).real(), 1.0, 1e-15);
  EXPECT_EQ(b.at(spherical_point(3, 0.6, 0)).real(), 0.0);
}

TEST(Density, PoissonMollifyPreservesMass) {
  auto c = make_circle_grid(256);
  Density g = random_smooth_density(c, 3, 4, 2.0);
  Density m = poisson_mollify_circle(g, 0.1);
  EXPECT_NEAR(m.integral().real(), g.integral().real(), 1e-10);
  EXPECT_LT(m.norm(kInf), g.norm(kInf) + 1e-12);
  EXPECT_THROW(poisson_mollify_circle(g, 1.5), InvalidArgument);
}

TEST(Density, RandomSmoothIsDeterministic) {
  auto c = make_circle_grid(64);
  Density a = random_smooth_density(c, 9), b = random_smooth_density(c, 9), d = random_smooth_density(c, 10);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_NE(a.values(), d.values());
}
