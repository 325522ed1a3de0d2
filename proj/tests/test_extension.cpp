#include <gtest/gtest.h>

#include <cmath>

#include "extomo/extension.hpp"

using namespace extomo;

TEST(Extension, ConstantOnCircleIsBessel) {
  auto c = make_circle_grid(256);
  Density one = Density::constant(c, 1.0);
  for (double r : {0.0, 1.0, 7.5, 40.0}) {
    Vec x = r * Vec(std::cos(0.4), std::sin(0.4), 0);
    cplx v = extend(one, x);
    EXPECT_NEAR(v.real(), 2 * kPi * std::cyl_bessel_j(0.0, r), 1e-11) << r;
    EXPECT_NEAR(v.imag(), 0.0, 1e-11);
    EXPECT_NEAR(sigma_hat_circle(r), 2 * kPi * std::cyl_bessel_j(0.0, r), 1e-14);
  }
}

TEST(Extension, ConstantOnSphereIsSinc) {
  auto s = make_sphere_grid(48, 96);
  Density one = Density::constant(s, 1.0);
  for (double r : {0.0, 2.0, 20.0}) {
    Vec x = r * Vec(0.48, -0.6, 0.64);
    EXPECT_NEAR(extend(one, x).real(), r == 0 ? 4 * kPi : 4 * kPi * std::sin(r) / r, 1e-10) << r;
  }
  EXPECT_NEAR(sigma_hat_sphere(0), 4 * kPi, 1e-15);
}

TEST(Extension, ModulationTranslates) {
  // e^{i a.xi} g has extension x -> g^dsigma(x + a)
  auto c = make_circle_grid(128);
  Vec a(1.5, -0.5, 0);
  Density g = Density::sample(c, [](const Vec& x) { return cplx(1 + x.x(), 0); });
  Density h = g.map([](cplx z) { return z; });
  std::vector<cplx> v(c->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = g[j] * std::polar(1.0, a.dot(c->nodes[j]));
  Density gm(c, v, OffNode::nearest);
  Vec x(0.3, 2.0, 0);
  EXPECT_NEAR(std::abs(extend(gm, x) - extend(h, x + a)), 0.0, 1e-12);
}

TEST(Extension, LatticeAndManyAgreeWithPointwise) {
  auto s = make_sphere_grid(10, 20);
  Density g = Density::sample(s, [](const Vec& x) { return cplx(x.z() + 0.5, x.x()); });
  std::vector<double> a{-1.0, 0.0, 2.5}, b{-0.5, 1.0};
  Vec o(0.1, 0.2, 0.3), e1(1, 0, 0), e2(0, 0, 1);
  Eigen::MatrixXcd F = extend_lattice(g, o, e1, a, e2, b);
  std::vector<Vec> pts;
  for (double ak : a)
    for (double bl : b) pts.push_back(o + ak * e1 + bl * e2);
  std::vector<cplx> many = extend_many(g, pts);
  std::size_t idx = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = 0; l < b.size(); ++l, ++idx) {
      cplx p = extend(g, pts[idx]);
      EXPECT_NEAR(std::abs(F(k, l) - p), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(many[idx] - p), 0.0, 1e-12);
    }
}

TEST(Extension, FieldPathsAgreeAndBudgetIsEnforced) {
  auto c = make_circle_grid(64);
  Density g = Density::constant(c, 1.0);
  FieldSpec spec{2, 4.0, 9};
  SampledField fast = extend_field(g, spec, true), slow = extend_field(g, spec, false);
  ASSERT_EQ(fast.size(), 81u);
  for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(std::abs(fast.values[i] - slow.values[i]), 0, 1e-12);
  EXPECT_THROW(extend_field(g, spec, false, 10.0), ResourceLimit);
}

TEST(Slices, MassAndConstantSliceTransform) {
  // n = 3: the coarea weight makes every slice have mass 2 pi
  for (double t : {0.0, 0.5, 0.9}) EXPECT_NEAR(slice_mass(3, t), 2 * kPi, 1e-12);
  for (double t : {0.0, 0.5}) EXPECT_NEAR(slice_mass(2, t), 2 / std::sqrt(1 - t * t), 1e-12);
  auto s = make_sphere_grid(8, 16);
  Density one = Density::constant(s, 1.0);
  Vec om(0, 0, 1), v(1.2, -0.7, 0);
  double t = 0.6, rho = std::sqrt(1 - t * t);
  cplx val = extend_slice(one, {om, t}, v);
  EXPECT_NEAR(val.real(), 2 * kPi * std::cyl_bessel_j(0.0, rho * v.norm()), 1e-10);
  EXPECT_NEAR(val.imag(), 0.0, 1e-10);
}

TEST(Slices, CirclePoints) {
  auto pts = slice_points(2, Vec(1, 0, 0), 0.6);
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& p : pts) {
    EXPECT_NEAR(p.xi.x(), 0.6, 1e-15);
    EXPECT_NEAR(p.xi.norm(), 1, 1e-15);
    EXPECT_NEAR(p.weight, 1 / 0.8, 1e-14);
  }
}

TEST(StationaryPhase, EnvelopeIsBounded) {
  ExperimentReport r = stationary_phase_decay_check(3, {1, 4, 16, 64});
  EXPECT_TRUE(r.pass) << r.summary();
}
