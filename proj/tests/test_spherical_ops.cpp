#include <gtest/gtest.h>

#include <cmath>

#include "extomo/experiments.hpp"
#include "extomo/rng.hpp"
#include "extomo/spherical_ops.hpp"

using namespace extomo;

namespace {

// int_0^{2 pi} dtheta / (|cos theta| + delta)
double t_delta_circle(double d) {
  return 4 * 2 / std::sqrt(1 - d * d) * std::atanh(std::sqrt((1 - d) / (1 + d)));
}

}  // namespace

TEST(Funk, ConstantSlices) {
  auto s = make_sphere_grid(8, 16);
  EXPECT_NEAR(funk_At(Density::constant(s, 1.0), Vec(0, 0, 1), 0.3).real(), 2 * kPi, 1e-12);
  auto c = make_circle_grid(64);
  EXPECT_NEAR(funk_At(Density::constant(c, 1.0), Vec(1, 0, 0), 0.6).real(), 2 / 0.8, 1e-12);
}

TEST(TDelta, CircleClosedForm) {
  // the kink of |cos| at the equator makes the node sum second order
  for (double d : {0.5, 0.1}) {
    double want = t_delta_circle(d), err[2];
    for (int k = 0; k < 2; ++k) {
      Density one = Density::constant(make_circle_grid(8192 << k), 1.0);
      err[k] = std::abs(T_delta(one, Vec(1, 0, 0), d).real() - want);
      EXPECT_LT(err[k], 1e-5 * want) << d;
      EXPECT_NEAR(T_delta_reduction(one, Vec(1, 0, 0), d).real(), want, 1e-5 * want) << d;
    }
    EXPECT_LT(err[1], 0.3 * err[0]) << d;
  }
}

TEST(TDelta, ReductionMatchesDirectOnSphere) {
  auto s = make_sphere_grid(64, 128);
  Density g = random_smooth_density(s, 4, 3, 1.5);
  Vec om = Vec(0.2, 0.3, 0.9).normalized();
  cplx a = T_delta(g, om, 0.2), b = T_delta_reduction(g, om, 0.2);
  EXPECT_NEAR(std::abs(a - b), 0.0, 1e-4 * std::abs(a));
}

TEST(TDelta, ZeroDeltaNeedsMargin) {
  auto c = make_circle_grid(1024);
  Density bump = cap_bump_density(c, Vec(1, 0, 0), 0.5);
  // bump supported in |theta| < 0.5, |cos| > 0.87: finite and equal to T_delta at tiny delta
  cplx z = T_zero(bump, Vec(1, 0, 0));
  EXPECT_NEAR(std::abs(z - T_delta(bump, Vec(1, 0, 0), 1e-12)), 0.0, 1e-9);
  EXPECT_THROW(T_zero(Density::constant(c, 1.0), Vec(1, 0, 0)), PreconditionViolation);
}

TEST(SOperator, Constant) {
  auto s = make_sphere_grid(8, 16);
  EXPECT_NEAR(S_operator(Density::constant(s, 1.0), Vec(0, 0, 1)), 2 * kPi * std::sqrt(2.0), 1e-10);
}

TEST(Bilinear, GenericMatchesClosedFormOnCircle) {
  auto c = make_circle_grid(512);
  Density g1 = random_smooth_density(c, 1, 4, 1.0), g2 = random_smooth_density(c, 2, 4, 1.0);
  for (double t : {-0.7, 0.1, 0.5}) {
    Vec om(std::cos(0.3), std::sin(0.3), 0);
    cplx a = BA_t(g1, g2, om, t, BAPath::generic), b = BA_t(g1, g2, om, t, BAPath::closed_form);
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-8 * (1 + std::abs(b))) << t;
  }
}

TEST(Bilinear, CauchySchwarzPointwise) {
  auto c = make_circle_grid(256);
  Rng rng(20, "cs");
  for (int i = 0; i < 20; ++i) {
    Density g = random_smooth_density(c, rng.next_u64(), 4, 3.0).abs();
    Vec om = rng.unit_vector(2);
    double t = rng.uniform(-0.9, 0.9);
    double lhs = std::abs(BA_t(g, g, om, t));
    Density g2 = g.abs_squared();
    // xi and the partner point both lie on the slice at height t
    double rhs = std::abs(funk_At(g2, om, t));
    EXPECT_LE(lhs, rhs * (1 + 1e-10) + 1e-12) << i;
  }
}

TEST(Bilinear, BTdeltaOfConstantsIsTdelta) {
  auto c = make_circle_grid(2048);
  Density one = Density::constant(c, 1.0);
  Vec om(1, 0, 0);
  EXPECT_NEAR(std::abs(BT_delta(one, one, om, 0.1) - T_delta(one, om, 0.1)), 0.0, 1e-9);
}

TEST(Rotcurv, PhiZeroAtOrigin) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  EXPECT_NEAR(phi0(z, z), 0.0, 1e-15);
  EXPECT_NEAR(rotcurv(phi0, z, z), 1.0, 1e-6);
  Eigen::VectorXd x(2), y(2);
  x << 0.03, -0.02;
  y << -0.01, 0.04;
  EXPECT_GE(rotcurv(phi0, x, y), 0.5);
  // x.y' + x_d sqrt(1-|y|^2) + y_d sqrt(1-|x|^2)
  double want = 0.03 * -0.01 + -0.02 * std::sqrt(1 - y.squaredNorm()) + 0.04 * std::sqrt(1 - x.squaredNorm());
  EXPECT_NEAR(phi0(x, y), want, 1e-15);
}
