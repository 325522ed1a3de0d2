#include <gtest/gtest.h>

#include <cmath>

#include "extomo/convex.hpp"
#include "extomo/tomography.hpp"

using namespace extomo;

namespace {

const Field gauss = [](const Vec& x) { return std::exp(-0.5 * x.squaredNorm()); };
const double sqrt2pi = std::sqrt(2 * kPi);

}  // namespace

TEST(Xray, GaussianClosedForm) {
  Vec om = Vec(1, 1, 0).normalized();
  Line l = make_line(om, Vec(-0.5, 0.5, 0));
  EXPECT_NEAR(xray(gauss, l, 12, 481), sqrt2pi * std::exp(-0.25), 1e-10);
  EXPECT_NEAR(x0(gauss, Vec(0, 0, 1), 12, 481), sqrt2pi, 1e-10);
  EXPECT_THROW(make_line(om, Vec(1, 0, 0)), InvalidArgument);
}

TEST(Radon, GaussianPlane) {
  Hyperplane h{Vec(0, 0.6, 0.8), 0.7};
  EXPECT_NEAR(radon(gauss, 3, h, 9, 181), 2 * kPi * std::exp(-0.5 * 0.49), 1e-8);
  Hyperplane l{Vec(1, 0, 0), 0.3};
  EXPECT_NEAR(radon(gauss, 2, l, 12, 481), sqrt2pi * std::exp(-0.045), 1e-10);
}

TEST(Xray, TailBound) {
  // int_T^inf a s^-d ds on both ends
  EXPECT_NEAR(tail_bound(2, 2, 10), 2 * 2 / 10.0, 1e-15);
}

TEST(Profiles, FractionalSobolevOfGaussianProfile) {
  // u = sqrt(2 pi) e^{-v^2/2}: ||(-Delta)^{1/4} u||^2 = (2 pi)^{-1} int |eta| |u^|^2 = 2 pi
  LineProfile p = xray_profile(gauss, 2, Vec(1, 0, 0), 12, 241, 12, 241);
  EXPECT_NEAR(p.values[120], sqrt2pi, 1e-10);
  // |eta| has a kink at 0, so the error falls like pad^-2
  double e4 = frac_sobolev_norm(p, 0.25, 4) - sqrt2pi, e8 = frac_sobolev_norm(p, 0.25, 8) - sqrt2pi;
  EXPECT_LT(std::abs(e8), 1e-4 * sqrt2pi);
  EXPECT_NEAR(e8 / e4, 0.25, 0.01);
  // alpha = 0 is the L^2 norm, sqrt(2 pi) * pi^{1/4}
  EXPECT_NEAR(frac_sobolev_norm(p, 0.0), sqrt2pi * std::pow(kPi, 0.25), 1e-6);
  EXPECT_NEAR(profile_l2(p), sqrt2pi * std::pow(kPi, 0.25), 1e-6);
}

TEST(Profiles, FracLaplacianOfGaussianHasUnitFirstMoment) {
  LineProfile p = xray_profile(gauss, 2, Vec(1, 0, 0), 16, 257, 12, 241);
  LineProfile q = frac_laplacian(p, 1.0);  // -u'' = (1 - v^2) u
  for (int i : {100, 128, 150}) {
    double v = p.coord(i);
    EXPECT_NEAR(q.values[i], (1 - v * v) * p.values[i], 1e-8) << v;
  }
}

TEST(Isometry, GaussianRatio) {
  // ||(-Delta_v)^{1/4} X f||^2 / ||f||^2 = 4 pi in the plane
  IsometrySpec s;
  s.n_directions = 16;
  IsometryResult r = xray_isometry_ratio(gauss, 2, s);
  EXPECT_NEAR(r.ratio * r.ratio, 4 * kPi, 1e-3 * 4 * kPi);
}

TEST(Sinogram, FilteredBackprojectionRecoversGaussian) {
  Sinogram s = sinogram_2d(gauss, 90, 129, 6, 8, 161);
  EXPECT_NEAR(s.at(0, 64), sqrt2pi, 1e-8);
  std::vector<std::string> warn;
  SampledField f = radon_invert_2d(s, {2, 3.0, 31}, &warn);
  EXPECT_TRUE(warn.empty());
  double err = 0, ref = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double want = gauss(f.point(i));
    err += std::norm(f.values[i] - want);
    ref += want * want;
  }
  EXPECT_LT(std::sqrt(err / ref), 1e-2);
  Sinogram few = sinogram_2d(gauss, 8, 33, 6, 8, 81);
  radon_invert_2d(few, {2, 3.0, 11}, &warn);
  EXPECT_FALSE(warn.empty());
}

TEST(Tubes, IntegralsAndMembership) {
  Field one = [](const Vec&) { return 1.0; };
  EXPECT_NEAR(tube_integral(one, 2, Vec::Zero(), Vec(1, 0, 0), 3, 0.2), 2 * 0.2 * 3, 1e-12);
  EXPECT_NEAR(tube_integral(one, 3, Vec::Zero(), Vec(0, 0, 1), 2, 0.5), kPi * 0.25 * 2, 1e-2);
  Tube t{Vec(1, 0, 0), Vec::Zero()};
  EXPECT_TRUE(in_tube(t, 2, 0.1, Vec(0.9, 0.05, 0)));
  EXPECT_FALSE(in_tube(t, 2, 0.1, Vec(1.1, 0.0, 0)));
  EXPECT_FALSE(in_tube(t, 2, 0.1, Vec(0.0, 0.2, 0)));
}

TEST(Tubes, FamilySeparation) {
  TubeFamily fam{0.1, 1, {{Vec(1, 0, 0), Vec::Zero()}, {Vec(0, 1, 0), Vec::Zero()}}};
  EXPECT_NO_THROW(validate_family(fam));
  fam.tubes.push_back({Vec(std::cos(0.05), std::sin(0.05), 0), Vec(0, 1, 0)});
  EXPECT_THROW(validate_family(fam), InvalidArgument);
  // directions are compared modulo sign
  TubeFamily anti{0.1, 1, {{Vec(1, 0, 0), Vec::Zero()}, {Vec(-1, 0, 0), Vec(0, 1, 0)}}};
  EXPECT_THROW(validate_family(anti), InvalidArgument);
}

TEST(Tubes, KakeyaOfSingleTube) {
  // one tube: ||1_T||_{n/(n-1)} = |T|^{(n-1)/n}
  double d = 0.05;
  TubeFamily fam{d, 1, {{Vec(1, 0, 0), Vec::Zero()}}};
  KakeyaDual k = kakeya_dual_functional(fam, 2, d / 8);
  EXPECT_NEAR(k.lhs, std::sqrt(2 * d * 1), 0.05 * std::sqrt(2 * d));
  Field one = [](const Vec& x) { return std::abs(x.y()) <= 0.5 ? 1.0 : 0.0; };
  EXPECT_NEAR(sup_xray(gauss, 2, Vec(1, 0, 0), 0.25, 2, 10, 401), sqrt2pi, 1e-9);
  EXPECT_GT(kakeya_max(one, 2, 0.1, Vec(1, 0, 0), {}), 0.99);
}

TEST(Convex, NormBoxGeometry) {
  NormBox K{3, 1, 2.0, 0.5};  // |x_1| <= 2, |(x_2, x_3)| <= 0.5
  EXPECT_TRUE(K.contains(Vec(1.9, 0.3, 0.3)));
  EXPECT_FALSE(K.contains(Vec(1.9, 0.4, 0.4)));
  EXPECT_NEAR(K.max_chord(Vec(1, 0, 0)), 4.0, 1e-12);
  EXPECT_NEAR(K.max_chord(Vec(0, 0, 1)), 1.0, 1e-12);
  EXPECT_NEAR(K.chord(Vec(0, 0.3, 0), Vec(0, 0, 1)), 2 * 0.4, 1e-12);
  EXPECT_NEAR(K.section_area(Vec(1, 0, 0), 1.0), kPi * 0.25, 1e-6);
  EXPECT_NEAR(K.section_area(Vec(1, 0, 0), 2.5), 0.0, 1e-12);
  NormBox S = knapp_box(3, 1, 0.1);
  EXPECT_NEAR(S.max_chord(Vec(1, 0, 0)), 20, 1e-9);
  EXPECT_NEAR(S.max_chord(Vec(0, 0, 1)), 200, 1e-9);
}

TEST(Convex, AdaptiveSimpson) {
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sin(x); }, 0, kPi, 1e-12), 2.0, 1e-10);
  EXPECT_NEAR(adaptive_simpson([](double x) { return std::sqrt(x); }, 0, 1, 1e-12), 2.0 / 3, 1e-8);
}
