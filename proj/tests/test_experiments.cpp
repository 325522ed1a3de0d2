#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "extomo/experiments.hpp"

using namespace extomo;

TEST(Experiments, RotcurvAndLogLaw) {
  ExperimentReport r = rotcurv_check();
  EXPECT_TRUE(r.pass) << r.summary();
  EXPECT_NEAR(r.metrics.at("rotcurv_origin"), 1.0, 1e-6);
  ExperimentReport t = t_delta_log_law();
  EXPECT_TRUE(t.pass) << t.summary();
  EXPECT_EQ(t.sweeps.size(), 1u);
}

TEST(Experiments, BilinearSmall) {
  ExperimentReport r = bilinear_closed_form(10, 5);
  EXPECT_LE(r.metrics.at("max_diff"), 1e-8);
}

TEST(Experiments, GammaCutoff) {
  EXPECT_NEAR(gamma_cutoff(0), 1.0, 1e-15);
  EXPECT_NEAR(gamma_cutoff(1e-9), 1.0, 1e-12);
  double r = 3.0, phi = 8 * std::cyl_bessel_j(2.0, r / 2) / std::pow(r / 2, 2);
  EXPECT_NEAR(gamma_cutoff(r), std::pow(phi, 6), 1e-14);
}

TEST(Experiments, WeightsDecay) {
  Weight g = gaussian_weight(2);
  EXPECT_NEAR(g.w(Vec::Zero()), 1.0, 1e-15);
  EXPECT_LT(g.w(Vec(g.extent, 0, 0)), 1e-8);
  Weight t = tube_weight(Vec(1, 0, 0), 2, 10);
  EXPECT_EQ(t.w(Vec(9, 1.9, 0)), 1.0);
  EXPECT_EQ(t.w(Vec(9, 3.1, 0)), 0.0);
  EXPECT_NEAR(bracket_weight().w(Vec(0, 1, 0)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Functionals, Parsing) {
  Functional f = parse_functional("T_delta_norm(2, 2, 0.01)");
  EXPECT_EQ(f.id, "T_delta_norm");
  EXPECT_EQ(f.delta, 0.01);
  Functional x = parse_functional("xray_sup_ratio(2,inf)");
  EXPECT_TRUE(std::isinf(x.q));
  EXPECT_EQ(parse_functional("MT_radial_constant(32)").R, 32);
  EXPECT_THROW(parse_functional("nope(1)"), InvalidArgument);
  EXPECT_THROW(parse_functional("T_delta_norm(1,2,3,4)"), InvalidArgument);
  EXPECT_THROW(parse_functional("T_delta_norm(a)"), InvalidArgument);
  EXPECT_THROW(parse_functional("T_delta_norm(2,2,-1)"), InvalidArgument);
}

TEST(Extremize, ZeroStepsReturnsInit) {
  auto c = make_circle_grid(16);
  Density g = random_smooth_density(c, 1, 3, 2.0);
  Functional f = parse_functional("T_delta_norm(2,2,0.01)");
  auto res = extremize(f, g, 0, 0.5, 1);
  Density gn = g.scaled(1 / g.norm(2));
  EXPECT_NEAR(res.report.metrics.at("objective"), evaluate_functional(f, gn), 1e-12);
  EXPECT_EQ(res.report.metrics.at("accepted_steps"), 0);
  EXPECT_NEAR(res.best.norm(2), 1.0, 1e-12);
}

TEST(Extremize, AscentIsMonotoneAndBeatsConstant) {
  auto c = make_circle_grid(16);
  Functional f = parse_functional("T_delta_norm(2,2,0.01)");
  auto res = extremize(f, Density::constant(c, 1.0), 5, 0.5, 2);
  EXPECT_TRUE(res.report.pass) << res.report.summary();
  EXPECT_GE(res.report.metrics.at("objective"), res.report.metrics.at("reference_objective") * (1 - 1e-12));
  EXPECT_THROW(extremize(f, Density::zero(c), 1, 0.5, 1), InvalidArgument);
  EXPECT_THROW(extremize(f, Density::constant(c, 1.0), -1, 0.5, 1), InvalidArgument);
}

TEST(Extremize, WrongDimensionIsRejected) {
  auto s = make_sphere_grid(4, 8);
  EXPECT_THROW(evaluate_functional(parse_functional("T_delta_norm"), Density::constant(s, 1.0)), InvalidArgument);
}

TEST(Appendix, ZeroDensities) {
  ZonalDensity zero{[](double) { return 0.0; }, kPi};
  ExperimentReport r = power_weight_ratio(zero, 2, 4, 2, {{4, 8}, 0.5});
  EXPECT_EQ(r.metrics.at("ratio"), 0.0);
  auto s = make_sphere_grid(8, 16);
  ExperimentReport x = lemma_X_reduction_check(Density::zero(s), 1);
  EXPECT_EQ(x.metrics.at("lhs"), 0.0);
  EXPECT_EQ(x.metrics.at("rhs"), 0.0);
}

TEST(Appendix, PreconditionsAndProbes) {
  auto s = make_sphere_grid(8, 16);
  Density neg = Density::constant(s, -1.0);
  EXPECT_THROW(lemma_X_reduction_check(neg, 1), InvalidArgument);
  EXPECT_THROW(lemma_X_reduction_check(Density::constant(make_circle_grid(8), 1.0), 1), InvalidArgument);
  ZonalDensity one{[](double) { return 1.0; }, kPi};
  // (1/p, 1/q) = (0.2, 0.2) lies left of the triangle
  ExperimentReport r = power_weight_ratio(one, 5, 5, 2, {{4, 8}, 0.5});
  EXPECT_TRUE(std::any_of(r.flags.begin(), r.flags.end(),
                          [](const std::string& f) { return f.find("outside") != std::string::npos; }));
  EXPECT_THROW(power_weight_ratio(one, 2, 4, 2, {{4}, 0.5}), InvalidArgument);
}

TEST(Appendix, ZonalMatchesLatticeAtSmallBoxes) {
  // the (rho, z) binning and the Cartesian lattice sample the same function
  auto s = make_sphere_grid(32, 64);
  ZonalDensity one{[](double) { return 1.0; }, kPi};
  ExperimentReport a = power_weight_ratio(one, 2, 4, 2, {{4, 8}, 0.125});
  ExperimentReport b = power_weight_ratio(Density::constant(s, 1.0), 2, 4, 2, {{4, 8}, 0.125});
  EXPECT_NEAR(a.metrics.at("ratio_L8"), b.metrics.at("ratio_L8"), 2e-2 * b.metrics.at("ratio_L8"));
}
