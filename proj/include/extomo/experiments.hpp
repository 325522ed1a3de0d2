#pragma once

#include <string>
#include <vector>

#include "extomo/density.hpp"
#include "extomo/report.hpp"
#include "extomo/spherical_ops.hpp"
#include "extomo/tomography.hpp"

namespace extomo {

// Every experiment returns a report whose `pass` reflects its tolerances.
// Growth experiments store their raw (abscissa, ordinate) data in
// report.sweeps so fits can be recomputed and plotted.

// ---------------------------------------------------------------- identities

struct XrayIdentitySpec {
  double truncation = 200;  // line half-length
  double h = 0.25;          // line trapezoid step
  int n_t = 128;            // Gauss-Legendre nodes in t
  int n_slice = 256;
  bool tail_correction = true;
  double tolerance = 1e-2;
  // Halves h and doubles the other resolution parameters.
  XrayIdentitySpec doubled() const;
};

// X(|g^dsigma|^2)(omega, v) against 2 pi int |(g dsigma_{omega,t})^(v)|^2 dt
// (n = 3), plus X_0(|(|g| dsigma)^|^2)(omega) against 2 pi S(|g|)(omega)^2.
// The extension is evaluated on g's own grid.
ExperimentReport verify_xray_identity(const Density& g, const Vec& omega, const Vec& v,
                                      const XrayIdentitySpec& spec = {});

struct RadonIdentitySpec {
  double truncation = 1000;  // n = 2 line half-length; n = 3 uses truncation_3d
  double truncation_3d = 48;
  double h = 0.25;
  double h_3d = 0.5;
  double margin = 0.2;
  double tolerance = 2e-2;
};

// R(|g^dsigma|^2)(omega, t) against (2 pi)^{n-1} T_0(|g|^2)(omega) for each t != 0.
ExperimentReport verify_radon_identity(const Density& g, const Vec& omega,
                                       const std::vector<double>& t_list,
                                       const RadonIdentitySpec& spec = {});

// R(1_{B_R} |g^dsigma|^2)(omega, t) / T_{1/R}(|g|^2)(omega), maximized over a
// t-sample, for each R (n = 2). g must live on a grid fine enough for the
// largest R; the report flags grids whose exactness is below R.
ExperimentReport verify_mollified_radon(const Density& g, const Vec& omega,
                                        const std::vector<double>& R_list);

// ---------------------------------------------------------------- growth

struct RadonGrowthSpec {
  std::string family = "constant";  // constant | knapp
  double p = kInf;
  double q = 2;                     // kInf allowed
  std::vector<double> R_list{16, 32, 64, 128, 256, 512, 1024};
  int n_directions = 8;             // circle grid for the omega norm
  double t_pitch = 1;               // t lattice pitch near t = 0
  double t_dense = 16;              // dense lattice on |t| <= t_dense, geometric beyond
  double h = 0.5;                   // s step
  bool probe = false;               // declared outside-range probe
};

// ||R(1_{B_R} |g^dsigma|^2)||_{L^q_omega L^inf_t} / ||g||_p^2 against R (n = 2).
// constant: g = 1, fit against log R. knapp: cap of radius R^{-1/2} at e2,
// fit of log value against log R.
ExperimentReport radon_growth_sweep(const RadonGrowthSpec& spec = {});

struct KnappSpec {
  int m = 1;
  std::vector<double> delta_list{0.2, 0.1, 0.05};
  std::vector<double> norm_delta_list{0.2, 0.1, 0.05, 0.025};
  double q = 2;
  double p = 2;
  int n_samples = 256;
  std::uint64_t seed = 1;
};

// Knapp lower bounds for R 1_{S_m} (n = 3): the median of
// |g^dsigma|^2 delta^{-4} over S_m for g = g_m and g = g_{n-m}, the measured slope of
// ||R 1_{S_m}||_{L^q_omega L^inf_t} and the empirical exponent of ||g_m||_p^2.
ExperimentReport knapp_radon_lower_bounds(const KnappSpec& spec = {});

struct SharpConstantSpec {
  double truncation = 2000;
  int n_t = 128;
  int n_slice = 256;
  int n_polar = 96, n_az = 192;  // grid for the cap comparison
  double cap_radius = 0.5;
  double cap_angle = kPi / 3;    // angle between omega and the cap center
};

// X(|sigma^|^2)(omega, 0) / ||1||_2^2 on S^2 by the closed form on the line
// and by the slice identity, compared with the value 2 pi^2 stated in the
// literature, plus the same ratio for a cap indicator.
ExperimentReport sharp_constant_S2(const SharpConstantSpec& spec = {});

// ||X 1_{S_1}||_{L^2_omega L^inf_v} (n = 3); fit of (value delta)^2 against log(1/delta).
ExperimentReport xray_multiscale_lower_bound(const std::vector<double>& delta_list = {0.2, 0.1,
                                                                                      0.05, 0.025});

struct BTSweepSpec {
  std::vector<double> delta_list{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  int n_directions = 64;
  int n_random = 4;
  std::uint64_t seed = 3;
};

// Worst-case ||BT_delta(g1, g2)||_{L^{1/2}} / (||g1||_1 ||g2||_1) against
// log^2(1/delta) and ||BT_delta||_{L^1} / (||g1||_2 ||g2||_2) against
// log(1/delta) over constants, delta-caps and random inputs (n = 2).
ExperimentReport bt_bounds_sweep(const BTSweepSpec& spec = {});

// T_delta(1)(e1) on S^1 against log(1/delta): slope 4, r^2 >= 0.999.
ExperimentReport t_delta_log_law(const std::vector<double>& delta_list = {1e-1, 1e-2, 1e-3, 1e-4,
                                                                          1e-5});

// ----------------------------------------------------------------- isometry

struct IsometryConstancySpec {
  int n_functions = 10;
  IsometrySpec iso;
  double cv_tolerance = 1e-2;
  std::uint64_t seed = 11;
};

// ||(-Delta_v)^{1/4} X f|| / ||f|| over random smooth f (n = 2); records c_2.
ExperimentReport isometry_constancy(const IsometryConstancySpec& spec = {});

// Generic-slice against closed-form BA_t on random inputs (n = 2), plus the
// fitted constant in (g1 dsigma) * (g2 dsigma)(x) = c BA_{|x|/2}(x/|x|) / |x|.
ExperimentReport bilinear_closed_form(int n_evals = 100, std::uint64_t seed = 5);

// ----------------------------------------------------------------- weighted

// Weight with a name so reports can echo it.
struct Weight {
  std::string name;
  Field w;
  double extent = 0;  // w is negligible outside this radius (0: unbounded)
};
Weight gaussian_weight(double width);
// Smooth plateau of half-width a across omega0 and half-length len along it.
Weight tube_weight(const Vec& omega0, double a, double len);
Weight bracket_weight();  // <x>^{-1}

struct WSteinSpec {
  double h = 0.25;         // field step on B_R
  int n_directions = 64;   // omega sample
  double profile_half_width = 64;
  int profile_samples = 513;
  double c_max = 50;
};

// C = int_{B_R} |g^dsigma|^2 w / RHS with the two-term right side built from
// BT_{1/R}(|g|_{1/R}^2, |g|_{1/R}^2)^{1/2} and S w (n = 2).
ExperimentReport verify_wstein(const Density& g, const Weight& w, double R,
                               const WSteinSpec& spec = {});

struct WMizTakSpec {
  double h = 0.25;             // field step for the C_MT integral
  double gamma_extent = 6;     // X-ray box half-width in units of R
  double h_profile = 1;        // lattice step for the gamma_R term
  int n_directions = 8;
  bool with_cq = true;
  double c_max = 50;
};

// C_MT = int_{B_R} |g^dsigma|^2 w / (||X(w 1_{B_R})||_inf ||g||_2^2) and
// C_q = ||(-Delta_v)^{(1 - 1/q)/2} X(gamma_R |g^dsigma|^2)||_{L^1_omega L^{q'}_v}
//       / (log R ||g||_2^2)   (n = 2).
ExperimentReport verify_wmiztak(const Density& g, const Weight& w, double R, double q,
                                const WMizTakSpec& spec = {});

struct WeightedSweepSpec {
  std::vector<double> R_list{16, 32, 64};
  int n_random = 10;
  double c_max = 50;
  std::uint64_t seed = 13;
};

// The declared (g, w, R) family for the Stein-type and Mizohata-Takeuchi-type
// constants: boundedness by c_max, stability within 2x under R doubling, and
// growth of the q = 3 probe.
ExperimentReport weighted_inequalities_sweep(const WeightedSweepSpec& spec = {});

// gamma(x) = phi(|x|)^6 with phi(r) = 8 J_2(r/2) / (r/2)^2, phi(0) = 1.
double gamma_cutoff(double r);

struct ReduceSpec {
  double epsilon = 0.25;
  double q = 2;
  int n_polar = 6, n_az = 12;  // omega quadrature
  int n_u = 32;                // points on S^1_omega
  int n_t = 24;
  int n_slice = 96;
  double half_width = 48;      // v box for the X-ray side
  double h = 1;
  int n_t_xray = 48;
};

struct ReduceResult {
  double lhs = 0, rhs = 0, ratio = 0;
};
// Both sides of the BA_t reduction for real g (n = 3).
ReduceResult reduce_lemma_sides(const Density& g, const ReduceSpec& spec);
// Ratio constancy over {constant, cap, band, random smooth, modulated}.
ExperimentReport verify_reduce_lemma(const ReduceSpec& spec = {});

struct BandSpec {
  std::vector<double> delta_list{0.2, 0.1, 0.05, 0.025};
  double epsilon = 0.25;
  double p = 2;
  int n_theta = 24;
  int n_u = 64;
  int n_t = 12;
  std::uint64_t seed = 17;
};

// Lower-bound quantity for g = 1_{|(xi_1, xi_2)| <= delta} (n = 3); fitted
// exponent against 3/2 + epsilon.
ExperimentReport necessity_band_example(const BandSpec& spec = {});

// -------------------------------------------------------------------- tubes

struct TubeExperimentSpec {
  double R = 64;
  int n_tubes = 8;
  int n_trials = 400;
  double cap_c = 0.5;        // cap radius c R^{-1/2}
  double core_fraction = 0.5;
  int core_samples = 16;     // per tube
  int grid_nodes = 4096;
  std::uint64_t seed = 7;
};

// Wave packets phi_T = 1_{cap(omega_T)} e^{-i R x_T . xi} for a random
// R^{-1/2}-separated family (n = 2).
ExperimentReport randomized_tube_experiment(const TubeExperimentSpec& spec = {});

// ----------------------------------------------------------------- appendix

struct PowerWeightSpec {
  std::vector<double> L_list{16, 32, 64};
  double h = 0.25;
};

// ||g^dsigma <x>^{-gamma}||_{L^{q,r}} / ||g||_{L^{p,r}} on growing boxes
// (n = 3), gamma = (n+1)/(2q) - (n-1)/(2p'). Points on the open edges (A,B)
// and (A,D) use the restricted weak form L^{p,1} -> L^{q,inf}.
ExperimentReport power_weight_ratio(const Density& g, double p, double q, double r,
                                    const PowerWeightSpec& spec = {});

// g(xi) = profile(angle(xi, e3)), zero past theta_max. The profile may jump at
// theta_max (a sharp cap); it must be smooth on [0, theta_max].
struct ZonalDensity {
  std::function<double(double)> profile;
  double theta_max = kPi;
};

// Same ratio for a zonal density, with g^dsigma(rho, z) from the one-dimensional
// integral 2 pi int g(theta) e^{i z cos theta} J_0(rho sin theta) sin theta dtheta,
// so that no sphere grid limits the box size. The box is binned in (rho, z).
ExperimentReport power_weight_ratio(const ZonalDensity& g, double p, double q, double r,
                                    const PowerWeightSpec& spec = {});

struct XReductionSpec {
  int n_polar = 12, n_az = 24;  // omega quadrature
  double truncation = 32;  // X-ray lines; past the grid exactness the node sums alias
  double h_line = 0.25;
  int n_polar_rhs = 24, n_az_rhs = 48;  // omega quadrature of the R^3 side
  double half_width = 32;  // radius of the directly evaluated ball
  double h = 0.5;          // radial panel width
};

// Both sides of the X-ray reduction for g >= 0 (n = 3). q = 1 checks the
// equality case, other q the inequality with the constant of the Hoelder chain.
ExperimentReport lemma_X_reduction_check(const Density& g, double q,
                                         const XReductionSpec& spec = {});

// Finite-difference rotcurv of Phi_0 - t at and near the origin (n = 3).
ExperimentReport rotcurv_check(double eta = 0.05, int n_samples = 5);

// ------------------------------------------------------------------ extremize

struct Functional {
  std::string id;  // xray_sup_ratio | T_delta_norm | MT_radial_constant
  double p = 2, q = kInf, delta = 1e-2, R = 16;
};
Functional parse_functional(const std::string& text);  // e.g. "T_delta_norm(2,2,0.01)"

// Value of the quotient at g (g is not renormalized).
double evaluate_functional(const Functional& f, const Density& g);

struct ExtremizeResult {
  Density best;
  ExperimentReport report;
};

// Projected gradient ascent on real node values with finite-difference
// gradients and a halving line search. The output has unit L^p norm.
ExtremizeResult extremize(const Functional& f, const Density& init, int steps, double step_size,
                          std::uint64_t seed);

// Random smooth real density: trigonometric (S^1) or low-degree polynomial
// (S^2) with Gaussian coefficients, kept in exact mode.
Density random_smooth_density(GridPtr grid, std::uint64_t seed, int degree = 4,
                              double offset = 0);

}  // namespace extomo
