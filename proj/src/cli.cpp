#include "extomo/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "extomo/experiments.hpp"
#include "extomo/extension.hpp"
#include "extomo/lorentz.hpp"

namespace extomo {

namespace fs = std::filesystem;

namespace {

KeySpec K(std::string name, KeyType t, std::string def, std::string help, std::vector<std::string> choices = {}) {
  return {std::move(name), t, std::move(def), std::move(help), std::move(choices)};
}

const KeyType I = KeyType::integer, D = KeyType::real, L = KeyType::reals, T = KeyType::text,
              B = KeyType::boolean, V = KeyType::vector;

std::size_t pow2_at_least(double x) {
  std::size_t n = 8;
  while (static_cast<double>(n) < x) n *= 2;
  return n;
}

// Density presets shared by several experiments.
Density sphere_preset(const std::string& name, GridPtr grid, std::uint64_t seed) {
  if (name == "constant") return Density::constant(grid, 1.0);
  if (name == "cap" || name == "bump") return cap_bump_density(grid, Vec(0.3, -0.2, 0.93).normalized(), 0.8);
  if (name == "random") return random_smooth_density(grid, seed, 3, 1.5);
  throw InvalidArgument("unknown density preset '" + name + "'");
}

Density circle_preset(const std::string& name, GridPtr grid, std::uint64_t seed) {
  if (name == "constant") return Density::constant(grid, 1.0);
  if (name == "cap" || name == "bump") return cap_bump_density(grid, spherical_point(2, 0, 0.6), 0.5);
  if (name == "random") return random_smooth_density(grid, seed, 4, 1.5);
  throw InvalidArgument("unknown density preset '" + name + "'");
}

void check_choice(long v, std::initializer_list<long> ok, const char* key) {
  for (long o : ok)
    if (v == o) return;
  throw InvalidArgument(std::string("unsupported value for ") + key);
}

void write_density_csv(const Density& g, const std::string& path) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,z,weight,re,im\n";
  for (std::size_t j = 0; j < g.grid().size(); ++j) {
    const Vec& x = g.grid().nodes[j];
    os << x.x() << ',' << x.y() << ',' << x.z() << ',' << g.grid().weights[j] << ',' << g[j].real() << ','
       << g[j].imag() << '\n';
  }
  write_atomic(path, os.str());
}

// Writes through `writer(tmp_csv, tmp_json)` and renames both into place.
void atomic_pair(const std::string& csv, const std::string& json,
                 const std::function<void(const std::string&, const std::string&)>& writer) {
  writer(csv + ".tmp", json + ".tmp");
  fs::rename(csv + ".tmp", csv);
  fs::rename(json + ".tmp", json);
}

Field named_field(const std::string& name) {
  if (name == "gaussian") return [](const Vec& x) { return std::exp(-0.5 * x.squaredNorm()); };
  if (name == "ball") return [](const Vec& x) { return x.squaredNorm() <= 1 ? 1.0 : 0.0; };
  throw InvalidArgument("unknown field '" + name + "'");
}

std::vector<ExperimentEntry> build_registry() {
  std::vector<ExperimentEntry> R;
  const std::vector<std::string> dens{"constant", "cap", "random"};

  R.push_back({"verify", "xray-identity", "X-ray/slice identity and its X_0 form (n = 3)",
               {K("n", I, "3", "dimension (3 only)"), K("preset", T, "cap", "density", dens),
                K("seed", I, "7", "seed for the random preset"), K("omega", V, "0,0,1", "direction"),
                K("v", V, "0.3,-0.2,0", "offset orthogonal to omega"), K("truncation", D, "200", "line half-length"),
                K("h", D, "0.25", "line step"), K("n_t", I, "128", "t nodes"), K("n_slice", I, "256", "slice nodes"),
                K("grid_polar", I, "112", "S^2 rings"), K("grid_az", I, "224", "S^2 azimuths"),
                K("doubled", B, "false", "double every resolution parameter"),
                K("tolerance", D, "0.01", "relative tolerance")},
               [](const RunConfig& c, Artifacts&) {
                 check_choice(c.integer("n"), {3}, "n");
                 XrayIdentitySpec s;
                 s.truncation = c.real("truncation");
                 s.h = c.real("h");
                 s.n_t = c.integer("n_t");
                 s.n_slice = c.integer("n_slice");
                 s.tolerance = c.real("tolerance");
                 int np = c.integer("grid_polar"), na = c.integer("grid_az");
                 if (c.boolean("doubled")) {
                   s = s.doubled();
                   np *= 2;
                   na *= 2;
                 }
                 Density g = sphere_preset(c.text("preset"), make_sphere_grid(np, na), c.seed());
                 return verify_xray_identity(g, c.vector("omega").normalized(), c.vector("v"), s);
               }});

  R.push_back({"verify", "radon-identity", "Radon/T_0 identity for a hemisphere-supported bump",
               {K("n", I, "2", "dimension"), K("t_list", L, "0.5,1,2", "offsets"),
                K("omega", V, "1,0,0", "direction"), K("margin", D, "0.2", "equator margin"),
                K("grid", I, "2048", "S^1 nodes (n = 2)"), K("grid_polar", I, "48", "S^2 rings (n = 3)"),
                K("grid_az", I, "96", "S^2 azimuths (n = 3)"), K("tolerance", D, "0.02", "relative tolerance")},
               [](const RunConfig& c, Artifacts&) {
                 int n = c.integer("n");
                 check_choice(n, {2, 3}, "n");
                 RadonIdentitySpec s;
                 s.margin = c.real("margin");
                 s.tolerance = c.real("tolerance");
                 Vec om = c.vector("omega").normalized();
                 Density g = n == 2 ? cap_bump_density(make_circle_grid(c.integer("grid")), om, 0.5)
                                    : cap_bump_density(make_sphere_grid(c.integer("grid_polar"), c.integer("grid_az")),
                                                       om, 0.5);
                 return verify_radon_identity(g, om, c.reals("t_list"), s);
               }});

  R.push_back({"verify", "mollified-radon", "R(1_{B_R}|g^|^2) / T_{1/R}(|g|^2) across R (n = 2)",
               {K("preset", T, "random", "density", dens), K("seed", I, "3", "seed"),
                K("R_list", L, "16,64,256", "radii"), K("grid", I, "1024", "S^1 nodes"),
                K("omega", V, "1,0,0", "direction")},
               [](const RunConfig& c, Artifacts&) {
                 Density g = circle_preset(c.text("preset"), make_circle_grid(c.integer("grid")), c.seed());
                 return verify_mollified_radon(g, c.vector("omega").normalized(), c.reals("R_list"));
               }});

  R.push_back({"verify", "sharp-constant", "X(|sigma^|^2)(omega, 0)/||1||^2 on S^2 by two paths",
               {K("truncation", D, "2000", "line half-length"), K("n_t", I, "128", "t nodes"),
                K("n_slice", I, "256", "slice nodes"), K("n_polar", I, "96", "cap grid rings"),
                K("n_az", I, "192", "cap grid azimuths"), K("cap_radius", D, "0.5", "cap radius"),
                K("cap_angle", D, "1.0471975511965976", "angle between omega and the cap centre")},
               [](const RunConfig& c, Artifacts&) {
                 SharpConstantSpec s;
                 s.truncation = c.real("truncation");
                 s.n_t = c.integer("n_t");
                 s.n_slice = c.integer("n_slice");
                 s.n_polar = c.integer("n_polar");
                 s.n_az = c.integer("n_az");
                 s.cap_radius = c.real("cap_radius");
                 s.cap_angle = c.real("cap_angle");
                 return sharp_constant_S2(s);
               }});

  R.push_back({"verify", "isometry", "||(-Delta_v)^{1/4} X f|| / ||f|| over random f (n = 2)",
               {K("n_functions", I, "10", "sample size"), K("seed", I, "11", "seed"),
                K("cv_tolerance", D, "0.01", "coefficient of variation bound")},
               [](const RunConfig& c, Artifacts&) {
                 IsometryConstancySpec s;
                 s.n_functions = c.integer("n_functions");
                 s.seed = c.seed();
                 s.cv_tolerance = c.real("cv_tolerance");
                 return isometry_constancy(s);
               }});

  R.push_back({"verify", "bilinear", "generic-slice vs closed-form BA_t and the convolution constant (n = 2)",
               {K("n_evals", I, "100", "random evaluations"), K("seed", I, "5", "seed")},
               [](const RunConfig& c, Artifacts&) { return bilinear_closed_form(c.integer("n_evals"), c.seed()); }});

  R.push_back({"verify", "rotcurv", "rotational curvature of Phi_0 near the origin",
               {K("eta", D, "0.05", "box half-width"), K("n_samples", I, "5", "samples per axis")},
               [](const RunConfig& c, Artifacts&) { return rotcurv_check(c.real("eta"), c.integer("n_samples")); }});

  R.push_back({"verify", "stationary-phase", "decay envelope of sigma^",
               {K("n", I, "3", "dimension"), K("radii", L, "1,4,16,64,256", "radii"),
                K("n_directions", I, "16", "directions")},
               [](const RunConfig& c, Artifacts&) {
                 return stationary_phase_decay_check(c.integer("n"), c.reals("radii"), c.integer("n_directions"));
               }});

  R.push_back({"verify", "reduce-lemma", "ratio of the X-ray and BA_t sides over five densities (n = 3)",
               {K("epsilon", D, "0.25", "smoothing exponent"), K("q", D, "2", "outer exponent"),
                K("n_polar", I, "6", "omega rings"), K("n_az", I, "12", "omega azimuths"),
                K("half_width", D, "48", "v box"), K("h", D, "1", "v step")},
               [](const RunConfig& c, Artifacts&) {
                 ReduceSpec s;
                 s.epsilon = c.real("epsilon");
                 s.q = c.real("q");
                 s.n_polar = c.integer("n_polar");
                 s.n_az = c.integer("n_az");
                 s.half_width = c.real("half_width");
                 s.h = c.real("h");
                 return verify_reduce_lemma(s);
               }});

  R.push_back({"verify", "wstein", "Stein-type weighted constant (n = 2)",
               {K("preset", T, "gauss", "gauss: g = 1, Gaussian w; tube: cap g, tube w", {"gauss", "tube"}),
                K("R", D, "32", "ball radius"), K("n_directions", I, "64", "omega sample")},
               [](const RunConfig& c, Artifacts&) {
                 double Rr = c.real("R");
                 GridPtr grid = make_circle_grid(static_cast<int>(pow2_at_least(2 * Rr + 64)));
                 WSteinSpec s;
                 s.n_directions = c.integer("n_directions");
                 if (c.text("preset") == "gauss") return verify_wstein(Density::constant(grid, 1.0), gaussian_weight(2), Rr, s);
                 Vec o(1, 0, 0);
                 return verify_wstein(knapp_cap_density(grid, {o, 1 / std::sqrt(Rr), Vec::Zero()}),
                                      tube_weight(o, 2, Rr / 2), Rr, s);
               }});

  R.push_back({"verify", "wmiztak", "Mizohata-Takeuchi-type constants C_MT and C_q (n = 2)",
               {K("preset", T, "gauss", "gauss | bracket", {"gauss", "bracket"}), K("R", D, "32", "ball radius"),
                K("q", D, "2", "exponent (q > 2 is a probe)"), K("n_directions", I, "8", "omega sample"),
                K("with_cq", B, "true", "also compute C_q")},
               [](const RunConfig& c, Artifacts&) {
                 double Rr = c.real("R");
                 WMizTakSpec s;
                 s.n_directions = c.integer("n_directions");
                 s.with_cq = c.boolean("with_cq");
                 GridPtr grid = make_circle_grid(static_cast<int>(pow2_at_least(9 * Rr + 64)));
                 Weight w = c.text("preset") == "gauss" ? gaussian_weight(2) : bracket_weight();
                 return verify_wmiztak(Density::constant(grid, 1.0), w, Rr, c.real("q"), s);
               }});

  R.push_back({"verify", "lemma-x", "both sides of the X-ray reduction to a Lorentz norm (n = 3)",
               {K("q", D, "1", "exponent"), K("preset", T, "bump", "density", {"bump", "constant"}),
                K("grid_polar", I, "40", "S^2 rings"), K("grid_az", I, "80", "S^2 azimuths"),
                K("half_width", D, "32", "radius of the directly evaluated ball"), K("h", D, "0.5", "radial panel width"),
                K("truncation", D, "32", "line half-length of the X-ray side")},
               [](const RunConfig& c, Artifacts&) {
                 XReductionSpec s;
                 s.half_width = c.real("half_width");
                 s.h = c.real("h");
                 s.truncation = c.real("truncation");
                 GridPtr grid = make_sphere_grid(c.integer("grid_polar"), c.integer("grid_az"));
                 return lemma_X_reduction_check(sphere_preset(c.text("preset"), grid, 0), c.real("q"), s);
               }});

  R.push_back({"verify", "power-weight", "||g^dsigma <x>^-gamma||_{L^{q,r}} / ||g||_{L^{p,r}} on growing boxes (n = 3)",
               {K("preset", T, "stein-tomas", "stein-tomas: g = 1 at B; knapp: cap on (A,B)", {"stein-tomas", "knapp"}),
                K("p", D, "2", "p"), K("q", D, "4", "q"), K("r", D, "2", "Lorentz r"),
                K("L_list", L, "16,32,64", "box half-widths"), K("h", D, "0.25", "cell size"),
                K("delta", D, "0.1", "knapp cap radius")},
               [](const RunConfig& c, Artifacts&) {
                 PowerWeightSpec s;
                 s.L_list = c.reals("L_list");
                 s.h = c.real("h");
                 ZonalDensity g{[](double) { return 1.0; }, kPi};
                 if (c.text("preset") == "knapp") g.theta_max = c.real("delta");
                 return power_weight_ratio(g, c.real("p"), c.real("q"), c.real("r"), s);
               }});

  R.push_back({"sweep", "radon-growth", "||R(1_{B_R}|g^|^2)||_{L^q L^inf} / ||g||_p^2 against R (n = 2)",
               {K("family", T, "constant", "density family", {"constant", "knapp"}), K("p", D, "inf", "p"),
                K("q", D, "2", "q"), K("R_list", L, "16,32,64,128,256,512,1024", "radii"),
                K("n_directions", I, "8", "omega sample"), K("h", D, "0.5", "s step"),
                K("probe", B, "false", "allow (p, q) outside the log range")},
               [](const RunConfig& c, Artifacts&) {
                 RadonGrowthSpec s;
                 s.family = c.text("family");
                 s.p = c.real("p");
                 s.q = c.real("q");
                 s.R_list = c.reals("R_list");
                 s.n_directions = c.integer("n_directions");
                 s.h = c.real("h");
                 s.probe = c.boolean("probe");
                 return radon_growth_sweep(s);
               }});

  R.push_back({"sweep", "t-delta", "T_delta(1) against log(1/delta) (n = 2)",
               {K("delta_list", L, "1e-1,1e-2,1e-3,1e-4,1e-5", "deltas")},
               [](const RunConfig& c, Artifacts&) { return t_delta_log_law(c.reals("delta_list")); }});

  R.push_back({"sweep", "bt-bounds", "L^{1/2} and L^1 bounds for BT_delta (n = 2)",
               {K("delta_list", L, "1e-1,3e-2,1e-2,3e-3,1e-3", "deltas"), K("n_directions", I, "64", "omega sample"),
                K("n_random", I, "4", "random pairs"), K("seed", I, "3", "seed")},
               [](const RunConfig& c, Artifacts&) {
                 BTSweepSpec s;
                 s.delta_list = c.reals("delta_list");
                 s.n_directions = c.integer("n_directions");
                 s.n_random = c.integer("n_random");
                 s.seed = c.seed();
                 return bt_bounds_sweep(s);
               }});

  R.push_back({"sweep", "weighted", "weighted constants across R and the q = 3 probe (n = 2)",
               {K("R_list", L, "16,32,64", "radii"), K("n_random", I, "10", "random g for the radial weight"),
                K("c_max", D, "50", "constant bound"), K("seed", I, "13", "seed")},
               [](const RunConfig& c, Artifacts&) {
                 WeightedSweepSpec s;
                 s.R_list = c.reals("R_list");
                 s.n_random = c.integer("n_random");
                 s.c_max = c.real("c_max");
                 s.seed = c.seed();
                 return weighted_inequalities_sweep(s);
               }});

  R.push_back({"knapp", "knapp-radon", "Knapp lower bounds for R 1_{S_m} (n = 3)",
               {K("m", I, "1", "band (1) or cap (2)"), K("q", D, "2", "q"), K("p", D, "2", "p"),
                K("delta_list", L, "0.2,0.1,0.05", "deltas for the pointwise check"),
                K("norm_delta_list", L, "0.2,0.1,0.05,0.025", "deltas for the norm fits"),
                K("n_samples", I, "256", "points per box"), K("seed", I, "1", "seed")},
               [](const RunConfig& c, Artifacts&) {
                 KnappSpec s;
                 s.m = c.integer("m");
                 s.q = c.real("q");
                 s.p = c.real("p");
                 s.delta_list = c.reals("delta_list");
                 s.norm_delta_list = c.reals("norm_delta_list");
                 s.n_samples = c.integer("n_samples");
                 s.seed = c.seed();
                 return knapp_radon_lower_bounds(s);
               }});

  R.push_back({"knapp", "xray-multiscale", "||X 1_{S_1}||_{L^2 L^inf} against log(1/delta) (n = 3)",
               {K("delta_list", L, "0.2,0.1,0.05,0.025", "deltas")},
               [](const RunConfig& c, Artifacts&) { return xray_multiscale_lower_bound(c.reals("delta_list")); }});

  R.push_back({"knapp", "necessity-band", "band example for the epsilon-smoothed estimate (n = 3)",
               {K("delta_list", L, "0.2,0.1,0.05,0.025", "deltas"), K("epsilon", D, "0.25", "epsilon"),
                K("seed", I, "17", "seed")},
               [](const RunConfig& c, Artifacts&) {
                 BandSpec s;
                 s.delta_list = c.reals("delta_list");
                 s.epsilon = c.real("epsilon");
                 s.seed = c.seed();
                 return necessity_band_example(s);
               }});

  R.push_back({"tubes", "tubes", "wave packets on R^{-1/2}-separated tubes and the Khintchine average (n = 2)",
               {K("R", D, "64", "scale"), K("n_tubes", I, "8", "tubes"), K("n_trials", I, "400", "sign vectors"),
                K("cap_c", D, "0.5", "cap radius in units of R^{-1/2}"), K("core_fraction", D, "0.5", "core size"),
                K("core_samples", I, "16", "samples per tube core"), K("grid", I, "4096", "S^1 nodes"),
                K("seed", I, "7", "seed")},
               [](const RunConfig& c, Artifacts&) {
                 TubeExperimentSpec s;
                 s.R = c.real("R");
                 s.n_tubes = c.integer("n_tubes");
                 s.n_trials = c.integer("n_trials");
                 s.cap_c = c.real("cap_c");
                 s.core_fraction = c.real("core_fraction");
                 s.core_samples = c.integer("core_samples");
                 s.grid_nodes = c.integer("grid");
                 s.seed = c.seed();
                 return randomized_tube_experiment(s);
               }});

  R.push_back({"extremize", "extremize", "projected gradient ascent on a quotient functional",
               {K("functional", T, "T_delta_norm(2,2,0.01)", "xray_sup_ratio(p,q) | T_delta_norm(p,q,delta) | MT_radial_constant(R)"),
                K("steps", I, "20", "ascent steps"), K("step_size", D, "0.5", "initial step"),
                K("init", T, "random", "initial density", {"random", "constant"}), K("seed", I, "1", "seed"),
                K("grid", I, "32", "S^1 nodes, or S^2 rings (azimuths twice that)")},
               [](const RunConfig& c, Artifacts& art) {
                 Functional f = parse_functional(c.text("functional"));
                 int n = c.integer("grid");
                 if (n < 2) throw InvalidArgument("grid must be >= 2");
                 GridPtr grid = f.id == "xray_sup_ratio" ? make_sphere_grid(n, 2 * n) : make_circle_grid(n);
                 Density init = c.text("init") == "constant" ? Density::constant(grid, 1.0)
                                                             : random_smooth_density(grid, c.seed(), 3, 2.0);
                 auto res = std::make_shared<ExtremizeResult>(
                     extremize(f, init, c.integer("steps"), c.real("step_size"), c.seed()));
                 art["density.csv"] = [res](const std::string& p) { write_density_csv(res->best, p); };
                 return res->report;
               }});

  R.push_back({"transform", "xray-profile", "X-ray profile of a test field, checked against its closed form",
               {K("field", T, "gaussian", "test field", {"gaussian", "ball"}), K("n", I, "2", "dimension"),
                K("omega", V, "1,0,0", "direction"), K("half_width", D, "3", "profile half-width"),
                K("samples", I, "61", "samples per axis"), K("truncation", D, "6", "line half-length"),
                K("n_line", I, "241", "line samples")},
               [](const RunConfig& c, Artifacts& art) {
                 int n = c.integer("n");
                 check_choice(n, {2, 3}, "n");
                 std::string name = c.text("field");
                 Vec om = c.vector("omega").normalized();
                 auto p = std::make_shared<LineProfile>(xray_profile(named_field(name), n, om, c.real("half_width"),
                                                                     c.integer("samples"), c.real("truncation"),
                                                                     c.integer("n_line")));
                 ExperimentReport r;
                 r.name = "xray-profile";
                 double err = 0;
                 for (std::size_t i = 0; i < p->size(); ++i) {
                   double v2 = p->point(i).squaredNorm();
                   double exact = name == "gaussian" ? std::sqrt(2 * kPi) * std::exp(-0.5 * v2)
                                                     : 2 * std::sqrt(std::max(0.0, 1 - v2));
                   err = std::max(err, std::abs(p->values[i] - exact));
                 }
                 r.metric("max_abs_err", err);
                 if (name == "gaussian") r.require("max_abs_err", {"le", 1e-6});
                 art["profile.csv"] = [p](const std::string& path) {
                   std::string j = path.substr(0, path.size() - 4) + ".json";
                   atomic_pair(path, j, [&](const std::string& a, const std::string& b) { write_profile(*p, a, b); });
                 };
                 r.evaluate();
                 return r;
               }});

  R.push_back({"transform", "sinogram", "parallel-beam sinogram and filtered backprojection (n = 2)",
               {K("field", T, "gaussian", "test field", {"gaussian", "ball"}), K("n_angles", I, "90", "angles"),
                K("n_offsets", I, "129", "offsets"), K("half_width", D, "3", "offset half-width"),
                K("truncation", D, "4", "line half-length"), K("n_line", I, "241", "line samples"),
                K("points", I, "65", "reconstruction points per axis"), K("recon_half_width", D, "1.5", "reconstruction box")},
               [](const RunConfig& c, Artifacts& art) {
                 Field f = named_field(c.text("field"));
                 auto s = std::make_shared<Sinogram>(sinogram_2d(f, c.integer("n_angles"), c.integer("n_offsets"),
                                                                 c.real("half_width"), c.real("truncation"),
                                                                 c.integer("n_line")));
                 std::vector<std::string> warnings;
                 FieldSpec fs{2, c.real("recon_half_width"), static_cast<int>(c.integer("points"))};
                 auto rec = std::make_shared<SampledField>(radon_invert_2d(*s, fs, &warnings));
                 double num = 0, den = 0;
                 for (std::size_t i = 0; i < rec->size(); ++i) {
                   double e = f(rec->point(i));
                   num += std::norm(rec->values[i] - e);
                   den += e * e;
                 }
                 ExperimentReport r;
                 r.name = "sinogram";
                 r.flags = warnings;
                 r.metric("recon_rel_l2", den > 0 ? std::sqrt(num / den) : 0.0);
                 art["sinogram.csv"] = [s](const std::string& path) {
                   std::string j = path.substr(0, path.size() - 4) + ".json";
                   atomic_pair(path, j, [&](const std::string& a, const std::string& b) { write_sinogram(*s, a, b); });
                 };
                 art["reconstruction.csv"] = [rec](const std::string& path) {
                   std::string j = path.substr(0, path.size() - 4) + ".json";
                   atomic_pair(path, j, [&](const std::string& a, const std::string& b) { write_field(*rec, a, b); });
                 };
                 r.evaluate();
                 return r;
               }});

  R.push_back({"transform", "extension-field", "g^dsigma on a uniform grid",
               {K("preset", T, "constant", "density", dens), K("n", I, "2", "dimension"), K("seed", I, "1", "seed"),
                K("half_width", D, "20", "box half-width"), K("points", I, "81", "points per axis"),
                K("grid", I, "64", "S^1 nodes, or S^2 rings (azimuths twice that)")},
               [](const RunConfig& c, Artifacts& art) {
                 int n = c.integer("n");
                 check_choice(n, {2, 3}, "n");
                 int m = c.integer("grid");
                 Density g = n == 2 ? circle_preset(c.text("preset"), make_circle_grid(m), c.seed())
                                    : sphere_preset(c.text("preset"), make_sphere_grid(m, 2 * m), c.seed());
                 FieldSpec fs{n, c.real("half_width"), static_cast<int>(c.integer("points"))};
                 auto F = std::make_shared<SampledField>(extend_field(g, fs, true));
                 ExperimentReport r;
                 r.name = "extension-field";
                 if (c.text("preset") == "constant") {
                   double err = 0;
                   for (std::size_t i = 0; i < F->size(); ++i) {
                     double rr = F->point(i).norm();
                     double exact = n == 2 ? sigma_hat_circle(rr) : sigma_hat_sphere(rr);
                     err = std::max(err, std::abs(F->values[i] - exact));
                   }
                   r.metric("max_abs_err_closed_form", err);
                 }
                 art["field.csv"] = [F](const std::string& path) {
                   std::string j = path.substr(0, path.size() - 4) + ".json";
                   atomic_pair(path, j, [&](const std::string& a, const std::string& b) { write_field(*F, a, b); });
                 };
                 r.evaluate();
                 return r;
               }});

  R.push_back({"transform", "plot-data", "one CSV per sweep of a saved report",
               {K("report", T, "", "path to report.json")}, nullptr});
  return R;
}

std::string csv_label(std::string s) {
  for (char& ch : s)
    if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
  return s;
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void fail_line(const std::string& code, const std::string& msg) {
  std::string m = msg;
  for (char& ch : m)
    if (ch == '\n') ch = ' ';
  std::cerr << "status=error code=" << code << " reason=\"" << m << "\"\n";
}

}  // namespace

const std::vector<ExperimentEntry>& experiment_registry() {
  static const std::vector<ExperimentEntry> reg = build_registry();
  return reg;
}

const ExperimentEntry& find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry())
    if (e.name == name) return e;
  throw InvalidArgument("unknown experiment '" + name + "'");
}

std::string version_string() { return "extomo 0.1.0"; }

void write_atomic(const std::string& path, const std::string& content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("io-error", "cannot write '" + tmp + "'");
    out << content;
    if (!out) throw Error("io-error", "write failed for '" + tmp + "'");
  }
  fs::rename(tmp, path);
}

std::string plot_csv(const GrowthFit& fit) {
  std::ostringstream os;
  os << csv_label(fit.x_label) << ',' << csv_label(fit.y_label) << ",fit_value\n";
  for (std::size_t i = 0; i < fit.x_raw.size(); ++i)
    os << fmt17(fit.x_raw[i]) << ',' << fmt17(fit.y_raw[i]) << ',' << fmt17(fit.fit_value(i)) << '\n';
  return os.str();
}

std::vector<PlotRow> read_plot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot read '" + path + "'");
  std::string line;
  std::getline(in, line);  // header
  std::vector<PlotRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::strtod(item.c_str(), nullptr));
    if (v.size() != 3) throw Error("io-error", "malformed row in '" + path + "'");
    rows.push_back({v[0], v[1], v[2]});
  }
  return rows;
}

std::vector<std::string> emit_plot_data(const std::string& report_path, const std::string& out_dir) {
  std::ifstream in(report_path);
  if (!in) throw Error("io-error", "cannot read report '" + report_path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("io-error", std::string("report is not valid JSON: ") + e.what());
  }
  ExperimentReport r = ExperimentReport::from_json(j);
  if (r.sweeps.empty()) throw Error("missing-data", "report '" + report_path + "' holds no sweep data");
  std::vector<std::string> out;
  for (const auto& [key, fit] : r.sweeps) {
    std::string path = (fs::path(out_dir) / ("sweep_" + sanitize(key) + ".csv")).string();
    write_atomic(path, plot_csv(fit));
    out.push_back(path);
  }
  return out;
}

std::string write_run_directory(const std::string& dir, const RunConfig& cfg, const ExperimentReport& report,
                                const Artifacts& extra) {
  fs::create_directories(dir);
  fs::path d(dir);
  write_atomic((d / "config.txt").string(), cfg.echo());
  write_atomic((d / "version.txt").string(), version_string() + "\n");
  write_atomic((d / "summary.txt").string(), report.summary() + "\n");
  for (const auto& [key, fit] : report.sweeps)
    write_atomic((d / ("sweep_" + sanitize(key) + ".csv")).string(), plot_csv(fit));
  for (const auto& [name, writer] : extra) writer((d / name).string());
  std::string rp = (d / "report.json").string();
  write_atomic(rp, report.to_json().dump(2) + "\n");
  return rp;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Numerical experiments for Fourier extension and tomographic operators", "extomo"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", version_string());
  CLI::App* list = app.add_subcommand("list", "print the experiment registry");

  struct Bound {
    const ExperimentEntry* entry;
    CLI::App* app;
    std::map<std::string, std::string> raw;
    std::string config, out;
    std::vector<std::string> tols;
  };
  std::vector<std::unique_ptr<Bound>> bound;
  std::map<std::string, CLI::App*> commands;
  const std::map<std::string, std::string> command_help{
      {"verify", "identity and inequality checks"}, {"sweep", "growth sweeps"},
      {"knapp", "Knapp-type lower bounds"},         {"tubes", "tube wave packets"},
      {"extremize", "gradient ascent on quotients"}, {"transform", "transforms, files and plot data"}};
  for (const auto& e : experiment_registry()) {
    if (!commands.count(e.command)) {
      commands[e.command] = app.add_subcommand(e.command, command_help.at(e.command));
      commands[e.command]->require_subcommand(1);
      commands[e.command]->set_help_flag("--help", "print help");
    }
    auto b = std::make_unique<Bound>();
    b->entry = &e;
    b->app = commands[e.command]->add_subcommand(e.name, e.help);
    b->app->set_help_flag("--help", "print help");
    for (const auto& k : e.keys) {
      std::string help = k.help + " (default " + (k.fallback.empty() ? "none" : k.fallback) + ")";
      b->app->add_option("--" + k.name, b->raw[k.name], help);
    }
    b->app->add_option("--config", b->config, "key=value file; flags take precedence");
    b->app->add_option("--out", b->out, "run directory");
    b->app->add_option("--tol", b->tols, "tolerance override metric=bound");
    bound.push_back(std::move(b));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    fail_line("usage", e.what());
    std::cerr << app.help();
    return 2;
  }

  if (list->parsed()) {
    for (const auto& e : experiment_registry()) std::cout << e.command << ' ' << e.name << "  " << e.help << '\n';
    return 0;
  }

  Bound* sel = nullptr;
  for (auto& b : bound)
    if (b->app->parsed()) sel = b.get();
  if (!sel) {
    fail_line("usage", "no experiment selected");
    return 2;
  }
  const ExperimentEntry& e = *sel->entry;
  RunConfig cfg(e.name, e.keys);
  try {
    if (!sel->config.empty()) cfg.load_file(sel->config);
    for (const auto& k : e.keys)
      if (sel->app->count("--" + k.name)) cfg.set(k.name, sel->raw[k.name]);
    for (const auto& t : sel->tols) {
      auto eq = t.find('=');
      if (eq == std::string::npos) throw InvalidArgument("--tol expects metric=bound");
      cfg.tolerance_overrides[t.substr(0, eq)] = parse_real(t.substr(eq + 1));
    }
  } catch (const Error& err) {
    fail_line(err.code(), err.what());
    return 2;
  }

  std::string out = sel->out;
  if (out.empty()) out = "runs/" + e.name + (cfg.has("seed") ? "-seed" + cfg.text("seed") : "");

  if (e.name == "plot-data") {
    try {
      if (cfg.text("report").empty()) throw InvalidArgument("--report is required");
      auto files = emit_plot_data(cfg.text("report"), out);
      for (const auto& f : files) std::cout << "wrote " << f << '\n';
      return 0;
    } catch (const Error& err) {
      fail_line(err.code(), err.what());
      return err.code() == "missing-data" ? 1 : 2;
    }
  }

  ExperimentReport report;
  Artifacts extra;
  try {
    report = e.run(cfg, extra);
    for (const auto& [metric, b] : cfg.tolerance_overrides) {
      auto it = report.tolerances.find(metric);
      if (it == report.tolerances.end()) throw InvalidArgument("no tolerance on metric '" + metric + "'");
      it->second.bound = b;
    }
    for (const auto& k : e.keys) report.params.emplace("config." + k.name, cfg.text(k.name));
    report.evaluate();
  } catch (const InvalidArgument& err) {
    fail_line(err.code(), err.what());
    return 2;
  } catch (const PreconditionViolation& err) {
    fail_line(err.code(), err.what());
    return 2;
  } catch (const Error& err) {
    fail_line(err.code(), err.what());
    return 1;
  }

  std::string rp;
  try {
    rp = write_run_directory(out, cfg, report, extra);
  } catch (const std::exception& err) {
    fail_line("io-error", err.what());
    return 1;
  }
  std::cout << report.summary() << '\n';
  if (report.pass) {
    std::cout << "status=pass experiment=" << e.name << " report=" << rp << '\n';
    return 0;
  }
  std::cout << "status=fail experiment=" << e.name << " reason=\"" << report.first_failure() << "\" report=" << rp
            << '\n';
  return 1;
}

}  // namespace extomo
