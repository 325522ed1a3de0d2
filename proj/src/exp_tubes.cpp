#include <cmath>

#include "exp_util.hpp"
#include "extomo/rng.hpp"

namespace extomo {

ExperimentReport randomized_tube_experiment(const TubeExperimentSpec& spec) {
  const double R = spec.R;
  if (!(R >= 16 && R <= 256)) throw InvalidArgument("randomized_tube_experiment: R must lie in [16, 256]");
  if (spec.n_tubes < 1 || spec.n_trials < 2) throw InvalidArgument("randomized_tube_experiment: need tubes and trials");
  ExperimentReport r;
  r.name = "tubes";
  r.seed = spec.seed;
  r.param("R", R);
  r.param("n_tubes", spec.n_tubes);
  r.param("n_trials", spec.n_trials);
  r.param("cap_c", spec.cap_c);
  r.param("core_fraction", spec.core_fraction);
  r.param("core_samples", spec.core_samples);
  r.param("grid_nodes", spec.grid_nodes);

  const double width = 1 / std::sqrt(R);  // tube half-width and direction separation in rescaled x
  const double cap = spec.cap_c * width;
  Rng rng(spec.seed, "randomized_tube_experiment");
  Rng geo = rng.split(0);
  // Directions 1.25 R^{-1/2} apart keep the caps disjoint and the family separated.
  const double pitch = std::max(1.25, 2.5 * spec.cap_c) * width;
  double theta0 = geo.uniform(0, 2 * kPi);
  TubeFamily fam;
  fam.delta = width;
  fam.length = 1;
  for (int k = 0; k < spec.n_tubes; ++k) {
    Vec om = spherical_point(2, 0, theta0 + k * pitch);
    Vec c(geo.uniform(-1, 1), geo.uniform(-1, 1), 0);
    fam.tubes.push_back({om, c});
  }
  validate_family(fam);

  GridPtr grid = make_circle_grid(spec.grid_nodes);
  if (grid->exactness < 4 * R) r.flags.push_back("grid exactness below 4R");
  std::vector<Density> phi;
  for (const auto& t : fam.tubes) phi.push_back(knapp_cap_density(grid, {t.omega, cap, -R * t.center}));

  // Core sample points x_T + s omega_T + u omega_T^perp on a tensor lattice.
  int side = std::max(1, static_cast<int>(std::lround(std::sqrt(spec.core_samples))));
  std::vector<Vec> pts;
  std::vector<std::size_t> owner;
  for (std::size_t k = 0; k < fam.tubes.size(); ++k) {
    const Tube& t = fam.tubes[k];
    Vec op = perp2(t.omega);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j) {
        double a = side == 1 ? 0 : -1 + 2.0 * i / (side - 1);
        double b = side == 1 ? 0 : -1 + 2.0 * j / (side - 1);
        double s = a * spec.core_fraction * fam.length / 2, u = b * spec.core_fraction * width;
        pts.push_back(t.center + s * t.omega + u * op);
        owner.push_back(k);
      }
  }
  std::vector<Vec> scaled(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) scaled[i] = R * pts[i];

  // a_T(x) = (phi_T dsigma)^(R x) at every sample point
  std::vector<std::vector<cplx>> amp(phi.size());
  parallel_for(phi.size(), [&](std::size_t k) { amp[k] = extend_many(phi[k], scaled); });
  double cmin = kInf;
  for (std::size_t i = 0; i < pts.size(); ++i)
    cmin = std::min(cmin, std::abs(amp[owner[i]][i]) * std::sqrt(R));
  r.metric("c_min", cmin);
  r.require("c_min", {"ge", 0.1});

  // At the tube center the phase vanishes, so the value is the cap measure.
  double arc = 0;
  for (std::size_t j = 0; j < grid->size(); ++j) arc += grid->weights[j] * std::abs(phi[0][j]);
  cplx centre = extend(phi[0], R * fam.tubes[0].center);
  r.metric("center_over_arc", std::abs(centre) / arc);
  r.metric("arc_over_2cR", arc / (2 * cap));

  // Khintchine: E_nu |sum nu_T a_T|^2 = sum |a_T|^2, with g_nu built and extended directly.
  double expected = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (const auto& a : amp) expected += std::norm(a[i]);
  std::vector<double> trial(spec.n_trials);
  parallel_for(spec.n_trials, [&](std::size_t m) {
    Rng tr = rng.split(1 + m);
    std::vector<cplx> v(grid->size(), 0.0);
    for (const auto& p : phi) {
      int s = tr.rademacher();
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += static_cast<double>(s) * p[j];
    }
    Density g(grid, std::move(v), OffNode::nearest);
    std::vector<cplx> e = extend_many(g, scaled);
    double acc = 0;
    for (const auto& z : e) acc += std::norm(z);
    trial[m] = acc;
  });
  double mean = pairwise_sum(trial) / spec.n_trials, var = 0;
  for (double t : trial) var += (t - mean) * (t - mean);
  var /= spec.n_trials - 1;
  double se = std::sqrt(var / spec.n_trials) / expected;
  double ratio = mean / expected;
  r.metric("khintchine_ratio", ratio);
  r.metric("khintchine_se", se);
  r.metric("khintchine_z", se > 0 ? std::abs(ratio - 1) / se : (ratio == 1 ? 0 : kInf));
  r.metric("khintchine_nominal_band", 3 / std::sqrt(static_cast<double>(spec.n_trials)));
  r.require("khintchine_z", {"le", 3});

  KakeyaDual kd = kakeya_dual_functional(fam, 2, width / 4);
  r.metric("kakeya_lhs", kd.lhs);
  r.metric("kakeya_rhs_scale", kd.rhs_scale);
  r.metric("kakeya_ratio", kd.ratio);
  r.evaluate();
  return r;
}

}  // namespace extomo
