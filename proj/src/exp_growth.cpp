#include <cmath>

#include "exp_util.hpp"
#include "extomo/rng.hpp"
#include "extomo/spherical_ops.hpp"

namespace extomo {

using detail::fmt;

namespace {

// Range of (p, q) for which log(R) growth holds when n = 2: p >= 2 and 1/q >= 2/p.
bool radon_range_n2(double p, double q) { return p >= 2 && 1 / q >= 2 / p - 1e-12; }

double lq_norm(const SphereGrid& dirs, const std::vector<double>& vals, double q) {
  if (std::isinf(q)) return *std::max_element(vals.begin(), vals.end());
  std::vector<double> t(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) t[k] = dirs.weights[k] * std::pow(std::abs(vals[k]), q);
  return std::pow(pairwise_sum(t), 1 / q);
}

// t lattice: pitch `pitch` on |t| <= dense, then doubling out to R.
std::vector<double> t_lattice(double R, double pitch, double dense) {
  std::vector<double> t;
  double top = std::min(dense, R);
  int k = static_cast<int>(std::floor(top / pitch));
  for (int i = -k; i <= k; ++i) t.push_back(i * pitch);
  for (double x = 2 * top; x < R; x *= 2) {
    t.push_back(x);
    t.insert(t.begin(), -x);
  }
  return t;
}

}  // namespace

ExperimentReport radon_growth_sweep(const RadonGrowthSpec& spec) {
  ExperimentReport r;
  r.name = "radon-growth";
  r.param("family", spec.family);
  r.param("p", spec.p);
  r.param("q", spec.q);
  r.param("R_list", detail::join(spec.R_list));
  r.param("n_directions", spec.n_directions);
  r.param("t_pitch", spec.t_pitch);
  r.param("h", spec.h);
  if (spec.family != "constant" && spec.family != "knapp")
    throw InvalidArgument("radon_growth_sweep: family must be constant or knapp");
  bool in_range = radon_range_n2(spec.p, spec.q);
  if (!in_range) {
    if (!spec.probe)
      throw InvalidArgument("radon_growth_sweep: (p, q) outside the log range; declare probe=true");
    r.flags.push_back("outside-range probe");
  }
  GridPtr dirs = make_circle_grid(spec.n_directions);
  std::vector<double> values;
  for (double R : spec.R_list) {
    if (!(R >= 2)) throw InvalidArgument("radon_growth_sweep: R must be >= 2");
    GridPtr grid = make_circle_grid(static_cast<int>(detail::next_pow2(1.5 * R + 64)));
    Density g = spec.family == "constant"
                    ? Density::constant(grid, 1.0)
                    : knapp_cap_density(grid, {Vec(0, 1, 0), 1 / std::sqrt(R), Vec::Zero()});
    std::vector<double> ts = t_lattice(R, spec.t_pitch, spec.t_dense);
    std::vector<double> s, w;
    detail::trapezoid(R, spec.h, s, w);
    std::vector<double> per_dir(dirs->size());
    for (std::size_t k = 0; k < dirs->size(); ++k) {
      const Vec& om = dirs->nodes[k];
      Eigen::MatrixXcd F = extend_lattice(g, Vec::Zero(), om, ts, perp2(om), s);
      double best = 0;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        std::vector<double> terms(s.size(), 0.0);
        for (std::size_t j = 0; j < s.size(); ++j)
          if (ts[i] * ts[i] + s[j] * s[j] <= R * R) terms[j] = w[j] * std::norm(F(i, j));
        best = std::max(best, pairwise_sum(terms));
      }
      per_dir[k] = best;
    }
    double gp = g.norm(spec.p);
    double v = gp > 0 ? lq_norm(*dirs, per_dir, spec.q) / (gp * gp) : 0.0;
    values.push_back(v);
    r.metric("value_R" + fmt(R), v);
  }
  if (spec.family == "constant") {
    GrowthFit fit = GrowthFit::fit("R", spec.R_list, "norm", values, "log", "id");
    std::vector<double> ratio;
    for (std::size_t i = 0; i < values.size(); ++i) ratio.push_back(values[i] / std::log(spec.R_list[i]));
    double band = *std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end());
    r.sweeps["growth"] = fit;
    r.metric("slope", fit.slope);
    r.metric("r_squared", fit.r_squared);
    r.metric("band", band);
    r.require("r_squared", {"ge", 0.9});
    r.require("band", {"le", 2});
  } else {
    GrowthFit fit = GrowthFit::fit("R", spec.R_list, "norm", values, "log", "log");
    r.sweeps["growth"] = fit;
    r.metric("power_slope", fit.slope);
    r.metric("r_squared", fit.r_squared);
    if (!in_range) r.require("power_slope", {"ge", 0.3});
  }
  r.evaluate();
  return r;
}

ExperimentReport t_delta_log_law(const std::vector<double>& delta_list) {
  ExperimentReport r;
  r.name = "t-delta-log-law";
  r.param("delta_list", detail::join(delta_list));
  std::vector<double> vals;
  for (double d : delta_list) {
    GridPtr grid = make_circle_grid(static_cast<int>(detail::next_pow2(16 / d)));
    double v = T_delta(Density::constant(grid, 1.0), Vec(1, 0, 0), d).real();
    vals.push_back(v);
    r.metric("T_delta_" + fmt(d), v);
  }
  GrowthFit fit = GrowthFit::fit("delta", delta_list, "T_delta(1)", vals, "neglog", "id");
  r.sweeps["log-law"] = fit;
  r.metric("slope", fit.slope);
  r.metric("r_squared", fit.r_squared);
  r.require("slope", {"abs_le", 0.2, 4.0});
  r.require("r_squared", {"ge", 0.999});
  r.evaluate();
  return r;
}

ExperimentReport bt_bounds_sweep(const BTSweepSpec& spec) {
  ExperimentReport r;
  r.name = "bt-bounds";
  r.seed = spec.seed;
  r.param("delta_list", detail::join(spec.delta_list));
  r.param("n_directions", spec.n_directions);
  r.param("n_random", spec.n_random);
  GridPtr dirs = make_circle_grid(spec.n_directions);
  Rng rng(spec.seed, "bt_bounds_sweep");
  std::vector<double> worst_half, worst_one;
  double const_check = 0;
  for (double d : spec.delta_list) {
    GridPtr grid = make_circle_grid(static_cast<int>(detail::next_pow2(64 / d)));
    std::vector<std::pair<Density, Density>> family;
    family.emplace_back(Density::constant(grid, 1.0), Density::constant(grid, 1.0));
    const double a0 = 0.37;
    for (double off : {kPi / 2 + 0.01, kPi - 0.3, 0.7}) {
      auto cap = [&](double ang) {
        return knapp_cap_density(grid, {spherical_point(2, 0, ang), d / 2, Vec::Zero()});
      };
      family.emplace_back(cap(a0), cap(a0 + off));
    }
    for (int i = 0; i < spec.n_random; ++i) {
      Density a = random_smooth_density(grid, rng.split(2 * i).next_u64(), 6).abs();
      Density b = random_smooth_density(grid, rng.split(2 * i + 1).next_u64(), 6).abs();
      family.emplace_back(a, b);
    }
    double wh = 0, wo = 0;
    for (std::size_t f = 0; f < family.size(); ++f) {
      const auto& [g1, g2] = family[f];
      std::vector<double> half(dirs->size()), one(dirs->size());
      parallel_for(dirs->size(), [&](std::size_t k) {
        double b = std::abs(BT_delta(g1, g2, dirs->nodes[k], d));
        half[k] = dirs->weights[k] * std::sqrt(b);
        one[k] = dirs->weights[k] * b;
      });
      double nh = std::pow(pairwise_sum(half), 2), no = pairwise_sum(one);
      double rh = nh / (g1.norm(1) * g2.norm(1)), ro = no / (g1.norm(2) * g2.norm(2));
      wh = std::max(wh, rh);
      wo = std::max(wo, ro);
      if (f == 0) {
        double t = T_delta(g1, Vec(1, 0, 0), d).real();
        const_check = std::max(const_check, detail::rel_err(no, 2 * kPi * t));
      }
    }
    worst_half.push_back(wh);
    worst_one.push_back(wo);
    r.metric("half_ratio_" + fmt(d), wh);
    r.metric("one_ratio_" + fmt(d), wo);
  }
  GrowthFit f1 = GrowthFit::fit("delta", spec.delta_list, "L1/2 ratio", worst_half, "neglog2", "id");
  GrowthFit f2 = GrowthFit::fit("delta", spec.delta_list, "L1 ratio", worst_one, "neglog", "id");
  r.sweeps["bt-half"] = f1;
  r.sweeps["bt-one"] = f2;
  auto above = [](const GrowthFit& f) {
    double m = 0;
    for (std::size_t i = 0; i < f.y_raw.size(); ++i) m = std::max(m, f.y_raw[i] / f.fit_value(i));
    return m;
  };
  r.metric("half_slope", f1.slope);
  r.metric("one_slope", f2.slope);
  r.metric("half_max_over_fit", above(f1));
  r.metric("one_max_over_fit", above(f2));
  r.metric("constant_vs_T_delta", const_check);
  r.require("half_max_over_fit", {"le", 2});
  r.require("one_max_over_fit", {"le", 2});
  r.require("constant_vs_T_delta", {"le", 1e-8});
  r.evaluate();
  return r;
}

}  // namespace extomo
