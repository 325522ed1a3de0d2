#include <cmath>

#include "exp_util.hpp"
#include "extomo/rng.hpp"
#include "extomo/spherical_ops.hpp"

namespace extomo {

using detail::fmt;

Weight gaussian_weight(double width) {
  return {"gaussian(" + fmt(width) + ")",
          [width](const Vec& x) { return std::exp(-0.5 * x.squaredNorm() / (width * width)); },
          9 * width};
}

namespace {

// Directions for the weighted integrals. One direction stands for the whole
// circle (weight 2 pi), which is exact for radial weights and data.
GridPtr direction_grid(int n) {
  if (n != 1) return make_circle_grid(n);
  auto g = std::make_shared<SphereGrid>();
  g->dim = 2;
  g->nodes = {Vec(1, 0, 0)};
  g->weights = {2 * kPi};
  g->n_az = 1;
  return g;
}

// 1 on |u| <= 1, cosine taper to 0 at |u| = 1.5.
double plateau(double u) {
  u = std::abs(u);
  if (u <= 1) return 1;
  if (u >= 1.5) return 0;
  double c = std::cos(kPi * (u - 1));
  return c * c;
}

}  // namespace

Weight tube_weight(const Vec& omega0, double a, double len) {
  Vec o = omega0.normalized(), op = perp2(o);
  return {"tube(" + fmt(a) + "," + fmt(len) + ")",
          [o, op, a, len](const Vec& x) { return plateau(x.dot(op) / a) * plateau(x.dot(o) / len); },
          1.5 * std::hypot(a, len) + 1};
}

Weight bracket_weight() {
  return {"bracket", [](const Vec& x) { return 1 / std::sqrt(1 + x.squaredNorm()); }, 0};
}

double gamma_cutoff(double r) {
  double z = r / 2;
  double phi = z < 1e-3 ? 1 - z * z / 12 + z * z * z * z / 384
                        : 8 * std::cyl_bessel_j(2.0, z) / (z * z);
  return std::pow(phi, 6);
}

namespace {

// int_{B_R} |g^dsigma|^2 w on a square lattice of step h.
double ball_integral(const Density& g, const Field& w, double R, double h) {
  std::vector<double> c, cw;
  detail::trapezoid(R, h, c, cw);
  Eigen::MatrixXcd F = extend_lattice(g, Vec::Zero(), Vec(1, 0, 0), c, Vec(0, 1, 0), c);
  const double step = c[1] - c[0];
  std::vector<double> rows(c.size());
  parallel_for(c.size(), [&](std::size_t i) {
    std::vector<double> t(c.size(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      Vec x(c[i], c[j], 0);
      if (x.squaredNorm() <= R * R) t[j] = std::norm(F(i, j)) * w(x);
    }
    rows[i] = pairwise_sum(t);
  });
  return pairwise_sum(rows) * step * step;
}

void check_circle(const Density& g, const char* what) {
  if (g.dim() != 2) throw InvalidArgument(std::string(what) + ": needs a density on S^1");
}

}  // namespace

ExperimentReport verify_wstein(const Density& g, const Weight& w, double R, const WSteinSpec& spec) {
  check_circle(g, "verify_wstein");
  if (!(R > 1)) throw InvalidArgument("verify_wstein: R must exceed 1");
  ExperimentReport r;
  r.name = "wstein";
  r.param("weight", w.name);
  r.param("R", R);
  r.param("h", spec.h);
  r.param("n_directions", spec.n_directions);
  if (g.grid().exactness < R) r.flags.push_back("grid exactness below R");
  double lhs = ball_integral(g, w.w, R, spec.h);

  Density G = poisson_mollify_circle(g.abs(), 1 / R).abs_squared();
  GridPtr dirs = direction_grid(spec.n_directions);
  double hw = w.extent > 0 ? w.extent + 4 : spec.profile_half_width;
  int samples = std::max(spec.profile_samples, static_cast<int>(std::ceil(2 * hw / spec.h)) + 1);
  std::vector<double> terms(dirs->size()), sw(dirs->size());
  parallel_for(dirs->size(), [&](std::size_t k) {
    const Vec& om = dirs->nodes[k];
    LineProfile p = xray_profile(w.w, 2, om, hw, samples, hw, samples);
    sw[k] = frac_sobolev_norm(p, 0.25);
    double b1 = std::sqrt(std::abs(BT_delta(G, G, om, 1 / R)));
    double b2 = std::sqrt(std::abs(BT_delta(G, G, perp2(om), 1 / R)));
    terms[k] = dirs->weights[k] * (b1 + b2) * sw[k];
  });
  double rhs = pairwise_sum(terms);
  double C = rhs > 0 ? lhs / rhs : 0.0;
  r.metric("lhs", lhs);
  r.metric("rhs", rhs);
  r.metric("C", C);
  // ||S w||_{L^2(S^1)} / ||w||_{L^2} is the isometry constant (4 pi)^{1/2}
  std::vector<double> sq(dirs->size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = dirs->weights[k] * sw[k] * sw[k];
  r.metric("Sw_l2", std::sqrt(pairwise_sum(sq)));
  r.require("C", {"le", spec.c_max});
  r.evaluate();
  return r;
}

namespace {

// ||(-Delta_v)^alpha u||_{L^{qp}_v} for a decaying profile, by zero padding
// before applying the periodic multiplier.
double frac_norm_lq(const LineProfile& p, double alpha, double qp) {
  if (qp == 2) return frac_sobolev_norm(p, alpha);
  const int pad = 4;
  int M = p.samples, P = pad * (M - 1) + 1;
  LineProfile big = make_profile(2, p.omega, p.half_width * pad, P);
  int off = (P - M) / 2;
  for (int i = 0; i < M; ++i) big.values[off + i] = p.values[i];
  LineProfile d = alpha == 0 ? big : frac_laplacian(big, alpha, false);
  double h = d.spacing();
  if (std::isinf(qp)) {
    double m = 0;
    for (double v : d.values) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> t(d.values.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = h * std::pow(std::abs(d.values[i]), qp);
  return std::pow(pairwise_sum(t), 1 / qp);
}

}  // namespace

ExperimentReport verify_wmiztak(const Density& g, const Weight& w, double R, double q,
                                const WMizTakSpec& spec) {
  check_circle(g, "verify_wmiztak");
  if (!(R > 1)) throw InvalidArgument("verify_wmiztak: R must exceed 1");
  if (!(q >= 1)) throw InvalidArgument("verify_wmiztak: q must be >= 1");
  ExperimentReport r;
  r.name = "wmiztak";
  r.param("weight", w.name);
  r.param("R", R);
  r.param("q", q);
  r.param("h", spec.h);
  r.param("gamma_extent", spec.gamma_extent);
  r.param("n_directions", spec.n_directions);
  bool probe = q > 2;
  if (probe) r.flags.push_back("q outside [1,2]: falsification probe");
  double g2 = std::pow(g.norm(2), 2);

  // Mizohata-Takeuchi constant with w restricted to B_R on both sides.
  Field wr = [&w, R](const Vec& x) { return x.squaredNorm() <= R * R ? w.w(x) : 0.0; };
  double lhs = ball_integral(g, w.w, R, spec.h);
  GridPtr dirs = direction_grid(spec.n_directions);
  double xmax = 0;
  int ns = static_cast<int>(std::ceil(2 * R / 0.25)) + 1;
  for (std::size_t k = 0; k < dirs->size(); ++k)
    xmax = std::max(xmax, sup_xray(wr, 2, dirs->nodes[k], 0.5, R, R, ns));
  double cmt = xmax > 0 && g2 > 0 ? lhs / (xmax * g2) : 0.0;
  r.metric("lhs", lhs);
  r.metric("xray_sup", xmax);
  r.metric("C_MT", cmt);
  r.require("C_MT", {"le", spec.c_max});

  if (spec.with_cq) {
    const double E = spec.gamma_extent * R;
    std::vector<double> v, vw;
    detail::trapezoid(E, spec.h_profile, v, vw);
    const double alpha = 0.5 * (1 - 1 / q);
    const double qp = q == 1 ? kInf : q / (q - 1);
    std::vector<double> gam(v.size() * v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) gam[i * v.size() + j] = gamma_cutoff(std::hypot(v[i], v[j]) / R);
    std::vector<double> per(dirs->size());
    for (std::size_t k = 0; k < dirs->size(); ++k) {
      const Vec& om = dirs->nodes[k];
      Vec op = perp2(om);
      Eigen::MatrixXcd F = extend_lattice(g, Vec::Zero(), op, v, om, v);  // (v, s)
      LineProfile p = make_profile(2, om, E, static_cast<int>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += vw[j] * gam[i * v.size() + j] * std::norm(F(i, j));
        p.values[i] = acc;
      }
      per[k] = dirs->weights[k] * frac_norm_lq(p, alpha, qp);
    }
    double num = pairwise_sum(per);
    double cq = g2 > 0 ? num / (std::log(R) * g2) : 0.0;
    r.metric("lhs_q", num);
    r.metric("C_q", cq);
    if (!probe) r.require("C_q", {"le", spec.c_max});
  }
  r.evaluate();
  return r;
}

ExperimentReport weighted_inequalities_sweep(const WeightedSweepSpec& spec) {
  ExperimentReport r;
  r.name = "weighted-inequalities";
  r.seed = spec.seed;
  r.param("R_list", detail::join(spec.R_list));
  r.param("n_random", spec.n_random);
  r.param("c_max", spec.c_max);
  const Vec om0(1, 0, 0);
  Rng rng(spec.seed, "weighted_inequalities_sweep");
  double cmax_all = 0, worst_jump = 1;
  std::map<std::string, std::vector<double>> series;
  std::vector<double> lhs2, lhs3, c3;
  for (double R : spec.R_list) {
    GridPtr grid = make_circle_grid(static_cast<int>(detail::next_pow2(2 * R + 64)));
    Density one = Density::constant(grid, 1.0);
    Density cap = knapp_cap_density(grid, {om0, 1 / std::sqrt(R), Vec::Zero()});
    auto record = [&](const std::string& key, double c) {
      series[key].push_back(c);
      cmax_all = std::max(cmax_all, c);
      r.metric(key + "_R" + fmt(R), c);
    };
    WSteinSpec ws;
    WMizTakSpec wm;
    wm.with_cq = false;
    record("wstein_gauss", verify_wstein(one, gaussian_weight(2), R, ws).metrics.at("C"));
    record("wstein_tube", verify_wstein(cap, tube_weight(om0, 2, R / 2), R, ws).metrics.at("C"));
    record("mt_tube", verify_wmiztak(cap, tube_weight(om0, 2, R / 2), R, 2, wm).metrics.at("C_MT"));
    double worst_random = 0;
    for (int i = 0; i < spec.n_random; ++i) {
      Density g = random_smooth_density(grid, rng.split(i).next_u64(), 4);
      wm.n_directions = 1;  // radial weight
      worst_random = std::max(worst_random, verify_wmiztak(g, bracket_weight(), R, 2, wm).metrics.at("C_MT"));
    }
    record("mt_radial_random", worst_random);

    // C_q for g = 1 at q = 2 and the q = 3 probe; g = 1 is radial, one direction suffices.
    GridPtr wide = make_circle_grid(static_cast<int>(detail::next_pow2(6 * R * 1.5 + 64)));
    Density onew = Density::constant(wide, 1.0);
    WMizTakSpec cq;
    cq.n_directions = 1;
    ExperimentReport q2 = verify_wmiztak(onew, gaussian_weight(2), R, 2, cq);
    ExperimentReport q3 = verify_wmiztak(onew, gaussian_weight(2), R, 3, cq);
    record("Cq2_const", q2.metrics.at("C_q"));
    lhs2.push_back(q2.metrics.at("lhs_q"));
    lhs3.push_back(q3.metrics.at("lhs_q"));
    c3.push_back(q3.metrics.at("C_q"));
    r.metric("C_q3_R" + fmt(R), c3.back());
  }
  for (const auto& [key, vals] : series)
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
      if (vals[i] > 0 && vals[i + 1] > 0)
        worst_jump = std::max(worst_jump, std::max(vals[i + 1] / vals[i], vals[i] / vals[i + 1]));
  r.metric("max_constant", cmax_all);
  r.metric("max_doubling_ratio", worst_jump);
  GrowthFit f3 = GrowthFit::fit("R", spec.R_list, "q=3 lhs", lhs3, "log", "log");
  std::vector<double> rel;
  for (std::size_t i = 0; i < lhs3.size(); ++i) rel.push_back(lhs3[i] / lhs2[i]);
  GrowthFit fr = GrowthFit::fit("R", spec.R_list, "q=3 / q=2", rel, "log", "log");
  r.sweeps["q3-probe"] = f3;
  r.sweeps["q3-over-q2"] = fr;
  r.metric("q3_power_slope", f3.slope);
  r.metric("q3_over_q2_slope", fr.slope);
  r.require("max_constant", {"le", spec.c_max});
  r.require("max_doubling_ratio", {"le", 2});
  r.require("q3_power_slope", {"ge", 1e-3});
  r.require("q3_over_q2_slope", {"ge", 1e-3});
  r.evaluate();
  return r;
}

// ------------------------------------------------------------ reduction lemma

ReduceResult reduce_lemma_sides(const Density& g, const ReduceSpec& spec) {
  if (g.dim() != 3) throw InvalidArgument("reduce_lemma_sides: needs a density on S^2");
  if (!g.is_real()) throw InvalidArgument("reduce_lemma_sides: g must be real");
  if (!(spec.epsilon > 0 && spec.epsilon < 0.5)) throw InvalidArgument("reduce_lemma_sides: epsilon in (0, 1/2)");
  GridPtr dirs = make_sphere_grid(spec.n_polar, spec.n_az);
  const double eps = spec.epsilon, q = spec.q;
  Density gr = g.reflected_origin();

  std::vector<double> a, aw;
  detail::trapezoid(spec.half_width, spec.h, a, aw);
  std::vector<double> tx, tw, ux, uw;
  gauss_legendre(spec.n_t_xray, tx, tw);
  gauss_legendre(spec.n_t, ux, uw);

  std::vector<double> lhs_terms(dirs->size()), rhs_terms(dirs->size());
  for (std::size_t k = 0; k < dirs->size(); ++k) {
    const Vec& om = dirs->nodes[k];
    Vec e1, e2;
    orthonormal_frame(om, e1, e2);
    // X(|g^dsigma|^2)(omega, v) = 2 pi int |(g dsigma_{omega,t})^(v)|^2 dt on a v lattice
    LineProfile p = make_profile(3, om, spec.half_width, static_cast<int>(a.size()));
    p.e1 = e1;
    p.e2 = e2;
    std::vector<Eigen::MatrixXd> parts(spec.n_t_xray);
    parallel_for(spec.n_t_xray, [&](std::size_t i) {
      auto pts = slice_points(3, om, tx[i], spec.n_slice);
      std::vector<Vec> xi;
      std::vector<cplx> c;
      for (const auto& sp : pts) {
        xi.push_back(sp.xi);
        c.push_back(sp.weight * g.at(sp.xi));
      }
      parts[i] = lattice_sum(xi, c, Vec::Zero(), e1, a, e2, a).cwiseAbs2() * (2 * kPi * tw[i]);
    });
    Eigen::MatrixXd U = Eigen::MatrixXd::Zero(a.size(), a.size());
    for (const auto& m : parts) U += m;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) p.values[i * a.size() + j] = U(i, j);
    double N = frac_sobolev_norm(p, eps, 2);
    lhs_terms[k] = dirs->weights[k] * std::pow(N, q);

    // int_{S^1_omega} int_0^1 |BA_t(g, g(-.))(u)|^2 t^{-1+4 eps} dt du, t = tau^{1/(4 eps)}
    std::vector<double> inner(spec.n_u);
    parallel_for(spec.n_u, [&](std::size_t iu) {
      double ang = 2 * kPi * iu / spec.n_u;
      Vec u = std::cos(ang) * e1 + std::sin(ang) * e2;
      std::vector<double> t(spec.n_t);
      for (int it = 0; it < spec.n_t; ++it) {
        double tau = 0.5 * (ux[it] + 1);
        double tt = std::pow(tau, 1 / (4 * eps));
        t[it] = 0.5 * uw[it] * std::norm(BA_t(g, gr, u, tt, BAPath::generic, spec.n_slice));
      }
      inner[iu] = 2 * kPi / spec.n_u * pairwise_sum(t) / (4 * eps);
    });
    rhs_terms[k] = dirs->weights[k] * std::pow(pairwise_sum(inner), q / 2);
  }
  ReduceResult res;
  res.lhs = pairwise_sum(lhs_terms);
  res.rhs = pairwise_sum(rhs_terms);
  res.ratio = res.rhs > 0 ? res.lhs / res.rhs : 0.0;
  return res;
}

ExperimentReport verify_reduce_lemma(const ReduceSpec& spec) {
  ExperimentReport r;
  r.name = "reduce-lemma";
  r.param("epsilon", spec.epsilon);
  r.param("q", spec.q);
  r.param("half_width", spec.half_width);
  r.param("n_polar", spec.n_polar);
  r.param("n_az", spec.n_az);
  GridPtr grid = make_sphere_grid(16, 32);
  const Vec c(0.3, -0.2, 0.93);
  Vec cn = c.normalized();
  std::vector<std::pair<std::string, Density>> family{
      {"constant", Density::constant(grid, 1.0)},
      {"cap", cap_bump_density(grid, cn, 0.8)},
      {"band", Density::sample(grid, [](const Vec& xi) { return cplx(std::exp(-0.5 * std::pow(xi.x() / 0.3, 2))); })},
      {"random", random_smooth_density(grid, 29, 3, 1.5)},
      {"modulated", Density::sample(grid, [cn](const Vec& xi) {
         double d = geodesic_distance(cn, xi);
         return cplx(std::cos(3 * xi.y()) * (d < 1.2 ? std::exp(1 - 1 / (1 - d * d / 1.44)) : 0.0));
       })}};
  std::vector<double> ratios;
  for (const auto& [name, g] : family) {
    ReduceResult res = reduce_lemma_sides(g, spec);
    r.metric("lhs_" + name, res.lhs);
    r.metric("rhs_" + name, res.rhs);
    r.metric("ratio_" + name, res.ratio);
    ratios.push_back(res.ratio);
  }
  double spread = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
  r.metric("ratio_spread", spread);
  r.require("ratio_spread", {"le", 4});
  r.evaluate();
  return r;
}

}  // namespace extomo
