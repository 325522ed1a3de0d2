#include <cmath>
#include <regex>

#include "exp_util.hpp"
#include "extomo/rng.hpp"

namespace extomo {

using detail::fmt;

namespace {

double parse_number(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw InvalidArgument("bad number '" + s + "'");
  return v;
}

}  // namespace

Functional parse_functional(const std::string& text) {
  static const std::regex re(R"(\s*([A-Za-z_]+)\s*(?:\(([^)]*)\))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw InvalidArgument("cannot parse functional '" + text + "'");
  Functional f;
  f.id = m[1];
  std::vector<double> args;
  std::string list = m[2];
  std::size_t pos = 0;
  while (pos < list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string item = list.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      args.push_back(parse_number(item));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad argument '" + item + "' in functional '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw InvalidArgument("functional " + f.id + " takes " + std::to_string(lo) + ".." + std::to_string(hi) +
                            " arguments");
  };
  if (f.id == "xray_sup_ratio") {
    need(0, 2);
    if (args.size() > 0) f.p = args[0];
    if (args.size() > 1) f.q = args[1];
  } else if (f.id == "T_delta_norm") {
    need(0, 3);
    f.q = 2;
    if (args.size() > 0) f.p = args[0];
    if (args.size() > 1) f.q = args[1];
    if (args.size() > 2) f.delta = args[2];
  } else if (f.id == "MT_radial_constant") {
    need(0, 1);
    if (args.size() > 0) f.R = args[0];
  } else {
    throw InvalidArgument("unknown functional '" + f.id + "'");
  }
  if (!(f.p >= 1 && f.q >= 1 && f.delta > 0 && f.R > 1)) throw InvalidArgument("functional parameters out of range");
  return f;
}

namespace {

double lq_over(const SphereGrid& dirs, const std::vector<double>& v, double q) {
  if (std::isinf(q)) return *std::max_element(v.begin(), v.end());
  std::vector<double> t(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) t[k] = dirs.weights[k] * std::pow(v[k], q);
  return std::pow(pairwise_sum(t), 1 / q);
}

// 2 pi S(|g|)(omega)^2 = X_0(|(|g| dsigma)^|^2)(omega), the supremum over v of X(|g^dsigma|^2).
double xray_sup_ratio(const Functional& f, const Density& g) {
  if (g.dim() != 3) throw InvalidArgument("xray_sup_ratio: needs a density on S^2");
  static const GridPtr dirs = make_sphere_grid(4, 8);
  Density a = g.abs().with_mode(OffNode::interpolate);
  std::vector<double> v(dirs->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = 2 * kPi * std::pow(S_operator(a, dirs->nodes[k], 32, 48), 2);
  double gp = g.norm(f.p);
  return lq_over(*dirs, v, f.q) / (gp * gp);
}

// ||T_delta g||_{L^q(S^1)} / ||g||_{L^p(S^1)} with omega on g's own grid.
double t_delta_norm(const Functional& f, const Density& g) {
  if (g.dim() != 2) throw InvalidArgument("T_delta_norm: needs a density on S^1");
  const SphereGrid& dirs = g.grid();
  std::vector<double> v(dirs.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::abs(T_delta(g, dirs.nodes[k], f.delta));
  return lq_over(dirs, v, f.q) / g.norm(f.p);
}

// int_{B_R} |g^dsigma|^2 <x>^{-1} / (sup X(<x>^{-1} 1_{B_R}) ||g||_2^2) on S^1 through the Gram
// matrix G_jk = 2 pi int_0^R <r>^{-1} J_0(r |xi_j - xi_k|) r dr.
double mt_radial(const Functional& f, const Density& g) {
  if (g.dim() != 2) throw InvalidArgument("MT_radial_constant: needs a density on S^1");
  const SphereGrid& grid = g.grid();
  const std::size_t N = grid.size();
  std::vector<double> rx, rw;
  composite_gl(0, f.R, std::max(8, static_cast<int>(f.R)), 12, rx, rw);
  // G depends on |xi_j - xi_k| only, which takes N distinct values on an equispaced circle.
  std::vector<double> kern(N);
  for (std::size_t d = 0; d < N; ++d) {
    double dist = (grid.nodes[d] - grid.nodes[0]).norm();
    double acc = 0;
    for (std::size_t i = 0; i < rx.size(); ++i)
      acc += rw[i] * rx[i] / std::sqrt(1 + rx[i] * rx[i]) * std::cyl_bessel_j(0.0, rx[i] * dist);
    kern[d] = 2 * kPi * acc;
  }
  cplx num = 0;
  for (std::size_t j = 0; j < N; ++j)
    for (std::size_t k = 0; k < N; ++k)
      num += grid.weights[j] * grid.weights[k] * g[j] * std::conj(g[k]) * kern[(j + N - k) % N];
  double xsup = 2 * std::asinh(f.R);  // the radial weight's X-ray is largest through the origin
  double g2 = std::pow(g.norm(2), 2);
  return num.real() / (xsup * g2);
}

}  // namespace

double evaluate_functional(const Functional& f, const Density& g) {
  double v;
  if (f.id == "xray_sup_ratio") v = xray_sup_ratio(f, g);
  else if (f.id == "T_delta_norm") v = t_delta_norm(f, g);
  else if (f.id == "MT_radial_constant") v = mt_radial(f, g);
  else throw InvalidArgument("unknown functional '" + f.id + "'");
  if (!std::isfinite(v)) throw NumericalFailure("functional " + f.id + " is not finite");
  return v;
}

ExtremizeResult extremize(const Functional& f, const Density& init, int steps, double step_size,
                          std::uint64_t seed) {
  if (steps < 0 || !(step_size > 0)) throw InvalidArgument("extremize: steps >= 0 and step_size > 0 required");
  if (init.is_zero()) throw InvalidArgument("extremize: initial density is zero");
  const std::size_t N = init.grid().size();
  auto make = [&](const Eigen::VectorXd& x) {
    std::vector<cplx> v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = x[j];
    return Density(init.grid_ptr(), std::move(v), OffNode::interpolate);
  };
  auto normalize = [&](Eigen::VectorXd x) {
    double p = make(x).norm(f.p);
    if (!(p > 0) || !std::isfinite(p)) throw NumericalFailure("extremize: cannot normalize iterate");
    return Eigen::VectorXd(x / p);
  };
  Eigen::VectorXd x(N);
  for (std::size_t j = 0; j < N; ++j) x[j] = init[j].real();
  x = normalize(x);
  double obj = evaluate_functional(f, make(x));
  ExperimentReport r;
  r.name = "extremize";
  r.seed = seed;
  r.param("functional", f.id);
  r.param("p", f.p);
  r.param("q", f.q);
  r.param("delta", f.delta);
  r.param("R", f.R);
  r.param("steps", steps);
  r.param("step_size", step_size);
  r.metric("initial_objective", obj);
  Rng rng(seed, "extremize");
  std::vector<double> history{obj};
  int accepted = 0;
  for (int it = 0; it < steps; ++it) {
    Eigen::VectorXd grad(N);
    const double eps = 1e-6;
    for (std::size_t j = 0; j < N; ++j) {
      Eigen::VectorXd y = x;
      y[j] += eps;
      grad[j] = (evaluate_functional(f, make(normalize(y))) - obj) / eps;
    }
    if (!grad.allFinite()) throw NumericalFailure("extremize: non-finite gradient");
    double gn = grad.norm();
    if (gn == 0) {
      Rng kick = rng.split(it);
      for (std::size_t j = 0; j < N; ++j) grad[j] = kick.normal();
      gn = grad.norm();
    }
    double s = step_size;
    bool moved = false;
    for (int h = 0; h < 30 && !moved; ++h, s /= 2) {
      Eigen::VectorXd y = normalize(x + s * grad / gn);
      double v = evaluate_functional(f, make(y));
      if (v >= obj) {
        x = y;
        obj = v;
        moved = true;
      }
    }
    if (!moved) break;
    ++accepted;
    history.push_back(obj);
  }
  bool monotone = std::is_sorted(history.begin(), history.end());
  Density best = make(x);
  r.metric("objective", obj);
  r.metric("accepted_steps", accepted);
  r.metric("monotone", monotone ? 1 : 0);
  r.metric("norm_error", std::abs(best.norm(f.p) - 1));
  // The constant density, the candidate extremiser for every functional here.
  Density one = Density::constant(init.grid_ptr(), 1.0);
  double ref = evaluate_functional(f, one.scaled(1 / one.norm(f.p)));
  r.metric("reference_objective", ref);
  r.metric("objective_over_reference", ref > 0 ? obj / ref : 0.0);
  std::vector<double> idx(history.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
  if (history.size() >= 2) r.sweeps["objective"] = GrowthFit::fit("step", idx, "objective", history);
  r.require("monotone", {"ge", 1});
  r.require("norm_error", {"le", 1e-10});
  r.evaluate();
  return {best, r};
}

}  // namespace extomo
