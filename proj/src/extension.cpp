#include "extomo/extension.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace extomo {

namespace {

struct Active {
  std::vector<Vec> xi;
  std::vector<cplx> c;  // weight * value
  std::size_t size() const { return c.size(); }
};

Active active_nodes(const Density& g) {
  Active a;
  const auto& grid = g.grid();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (g[j] == 0.0) continue;
    a.xi.push_back(grid.nodes[j]);
    a.c.push_back(grid.weights[j] * g[j]);
  }
  return a;
}

cplx sum_active(const Active& a, const Vec& x) {
  constexpr std::size_t kBlock = 256;
  std::vector<cplx> partial;
  partial.reserve(a.size() / kBlock + 1);
  for (std::size_t s = 0; s < a.size(); s += kBlock) {
    std::size_t e = std::min(a.size(), s + kBlock);
    double re = 0, im = 0;
    for (std::size_t j = s; j < e; ++j) {
      double ph = x.dot(a.xi[j]);
      double cs = std::cos(ph), sn = std::sin(ph);
      re += a.c[j].real() * cs - a.c[j].imag() * sn;
      im += a.c[j].real() * sn + a.c[j].imag() * cs;
    }
    partial.emplace_back(re, im);
  }
  return pairwise_sum(partial);
}

// F(k, l) = sum_j A(k, j) B(j, l), evaluated in fixed column blocks.
Eigen::MatrixXcd blocked_product(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd F(A.rows(), B.cols());
  constexpr Eigen::Index kCols = 64;
  Eigen::Index nblk = (B.cols() + kCols - 1) / kCols;
  parallel_for(static_cast<std::size_t>(nblk), [&](std::size_t b) {
    Eigen::Index c0 = static_cast<Eigen::Index>(b) * kCols;
    Eigen::Index w = std::min(kCols, B.cols() - c0);
    F.middleCols(c0, w).noalias() = A * B.middleCols(c0, w);
  });
  return F;
}

}  // namespace

Vec SampledField::point(std::size_t idx) const {
  Vec p = Vec::Zero();
  std::size_t M = points_per_axis;
  for (int d = dim - 1; d >= 0; --d) {
    p[d] = coord(static_cast<int>(idx % M));
    idx /= M;
  }
  return p;
}

void write_field(const SampledField& f, const std::string& csv_path, const std::string& json_path) {
  std::ofstream os(csv_path);
  if (!os) throw InvalidArgument("cannot write " + csv_path);
  os << (f.dim == 2 ? "index,x,y,re,im\n" : "index,x,y,z,re,im\n");
  os << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) {
    Vec p = f.point(i);
    os << i;
    for (int d = 0; d < f.dim; ++d) os << ',' << p[d];
    os << ',' << f.values[i].real() << ',' << f.values[i].imag() << '\n';
  }
  std::ofstream js(json_path);
  js << json{{"dim", f.dim}, {"half_width", f.half_width}, {"points_per_axis", f.points_per_axis}}
            .dump(2)
     << "\n";
}

cplx extend(const Density& g, const Vec& x) { return sum_active(active_nodes(g), x); }

std::vector<cplx> extend_many(const Density& g, const std::vector<Vec>& xs) {
  Active a = active_nodes(g);
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = sum_active(a, xs[i]); });
  return out;
}

namespace {

bool equispaced(const std::vector<double>& a) {
  if (a.size() < 3) return false;
  double h = a[1] - a[0];
  for (std::size_t k = 2; k < a.size(); ++k)
    if (std::abs(a[k] - a[k - 1] - h) > 1e-12 * std::max(1.0, std::abs(a[k]))) return false;
  return true;
}

// out[k * stride] = c * exp(i (p0 + a[k] p)). Equispaced a uses a rotation
// recurrence re-anchored every 32 steps.
template <class Out>
void phase_row(const std::vector<double>& a, bool eq, double p0, double p, cplx c, Out&& out) {
  const std::size_t n = a.size();
  if (!eq) {
    for (std::size_t k = 0; k < n; ++k) out(k, c * std::polar(1.0, p0 + a[k] * p));
    return;
  }
  const cplx step = std::polar(1.0, (a[1] - a[0]) * p);
  cplx z;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 32 == 0) z = c * std::polar(1.0, p0 + a[k] * p);
    else z *= step;
    out(k, z);
  }
}

}  // namespace

Eigen::MatrixXcd lattice_sum(const std::vector<Vec>& xi, const std::vector<cplx>& c,
                             const Vec& origin, const Vec& e1, const std::vector<double>& a,
                             const Vec& e2, const std::vector<double>& b) {
  if (xi.size() != c.size()) throw InvalidArgument("lattice_sum: size mismatch");
  const Eigen::Index Na = a.size(), Nb = b.size(), Nn = xi.size();
  Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(Na, Nb);
  if (Nn == 0 || Na == 0 || Nb == 0) return F;
  const bool eqa = equispaced(a), eqb = equispaced(b);
  // Nodes are processed in chunks so the phase tables stay around 64 MB.
  const Eigen::Index chunk = std::clamp<Eigen::Index>((Eigen::Index{1} << 22) / (Na + Nb), 64, 4096);
  for (Eigen::Index j0 = 0; j0 < Nn; j0 += chunk) {
    const Eigen::Index C = std::min(chunk, Nn - j0);
    Eigen::MatrixXcd A(Na, C), B(C, Nb);
    parallel_for(static_cast<std::size_t>(C), [&](std::size_t jj) {
      const std::size_t j = j0 + jj;
      double p1 = e1.dot(xi[j]), p2 = e2.dot(xi[j]), p0 = origin.dot(xi[j]);
      phase_row(a, eqa, 0.0, p1, 1.0, [&](std::size_t k, cplx z) { A(k, jj) = z; });
      phase_row(b, eqb, p0, p2, c[j], [&](std::size_t l, cplx z) { B(jj, l) = z; });
    });
    F += blocked_product(A, B);
  }
  return F;
}

Eigen::MatrixXcd extend_lattice(const Density& g, const Vec& origin, const Vec& e1,
                                const std::vector<double>& a, const Vec& e2,
                                const std::vector<double>& b) {
  Active act = active_nodes(g);
  return lattice_sum(act.xi, act.c, origin, e1, a, e2, b);
}

SampledField extend_field(const Density& g, const FieldSpec& spec, bool accelerate,
                          double cost_budget) {
  if (spec.dim != g.dim()) throw InvalidArgument("extend_field: dimension mismatch");
  if (spec.points_per_axis < 2 || !(spec.half_width > 0))
    throw InvalidArgument("extend_field: need points_per_axis >= 2 and half_width > 0");
  SampledField f;
  f.dim = spec.dim;
  f.half_width = spec.half_width;
  f.points_per_axis = spec.points_per_axis;
  std::size_t M = spec.points_per_axis;
  std::size_t total = spec.dim == 2 ? M * M : M * M * M;
  f.values.assign(total, 0.0);
  Active act = active_nodes(g);
  if (act.size() == 0) return f;
  if (!accelerate) {
    double cost = static_cast<double>(total) * act.size();
    if (cost > cost_budget)
      throw ResourceLimit("extend_field: direct cost " + std::to_string(cost) +
                          " exceeds budget " + std::to_string(cost_budget));
    parallel_for(total, [&](std::size_t i) { f.values[i] = sum_active(act, f.point(i)); });
    return f;
  }
  std::vector<double> c(M);
  for (std::size_t i = 0; i < M; ++i) c[i] = f.coord(static_cast<int>(i));
  const Vec ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);
  if (spec.dim == 2) {
    Eigen::MatrixXcd F = extend_lattice(g, Vec::Zero(), ex, c, ey, c);
    for (std::size_t i = 0; i < M; ++i)
      for (std::size_t j = 0; j < M; ++j) f.values[i * M + j] = F(i, j);
    return f;
  }
  Eigen::Index Nn = act.size();
  Eigen::MatrixXcd A(M, Nn), B(Nn, M);
  parallel_for(static_cast<std::size_t>(Nn), [&](std::size_t j) {
    phase_row(c, true, 0.0, act.xi[j].y(), 1.0, [&](std::size_t k, cplx z) { A(k, j) = z; });
    phase_row(c, true, 0.0, act.xi[j].z(), 1.0, [&](std::size_t k, cplx z) { B(j, k) = z; });
  });
  for (std::size_t i = 0; i < M; ++i) {
    Eigen::MatrixXcd Bi(Nn, M);
    for (Eigen::Index j = 0; j < Nn; ++j)
      Bi.row(j) = (act.c[j] * std::polar(1.0, c[i] * act.xi[j].x())) * B.row(j);
    Eigen::MatrixXcd F = blocked_product(A, Bi);
    for (std::size_t j = 0; j < M; ++j)
      for (std::size_t k = 0; k < M; ++k) f.values[(i * M + j) * M + k] = F(j, k);
  }
  return f;
}

std::vector<SlicePoint> slice_points(int dim, const Vec& omega_in, double t, int n_slice) {
  if (!(std::abs(t) < 1)) throw InvalidArgument("slice: |t| must be < 1");
  Vec omega = unit_checked(omega_in, "slice: omega");
  double s = std::sqrt((1 - t) * (1 + t));
  std::vector<SlicePoint> pts;
  if (dim == 2) {
    Vec op = perp2(omega);
    double w = 1.0 / s;
    pts.push_back({t * omega + s * op, w});
    pts.push_back({t * omega - s * op, w});
    return pts;
  }
  if (n_slice < 8) throw InvalidArgument("slice: n_slice must be >= 8");
  Vec e1, e2;
  orthonormal_frame(omega, e1, e2);
  pts.reserve(n_slice);
  double w = 2 * kPi / n_slice;
  for (int k = 0; k < n_slice; ++k) {
    double a = 2 * kPi * k / n_slice;
    Vec p = t * omega + s * (std::cos(a) * e1 + std::sin(a) * e2);
    pts.push_back({p / p.norm(), w});
  }
  return pts;
}

static void check_perp(const Vec& omega, const Vec& v) {
  if (std::abs(v.dot(omega)) > 1e-10 * std::max(1.0, v.norm()))
    throw InvalidArgument("extend_slice: v must be orthogonal to omega");
}

cplx extend_slice(const Density& g, const SliceSpec& slice, const Vec& v, int n_slice) {
  check_perp(slice.omega, v);
  auto pts = slice_points(g.dim(), slice.omega, slice.t, n_slice);
  std::vector<cplx> terms(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k)
    terms[k] = pts[k].weight * g.at(pts[k].xi) * std::polar(1.0, v.dot(pts[k].xi));
  return pairwise_sum(terms);
}

std::vector<cplx> extend_slice_many(const Density& g, const SliceSpec& slice,
                                    const std::vector<Vec>& vs, int n_slice) {
  auto pts = slice_points(g.dim(), slice.omega, slice.t, n_slice);
  std::vector<cplx> c(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) c[k] = pts[k].weight * g.at(pts[k].xi);
  std::vector<cplx> out(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    check_perp(slice.omega, vs[i]);
    std::vector<cplx> terms(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
      terms[k] = c[k] * std::polar(1.0, vs[i].dot(pts[k].xi));
    out[i] = pairwise_sum(terms);
  }
  return out;
}

double slice_mass(int n, double t, int n_slice) {
  Vec omega = n == 2 ? Vec(1, 0, 0) : Vec(0, 0, 1);
  auto pts = slice_points(n, omega, t, n_slice);
  std::vector<double> w;
  for (const auto& p : pts) w.push_back(p.weight);
  return pairwise_sum(w);
}

double sigma_hat_circle(double r) { return 2 * kPi * std::cyl_bessel_j(0.0, r); }

double sigma_hat_sphere(double r) {
  if (std::abs(r) < 1e-8) return 4 * kPi * (1 - r * r / 6);
  return 4 * kPi * std::sin(r) / r;
}

ExperimentReport stationary_phase_decay_check(int n, const std::vector<double>& radii,
                                              int n_directions) {
  if (n != 2 && n != 3) throw InvalidArgument("stationary_phase_decay_check: n must be 2 or 3");
  if (radii.empty()) throw InvalidArgument("stationary_phase_decay_check: empty radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw InvalidArgument("stationary_phase_decay_check: radii must increase");
  double rmax = radii.back();
  if (rmax > 1e3) throw InvalidArgument("stationary_phase_decay_check: max radius above 1e3");
  int deg = static_cast<int>(std::ceil(rmax)) + 48;
  GridPtr grid = n == 2 ? make_circle_grid(2 * ((deg + 2) / 2) + 2)
                        : make_sphere_grid(deg / 2 + 2, deg + 2);
  Density one = Density::constant(grid, 1.0);
  // deterministic direction sample: equally spaced angles / golden spiral
  std::vector<Vec> dirs;
  for (int k = 0; k < n_directions; ++k) {
    if (n == 2) {
      double a = 2 * kPi * (k + 0.3) / n_directions;
      dirs.emplace_back(std::cos(a), std::sin(a), 0.0);
    } else {
      double z = 1 - (2.0 * k + 1) / n_directions;
      double a = k * kPi * (3 - std::sqrt(5.0));
      double s = std::sqrt(1 - z * z);
      dirs.emplace_back(s * std::cos(a), s * std::sin(a), z);
    }
  }
  ExperimentReport rep;
  rep.name = "stationary_phase_decay";
  rep.param("n", n);
  rep.param("n_directions", n_directions);
  std::vector<double> env;
  for (double r : radii) {
    std::vector<Vec> xs;
    for (const auto& d : dirs) xs.push_back(r * d);
    auto vals = extend_many(one, xs);
    double m = 0;
    for (auto v : vals) m = std::max(m, std::abs(v));
    env.push_back(m * std::pow(1 + r, (n - 1) / 2.0));
  }
  double emax = *std::max_element(env.begin(), env.end());
  double emin = *std::min_element(env.begin(), env.end());
  rep.metric("envelope_max", emax);
  rep.metric("envelope_min", emin);
  rep.metric("envelope_ratio", emin > 0 ? emax / emin : INFINITY);
  rep.sweeps["envelope"] = GrowthFit::fit("r", radii, "envelope", env, "id", "id");
  if (n == 3) rep.require("envelope_max", {"le", 8 * kPi});
  else rep.require("envelope_ratio", {"le", 20});
  rep.evaluate();
  return rep;
}

}  // namespace extomo
