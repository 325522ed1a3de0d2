#include "extomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "extomo/fft.hpp"
#include "extomo/report.hpp"

namespace extomo {

namespace {

void check_samples(int n_samples) {
  if (n_samples < 16) throw InvalidArgument("n_samples must be >= 16");
}

void check_dim(int n) {
  if (n != 2 && n != 3) throw InvalidArgument("dimension must be 2 or 3");
}

// Orthonormal basis of omega-perp: (perp2(omega)) for n = 2, the fixed frame for n = 3.
void perp_basis(int n, const Vec& omega, Vec& e1, Vec& e2) {
  if (n == 2) {
    e1 = perp2(omega);
    e2 = Vec::Zero();
  } else {
    orthonormal_frame(omega, e1, e2);
  }
}

// Trapezoid weights on n points over [-T, T].
std::vector<double> trapezoid(double T, int n, std::vector<double>& w) {
  std::vector<double> s = linspace(-T, T, n);
  double h = 2 * T / (n - 1);
  w.assign(n, h);
  w.front() = w.back() = h / 2;
  return s;
}

double raised_cosine(int i, int M) {
  int m = std::max(1, static_cast<int>(std::ceil(0.1 * M)));
  int d = std::min(i, M - 1 - i);
  if (d >= m) return 1.0;
  return 0.5 * (1 - std::cos(kPi * d / m));
}

}  // namespace

Line make_line(const Vec& omega, const Vec& v) {
  Vec o = unit_checked(omega, "line direction");
  if (std::abs(o.dot(v)) > 1e-10 * std::max(1.0, v.norm()))
    throw InvalidArgument("line offset must be orthogonal to the direction");
  return {o, v};
}

double xray(const Field& f, const Line& line, double truncation, int n_samples) {
  check_samples(n_samples);
  if (!(truncation > 0)) throw InvalidArgument("xray: truncation must be positive");
  std::vector<double> w;
  auto s = trapezoid(truncation, n_samples, w);
  std::vector<double> t(n_samples);
  for (int k = 0; k < n_samples; ++k) t[k] = w[k] * f(line.v + s[k] * line.omega);
  return pairwise_sum(t);
}

double radon(const Field& f, int n, const Hyperplane& plane, double truncation,
             int n_samples_per_axis) {
  check_dim(n);
  check_samples(n_samples_per_axis);
  Vec o = unit_checked(plane.omega, "radon normal");
  Vec e1, e2;
  perp_basis(n, o, e1, e2);
  Vec base = plane.t * o;
  if (n == 2) return xray(f, {e1, base}, truncation, n_samples_per_axis);
  std::vector<double> w;
  auto s = trapezoid(truncation, n_samples_per_axis, w);
  std::vector<double> rows(n_samples_per_axis);
  for (int i = 0; i < n_samples_per_axis; ++i) {
    std::vector<double> t(n_samples_per_axis);
    for (int j = 0; j < n_samples_per_axis; ++j) t[j] = w[j] * f(base + s[i] * e1 + s[j] * e2);
    rows[i] = w[i] * pairwise_sum(t);
  }
  return pairwise_sum(rows);
}

double x0(const Field& f, const Vec& omega, double truncation, int n_samples) {
  return xray(f, {unit_checked(omega, "x0 direction"), Vec::Zero()}, truncation, n_samples);
}

double tail_bound(double amplitude, double decay, double truncation) {
  if (!(decay > 1)) return INFINITY;
  return 2 * amplitude * std::pow(truncation, 1 - decay) / (decay - 1);
}

Vec LineProfile::point(std::size_t idx) const {
  if (n == 2) return coord(static_cast<int>(idx)) * e1;
  return coord(static_cast<int>(idx / samples)) * e1 + coord(static_cast<int>(idx % samples)) * e2;
}

LineProfile make_profile(int n, const Vec& omega, double half_width, int samples) {
  check_dim(n);
  if (samples < 2 || !(half_width > 0))
    throw InvalidArgument("profile: need samples >= 2 and half_width > 0");
  LineProfile p;
  p.n = n;
  p.omega = unit_checked(omega, "profile direction");
  perp_basis(n, p.omega, p.e1, p.e2);
  p.half_width = half_width;
  p.samples = samples;
  p.values.assign(n == 2 ? samples : static_cast<std::size_t>(samples) * samples, 0.0);
  return p;
}

LineProfile xray_profile(const Field& f, int n, const Vec& omega, double half_width, int samples,
                         double truncation, int n_samples) {
  LineProfile p = make_profile(n, omega, half_width, samples);
  parallel_for(p.size(), [&](std::size_t i) {
    p.values[i] = xray(f, {p.omega, p.point(i)}, truncation, n_samples);
  });
  return p;
}

LineProfile frac_laplacian(const LineProfile& p, double alpha, bool taper) {
  int M = p.samples;
  int axes = p.n - 1;
  std::vector<double> u = p.values;
  double vmax = 0;
  for (double v : u) vmax = std::max(vmax, std::abs(v));
  if (taper) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      double w = axes == 1 ? raised_cosine(static_cast<int>(i), M)
                           : raised_cosine(static_cast<int>(i / M), M) *
                                 raised_cosine(static_cast<int>(i % M), M);
      u[i] *= w;
    }
  } else {
    double bmax = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      bool edge;
      if (axes == 1) {
        edge = i == 0 || static_cast<int>(i) == M - 1;
      } else {
        int a = static_cast<int>(i / M), b = static_cast<int>(i % M);
        edge = a == 0 || b == 0 || a == M - 1 || b == M - 1;
      }
      if (edge) bmax = std::max(bmax, std::abs(u[i]));
    }
    if (bmax > 1e-6 * vmax)
      throw PreconditionViolation("frac_laplacian: profile does not decay at the boundary "
                                  "(request a taper)");
  }
  if (alpha < 0) {
    double s = 0, a = 0;
    for (double v : u) {
      s += v;
      a += std::abs(v);
    }
    if (std::abs(s) > 1e-10 * std::max(a, 1e-300))
      throw PreconditionViolation("frac_laplacian: negative order needs mean-zero input");
  }
  std::vector<cplx> c(u.begin(), u.end());
  std::vector<int> dims(axes, M);
  dft(c, dims, -1);
  double h = p.spacing();
  for (std::size_t i = 0; i < c.size(); ++i) {
    double eta2;
    if (axes == 1) {
      double e = dft_frequency(static_cast<int>(i), M, h);
      eta2 = e * e;
    } else {
      double a = dft_frequency(static_cast<int>(i / M), M, h);
      double b = dft_frequency(static_cast<int>(i % M), M, h);
      eta2 = a * a + b * b;
    }
    c[i] *= eta2 == 0 ? 0.0 : std::pow(eta2, alpha);
  }
  dft(c, dims, +1);
  LineProfile out = p;
  for (std::size_t i = 0; i < c.size(); ++i) out.values[i] = c[i].real() / c.size();
  return out;
}

double profile_l2(const LineProfile& p) {
  std::vector<double> t(p.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.values[i] * p.values[i];
  return std::sqrt(pairwise_sum(t) * std::pow(p.spacing(), p.n - 1));
}

double frac_sobolev_norm(const LineProfile& p, double alpha, int pad) {
  if (pad < 1) throw InvalidArgument("frac_sobolev_norm: pad must be >= 1");
  int M = p.samples, P = pad * M, axes = p.n - 1;
  double h = p.spacing();
  std::vector<cplx> c(axes == 1 ? P : static_cast<std::size_t>(P) * P, 0.0);
  if (axes == 1) {
    for (int i = 0; i < M; ++i) c[i] = p.values[i];
  } else {
    for (int i = 0; i < M; ++i)
      for (int j = 0; j < M; ++j) c[static_cast<std::size_t>(i) * P + j] = p.values[i * M + j];
  }
  dft(c, std::vector<int>(axes, P), -1);
  std::vector<double> t(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    double eta2;
    if (axes == 1) {
      double e = dft_frequency(static_cast<int>(i), P, h);
      eta2 = e * e;
    } else {
      double a = dft_frequency(static_cast<int>(i / P), P, h);
      double b = dft_frequency(static_cast<int>(i % P), P, h);
      eta2 = a * a + b * b;
    }
    t[i] = eta2 == 0 ? (alpha == 0 ? std::norm(c[i]) : 0.0) : std::pow(eta2, 2 * alpha) * std::norm(c[i]);
  }
  double s = pairwise_sum(t) * std::pow(h / P, axes);
  return std::sqrt(s);
}

IsometryResult xray_isometry_ratio(const Field& f, int n, const IsometrySpec& spec) {
  check_dim(n);
  GridPtr dirs = n == 2 ? make_circle_grid(spec.n_directions)
                        : make_sphere_grid(std::max(4, spec.n_directions / 2),
                                           std::max(8, spec.n_directions));
  std::vector<double> per(dirs->size());
  for (std::size_t k = 0; k < dirs->size(); ++k) {
    LineProfile p = xray_profile(f, n, dirs->nodes[k], spec.half_width, spec.samples,
                                 spec.truncation, spec.n_line);
    double s = frac_sobolev_norm(p, 0.25);
    per[k] = dirs->weights[k] * s * s;
  }
  IsometryResult r;
  r.lhs = std::sqrt(pairwise_sum(per));
  // ||f||_2 on the volume box
  int V = spec.volume_samples;
  double h = 2 * spec.half_width / (V - 1);
  std::vector<double> rows(V);
  parallel_for(V, [&](std::size_t i) {
    double xi = -spec.half_width + i * h;
    std::vector<double> t;
    for (int j = 0; j < V; ++j) {
      double yj = -spec.half_width + j * h;
      if (n == 2) {
        double v = f(Vec(xi, yj, 0));
        t.push_back(v * v);
      } else {
        for (int k = 0; k < V; ++k) {
          double v = f(Vec(xi, yj, -spec.half_width + k * h));
          t.push_back(v * v);
        }
      }
    }
    rows[i] = pairwise_sum(t);
  });
  r.f_norm = std::sqrt(pairwise_sum(rows) * std::pow(h, n));
  r.ratio = r.f_norm > 0 ? r.lhs / r.f_norm : 0.0;
  return r;
}

Sinogram sinogram_2d(const Field& f, int n_angles, int n_offsets, double half_width,
                     double truncation, int n_samples) {
  if (n_angles < 1 || n_offsets < 2) throw InvalidArgument("sinogram: invalid sizes");
  Sinogram s;
  s.n_angles = n_angles;
  s.n_offsets = n_offsets;
  s.half_width = half_width;
  s.values.assign(static_cast<std::size_t>(n_angles) * n_offsets, 0.0);
  parallel_for(s.values.size(), [&](std::size_t i) {
    int k = static_cast<int>(i / n_offsets), j = static_cast<int>(i % n_offsets);
    double th = s.angle(k);
    Vec om(std::cos(th), std::sin(th), 0);
    s.values[i] = radon(f, 2, {om, s.offset(j)}, truncation, n_samples);
  });
  return s;
}

SampledField radon_invert_2d(const Sinogram& s, const FieldSpec& out,
                             std::vector<std::string>* warnings) {
  if (out.dim != 2) throw InvalidArgument("radon_invert_2d: output must be 2-D");
  if (s.n_angles < 32 && warnings)
    warnings->push_back("undersampled sinogram: " + std::to_string(s.n_angles) + " angles");
  int J = s.n_offsets;
  double tau = 2 * s.half_width / (J - 1);
  std::vector<double> h(2 * J - 1);
  for (int m = -(J - 1); m <= J - 1; ++m) {
    double v = 0;
    if (m == 0) v = 1 / (4 * tau * tau);
    else if (m % 2 != 0) v = -1 / (m * m * kPi * kPi * tau * tau);
    h[m + J - 1] = v;
  }
  std::vector<double> q(s.values.size());
  parallel_for(s.n_angles, [&](std::size_t k) {
    for (int j = 0; j < J; ++j) {
      std::vector<double> t(J);
      for (int i = 0; i < J; ++i) t[i] = h[j - i + J - 1] * s.at(static_cast<int>(k), i);
      q[k * J + j] = tau * pairwise_sum(t);
    }
  });
  SampledField f;
  f.dim = 2;
  f.half_width = out.half_width;
  f.points_per_axis = out.points_per_axis;
  std::size_t M = out.points_per_axis;
  f.values.assign(M * M, 0.0);
  parallel_for(M * M, [&](std::size_t idx) {
    Vec x = f.point(idx);
    std::vector<double> t(s.n_angles, 0.0);
    for (int k = 0; k < s.n_angles; ++k) {
      double th = s.angle(k);
      double u = (x.x() * std::cos(th) + x.y() * std::sin(th) + s.half_width) / tau;
      int i0 = static_cast<int>(std::floor(u));
      if (i0 < 0 || i0 >= J - 1) continue;
      double a = u - i0;
      t[k] = (1 - a) * q[k * J + i0] + a * q[k * J + i0 + 1];
    }
    f.values[idx] = kPi / s.n_angles * pairwise_sum(t);
  });
  return f;
}

double tube_integral(const Field& f, int n, const Vec& center, const Vec& omega, double length,
                     double radius, const TubeQuad& q) {
  check_dim(n);
  Vec e1, e2;
  perp_basis(n, omega, e1, e2);
  double ds = length / q.axial;
  std::vector<double> acc;
  acc.reserve(static_cast<std::size_t>(q.axial) * q.radial * (n == 2 ? 2 : 2 * q.radial));
  for (int a = 0; a < q.axial; ++a) {
    Vec c = center + (-length / 2 + (a + 0.5) * ds) * omega;
    if (n == 2) {
      double du = 2 * radius / (2 * q.radial);
      for (int r = 0; r < 2 * q.radial; ++r)
        acc.push_back(ds * du * std::abs(f(c + (-radius + (r + 0.5) * du) * e1)));
    } else {
      double dr = radius / q.radial;
      int na = 2 * q.radial;
      double dphi = 2 * kPi / na;
      for (int r = 0; r < q.radial; ++r) {
        double rho = (r + 0.5) * dr;
        for (int k = 0; k < na; ++k) {
          double ph = (k + 0.5) * dphi;
          Vec x = c + rho * (std::cos(ph) * e1 + std::sin(ph) * e2);
          acc.push_back(ds * dr * dphi * rho * std::abs(f(x)));
        }
      }
    }
  }
  return pairwise_sum(acc);
}

namespace {

// Lattice points a*omega + b*e1 (+ c*e2) with coordinates in [-box, box].
std::vector<Vec> frame_lattice(int n, const Vec& omega, double pitch, double box) {
  Vec e1, e2;
  perp_basis(n, omega, e1, e2);
  int K = static_cast<int>(std::floor(box / pitch + 1e-9));
  std::vector<Vec> pts;
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b) {
      if (n == 2) {
        pts.push_back(a * pitch * omega + b * pitch * e1);
      } else {
        for (int c = -K; c <= K; ++c) pts.push_back(a * pitch * omega + b * pitch * e1 + c * pitch * e2);
      }
    }
  return pts;
}

double lattice_max(const std::vector<Vec>& pts, const std::function<double(const Vec&)>& g) {
  std::vector<double> v(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { v[i] = g(pts[i]); });
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

double kakeya_max(const Field& f, int n, double delta, const Vec& omega, const KakeyaSearch& s) {
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("kakeya_max: delta must lie in (0,1)");
  Vec o = unit_checked(omega, "kakeya_max direction");
  double vol = n == 2 ? 2 * delta : kPi * delta * delta;
  auto pts = frame_lattice(n, o, delta / 2, s.box);
  return lattice_max(pts, [&](const Vec& c) {
    return tube_integral(f, n, c, o, 1.0, delta, s.quad) / vol;
  });
}

double sup_xray(const Field& f, int n, const Vec& omega, double pitch, double half_width,
                double truncation, int n_samples) {
  Vec o = unit_checked(omega, "sup_xray direction");
  Vec e1, e2;
  perp_basis(n, o, e1, e2);
  int K = static_cast<int>(std::floor(half_width / pitch + 1e-9));
  std::vector<Vec> vs;
  for (int a = -K; a <= K; ++a) {
    if (n == 2) vs.push_back(a * pitch * e1);
    else
      for (int b = -K; b <= K; ++b) vs.push_back(a * pitch * e1 + b * pitch * e2);
  }
  Field af = [&f](const Vec& x) { return std::abs(f(x)); };
  return lattice_max(vs, [&](const Vec& v) { return xray(af, {o, v}, truncation, n_samples); });
}

double kakeya_max_segments(const Field& f, int n, double R, const Vec& omega, double pitch,
                           double box, const TubeQuad& q) {
  if (!(R > 0)) throw InvalidArgument("kakeya_max_segments: R must be positive");
  Vec o = unit_checked(omega, "kakeya_max_segments direction");
  auto pts = frame_lattice(n, o, pitch, box);
  return lattice_max(pts, [&](const Vec& c) { return tube_integral(f, n, c, o, R, 1.0, q); });
}

void validate_family(const TubeFamily& fam) {
  if (fam.tubes.empty()) throw InvalidArgument("tube family is empty");
  for (std::size_t i = 0; i < fam.tubes.size(); ++i)
    for (std::size_t j = i + 1; j < fam.tubes.size(); ++j) {
      const Vec &a = fam.tubes[i].omega, &b = fam.tubes[j].omega;
      double d = std::min(geodesic_distance(a, b), geodesic_distance(a, -b));
      if (d < fam.delta * (1 - 1e-9))
        throw InvalidArgument("tube directions are not delta-separated");
    }
}

bool in_tube(const Tube& t, double length, double radius, const Vec& x) {
  Vec d = x - t.center;
  double a = d.dot(t.omega);
  if (std::abs(a) > length / 2) return false;
  return (d - a * t.omega).squaredNorm() <= radius * radius;
}

Field tube_sum_field(const TubeFamily& fam) {
  if (fam.tubes.empty()) throw InvalidArgument("tube family is empty");
  return [fam](const Vec& x) {
    double s = 0;
    for (const auto& t : fam.tubes) s += in_tube(t, fam.length, fam.delta, x) ? 1.0 : 0.0;
    return s;
  };
}

KakeyaDual kakeya_dual_functional(const TubeFamily& fam, int n, double pitch) {
  check_dim(n);
  if (fam.tubes.empty()) throw InvalidArgument("tube family is empty");
  Vec lo = Vec::Constant(INFINITY), hi = Vec::Constant(-INFINITY);
  double reach = fam.length / 2 + fam.delta;
  for (const auto& t : fam.tubes)
    for (int d = 0; d < n; ++d) {
      lo[d] = std::min(lo[d], t.center[d] - reach);
      hi[d] = std::max(hi[d], t.center[d] + reach);
    }
  std::vector<int> cnt(n);
  for (int d = 0; d < n; ++d) cnt[d] = static_cast<int>(std::ceil((hi[d] - lo[d]) / pitch));
  double p = n / (n - 1.0);
  Field F = tube_sum_field(fam);
  std::vector<double> rows(cnt[0]);
  parallel_for(cnt[0], [&](std::size_t i) {
    std::vector<double> t;
    for (int j = 0; j < cnt[1]; ++j) {
      int kmax = n == 3 ? cnt[2] : 1;
      for (int k = 0; k < kmax; ++k) {
        Vec x(lo[0] + (i + 0.5) * pitch, lo[1] + (j + 0.5) * pitch,
              n == 3 ? lo[2] + (k + 0.5) * pitch : 0.0);
        double v = F(x);
        if (v > 0) t.push_back(std::pow(v, p));
      }
    }
    rows[i] = pairwise_sum(t);
  });
  KakeyaDual r;
  r.lhs = std::pow(pairwise_sum(rows) * std::pow(pitch, n), 1 / p);
  double R = std::pow(fam.delta, -2);
  r.rhs_scale = std::pow(std::pow(R, -(n - 1) / 2.0) * fam.tubes.size(), (n - 1.0) / n);
  r.ratio = r.lhs / r.rhs_scale;
  return r;
}

void write_profile(const LineProfile& p, const std::string& csv_path, const std::string& json_path) {
  std::ofstream os(csv_path);
  if (!os) throw InvalidArgument("cannot write " + csv_path);
  os << std::setprecision(17) << (p.n == 2 ? "index,v1,value\n" : "index,v1,v2,value\n");
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << i << ',';
    if (p.n == 2) os << p.coord(static_cast<int>(i));
    else os << p.coord(static_cast<int>(i / p.samples)) << ',' << p.coord(static_cast<int>(i % p.samples));
    os << ',' << p.values[i] << '\n';
  }
  std::ofstream js(json_path);
  js << json{{"n", p.n},
             {"omega", {p.omega.x(), p.omega.y(), p.omega.z()}},
             {"e1", {p.e1.x(), p.e1.y(), p.e1.z()}},
             {"e2", {p.e2.x(), p.e2.y(), p.e2.z()}},
             {"half_width", p.half_width},
             {"samples", p.samples}}
            .dump(2)
     << "\n";
}

void write_sinogram(const Sinogram& s, const std::string& csv_path, const std::string& json_path) {
  std::ofstream os(csv_path);
  if (!os) throw InvalidArgument("cannot write " + csv_path);
  os << std::setprecision(17) << "angle,offset,value\n";
  for (int k = 0; k < s.n_angles; ++k)
    for (int j = 0; j < s.n_offsets; ++j) os << s.angle(k) << ',' << s.offset(j) << ',' << s.at(k, j) << '\n';
  std::ofstream js(json_path);
  js << json{{"n_angles", s.n_angles}, {"n_offsets", s.n_offsets}, {"half_width", s.half_width}}.dump(2)
     << "\n";
}

void write_tube_family(const TubeFamily& fam, int n, const std::string& csv_path) {
  std::ofstream os(csv_path);
  if (!os) throw InvalidArgument("cannot write " + csv_path);
  os << std::setprecision(17);
  os << (n == 2 ? "omega1,omega2,center1,center2\n" : "omega1,omega2,omega3,center1,center2,center3\n");
  for (const auto& t : fam.tubes) {
    for (int d = 0; d < n; ++d) os << t.omega[d] << ',';
    for (int d = 0; d < n; ++d) os << t.center[d] << (d + 1 < n ? ',' : '\n');
  }
}

}  // namespace extomo
