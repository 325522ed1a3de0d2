#include "extomo/sphere_quad.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace extomo {

double SphereGrid::total_measure() const { return pairwise_sum(weights); }

double SphereGrid::integrate(const std::function<double(const Vec&)>& f) const {
  std::vector<double> terms(size());
  for (std::size_t j = 0; j < size(); ++j) terms[j] = weights[j] * f(nodes[j]);
  return pairwise_sum(terms);
}

static long wrap(long k, long n) {
  k %= n;
  return k < 0 ? k + n : k;
}

std::size_t SphereGrid::nearest(const Vec& xi) const {
  double phi = std::atan2(xi.y(), xi.x());
  long k = wrap(std::lround(phi / (2 * kPi) * n_az), n_az);
  if (dim == 2) return static_cast<std::size_t>(k);
  double theta = std::acos(std::clamp(xi.z() / xi.norm(), -1.0, 1.0));
  auto it = std::lower_bound(ring_theta.begin(), ring_theta.end(), theta);
  long ring;
  if (it == ring_theta.begin()) {
    ring = 0;
  } else if (it == ring_theta.end()) {
    ring = n_polar - 1;
  } else {
    ring = it - ring_theta.begin();
    if (theta - *(it - 1) < *it - theta) --ring;
  }
  return static_cast<std::size_t>(ring * n_az + k);
}

GridPtr make_circle_grid(int N) {
  if (N < 4) throw InvalidArgument("make_circle_grid: N must be >= 4");
  auto g = std::make_shared<SphereGrid>();
  g->dim = 2;
  g->n_az = N;
  g->exactness = N - 1;
  g->nodes.resize(N);
  g->weights.assign(N, 2 * kPi / N);
  for (int k = 0; k < N; ++k) {
    double a = 2 * kPi * k / N;
    g->nodes[k] = Vec(std::cos(a), std::sin(a), 0.0);
  }
  return g;
}

GridPtr make_sphere_grid(int N_polar, int N_azimuthal) {
  if (N_polar < 4 || N_azimuthal < 8)
    throw InvalidArgument("make_sphere_grid: need N_polar >= 4 and N_azimuthal >= 8");
  auto g = std::make_shared<SphereGrid>();
  g->dim = 3;
  g->n_polar = N_polar;
  g->n_az = N_azimuthal;
  g->exactness = std::min(2 * N_polar - 1, N_azimuthal - 1);
  std::vector<double> x, w;
  gauss_legendre(N_polar, x, w);
  // theta increasing means cos decreasing
  std::reverse(x.begin(), x.end());
  std::reverse(w.begin(), w.end());
  g->nodes.reserve(static_cast<std::size_t>(N_polar) * N_azimuthal);
  for (int i = 0; i < N_polar; ++i) {
    double c = x[i], s = std::sqrt(std::max(0.0, 1 - c * c));
    g->ring_theta.push_back(std::acos(c));
    g->ring_weight.push_back(w[i]);
    for (int k = 0; k < N_azimuthal; ++k) {
      double a = 2 * kPi * k / N_azimuthal;
      Vec p(s * std::cos(a), s * std::sin(a), c);
      g->nodes.push_back(p / p.norm());
      g->weights.push_back(w[i] * 2 * kPi / N_azimuthal);
    }
  }
  return g;
}

GridPtr refine_grid(const SphereGrid& g) {
  if (g.dim == 2) return make_circle_grid(2 * g.n_az);
  return make_sphere_grid(2 * g.n_polar, 2 * g.n_az);
}

void write_grid_csv(const SphereGrid& g, std::ostream& os) {
  os << "# dim=" << g.dim << " exactness=" << g.exactness << "\n";
  os << (g.dim == 2 ? "x,y,weight\n" : "x,y,z,weight\n");
  os << std::setprecision(17);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Vec& p = g.nodes[j];
    os << p.x() << ',' << p.y();
    if (g.dim == 3) os << ',' << p.z();
    os << ',' << g.weights[j] << '\n';
  }
}

Vec reflect(const Vec& omega, const Vec& xi) {
  Vec w = unit_checked(omega, "reflect: omega");
  Vec x = unit_checked(xi, "reflect: xi");
  Vec r = x - 2 * x.dot(w) * w;
  return r / r.norm();
}

Vec project_perp(const Vec& omega, const Vec& x) {
  Vec w = unit_checked(omega, "project_perp: omega");
  return x - x.dot(w) * w;
}

Vec perp2(const Vec& omega) { return Vec(-omega.y(), omega.x(), 0.0); }

void orthonormal_frame(const Vec& omega, Vec& e1, Vec& e2) {
  Vec w = omega.normalized();
  Vec a = std::abs(w.x()) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
  e1 = (a - a.dot(w) * w).normalized();
  e2 = w.cross(e1);
}

double geodesic_distance(const Vec& a, const Vec& b) {
  // atan2 form is accurate for nearly equal and nearly antipodal pairs
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec spherical_point(int dim, double theta, double phi) {
  if (dim == 2) return Vec(std::cos(phi), std::sin(phi), 0.0);
  return Vec(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

double poisson_kernel_rn(int n, double t, const Vec& x) {
  if (!(t > 0)) throw InvalidArgument("poisson_kernel_rn: t must be positive");
  if (n != 2 && n != 3) throw InvalidArgument("poisson_kernel_rn: n must be 2 or 3");
  double c = std::tgamma((n + 1) / 2.0) / std::pow(kPi, (n + 1) / 2.0);
  return c * t / std::pow(t * t + x.squaredNorm(), (n + 1) / 2.0);
}

double poisson_kernel_circle(double r, double theta) {
  return (1 - r * r) / (1 - 2 * r * std::cos(theta) + r * r);
}

}  // namespace extomo
