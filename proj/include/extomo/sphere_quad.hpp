#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "extomo/common.hpp"

namespace extomo {

// Quadrature on S^{dim-1}. Circle grids are equispaced; sphere grids are
// Gauss-Legendre in cos(theta) times a uniform azimuth. Sphere nodes are
// stored ring by ring with theta increasing: index = ring * n_az + k.
struct SphereGrid {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  int exactness = 0;

  int n_az = 0;                  // azimuthal count (N for circles)
  int n_polar = 0;               // rings (sphere only)
  std::vector<double> ring_theta;
  std::vector<double> ring_weight;  // GL weight of each ring

  std::size_t size() const { return nodes.size(); }
  double total_measure() const;
  double integrate(const std::function<double(const Vec&)>& f) const;
  std::size_t nearest(const Vec& xi) const;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

GridPtr make_circle_grid(int N);
GridPtr make_sphere_grid(int N_polar, int N_azimuthal);
// Grid of the same kind with every resolution parameter doubled.
GridPtr refine_grid(const SphereGrid& g);

void write_grid_csv(const SphereGrid& g, std::ostream& os);

// Geometry. Inputs within kUnitTol of unit norm are renormalized.
Vec reflect(const Vec& omega, const Vec& xi);
Vec project_perp(const Vec& omega, const Vec& x);
// Counter-clockwise quarter turn of a planar vector.
Vec perp2(const Vec& omega);
// Orthonormal e1, e2 spanning omega-perp in R^3 (deterministic choice).
void orthonormal_frame(const Vec& omega, Vec& e1, Vec& e2);
double geodesic_distance(const Vec& a, const Vec& b);
// Unit vector at polar angle theta, azimuth phi (dim 3) or angle phi (dim 2).
Vec spherical_point(int dim, double theta, double phi);

double poisson_kernel_rn(int n, double t, const Vec& x);
// p_r(theta) = (1 - r^2) / (1 - 2 r cos(theta) + r^2)
double poisson_kernel_circle(double r, double theta);

}  // namespace extomo
