#pragma once

#include <string>

#include "extomo/density.hpp"
#include "extomo/report.hpp"

namespace extomo {

// Uniform grid on [-L, L]^dim with M points per axis, spacing 2L/(M-1).
// Index order: the first axis varies slowest.
struct FieldSpec {
  int dim = 2;
  double half_width = 1;
  int points_per_axis = 2;
};

struct SampledField {
  int dim = 2;
  double half_width = 1;
  int points_per_axis = 2;
  std::vector<cplx> values;

  double spacing() const { return 2 * half_width / (points_per_axis - 1); }
  std::size_t size() const { return values.size(); }
  Vec point(std::size_t idx) const;
  double coord(int i) const { return -half_width + i * spacing(); }
};

void write_field(const SampledField& f, const std::string& csv_path, const std::string& json_path);

// sum_j w_j exp(i x.xi_j) g(xi_j)
cplx extend(const Density& g, const Vec& x);
std::vector<cplx> extend_many(const Density& g, const std::vector<Vec>& xs);

// sum_j c_j exp(i x.xi_j) at x = origin + a_k e1 + b_l e2, as an
// (a.size() x b.size()) matrix.
Eigen::MatrixXcd lattice_sum(const std::vector<Vec>& xi, const std::vector<cplx>& c,
                             const Vec& origin, const Vec& e1, const std::vector<double>& a,
                             const Vec& e2, const std::vector<double>& b);

// Values at origin + a_k e1 + b_l e2 as an (a.size() x b.size()) matrix.
// Phase tables are built once and the contraction over nodes is a dense
// complex matrix product.
Eigen::MatrixXcd extend_lattice(const Density& g, const Vec& origin, const Vec& e1,
                                const std::vector<double>& a, const Vec& e2,
                                const std::vector<double>& b);

// accelerate=false evaluates point by point and refuses jobs whose
// (points x active nodes) exceeds cost_budget.
SampledField extend_field(const Density& g, const FieldSpec& spec, bool accelerate,
                          double cost_budget = 4e9);

struct SliceSpec {
  Vec omega;
  double t = 0;
};

struct SlicePoint {
  Vec xi;
  double weight;  // includes the coarea factor
};

inline constexpr int kDefaultSlice = 256;

// Quadrature for d sigma_{omega,t}: n=3 an equispaced rule on the circle of
// radius sqrt(1-t^2) (each point weight 2 pi / N_slice, the arc element times
// the coarea factor), n=2 the two points t omega +- sqrt(1-t^2) omega^perp
// each weighted (1-t^2)^{-1/2}.
std::vector<SlicePoint> slice_points(int dim, const Vec& omega, double t,
                                     int n_slice = kDefaultSlice);

cplx extend_slice(const Density& g, const SliceSpec& slice, const Vec& v,
                  int n_slice = kDefaultSlice);
// Values at many v for one slice.
std::vector<cplx> extend_slice_many(const Density& g, const SliceSpec& slice,
                                    const std::vector<Vec>& vs, int n_slice = kDefaultSlice);
double slice_mass(int n, double t, int n_slice = kDefaultSlice);

// Closed forms for g = 1.
double sigma_hat_circle(double r);  // 2 pi J0(r)
double sigma_hat_sphere(double r);  // 4 pi sin r / r

// Envelope sup_omega |sigma^(r omega)| (1+r)^{(n-1)/2} over the radii.
ExperimentReport stationary_phase_decay_check(int n, const std::vector<double>& radii,
                                              int n_directions = 16);

}  // namespace extomo
