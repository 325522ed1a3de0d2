#pragma once

#include <memory>

#include "extomo/sphere_quad.hpp"

namespace extomo {

// How a density answers queries away from grid nodes.
//  exact       : the generating callable is kept and evaluated directly
//  nearest     : value at the nearest node (for indicator-type inputs)
//  interpolate : trigonometric (S^1) or bilinear theta/phi (S^2) interpolation
enum class OffNode { exact, nearest, interpolate };

using DensityFn = std::function<cplx(const Vec&)>;

class Density {
 public:
  Density(GridPtr grid, std::vector<cplx> values, OffNode mode, DensityFn exact = {});

  static Density sample(GridPtr grid, DensityFn f, OffNode mode = OffNode::exact);
  static Density constant(GridPtr grid, cplx c);
  static Density zero(GridPtr grid) { return constant(std::move(grid), 0.0); }

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return grid_->dim; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](std::size_t j) const { return values_[j]; }
  OffNode mode() const { return mode_; }
  bool has_exact() const { return static_cast<bool>(exact_); }

  // Off-node evaluation according to mode().
  cplx at(const Vec& xi) const;
  // g~(xi) = conj(g(-xi))
  cplx tilde_at(const Vec& xi) const { return std::conj(at(-xi)); }

  double norm(double p) const;                 // p = infinity allowed
  double lorentz_norm(double p, double r) const;
  cplx integral() const;
  bool is_real(double tol = 1e-12) const;
  bool is_zero() const;

  // Pointwise transforms; exact-mode callables are composed accordingly.
  Density map(const std::function<cplx(cplx)>& f) const;
  Density abs() const;
  Density abs_squared() const;
  Density scaled(cplx c) const;
  Density with_mode(OffNode m) const;
  // g(-xi)
  Density reflected_origin() const;
  static Density combine(cplx a, const Density& g1, cplx b, const Density& g2);
  // Replaces node values; keeps grid and mode, drops any exact callable
  // unless the mode is exact, in which case the caller supplies one.
  Density with_values(std::vector<cplx> v) const;

 private:
  cplx interpolate(const Vec& xi) const;

  GridPtr grid_;
  std::vector<cplx> values_;
  OffNode mode_;
  DensityFn exact_;
  std::shared_ptr<const std::vector<cplx>> fourier_;  // S^1 interpolation coefficients
};

struct CapSpec {
  Vec center;
  double radius = 0;
  Vec modulation_frequency = Vec::Zero();
};

// Indicator of the geodesic cap times exp(i a.xi).
Density knapp_cap_density(GridPtr grid, const CapSpec& cap, OffNode mode = OffNode::nearest);
// Indicator of |(xi_1..xi_m)| <= delta.
Density gm_density(GridPtr grid, int m, double delta, OffNode mode = OffNode::nearest);
// Smooth bump exp(1 - 1/(1 - (d/radius)^2)) in the geodesic distance d to center.
Density cap_bump_density(GridPtr grid, const Vec& center, double radius, OffNode mode = OffNode::exact);
// Circular convolution with p_{1-scale}/(2 pi); the discrete kernel is
// normalized to unit quadrature mass.
Density poisson_mollify_circle(const Density& g, double scale);

}  // namespace extomo
