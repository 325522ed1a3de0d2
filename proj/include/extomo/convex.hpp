#pragma once

#include "extomo/common.hpp"
#include "extomo/tomography.hpp"

namespace extomo {

// K = {x in R^n : |(x_1..x_k)| <= a, |(x_{k+1}..x_n)| <= b}.
struct NormBox {
  int n = 3;
  int k = 1;
  double a = 1, b = 1;

  bool contains(const Vec& x) const;
  // Length of {s : p + s dir in K}.
  double chord(const Vec& p, const Vec& dir) const;
  // Longest chord parallel to dir. K is convex and centrally symmetric, so
  // this is the chord through the origin.
  double max_chord(const Vec& dir) const;
  // Area of K cut by {x.omega = t} (n = 3); the chord length for n = 2.
  double section_area(const Vec& omega, double t) const;
  Field indicator() const;
};

// The box S_m: |(x_1..x_{n-m})| <= 1/delta, |(x_{n-m+1}..x_n)| <= 1/delta^2.
NormBox knapp_box(int n, int m, double delta);

// ||X 1_K||_{L^q_omega L^inf_v} and ||R 1_K||_{L^q_omega L^inf_t} over S^2
// (n = 3). K is symmetric about its axis, so the omega integral reduces to
// the polar angle; the sup over offsets is attained through the origin.
double xray_sup_norm(const NormBox& K, double q);
double radon_sup_norm(const NormBox& K, double q);

// Adaptive Simpson quadrature of f on [a, b].
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

}  // namespace extomo
