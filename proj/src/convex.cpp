#include "extomo/convex.hpp"

#include <algorithm>
#include <cmath>

namespace extomo {

namespace {

// {s : A s^2 + B s + C <= 0} with A >= 0, as [lo, hi]; empty when lo > hi.
void quad_interval(double A, double B, double C, double& lo, double& hi) {
  if (A < 1e-300) {
    if (std::abs(B) < 1e-300) {
      lo = C <= 0 ? -INFINITY : 1.0;
      hi = C <= 0 ? INFINITY : 0.0;
    } else if (B > 0) {
      lo = -INFINITY;
      hi = -C / B;
    } else {
      lo = -C / B;
      hi = INFINITY;
    }
    return;
  }
  double disc = B * B - 4 * A * C;
  if (disc < 0) {
    lo = 1;
    hi = 0;
    return;
  }
  double sq = std::sqrt(disc);
  double q = -0.5 * (B + (B >= 0 ? sq : -sq));
  double r1 = q / A, r2 = q != 0 ? C / q : r1;
  lo = std::min(r1, r2);
  hi = std::max(r1, r2);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15 * tol) return left + right + diff / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

bool NormBox::contains(const Vec& x) const {
  double s1 = 0, s2 = 0;
  for (int i = 0; i < n; ++i) (i < k ? s1 : s2) += x[i] * x[i];
  return s1 <= a * a && s2 <= b * b;
}

double NormBox::chord(const Vec& p, const Vec& dir) const {
  double A1 = 0, B1 = 0, C1 = 0, A2 = 0, B2 = 0, C2 = 0;
  for (int i = 0; i < n; ++i) {
    double& A = i < k ? A1 : A2;
    double& B = i < k ? B1 : B2;
    double& C = i < k ? C1 : C2;
    A += dir[i] * dir[i];
    B += 2 * p[i] * dir[i];
    C += p[i] * p[i];
  }
  double lo1, hi1, lo2, hi2;
  quad_interval(A1, B1, C1 - a * a, lo1, hi1);
  quad_interval(A2, B2, C2 - b * b, lo2, hi2);
  double lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
  return hi > lo ? (hi - lo) * dir.norm() : 0.0;
}

double NormBox::max_chord(const Vec& dir) const { return chord(Vec::Zero(), dir.normalized()); }

double NormBox::section_area(const Vec& omega_in, double t) const {
  Vec omega = omega_in.normalized();
  if (n == 2) return chord(t * omega, perp2(omega));
  Vec e1, e2;
  orthonormal_frame(omega, e1, e2);
  double reach = std::sqrt(a * a + b * b);
  auto f = [&](double beta) { return chord(t * omega + beta * e2, e1); };
  double scale = std::min(a, b);
  return adaptive_simpson(f, -reach, reach, 1e-10 * scale * scale, 60);
}

Field NormBox::indicator() const {
  NormBox K = *this;
  return [K](const Vec& x) { return K.contains(x) ? 1.0 : 0.0; };
}

NormBox knapp_box(int n, int m, double delta) {
  if (n != 2 && n != 3) throw InvalidArgument("knapp_box: n must be 2 or 3");
  if (m < 1 || m > n) throw InvalidArgument("knapp_box: m must satisfy 1 <= m <= n");
  if (!(delta > 0 && delta < 1)) throw InvalidArgument("knapp_box: delta must lie in (0,1)");
  NormBox K;
  K.n = n;
  K.k = n - m;
  K.a = 1 / delta;
  K.b = 1 / (delta * delta);
  return K;
}

namespace {

// Polar-angle integral of F(omega(theta))^q over S^2, omega measured from
// the symmetry axis of K.
double axial_lq(const NormBox& K, double q, const std::function<double(const Vec&)>& F) {
  if (K.n != 3) throw InvalidArgument("sup norms over S^2 need n = 3");
  if (!(q >= 1)) throw InvalidArgument("q must be >= 1");
  // axis: the coordinate group of dimension 1 (k = 2 -> e3, k = 1 -> e1)
  Vec axis = K.k == 2 ? Vec(0, 0, 1) : Vec(1, 0, 0);
  Vec side = K.k == 2 ? Vec(1, 0, 0) : Vec(0, 0, 1);
  if (K.k == 0 || K.k == 3) {
    axis = Vec(0, 0, 1);
    side = Vec(1, 0, 0);
  }
  auto g = [&](double th) {
    Vec om = std::cos(th) * axis + std::sin(th) * side;
    return 2 * kPi * std::sin(th) * std::pow(F(om), q);
  };
  double ref = std::pow(F(side), q) + std::pow(F(axis), q);
  // the integrand is even about pi/2
  return std::pow(2 * adaptive_simpson(g, 0, kPi / 2, 1e-9 * ref, 50), 1 / q);
}

}  // namespace

double xray_sup_norm(const NormBox& K, double q) {
  return axial_lq(K, q, [&](const Vec& om) { return K.max_chord(om); });
}

double radon_sup_norm(const NormBox& K, double q) {
  return axial_lq(K, q, [&](const Vec& om) { return K.section_area(om, 0.0); });
}

}  // namespace extomo
