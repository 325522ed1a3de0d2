#pragma once

#include <string>
#include <vector>

#include "extomo/common.hpp"
#include "extomo/extension.hpp"

namespace extomo {

using Field = std::function<double(const Vec&)>;

// Line {v + s omega}; v is orthogonal to omega.
struct Line {
  Vec omega;
  Vec v;
};
Line make_line(const Vec& omega, const Vec& v);

struct Hyperplane {
  Vec omega;
  double t = 0;
};

// Trapezoid rule for s -> f(v + s omega) on [-truncation, truncation].
double xray(const Field& f, const Line& line, double truncation, int n_samples);
// Integral over the truncated hyperplane patch {x.omega = t, |x - t omega|_inf <= truncation}
// (a segment for n = 2, a square in an orthonormal frame for n = 3).
double radon(const Field& f, int n, const Hyperplane& plane, double truncation,
             int n_samples_per_axis);
double x0(const Field& f, const Vec& omega, double truncation, int n_samples);

// Tail bound for |f| <= amplitude |s|^-decay beyond the truncation, summed over both ends.
double tail_bound(double amplitude, double decay, double truncation);

// Samples of v -> F(v) on a uniform grid of omega-perp. For n = 3 the grid is
// indexed (i, j) -> coords[i] e1 + coords[j] e2 with the first index slowest.
struct LineProfile {
  int n = 2;
  Vec omega;
  Vec e1, e2;  // e2 unused for n = 2
  double half_width = 1;
  int samples = 2;
  std::vector<double> values;

  double spacing() const { return 2 * half_width / (samples - 1); }
  double coord(int i) const { return -half_width + i * spacing(); }
  Vec point(std::size_t idx) const;
  std::size_t size() const { return values.size(); }
};

LineProfile make_profile(int n, const Vec& omega, double half_width, int samples);
LineProfile xray_profile(const Field& f, int n, const Vec& omega, double half_width, int samples,
                         double truncation, int n_samples);

// Fourier multiplier |eta|^{2 alpha} on the periodized profile grid, zero
// frequency sent to 0. Without taper, values on the boundary must be below
// 1e-6 of the maximum; with taper a raised cosine is applied to the outer 10%.
// alpha < 0 needs mean-zero input.
LineProfile frac_laplacian(const LineProfile& p, double alpha, bool taper = false);

// L^2 norm over the profile grid (trapezoid-free Riemann sum).
double profile_l2(const LineProfile& p);
// ||(-Delta_v)^{alpha} u||_{L^2_v} computed by Parseval on a zero-padded grid,
// so the frequency sum approximates the continuous integral.
double frac_sobolev_norm(const LineProfile& p, double alpha, int pad = 4);

struct IsometrySpec {
  int n_directions = 64;     // S^1: circle grid; S^2: n_directions^2/2 nodes
  double half_width = 12;    // profile and volume box
  int samples = 193;
  double truncation = 12;
  int n_line = 193;
  int volume_samples = 241;
};

struct IsometryResult {
  double ratio = 0;          // ||(-Delta_v)^{1/4} X f|| / ||f||
  double lhs = 0, f_norm = 0;
};

IsometryResult xray_isometry_ratio(const Field& f, int n, const IsometrySpec& spec);

// Parallel-beam data: angles theta_k = pi k / K, offsets uniform on [-T, T].
struct Sinogram {
  int n_angles = 0;
  int n_offsets = 0;
  double half_width = 1;
  std::vector<double> values;  // angle-major
  double angle(int k) const { return kPi * k / n_angles; }
  double offset(int j) const { return -half_width + 2 * half_width * j / (n_offsets - 1); }
  double at(int k, int j) const { return values[static_cast<std::size_t>(k) * n_offsets + j]; }
};

Sinogram sinogram_2d(const Field& f, int n_angles, int n_offsets, double half_width,
                     double truncation, int n_samples);
// Filtered backprojection with the Ram-Lak filter. Appends a warning when the
// sinogram has fewer than 32 angles.
SampledField radon_invert_2d(const Sinogram& s, const FieldSpec& out,
                             std::vector<std::string>* warnings = nullptr);

struct TubeQuad {
  int axial = 32;
  int radial = 8;
};

// Integral of |f| over the cylinder of the given axis, length and radius.
double tube_integral(const Field& f, int n, const Vec& center, const Vec& omega, double length,
                     double radius, const TubeQuad& q = {});

struct KakeyaSearch {
  double box = 1;  // centers within [-box, box]^n in the omega frame
  TubeQuad quad;
};

// sup over unit-length, radius-delta tubes parallel to omega with centers on
// a lattice of pitch delta/2 of the tube average of |f|.
double kakeya_max(const Field& f, int n, double delta, const Vec& omega, const KakeyaSearch& s);
// sup over a lattice of v (pitch, |v|_inf <= half_width) of X|f|(omega, v).
double sup_xray(const Field& f, int n, const Vec& omega, double pitch, double half_width,
                double truncation, int n_samples);
// sup over radius-1 tubes of length R parallel to omega with centers on a
// lattice of the given pitch of the integral of |f|.
double kakeya_max_segments(const Field& f, int n, double R, const Vec& omega, double pitch,
                           double box, const TubeQuad& q = {});

struct Tube {
  Vec omega;
  Vec center;
};

// Tubes of radius delta around segments of the given length.
struct TubeFamily {
  double delta = 0;
  double length = 1;
  std::vector<Tube> tubes;
};

// Throws unless all directions are pairwise at least delta apart (geodesic,
// directions taken modulo sign).
void validate_family(const TubeFamily& fam);
bool in_tube(const Tube& t, double length, double radius, const Vec& x);
Field tube_sum_field(const TubeFamily& fam);

struct KakeyaDual {
  double lhs = 0;        // ||sum 1_T||_{n/(n-1)}
  double rhs_scale = 0;  // (R^{-(n-1)/2} #T)^{(n-1)/n} with R = delta^-2
  double ratio = 0;
};
KakeyaDual kakeya_dual_functional(const TubeFamily& fam, int n, double pitch);

void write_profile(const LineProfile& p, const std::string& csv_path, const std::string& json_path);
void write_sinogram(const Sinogram& s, const std::string& csv_path, const std::string& json_path);
void write_tube_family(const TubeFamily& fam, int n, const std::string& csv_path);

}  // namespace extomo
