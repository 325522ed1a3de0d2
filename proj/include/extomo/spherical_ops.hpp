#pragma once

#include <vector>

#include "extomo/density.hpp"
#include "extomo/extension.hpp"

namespace extomo {

// A_t f(omega): integral of f over {xi.omega = t} with the coarea weight.
cplx funk_At(const Density& f, const Vec& omega, double t, int n_slice = kDefaultSlice);

// int f(x) / (|x.omega| + delta) d sigma(x) by the grid quadrature. delta = 0
// is forwarded to T_zero with the default margin.
cplx T_delta(const Density& f, const Vec& omega, double delta);

// delta = 0 version for densities that vanish within geodesic distance
// `margin` of the equator {x.omega = 0}.
cplx T_zero(const Density& f, const Vec& omega, double margin = 0.2);

// int_{-1}^{1} A_t f(omega) dt / (|t| + delta), with t = sin u and panels
// graded geometrically towards t = 0.
cplx T_delta_reduction(const Density& f, const Vec& omega, double delta,
                       int n_slice = kDefaultSlice, int order = 10);

// (int_{-1}^{1} |A_t f(omega)|^2 dt)^{1/2} by Gauss-Legendre in t.
double S_operator(const Density& f, const Vec& omega, int n_t = 128, int n_slice = kDefaultSlice);

enum class BAPath { automatic, generic, closed_form };

// Slice integral of g1(xi) * g2~(R_omega xi). closed_form is the n = 2
// two-point expression; automatic picks it for n = 2.
cplx BA_t(const Density& g1, const Density& g2, const Vec& omega, double t,
          BAPath path = BAPath::automatic, int n_slice = kDefaultSlice);

// int g1(xi) g2~(R_omega xi) / (|omega.xi| + delta) d sigma(xi).
cplx BT_delta(const Density& g1, const Density& g2, const Vec& omega, double delta);

// BA_{|x|/2}(g1, g2)(x/|x|) / |x|, which equals (g1 d sigma) * (g2 d sigma)(x)
// for real g2 (the constant in front measured by fit_convolution_constant).
cplx sphere_autoconvolution(const Density& g1, const Density& g2, const Vec& x,
                            double exclusion = 0.05, int n_slice = kDefaultSlice);

// Independent evaluation of (g1 d sigma) * (g2 d sigma)(x): g2 d sigma is
// replaced by the shell density g2(y/|y|) phi_eps(|y| - 1) with a Gaussian
// phi_eps of unit mass, integrated against g1 on `fine`.
cplx thickened_convolution(const Density& g1, const Density& g2, const SphereGrid& fine,
                           const Vec& x, double eps);

struct ConvolutionFit {
  double c_n = 0;        // least-squares constant: oracle ~ c_n * BA path
  double residual = 0;   // max relative deviation from the fitted model
  std::vector<double> radii, ba_path, oracle;
};
ConvolutionFit fit_convolution_constant(const Density& g1, const Density& g2,
                                        const SphereGrid& fine, const std::vector<Vec>& xs,
                                        double eps, int n_slice = kDefaultSlice);

using BivariateFn = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

// |det| of the bordered matrix [[Phi, d_x Phi], [d_y Phi, d_xy Phi]] with
// central differences of the given step.
double rotcurv(const BivariateFn& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
               double step = 1e-4);

// sum_{j < d} x_j y_j + x_d sqrt(1 - |y|^2) + y_d sqrt(1 - |x|^2), d = dim of x.
double phi0(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace extomo
