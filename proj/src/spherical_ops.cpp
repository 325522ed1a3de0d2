#include "extomo/spherical_ops.hpp"

#include <algorithm>
#include <cmath>

namespace extomo {

cplx funk_At(const Density& f, const Vec& omega, double t, int n_slice) {
  auto pts = slice_points(f.dim(), omega, t, n_slice);
  std::vector<cplx> terms(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) terms[k] = pts[k].weight * f.at(pts[k].xi);
  return pairwise_sum(terms);
}

cplx T_delta(const Density& f, const Vec& omega_in, double delta) {
  if (delta < 0 || !std::isfinite(delta)) throw InvalidArgument("T_delta: delta must be >= 0");
  if (delta == 0) return T_zero(f, omega_in);
  Vec omega = unit_checked(omega_in, "T_delta: omega");
  const auto& g = f.grid();
  std::vector<cplx> terms(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    terms[j] = g.weights[j] * f[j] / (std::abs(g.nodes[j].dot(omega)) + delta);
  return pairwise_sum(terms);
}

cplx T_zero(const Density& f, const Vec& omega_in, double margin) {
  Vec omega = unit_checked(omega_in, "T_zero: omega");
  const auto& g = f.grid();
  double floor = std::sin(std::max(margin, 0.0));
  std::vector<cplx> terms(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (f[j] == 0.0) continue;
    double c = std::abs(g.nodes[j].dot(omega));
    if (c == 0 || c < floor)
      throw PreconditionViolation("T_zero: density does not vanish near the equator of omega");
    terms[j] = g.weights[j] * f[j] / c;
  }
  return pairwise_sum(terms);
}

cplx T_delta_reduction(const Density& f, const Vec& omega, double delta, int n_slice, int order) {
  if (!(delta > 0)) throw InvalidArgument("T_delta_reduction: delta must be positive");
  const double top = kPi / 2;
  std::vector<double> edges{0.0};
  for (double b = delta / 4; b < top; b *= 2) edges.push_back(b);
  edges.push_back(top);
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  std::vector<cplx> terms;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1];
    for (int k = 0; k < order; ++k) {
      double u = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
      double w = 0.5 * (b - a) * gw[k];
      double t = std::sin(u), jac = std::cos(u) / (t + delta);
      terms.push_back(w * jac * (funk_At(f, omega, t, n_slice) + funk_At(f, omega, -t, n_slice)));
    }
  }
  return pairwise_sum(terms);
}

double S_operator(const Density& f, const Vec& omega, int n_t, int n_slice) {
  std::vector<double> x, w;
  gauss_legendre(n_t, x, w);
  std::vector<double> terms(n_t);
  for (int k = 0; k < n_t; ++k) terms[k] = w[k] * std::norm(funk_At(f, omega, x[k], n_slice));
  return std::sqrt(pairwise_sum(terms));
}

cplx BA_t(const Density& g1, const Density& g2, const Vec& omega_in, double t, BAPath path,
          int n_slice) {
  if (g1.dim() != g2.dim()) throw InvalidArgument("BA_t: dimension mismatch");
  if (!(std::abs(t) < 1)) throw InvalidArgument("BA_t: |t| must be < 1");
  Vec omega = unit_checked(omega_in, "BA_t: omega");
  if (path == BAPath::automatic) path = g1.dim() == 2 ? BAPath::closed_form : BAPath::generic;
  if (path == BAPath::closed_form) {
    if (g1.dim() != 2) throw InvalidArgument("BA_t: closed form needs n = 2");
    double s = std::sqrt((1 - t) * (1 + t));
    Vec op = perp2(omega);
    Vec p = t * omega + s * op, m = t * omega - s * op;
    return (g1.at(p) * std::conj(g2.at(m)) + g1.at(m) * std::conj(g2.at(p))) / s;
  }
  auto pts = slice_points(g1.dim(), omega, t, n_slice);
  std::vector<cplx> terms(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k)
    terms[k] = pts[k].weight * g1.at(pts[k].xi) * g2.tilde_at(reflect(omega, pts[k].xi));
  return pairwise_sum(terms);
}

cplx BT_delta(const Density& g1, const Density& g2, const Vec& omega_in, double delta) {
  if (!(delta > 0)) throw InvalidArgument("BT_delta: delta must be positive");
  if (g1.dim() != g2.dim()) throw InvalidArgument("BT_delta: dimension mismatch");
  Vec omega = unit_checked(omega_in, "BT_delta: omega");
  const auto& g = g1.grid();
  std::vector<cplx> terms(g.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g1[j] == 0.0) continue;
    const Vec& xi = g.nodes[j];
    terms[j] = g.weights[j] * g1[j] * g2.tilde_at(reflect(omega, xi)) /
               (std::abs(xi.dot(omega)) + delta);
  }
  return pairwise_sum(terms);
}

cplx sphere_autoconvolution(const Density& g1, const Density& g2, const Vec& x, double exclusion,
                            int n_slice) {
  double r = x.norm();
  if (!(exclusion > 0) || r < exclusion || r > 2 - exclusion)
    throw InvalidArgument("sphere_autoconvolution: |x| outside the annulus [h, 2-h]");
  return BA_t(g1, g2, x / r, r / 2, BAPath::automatic, n_slice) / r;
}

cplx thickened_convolution(const Density& g1, const Density& g2, const SphereGrid& fine,
                           const Vec& x, double eps) {
  if (!(eps > 0)) throw InvalidArgument("thickened_convolution: eps must be positive");
  int n = fine.dim;
  double norm = 1 / (std::sqrt(2 * kPi) * eps);
  std::vector<cplx> terms(fine.size(), 0.0);
  for (std::size_t j = 0; j < fine.size(); ++j) {
    Vec y = x - fine.nodes[j];
    double r = y.norm();
    double s = (r - 1) / eps;
    if (std::abs(s) > 8 || r == 0) continue;
    double phi = norm * std::exp(-0.5 * s * s) / std::pow(r, n - 1);
    terms[j] = fine.weights[j] * g1.at(fine.nodes[j]) * g2.at(y / r) * phi;
  }
  return pairwise_sum(terms);
}

ConvolutionFit fit_convolution_constant(const Density& g1, const Density& g2,
                                        const SphereGrid& fine, const std::vector<Vec>& xs,
                                        double eps, int n_slice) {
  ConvolutionFit fit;
  fit.radii.resize(xs.size());
  fit.ba_path.resize(xs.size());
  fit.oracle.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    fit.radii[i] = xs[i].norm();
    fit.ba_path[i] = sphere_autoconvolution(g1, g2, xs[i], 0.05, n_slice).real();
    fit.oracle[i] = thickened_convolution(g1, g2, fine, xs[i], eps).real();
  });
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += fit.oracle[i] * fit.ba_path[i];
    den += fit.ba_path[i] * fit.ba_path[i];
  }
  fit.c_n = den > 0 ? num / den : 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double o = fit.oracle[i];
    if (o != 0) fit.residual = std::max(fit.residual, std::abs(o - fit.c_n * fit.ba_path[i]) / std::abs(o));
  }
  return fit;
}

double rotcurv(const BivariateFn& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
               double step) {
  if (x.size() != y.size() || x.size() < 1) throw InvalidArgument("rotcurv: x and y must match");
  if (!(step >= 1e-6 && step <= 1e-2)) throw InvalidArgument("rotcurv: step must lie in [1e-6, 1e-2]");
  const int d = static_cast<int>(x.size());
  const double h = step;
  Eigen::MatrixXd M(d + 1, d + 1);
  M(0, 0) = phi(x, y);
  auto ex = [&](int i, double s) {
    Eigen::VectorXd v = x;
    v[i] += s;
    return v;
  };
  auto ey = [&](int i, double s) {
    Eigen::VectorXd v = y;
    v[i] += s;
    return v;
  };
  for (int i = 0; i < d; ++i) {
    M(0, i + 1) = (phi(ex(i, h), y) - phi(ex(i, -h), y)) / (2 * h);
    M(i + 1, 0) = (phi(x, ey(i, h)) - phi(x, ey(i, -h))) / (2 * h);
  }
  for (int j = 0; j < d; ++j)      // y index, row
    for (int i = 0; i < d; ++i) {  // x index, column
      double pp = phi(ex(i, h), ey(j, h)), pm = phi(ex(i, h), ey(j, -h));
      double mp = phi(ex(i, -h), ey(j, h)), mm = phi(ex(i, -h), ey(j, -h));
      M(j + 1, i + 1) = (pp - pm - mp + mm) / (4 * h * h);
    }
  return std::abs(M.determinant());
}

double phi0(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::Index d = x.size();
  double s = 0;
  for (Eigen::Index j = 0; j + 1 < d; ++j) s += x[j] * y[j];
  return s + x[d - 1] * std::sqrt(1 - y.squaredNorm()) + y[d - 1] * std::sqrt(1 - x.squaredNorm());
}

}  // namespace extomo
