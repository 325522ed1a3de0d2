#include "extomo/density.hpp"

#include <algorithm>
#include <cmath>

#include "extomo/fft.hpp"
#include "extomo/lorentz.hpp"

namespace extomo {

namespace {
std::shared_ptr<const std::vector<cplx>> circle_coefficients(const std::vector<cplx>& v) {
  auto out = std::make_shared<std::vector<cplx>>(v);
  dft(*out, {static_cast<int>(v.size())}, -1);
  for (auto& c : *out) c /= static_cast<double>(v.size());
  return out;
}
}  // namespace

Density::Density(GridPtr grid, std::vector<cplx> values, OffNode mode, DensityFn exact)
    : grid_(std::move(grid)), values_(std::move(values)), mode_(mode), exact_(std::move(exact)) {
  if (!grid_) throw InvalidArgument("Density: null grid");
  if (values_.size() != grid_->size())
    throw InvalidArgument("Density: value count does not match node count");
  if (mode_ == OffNode::exact && !exact_)
    throw InvalidArgument("Density: exact mode needs a generating callable");
  if (mode_ == OffNode::interpolate && grid_->dim == 2) fourier_ = circle_coefficients(values_);
}

Density Density::sample(GridPtr grid, DensityFn f, OffNode mode) {
  std::vector<cplx> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->nodes[j]);
  return Density(std::move(grid), std::move(v), mode, mode == OffNode::exact ? f : DensityFn{});
}

Density Density::constant(GridPtr grid, cplx c) {
  return sample(std::move(grid), [c](const Vec&) { return c; }, OffNode::exact);
}

cplx Density::at(const Vec& xi) const {
  switch (mode_) {
    case OffNode::exact:
      return exact_(xi);
    case OffNode::nearest:
      return values_[grid_->nearest(xi)];
    case OffNode::interpolate:
      return interpolate(xi);
  }
  return 0.0;
}

cplx Density::interpolate(const Vec& xi) const {
  const SphereGrid& g = *grid_;
  if (g.dim == 2) {
    const auto& c = *fourier_;
    int N = static_cast<int>(c.size());
    double th = std::atan2(xi.y(), xi.x());
    cplx z = std::polar(1.0, th), zk = 1.0, s = c[0];
    int half = N / 2;
    for (int k = 1; k < (N + 1) / 2; ++k) {
      zk *= z;
      s += c[k] * zk + c[N - k] * std::conj(zk);
    }
    if (N % 2 == 0) s += c[half] * std::cos(half * th);
    return s;
  }
  // bilinear in (theta, phi); the poles take the mean of the nearest ring
  double th = std::acos(std::clamp(xi.z() / xi.norm(), -1.0, 1.0));
  double ph = std::atan2(xi.y(), xi.x());
  if (ph < 0) ph += 2 * kPi;
  int Na = g.n_az, Np = g.n_polar;
  auto ring_at = [&](int ring) {
    double u = ph / (2 * kPi) * Na;
    int k0 = static_cast<int>(std::floor(u));
    double f = u - k0;
    k0 %= Na;
    int k1 = (k0 + 1) % Na;
    return (1 - f) * values_[ring * Na + k0] + f * values_[ring * Na + k1];
  };
  auto ring_mean = [&](int ring) {
    cplx s = 0;
    for (int k = 0; k < Na; ++k) s += values_[ring * Na + k];
    return s / static_cast<double>(Na);
  };
  const auto& rt = g.ring_theta;
  if (th <= rt.front()) {
    double f = th / rt.front();
    return (1 - f) * ring_mean(0) + f * ring_at(0);
  }
  if (th >= rt.back()) {
    double f = (kPi - th) / (kPi - rt.back());
    return (1 - f) * ring_mean(Np - 1) + f * ring_at(Np - 1);
  }
  int r1 = static_cast<int>(std::upper_bound(rt.begin(), rt.end(), th) - rt.begin());
  int r0 = r1 - 1;
  double f = (th - rt[r0]) / (rt[r1] - rt[r0]);
  return (1 - f) * ring_at(r0) + f * ring_at(r1);
}

double Density::norm(double p) const {
  if (!(p > 0)) throw InvalidArgument("Density::norm: p must be positive");
  if (std::isinf(p)) {
    double m = 0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }
  std::vector<double> t(values_.size());
  for (std::size_t j = 0; j < t.size(); ++j)
    t[j] = grid_->weights[j] * std::pow(std::abs(values_[j]), p);
  return std::pow(pairwise_sum(t), 1.0 / p);
}

double Density::lorentz_norm(double p, double r) const {
  std::vector<double> v(values_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::abs(values_[j]);
  return extomo::lorentz_norm(v, grid_->weights, p, r);
}

cplx Density::integral() const {
  std::vector<cplx> t(values_.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = grid_->weights[j] * values_[j];
  return pairwise_sum(t);
}

bool Density::is_real(double tol) const {
  double m = 0, im = 0;
  for (const auto& v : values_) {
    m = std::max(m, std::abs(v));
    im = std::max(im, std::abs(v.imag()));
  }
  return im <= tol * std::max(1.0, m);
}

bool Density::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == 0.0; });
}

Density Density::map(const std::function<cplx(cplx)>& f) const {
  std::vector<cplx> v(values_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(values_[j]);
  DensityFn ex;
  if (exact_) {
    auto inner = exact_;
    ex = [inner, f](const Vec& xi) { return f(inner(xi)); };
  }
  return Density(grid_, std::move(v), mode_, ex);
}

Density Density::abs() const {
  return map([](cplx z) { return cplx(std::abs(z), 0.0); });
}

Density Density::abs_squared() const {
  return map([](cplx z) { return cplx(std::norm(z), 0.0); });
}

Density Density::scaled(cplx c) const {
  return map([c](cplx z) { return c * z; });
}

Density Density::with_mode(OffNode m) const {
  if (m == OffNode::exact && !exact_)
    throw InvalidArgument("Density::with_mode: no generating callable for exact mode");
  return Density(grid_, values_, m, exact_);
}

Density Density::reflected_origin() const {
  DensityFn ex;
  if (exact_) {
    auto inner = exact_;
    ex = [inner](const Vec& xi) { return inner(-xi); };
  }
  std::vector<cplx> v(values_.size());
  if (exact_) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = ex(grid_->nodes[j]);
  } else {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = at(-grid_->nodes[j]);
  }
  return Density(grid_, std::move(v), mode_, ex);
}

Density Density::combine(cplx a, const Density& g1, cplx b, const Density& g2) {
  if (g1.grid_ != g2.grid_) throw InvalidArgument("Density::combine: grids differ");
  std::vector<cplx> v(g1.values_.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * g1.values_[j] + b * g2.values_[j];
  DensityFn ex;
  OffNode mode = g1.mode_;
  if (g1.exact_ && g2.exact_) {
    auto f1 = g1.exact_, f2 = g2.exact_;
    ex = [=](const Vec& xi) { return a * f1(xi) + b * f2(xi); };
  } else if (mode == OffNode::exact) {
    mode = OffNode::interpolate;
  }
  return Density(g1.grid_, std::move(v), mode, ex);
}

Density Density::with_values(std::vector<cplx> v) const {
  OffNode m = mode_ == OffNode::exact ? OffNode::interpolate : mode_;
  return Density(grid_, std::move(v), m);
}

Density knapp_cap_density(GridPtr grid, const CapSpec& cap, OffNode mode) {
  if (!(cap.radius > 0) || !(cap.radius < kPi / 2))
    throw InvalidArgument("knapp_cap_density: radius must lie in (0, pi/2)");
  Vec c = unit_checked(cap.center, "knapp_cap_density: center");
  Vec a = cap.modulation_frequency;
  double rad = cap.radius;
  DensityFn f = [c, a, rad](const Vec& xi) -> cplx {
    if (geodesic_distance(c, xi) > rad) return 0.0;
    return std::polar(1.0, a.dot(xi));
  };
  std::vector<cplx> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->nodes[j]);
  return Density(std::move(grid), std::move(v), mode, f);
}

Density gm_density(GridPtr grid, int m, double delta, OffNode mode) {
  int n = grid->dim;
  if (m < 1 || m > n) throw InvalidArgument("gm_density: m must satisfy 1 <= m <= n");
  if (!(delta > 0) || !(delta < 1)) throw InvalidArgument("gm_density: delta must lie in (0,1)");
  DensityFn f = [m, delta](const Vec& xi) -> cplx {
    double s = 0;
    for (int i = 0; i < m; ++i) s += xi[i] * xi[i];
    return std::sqrt(s) <= delta ? 1.0 : 0.0;
  };
  std::vector<cplx> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->nodes[j]);
  return Density(std::move(grid), std::move(v), mode, f);
}

Density cap_bump_density(GridPtr grid, const Vec& center, double radius, OffNode mode) {
  Vec c = unit_checked(center, "cap_bump_density: center");
  DensityFn f = [c, radius](const Vec& xi) -> cplx {
    double d = geodesic_distance(c, xi) / radius;
    if (d >= 1) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - d * d));
  };
  std::vector<cplx> v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid->nodes[j]);
  return Density(std::move(grid), std::move(v), mode, mode == OffNode::exact ? f : DensityFn{});
}

Density poisson_mollify_circle(const Density& g, double scale) {
  if (g.dim() != 2) throw InvalidArgument("poisson_mollify_circle: needs a circle grid");
  if (!(scale > 0 && scale < 1))
    throw InvalidArgument("poisson_mollify_circle: scale must lie in (0,1)");
  int N = static_cast<int>(g.grid().size());
  double r = 1 - scale;
  std::vector<double> ker(N);
  for (int m = 0; m < N; ++m) ker[m] = poisson_kernel_circle(r, 2 * kPi * m / N);
  double mass = pairwise_sum(ker) / N;
  for (auto& k : ker) k /= mass * N;
  std::vector<cplx> out(N);
  parallel_for(N, [&](std::size_t j) {
    std::vector<cplx> t(N);
    for (int k = 0; k < N; ++k) t[k] = ker[(j + N - k) % N] * g[k];
    out[j] = pairwise_sum(t);
  });
  return Density(g.grid_ptr(), std::move(out), OffNode::interpolate);
}

}  // namespace extomo
