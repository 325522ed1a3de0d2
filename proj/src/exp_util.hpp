#pragma once

// Helpers shared by the experiment translation units.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "extomo/experiments.hpp"
#include "extomo/extension.hpp"

namespace extomo::detail {

inline double rel_err(double a, double b) {
  if (a == 0 && b == 0) return 0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline double rel_to(double value, double reference) {
  if (reference == 0) return value == 0 ? 0 : kInf;
  return std::abs(value - reference) / std::abs(reference);
}

// Trapezoid nodes on [-T, T] with step close to h (endpoints included).
inline void trapezoid(double T, double h, std::vector<double>& s, std::vector<double>& w) {
  int n = std::max(2, static_cast<int>(std::ceil(2 * T / h))) + 1;
  s = linspace(-T, T, n);
  double step = 2 * T / (n - 1);
  w.assign(n, step);
  w.front() = w.back() = step / 2;
}

// int |g^dsigma(base + s dir)|^2 ds over the given nodes.
inline double line_integral(const Density& g, const Vec& base, const Vec& dir,
                            const std::vector<double>& s, const std::vector<double>& w) {
  Vec other = std::abs(dir.x()) < 0.9 ? Vec(1, 0, 0) : Vec(0, 1, 0);
  Eigen::MatrixXcd F = extend_lattice(g, base, dir, s, other, {0.0});
  std::vector<double> terms(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) terms[k] = w[k] * std::norm(F(k, 0));
  return pairwise_sum(terms);
}

// Tail of the line integral of |g^dsigma|^2 beyond |s| = T on S^2, from
// |g^dsigma(s omega)|^2 ~ (2 pi / s)^2 (|g(omega)|^2 + |g(-omega)|^2) on average.
inline double sphere_line_tail(const Density& g, const Vec& dir, double T) {
  return 8 * kPi * kPi * (std::norm(g.at(dir)) + std::norm(g.at(-dir))) / T;
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::size_t next_pow2(double x) {
  std::size_t n = 8;
  while (static_cast<double>(n) < x) n *= 2;
  return n;
}

}  // namespace extomo::detail
