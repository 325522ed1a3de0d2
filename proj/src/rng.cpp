#include "extomo/rng.hpp"

#include <cmath>

namespace extomo {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed, std::string_view name)
    : key_(mix64(seed ^ mix64(hash_name(name)))), counter_(0) {}

Rng Rng::split(std::uint64_t i) const { return Rng(mix64(key_ ^ mix64(i + 0x51ed27ULL)), 0); }

std::uint64_t Rng::next_u64() {
  std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c));
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * kPi * u2);
}

Vec Rng::unit_vector(int dim) {
  for (;;) {
    Vec v(normal(), normal(), dim == 3 ? normal() : 0.0);
    double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

Mat3 Rng::rotation(int dim) {
  if (dim == 2) {
    double a = uniform(0, 2 * kPi);
    Mat3 r = Mat3::Identity();
    r(0, 0) = std::cos(a);
    r(0, 1) = -std::sin(a);
    r(1, 0) = std::sin(a);
    r(1, 1) = std::cos(a);
    return r;
  }
  // unit quaternion from four normals
  double q0 = normal(), q1 = normal(), q2 = normal(), q3 = normal();
  double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  Eigen::Quaterniond q(q0 / n, q1 / n, q2 / n, q3 / n);
  return q.toRotationMatrix();
}

}  // namespace extomo
