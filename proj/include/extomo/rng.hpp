#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "extomo/common.hpp"

namespace extomo {

// Counter-based generator: draw k of stream (key) is mix(key, k), so any
// worker can jump to any position without shared state.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view name);
  Rng(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

  // Independent child stream; child i does not depend on draws made so far.
  Rng split(std::uint64_t i) const;

  std::uint64_t next_u64();
  double uniform();                  // [0,1)
  double uniform(double a, double b);
  double normal();
  int rademacher() { return (next_u64() >> 63) ? 1 : -1; }
  Vec unit_vector(int dim);          // uniform on S^{dim-1}
  Mat3 rotation(int dim);            // random proper rotation (about e3 for dim 2)

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t z);
std::uint64_t hash_name(std::string_view s);

}  // namespace extomo
