#pragma once

#include <vector>

#include "extomo/common.hpp"

namespace extomo {

// In-place unnormalized complex DFT over a row-major array of the given
// dimensions (1 or 2 axes). sign = -1 forward, +1 backward.
void dft(std::vector<cplx>& data, const std::vector<int>& dims, int sign);

// Continuous frequency of DFT bin k on a grid of P points with spacing h.
inline double dft_frequency(int k, int P, double h) {
  int kk = k <= P / 2 ? k : k - P;
  return 2 * kPi * kk / (P * h);
}

}  // namespace extomo
