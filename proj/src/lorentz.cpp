#include "extomo/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "extomo/common.hpp"

namespace extomo {

double lorentz_norm(const std::vector<double>& values, const std::vector<double>& weights,
                    double q, double r, LorentzScale scale) {
  if (!(q >= 1)) throw InvalidArgument("lorentz_norm: q must be >= 1");
  if (!(r > 0)) throw InvalidArgument("lorentz_norm: r must be positive");
  if (values.size() != weights.size())
    throw InvalidArgument("lorentz_norm: values and weights differ in length");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  double T = 0;
  if (std::isinf(r)) {
    double best = 0;
    for (std::size_t i : order) {
      if (values[i] < 0 || !(weights[i] > 0))
        throw InvalidArgument("lorentz_norm: need values >= 0 and weights > 0");
      T += weights[i];
      // t^{1/q} f*(t) is increasing on each step, so its sup sits at the right end
      best = std::max(best, values[i] * std::pow(T, 1.0 / q));
    }
    return best;
  }
  std::vector<double> terms;
  terms.reserve(order.size());
  double Tprev_pow = 0;
  for (std::size_t i : order) {
    if (values[i] < 0 || !(weights[i] > 0))
      throw InvalidArgument("lorentz_norm: need values >= 0 and weights > 0");
    T += weights[i];
    double Tp = std::pow(T, r / q);
    if (values[i] > 0) terms.push_back(std::pow(values[i], r) * (Tp - Tprev_pow));
    Tprev_pow = Tp;
  }
  double s = pairwise_sum(terms);
  if (scale == LorentzScale::hoelder) s *= q / r;
  return std::pow(s, 1.0 / r);
}

}  // namespace extomo
