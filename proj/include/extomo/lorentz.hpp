#pragma once

#include <limits>
#include <vector>

namespace extomo {


enum class LorentzScale {
  // ||f||_{q,r}^r = (r/q) int_0^inf (t^{1/q} f*(t))^r dt/t ; equals L^q at r = q
  // and a * w^{1/q} for a single atom at every r.
  standard,
  // int_0^inf (t^{1/q} f*(t))^r dt/t without the r/q factor; this is the form
  // in which Hoelder's inequality holds with constant one.
  hoelder,
};

// Discrete L^{q,r} quasinorm of the step function with the given (value,
// weight) atoms, via the decreasing rearrangement. r may be kInf.
double lorentz_norm(const std::vector<double>& values, const std::vector<double>& weights,
                    double q, double r, LorentzScale scale = LorentzScale::standard);

}  // namespace extomo
