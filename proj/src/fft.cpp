#include "extomo/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace extomo {

namespace {
std::mutex planner_mutex;
}

void dft(std::vector<cplx>& data, const std::vector<int>& dims, int sign) {
  if (dims.empty() || dims.size() > 2) throw InvalidArgument("dft: 1 or 2 axes supported");
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (total != data.size()) throw InvalidArgument("dft: size does not match dimensions");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lk(planner_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), p, p,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lk(planner_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace extomo
