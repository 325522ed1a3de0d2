#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace extomo {

using cplx = std::complex<double>;
// Points live in R^3; planar (n=2) objects keep a zero third component.
using Vec = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Every error carries a short machine-readable code plus a message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }
  std::string reason() const { return code_ + ": " + what(); }

 private:
  std::string code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& m) : Error("invalid-argument", m) {}
};
struct PreconditionViolation : Error {
  explicit PreconditionViolation(const std::string& m) : Error("precondition-violation", m) {}
};
struct ResourceLimit : Error {
  explicit ResourceLimit(const std::string& m) : Error("resource-limit", m) {}
};
struct NumericalFailure : Error {
  explicit NumericalFailure(const std::string& m) : Error("numerical-failure", m) {}
};

// Returns x/|x| if |x| is within kUnitTol of 1, throws otherwise.
Vec unit_checked(const Vec& x, const char* what);

// Worker count: EXTOMO_THREADS if set, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker,
// so results written per index do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Pairwise summation with a fixed tree shape.
double pairwise_sum(const double* x, std::size_t n);
cplx pairwise_sum(const cplx* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }
inline cplx pairwise_sum(const std::vector<cplx>& x) { return pairwise_sum(x.data(), x.size()); }

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Gauss-Legendre rule on [a, b] split into `panels` equal pieces.
void composite_gl(double a, double b, int panels, int order, std::vector<double>& x,
                  std::vector<double>& w);

std::vector<double> linspace(double a, double b, int n);

struct LinearFit {
  double slope = 0, intercept = 0, r_squared = 0;
};
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace extomo
