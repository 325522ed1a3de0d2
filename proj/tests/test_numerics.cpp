#include <gtest/gtest.h>

#include <cmath>

#include "extomo/common.hpp"
#include "extomo/fft.hpp"
#include "extomo/lorentz.hpp"
#include "extomo/rng.hpp"

using namespace extomo;

TEST(Quadrature, GaussLegendreIsExact) {
  std::vector<double> x, w;
  gauss_legendre(10, x, w);
  double s = 0, s18 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += w[i];
    s18 += w[i] * std::pow(x[i], 18);
  }
  EXPECT_NEAR(s, 2.0, 1e-14);
  EXPECT_NEAR(s18, 2.0 / 19, 1e-14);
  composite_gl(0, kPi, 8, 8, x, w);
  double si = 0;
  for (std::size_t i = 0; i < x.size(); ++i) si += w[i] * std::sin(x[i]);
  EXPECT_NEAR(si, 2.0, 1e-13);
}

TEST(Quadrature, PairwiseSumAndFit) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
  LinearFit f = least_squares(x, y);
  EXPECT_NEAR(f.slope, 2, 1e-14);
  EXPECT_NEAR(f.intercept, 1, 1e-14);
  EXPECT_NEAR(f.r_squared, 1, 1e-14);
}

TEST(Parallel, ResultIndependentOfWorkers) {
  std::vector<double> out(257);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = std::sin(static_cast<double>(i)); });
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], std::sin(static_cast<double>(i)));
}

TEST(Fft, MatchesDirectSum) {
  const int N = 12;
  std::vector<cplx> a(N);
  for (int k = 0; k < N; ++k) a[k] = cplx(std::cos(0.3 * k * k), 0.1 * k);
  std::vector<cplx> b = a;
  dft(b, {N}, -1);
  for (int m = 0; m < N; ++m) {
    cplx s = 0;
    for (int k = 0; k < N; ++k) s += a[k] * std::polar(1.0, -2 * kPi * m * k / N);
    EXPECT_NEAR(std::abs(b[m] - s), 0.0, 1e-12);
  }
  dft(b, {N}, 1);
  for (int k = 0; k < N; ++k) EXPECT_NEAR(std::abs(b[k] / double(N) - a[k]), 0.0, 1e-13);
  EXPECT_NEAR(dft_frequency(1, 8, 0.5), 2 * kPi / 4, 1e-15);
  EXPECT_NEAR(dft_frequency(7, 8, 0.5), -2 * kPi / 4, 1e-15);
}

TEST(Lorentz, SingleAtom) {
  // a 1_E has ||.||_{L^{q,r}} = a |E|^{1/q} for every r in the standard scale
  for (double r : {1.0, 2.0, 5.0, kInf})
    EXPECT_NEAR(lorentz_norm({3.0}, {2.0}, 4, r), 3 * std::pow(2.0, 0.25), 1e-13) << r;
}

TEST(Lorentz, DiagonalIsLebesgue) {
  Rng rng(1, "lorentz");
  std::vector<double> v(50), w(50);
  for (int i = 0; i < 50; ++i) {
    v[i] = rng.uniform(0, 3);
    w[i] = rng.uniform(0.1, 1);
  }
  double lq = 0;
  for (int i = 0; i < 50; ++i) lq += w[i] * std::pow(v[i], 3);
  EXPECT_NEAR(lorentz_norm(v, w, 3, 3), std::cbrt(lq), 1e-12);
}

TEST(Lorentz, WeakNormOfTwoAtoms) {
  // f* = 2 on [0,1), 1 on [1,5): sup t^{1/2} f*(t) = max(2, sqrt 5)
  EXPECT_NEAR(lorentz_norm({1.0, 2.0}, {4.0, 1.0}, 2, kInf), std::sqrt(5.0), 1e-14);
}

TEST(Lorentz, HoelderScaleDropsFactor) {
  std::vector<double> v{1, 2, 3}, w{1, 0.5, 0.25};
  double s = lorentz_norm(v, w, 2, 1, LorentzScale::standard);
  double h = lorentz_norm(v, w, 2, 1, LorentzScale::hoelder);
  EXPECT_NEAR(s, 0.5 * h, 1e-14);  // (r/q)^{1/r} = 1/2
}

TEST(Rng, DeterministicAndSplittable) {
  Rng a(42, "x"), b(42, "x"), c(42, "y");
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(Rng(42, "x").next_u64(), c.next_u64());
  Rng p(5, "s");
  Rng s1 = p.split(1);
  p.next_u64();
  EXPECT_EQ(s1.next_u64(), p.split(1).next_u64());
  for (int i = 0; i < 100; ++i) {
    double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_NEAR(a.unit_vector(3).norm(), 1.0, 1e-14);
  }
  Mat3 R = a.rotation(3);
  EXPECT_NEAR((R * R.transpose() - Mat3::Identity()).norm(), 0.0, 1e-13);
  EXPECT_NEAR(R.determinant(), 1.0, 1e-13);
}

TEST(Rng, NormalMoments) {
  Rng r(3, "normal");
  double m = 0, m2 = 0;
  const int N = 20000;
  for (int i = 0; i < N; ++i) {
    double z = r.normal();
    m += z;
    m2 += z * z;
  }
  m /= N;
  m2 /= N;
  EXPECT_NEAR(m, 0.0, 4 / std::sqrt(double(N)));
  EXPECT_NEAR(m2, 1.0, 6 * std::sqrt(2.0 / N));
}
