#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "besov/splines.hpp"

using namespace besov;

TEST_CASE("Gauss-Legendre rules are exact up to degree 2n-1") {
  for (int n : {2, 5, 12}) {
    const auto r = gauss_legendre(n);
    CHECK(std::accumulate(r.w.begin(), r.w.end(), 0.0) == doctest::Approx(2.0));
    const int k = 2 * n - 2;  // even power: int_{-1}^{1} x^k = 2 / (k + 1)
    double acc = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * std::pow(r.x[i], k);
    CHECK(acc == doctest::Approx(2.0 / (k + 1)).epsilon(1e-13));
  }
  CHECK(piecewise_integral([](double x) { return x * x * x; }, 0.0, 2.0, 0.5) == doctest::Approx(4.0));
}

TEST_CASE("cardinal B-splines") {
  const auto N1 = bspline_poly(1), N2 = bspline_poly(2), N3 = bspline_poly(3), N4 = bspline_poly(4);
  CHECK(N1(0.3) == 1.0);
  CHECK(N1(1.2) == 0.0);
  CHECK(N2(0.5) == doctest::Approx(0.5));
  CHECK(N2(1.0) == doctest::Approx(1.0));
  CHECK(N3(1.5) == doctest::Approx(0.75));
  CHECK(N4(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(N4(1.0) == doctest::Approx(1.0 / 6.0));
  for (int m = 1; m <= 6; ++m) {
    const auto N = bspline_poly(m);
    CHECK(N.support_lo() == 0.0);
    CHECK(N.support_hi() == double(m));
    CHECK(piecewise_integral(N, 0.0, m, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    for (double x : {0.1, 0.5, 0.77}) {
      double s = 0;
      for (int k = -m; k <= m; ++k) s += N(x - k);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("scaling function is orthonormal to its integer shifts") {
  for (int m = 1; m <= 4; ++m) {
    const auto sys = spline_system(m);
    const double lo = sys.phi.support_lo() - 6, hi = sys.phi.support_hi() + 6;
    for (int k = 0; k <= 3; ++k) {
      const double ip = piecewise_integral([&](double x) { return sys.phi(x) * sys.phi(x - k); }, std::floor(lo),
                                           std::ceil(hi), 1.0);
      CHECK(ip == doctest::Approx(k == 0 ? 1.0 : 0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("Fourier-side orthonormality: sum_k |F phi(xi + 2 pi k)|^2 = 1 / (2 pi)") {
  for (int m : {2, 3, 4}) {
    const auto sys = spline_system(m);
    for (double xi : {0.0, 0.7, 2.0, 3.1}) {
      double s = 0;
      for (int k = -400; k <= 400; ++k) s += std::norm(sys.phi_hat(xi + 2 * kPi * k));
      CHECK(s == doctest::Approx(1 / (2 * kPi)).epsilon(1e-6));
    }
    CHECK(sys.periodization(0.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("the order-one wavelet is a Haar function") {
  const auto sys = spline_system(1);
  const double lo = sys.psi.support_lo(), hi = sys.psi.support_hi();
  CHECK(hi - lo == doctest::Approx(1.0));
  for (double x = lo + 0.01; x < hi; x += 0.05) CHECK(std::abs(sys.psi(x)) == doctest::Approx(1.0));
  CHECK(piecewise_integral(sys.psi, lo, hi, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("spline wavelet moments vanish below order m") {
  for (int m = 1; m <= 5; ++m) {
    const auto sys = spline_system(m);
    const auto mu = wavelet_moments(sys, m);
    const double l1 = wavelet_l1(sys);
    for (int l = 0; l < m; ++l) CHECK(std::abs(mu[std::size_t(l)]) < 1e-7 * l1);
    CHECK(std::abs(mu[std::size_t(m)]) > 1e-3 * l1);
  }
}

TEST_CASE("reproducing kernel at integer shifts is the Kronecker delta") {
  // <pi(k, 1) psi, psi> = <psi(. - k), psi> = delta_{k0}
  const auto sys = spline_system(3);
  const std::vector<double> y{0.0, 1.0, 2.0, -3.0};
  const auto K = reproducing_kernel(sys, 1.0, y);
  CHECK(K[0] == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t i = 1; i < K.size(); ++i) CHECK(K[i] < 1e-6);
}

TEST_CASE("smoothness window calculator") {
  auto iv = spline_wavdec_range(3, 1, 2, 2, ScaleTag::B);
  CHECK(iv.lo == doctest::Approx(-1.5));
  CHECK(iv.hi == doctest::Approx(1.5));
  iv = spline_wavdec_range(3, 1, 2, 2, ScaleTag::F);
  CHECK(iv.lo == doctest::Approx(-1.0));
  CHECK(iv.hi == doctest::Approx(1.5));
  CHECK(spline_wavdec_range(1, 1, 1, 2, ScaleTag::B).empty());
  CHECK(spline_wavdec_range(1, 1, 1, 2, ScaleTag::F).empty());
  // p = infinity on the B-scale: (-mn, mn - d)
  iv = wavdec_range(2, 3, 1, kInf, 2, ScaleTag::B);
  CHECK(iv.lo == doctest::Approx(-2.0));
  CHECK(iv.hi == doctest::Approx(1.0));
  CHECK_THROWS_AS(wavdec_range(2, 2, 1, 0.5, 2, ScaleTag::B), Error);
  CHECK_THROWS_AS(wavdec_range(2, 2, 1, kInf, 2, ScaleTag::F), Error);
}

TEST_CASE("integrability verdicts") {
  const auto sys = spline_system(4);
  PropWienerOptions opt;
  opt.max_box = 8;
  // well inside the window
  const auto in = propwiener_integral(sys, WeightSpec{0.0, 1.0, 2.0}, opt);
  CHECK(in.verdict == Verdict::Finite);
  // r2 far above m - 1 + 1/2: grows with the box
  const auto out = propwiener_integral(sys, WeightSpec{0.0, 1.0, 6.0}, opt);
  CHECK(out.verdict == Verdict::DivergentTrend);
  // the batched form matches the single calls
  const std::vector<WeightSpec> ws{{0.0, 1.0, 2.0}, {0.0, 1.0, 6.0}};
  const auto both = propwiener_integrals(sys, ws, opt);
  CHECK(both[0].values.back() == in.values.back());
  CHECK(both[1].values.back() == out.values.back());
}

TEST_CASE("spline order range") {
  CHECK_THROWS_AS(spline_system(0), Error);
  CHECK_THROWS_AS(spline_system(9), Error);
}
