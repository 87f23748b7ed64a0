#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "besov/fourier.hpp"

using namespace besov;

namespace {

// Direct O(n^2) centred DFT.
std::vector<cplx> naive_dft(const std::vector<cplx>& in, double alpha, int sign) {
  const int n = int(in.size());
  std::vector<cplx> out(in.size());
  for (int k = 0; k < n; ++k) {
    cplx acc = 0;
    for (int j = 0; j < n; ++j)
      acc += in[std::size_t(j)] * std::polar(1.0, sign * 2 * kPi * alpha * (j - n / 2) * (k - n / 2) / n);
    out[std::size_t(k)] = acc;
  }
  return out;
}

std::vector<cplx> random_vector(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> N;
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = {N(rng), N(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("centred DFT agrees with the direct sum") {
  auto v = random_vector(64, 1);
  auto w = v;
  fourier::centered_dft(w, 1, 64, -1);
  CHECK(max_diff(w, naive_dft(v, 1.0, -1)) < 1e-10);
}

TEST_CASE("fractional DFT agrees with the direct sum") {
  auto v = random_vector(64, 2);
  for (double alpha : {0.37, 1.0, 2.5}) {
    const auto w = fourier::fractional_dft(v, alpha, 1);
    CHECK(max_diff(w, naive_dft(v, alpha, 1)) < 1e-9);
  }
}

TEST_CASE("the Gaussian is its own transform") {
  for (int d : {1, 2}) {
    GridSpec g(d, 10.0, d == 1 ? 512 : 128);
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto x = g.position(i);
      f[i] = std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2);
    }
    const auto F = fourier::forward(g, f);
    double err = 0;
    for (std::size_t i = 0; i < F.size(); ++i) {
      const auto xi = g.frequency(i);
      err = std::max(err, std::abs(F[i] - std::exp(-(xi[0] * xi[0] + xi[1] * xi[1]) / 2)));
    }
    CHECK(err < 1e-12);
    CHECK(max_diff(fourier::inverse(g, F), f) < 1e-13);
  }
}

TEST_CASE("transform of a shifted Gaussian carries the phase") {
  GridSpec g(1, 16.0, 1024);
  const double z = 2.0;
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-std::pow(g.position(i)[0] - z, 2) / 2);
  const auto F = fourier::forward(g, f);
  double err = 0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double xi = g.frequency(i)[0];
    err = std::max(err, std::abs(F[i] - std::exp(-xi * xi / 2) * std::polar(1.0, -z * xi)));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("spectrum at scaled frequencies") {
  GridSpec g(1, 16.0, 1024);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-std::pow(g.position(i)[0], 2) / 2);
  const double t = 0.6;
  const auto F = fourier::spectrum_at_scaled(g, f, t);
  double err = 0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const double xi = g.frequency(i)[0];
    err = std::max(err, std::abs(F[i] - std::exp(-t * t * xi * xi / 2)));
  }
  CHECK(err < 1e-10);
}
