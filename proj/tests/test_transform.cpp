#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "besov/corpus.hpp"
#include "besov/transform.hpp"

using namespace besov;

namespace {

std::vector<double> random_field(const GridSpec& g, unsigned seed, bool smooth) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = g.position(i);
    const double env = smooth ? std::exp(-(x[0] * x[0] + x[1] * x[1]) / 4) : 1.0;
    v[i] = env * u(rng);
  }
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("Peetre supremum equals the brute-force reference") {
  for (int d : {1, 2}) {
    GridSpec g(d, 8.0, d == 1 ? 512 : 64);
    for (bool smooth : {false, true}) {
      const auto v = random_field(g, 11 + d, smooth);
      for (double t : {0.05, 0.5, 4.0})
        for (double a : {0.0, 1.5, 3.0}) CHECK(max_abs_diff(peetre_sup(v, g, t, a), reference::peetre_sup(v, g, t, a)) == 0.0);
    }
  }
}

TEST_CASE("Peetre supremum dominates the function and is exact on constants") {
  GridSpec g(1, 8.0, 256);
  std::vector<double> one(g.size(), 2.0);
  const auto s = peetre_sup(one, g, 0.3, 2.0);
  for (double x : s) CHECK(x == 2.0);
  const auto v = random_field(g, 3, false);
  const auto m = peetre_sup(v, g, 0.3, 2.0);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(m[i] >= v[i]);
}

TEST_CASE("Hardy-Littlewood maximal function and ball sums against references") {
  for (int d : {1, 2}) {
    GridSpec g(d, 4.0, d == 1 ? 256 : 32);
    const auto v = random_field(g, 5, false);
    std::vector<cplx> c(v.begin(), v.end());
    SampledSignal f(g, c);
    const auto a = hl_maximal(f), b = reference::hl_maximal(f);
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a.samples[i] - b.samples[i]));
    CHECK(e < 1e-12);
    for (double t : {0.1, 0.7}) {
      const auto s1 = ball_sums(v, g, t), s2 = reference::ball_sums(v, g, t);
      CHECK(max_abs_diff(s1, s2) < 1e-12);
    }
  }
}

TEST_CASE("ball sums of a constant count the lattice points in the ball") {
  GridSpec g(1, 4.0, 64);  // h = 1/8
  std::vector<double> one(g.size(), 1.0);
  const auto s = ball_sums(one, g, 0.3);  // offsets |z| < 0.3: z = -2h..2h
  CHECK(s[32] == doctest::Approx(5 * g.spacing()));
}

TEST_CASE("convolution of Gaussians") {
  // e^{-x^2/2} * e^{-x^2/2} = sqrt(pi) e^{-x^2/4}
  GridSpec g(1, 16.0, 1024);
  const auto G = gaussian_kernel(g);
  const auto c = convolve(G.signal(), G);
  double e = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double x = g.position(i)[0];
    e = std::max(e, std::abs(c.samples[i] - std::sqrt(kPi) * std::exp(-x * x / 4)));
  }
  CHECK(e < 1e-12);
}

TEST_CASE("L1 dilation keeps the integral, L2 dilation the energy") {
  GridSpec g(1, 16.0, 1024);
  const auto G = gaussian_kernel(g);
  const double i0 = lp_norm(G.signal(), 1.0), e0 = lp_norm(G.signal(), 2.0);
  for (double t : {0.5, 2.0}) {
    CHECK(lp_norm(dilate(G, t, DilationTag::l1()).signal(), 1.0) == doctest::Approx(i0).epsilon(1e-10));
    CHECK(lp_norm(dilate(G, t, DilationTag::l2()).signal(), 2.0) == doctest::Approx(e0).epsilon(1e-10));
  }
  CHECK_FALSE(scale_resolvable(g, 1e-3));
  CHECK_THROWS_AS(dilate(G, 1e-3, DilationTag::l1()), Error);
}

TEST_CASE("wavelet transform of a Gaussian by the Mexican hat") {
  // g = (1 - x^2) e^{-x^2/2}, f = e^{-x^2/2}:
  // W_g f(x, t) = t^{1/2} t^{-1} int g((y - x)/t) f(y) dy
  //            = sqrt(2 pi) t^{5/2} (1+t^2)^{-3/2} (1 - x^2/(1+t^2)) e^{-x^2/(2(1+t^2))}
  GridSpec g(1, 16.0, 1024);
  const auto f = gaussian_kernel(g).signal();
  const auto L = ScaleLadder::octaves(2.0, -1, 2, 2);
  const auto W = cwt(f, mexican_hat(g), L);
  double e = 0;
  for (std::size_t m = 0; m < W.nodes(); ++m) {
    const double t = W.scale(m), s = 1 + t * t;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.position(i)[0];
      const double exact = std::sqrt(2 * kPi) * std::pow(t, 2.5) * std::pow(s, -1.5) * (1 - x * x / s) *
                           std::exp(-x * x / (2 * s));
      e = std::max(e, std::abs(W.columns[m][i] - exact));
    }
  }
  CHECK(e < 1e-9);
  const auto R = reference::cwt(f, mexican_hat(g), L);
  double er = 0;
  for (std::size_t m = 0; m < W.nodes(); ++m)
    for (std::size_t i = 0; i < g.size(); ++i) er = std::max(er, std::abs(W.columns[m][i] - R.columns[m][i]));
  CHECK(er < 1e-12);
}

TEST_CASE("decay profile slope of a Gaussian-derivative pair") {
  GridSpec g(1, 32.0, 8192);
  const auto pair = gaussian_derivative_pair(g, 2);
  const auto prof = cwt_decay_profile(pair.phi, pair.phi0, ScaleLadder::octaves(2.0, -2, 8, 4));
  CHECK(prof.scale_slope == doctest::Approx(2.5).epsilon(0.04));
  CHECK(prof.spatial_order >= 6);
}

TEST_CASE("weighted chain smoother against the double sum") {
  const std::vector<double> v{1.0, 0.0, 2.0, 0.5, 3.0};
  const double delta = 0.7;
  const auto G = weighted_chain_smoother(v, delta);
  for (std::size_t l = 0; l < v.size(); ++l) {
    double acc = 0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += std::exp2(-std::abs(double(k) - double(l)) * delta) * v[k];
    CHECK(G[l] == doctest::Approx(acc));
  }
}
