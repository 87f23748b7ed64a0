#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besov/corpus.hpp"
#include "besov/discretization.hpp"

using namespace besov;

namespace {

LatticeSpec lattice(int j_min, int j_max, double box) {
  LatticeSpec L;
  L.j_min = j_min;
  L.j_max = j_max;
  L.box = box;
  return L;
}

}  // namespace

TEST_CASE("lattice points and tiles") {
  auto L = lattice(0, 2, 2.0);
  const auto kr = L.k_range(1);  // alpha k 2^-1 in [-2, 2)
  CHECK(kr[0] == -4);
  CHECK(kr[1] == 3);
  const auto p = lattice_point(L, 1, {3, 0});
  CHECK(p.pt.x[0] == doctest::Approx(1.5));
  CHECK(p.pt.t == doctest::Approx(0.5));
  CHECK(p.tile.lo[0] == doctest::Approx(1.5));
  CHECK(p.tile.hi[0] == doctest::Approx(2.0));
  CHECK(p.tile.t_lo == doctest::Approx(0.25));
  CHECK(p.tile.t_hi == doctest::Approx(0.5));
  // 4 + 8 + 16 points
  CHECK(lattice_points(L).size() == 28);
  L.beta = 1.0;
  CHECK_THROWS_AS(validate(L), Error);
}

TEST_CASE("sequence norms of a single coefficient") {
  // One entry lambda at level l:
  //   p-sharp = beta^{l(s+d/q)} |lambda| |Q_l|^{1/p}, |Q_l| = alpha beta^{-l}
  //   l-sharp = beta^{l(s+d/q-d/p)} |lambda|
  auto L = lattice(0, 3, 4.0);
  L.alpha = 0.5;
  CoeffField c(L);
  const int l = 2;
  const cplx lam{3.0, -4.0};
  c.add(1, l, {1, 0}, lam);
  const double s = 0.7, p = 3.0, q = 1.5;
  const double cell = 0.5 * std::pow(2.0, -l);
  CHECK(p_sharp_norm(c, s, p, q) == doctest::Approx(std::pow(2.0, l * (s + 1 / q)) * 5.0 * std::pow(cell, 1 / p)));
  CHECK(l_sharp_norm(c, s, p, q) == doctest::Approx(std::pow(2.0, l * (s + 1 / q - 1 / p)) * 5.0));
}

TEST_CASE("l-sharp norm with disjoint levels") {
  // Two levels, two entries each: (sum_l w_l^q (sum_k |.|^p)^{q/p})^{1/q}
  CoeffField c(lattice(0, 1, 4.0));
  c.add(1, 0, {0, 0}, 1.0);
  c.add(1, 0, {1, 0}, 2.0);
  c.add(1, 1, {0, 0}, 3.0);
  c.add(1, 1, {-1, 0}, 1.0);
  const double s = 0.25, p = 2, q = 1;
  const double w1 = std::pow(2.0, s + 1 / q - 1 / p);
  const double expect = std::sqrt(5.0) + w1 * std::sqrt(10.0);
  CHECK(l_sharp_norm(c, s, p, q) == doctest::Approx(expect));
  CHECK(p_sharp_norm(2.0 * c, s, p, q) == doctest::Approx(2 * p_sharp_norm(c, s, p, q)));
}

TEST_CASE("analysis recovers a synthesised atom") {
  const auto sys = spline_system(3);
  GridSpec g(1, 32.0, 4096);
  auto L = lattice(0, 2, 8.0);
  CoeffField c(L);
  c.add(1, 1, {2, 0}, 1.0);
  const auto f = atomic_synthesis(c, sys, g);
  // Sampling the C^1 spline at h = 1/64 costs a few 1e-6.
  CHECK(lp_norm(f, 2.0) == doctest::Approx(1.0).epsilon(2e-5));
  const auto back = frame_coefficients(f, sys, L);
  double hit = 0, rest = 0;
  for (const auto& e : back.entries) {
    if (e.c == 1 && e.j == 1 && e.k[0] == 2) hit = std::abs(e.value);
    else rest = std::max(rest, std::abs(e.value));
  }
  CHECK(hit == doctest::Approx(1.0).epsilon(2e-5));
  CHECK(rest < 2e-5);
}

TEST_CASE("coefficients from the wavelet transform agree with inner products") {
  const auto sys = spline_system(2);
  GridSpec g(1, 16.0, 2048);
  const auto f = gaussian_kernel(g).signal();
  auto L = lattice(0, 2, 4.0);
  const auto a = frame_coefficients(f, sys, L);
  const auto b = frame_coefficients_cwt(f, spline_species(sys, g), L);
  REQUIRE(a.entries.size() == b.entries.size());
  double e = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) e = std::max(e, std::abs(a.entries[i].value - b.entries[i].value));
  // The piecewise-linear m = 2 atoms have kinks; the two quadratures differ
  // at the 1e-7 level.
  CHECK(e < 1e-6);
}

TEST_CASE("frame norm equivalence refuses parameters outside the window") {
  const auto sys = spline_system(3);
  GridSpec g(1, 16.0, 1024);
  const auto f = gaussian_kernel(g).signal();
  NormParams np;
  np.scale = ScaleTag::F;
  np.hom = Homogeneity::Homogeneous;
  np.s = 2.0;
  np.variant = 2;
  try {
    frame_norm_equivalence(f, sys, lattice(0, 2, 4.0), np, 1.5, ScaleLadder::octaves(2.0, -2, 4, 4));
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Configuration);
  }
}
