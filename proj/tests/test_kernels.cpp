#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besov/corpus.hpp"
#include "besov/kernels.hpp"

using namespace besov;

TEST_CASE("Gaussian moments match the closed form") {
  GridSpec g(1, 16.0, 2048);
  const auto G = gaussian_kernel(g);
  const auto mu = moments(G, 4);
  // int x^k e^{-x^2/2} = sqrt(2 pi) (k-1)!! for even k
  const double s = std::sqrt(2 * kPi);
  CHECK(mu[0].real() == doctest::Approx(s));
  CHECK(std::abs(mu[1]) < 1e-12);
  CHECK(mu[2].real() == doctest::Approx(s));
  CHECK(std::abs(mu[3]) < 1e-12);
  CHECK(mu[4].real() == doctest::Approx(3 * s));
  CHECK(G.meta.L == 0);
}

TEST_CASE("first non-vanishing moment of Gaussian derivatives") {
  GridSpec g(1, 16.0, 2048);
  for (int L = 1; L <= 4; ++L) {
    const auto pair = gaussian_derivative_pair(g, L);
    CHECK(pair.phi.meta.L == L);
    CHECK(first_nonvanishing_moment(pair.phi) == L);
  }
}

TEST_CASE("local means: Laplacian powers raise the moment order by two") {
  for (int d : {1, 2}) {
    GridSpec g(d, 12.0, d == 1 ? 1024 : 128);
    for (int N : {1, 2}) {
      const auto pair = gaussian_local_means(g, N);
      CHECK(pair.phi0.meta.L == 0);
      CHECK(pair.phi.meta.L == 2 * N);
    }
  }
}

TEST_CASE("multi-index ordering") {
  const auto mi = multi_indices(2, 2);
  REQUIRE(mi.size() == 6);
  CHECK(mi[0] == std::array<int, 2>{0, 0});
  CHECK(mi[1] == std::array<int, 2>{1, 0});
  CHECK(mi[2] == std::array<int, 2>{0, 1});
  CHECK(mi[3] == std::array<int, 2>{2, 0});
  CHECK(multi_indices(1, 3).size() == 4);
}

TEST_CASE("Mexican hat admissibility constant") {
  // d = 1: F g = xi^2 e^{-xi^2/2}, c_g = int xi^4 e^{-xi^2} / |xi| = 1.
  // d = 2: F g = |xi|^2 e^{-|xi|^2/2}, c_g = int |xi|^2 e^{-|xi|^2} = pi.
  GridSpec g1(1, 32.0, 4096);
  auto a1 = admissibility(mexican_hat(g1));
  CHECK_FALSE(a1.divergent);
  CHECK(a1.value == doctest::Approx(1.0).epsilon(1e-4));
  GridSpec g2(2, 16.0, 256);
  auto a2 = admissibility(mexican_hat(g2));
  CHECK(a2.value == doctest::Approx(kPi).epsilon(1e-3));
  // A kernel with non-zero mean is not admissible.
  CHECK(admissibility(gaussian_kernel(g1)).divergent);
  CHECK_THROWS_AS(frame_constant(gaussian_kernel(g1)), Error);
}

TEST_CASE("stored spectrum is consistent with the space samples") {
  GridSpec g(1, 16.0, 1024);
  CHECK(consistency_error(mexican_hat(g)) < 1e-12);
}

TEST_CASE("decay and smoothness checkers") {
  GridSpec g(1, 24.0, 2048);
  const auto G = gaussian_kernel(g);
  CHECK(check_decay(G, 6).ok);
  CHECK(G.meta.N_dec >= 6);
  CHECK(check_smoothness_weight(G, 4.0, 2).ok);
}

TEST_CASE("bump profile") {
  CHECK(bump_phi0(0.0) == 1.0);
  CHECK(bump_phi0(1.0) == 1.0);
  CHECK(bump_phi0(2.0) == 0.0);
  CHECK(bump_phi0(1.5) > 0.0);
  CHECK(bump_phi0(1.5) < 1.0);
  CHECK(bump_phi(0.4) == 0.0);
  CHECK(bump_phi(1.0) == doctest::Approx(1.0 - bump_phi0(2.0)));
}

TEST_CASE("inhomogeneous partition sums to one") {
  GridSpec g(1, 16.0, 1024);
  const auto P = build_inhomogeneous_partition(g);
  const auto s = P.sum();
  // Up to the last level whose support fits, the members sum to 1.
  const double top = std::ldexp(1.0, P.j_max);
  double err = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (g.freq_radius(i) <= top) err = std::max(err, std::abs(s[i] - 1.0));
  CHECK(err < 1e-14);
}

TEST_CASE("invalid kernels are refused") {
  GridSpec g(1, 16.0, 1024);
  CHECK_THROWS_AS(gaussian_derivative_pair(g, 0), Error);
  std::vector<cplx> v(g.size() - 1);
  CHECK_THROWS_AS(make_kernel_from_space(g, v, KernelRole::Phi, "short"), Error);
}
