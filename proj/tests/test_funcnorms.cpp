#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besov/corpus.hpp"
#include "besov/funcnorms.hpp"

using namespace besov;

namespace {

NormParams params(ScaleTag sc, int variant, double s, double p, double q, Homogeneity hom) {
  NormParams np;
  np.scale = sc;
  np.variant = variant;
  np.s = s;
  np.p = p;
  np.q = q;
  np.hom = hom;
  return np;
}

}  // namespace

TEST_CASE("Plancherel: the plain continuous F norm at s = 0, p = q = 2") {
  // Phi = Laplacian of e^{-|x|^2/2}, F Phi(xi) = -xi^2 e^{-xi^2/2} and
  // F(Phi_t * f) = sqrt(2 pi) F Phi(t xi) F f(xi). For f = e^{-x^2/2} and
  // scales t in [a, b]:
  //   int_a^b int |Phi_t * f|^2 dx dt/t = 2 pi int e^{-xi^2} [G(b|xi|) - G(a|xi|)] dxi,
  // with G(tau) = -(1 + tau^2) e^{-tau^2} / 2 (over all t this is pi ||f||^2).
  GridSpec g(1, 32.0, 4096);
  const auto pair = gaussian_local_means(g, 1);
  const auto f = gaussian_kernel(g, 1.0).signal();
  const auto np = params(ScaleTag::F, 1, 0.0, 2.0, 2.0, Homogeneity::Homogeneous);
  // t <= 4: coarser dilates of Phi wrap around the periodic box.
  const auto ladder = ScaleLadder::octaves(2.0, -2, 10, 8);
  const double v = f_norm(f, pair.phi0, pair.phi, np, ladder);

  const auto used = continuous_ladder(ladder, g, Homogeneity::Homogeneous);
  const double b = used.scale(0), a = used.scale(used.size() - 1);
  auto G = [](double tau) { return -0.5 * (1 + tau * tau) * std::exp(-tau * tau); };
  const double dxi = 1e-4;
  double acc = 0;
  for (double xi = dxi / 2; xi < 12; xi += dxi) acc += std::exp(-xi * xi) * (G(b * xi) - G(a * xi));
  const double expect = std::sqrt(2 * kPi * 2 * acc * dxi);
  // The t-integral is a trapezoid rule in log t; its end corrections are
  // a few parts in 1e3 at nu = 8.
  CHECK(v == doctest::Approx(expect).epsilon(5e-3));

  // Same quadrature in t, exact in xi:
  //   2 pi int xi^4 t^4 e^{-(1+t^2) xi^2} dxi = 2 pi t^4 (3 sqrt(pi) / 4) (1+t^2)^{-5/2}.
  const auto w = used.log_weights();
  double node_sum = 0;
  for (std::size_t m = 0; m < used.size(); ++m) {
    const double t = used.scale(m);
    node_sum += w[m] * 2 * kPi * std::pow(t, 4) * 0.75 * std::sqrt(kPi) * std::pow(1 + t * t, -2.5);
  }
  CHECK(v == doctest::Approx(std::sqrt(node_sum)).epsilon(1e-9));
  // Over all scales the same computation gives sqrt(pi) ||f||_2.
  CHECK(v < std::sqrt(kPi) * lp_norm(f, 2.0));
}

TEST_CASE("B and F coincide at p = q for the plain and discrete variants") {
  GridSpec g(1, 32.0, 4096);
  const auto pair = gaussian_local_means(g, 1);
  const auto f = make_corpus("gaussian-derivatives", g).members[1].signal;
  const auto ladder = ScaleLadder::octaves(2.0, -6, 10, 8);
  for (auto hom : {Homogeneity::Homogeneous, Homogeneity::Inhomogeneous}) {
    const double fb = b_norm(f, pair.phi0, pair.phi, params(ScaleTag::B, 1, 0.5, 2, 2, hom), ladder);
    const double ff = f_norm(f, pair.phi0, pair.phi, params(ScaleTag::F, 1, 0.5, 2, 2, hom), ladder);
    CHECK(fb == doctest::Approx(ff).epsilon(1e-12));
    const double db = norm_value(f, pair.phi0, pair.phi, params(ScaleTag::B, 4, 0.5, 2, 2, hom), ladder);
    const double df = norm_value(f, pair.phi0, pair.phi, params(ScaleTag::F, 5, 0.5, 2, 2, hom), ladder);
    CHECK(db == doctest::Approx(df).epsilon(1e-12));
  }
}

TEST_CASE("zero signal has zero norm in every variant") {
  GridSpec g(1, 16.0, 1024);
  const auto pair = gaussian_local_means(g, 1);
  const auto zero = SampledSignal(g);
  const auto rep = norm_report(zero, {pair}, params(ScaleTag::F, 1, 0.5, 2, 2, Homogeneity::Inhomogeneous),
                               ScaleLadder::octaves(2.0, -3, 6, 4));
  CHECK(rep.all_zero);
  for (const auto& [v, val] : rep.values) CHECK(val == 0.0);
}

TEST_CASE("homogeneous dilation covariance") {
  GridSpec g(1, 32.0, 8192);
  const auto pair = gaussian_local_means(g, 1);
  const auto f = make_corpus("gaussian-derivatives", g).members[1].signal;
  const auto ladder = ScaleLadder::octaves(2.0, -6, 10, 8);
  const double s = 0.5, p = 2.0;
  for (auto [sc, variant] : {std::pair{ScaleTag::B, 1}, std::pair{ScaleTag::F, 3}, std::pair{ScaleTag::F, 5}}) {
    const auto np = params(sc, variant, s, p, 2.0, Homogeneity::Homogeneous);
    const double n1 = norm_value(f, pair.phi0, pair.phi, np, ladder);
    const double n2 = norm_value(resample(f, {0, 0}, 2.0), pair.phi0, pair.phi, np, ladder);
    CHECK(n2 / n1 == doctest::Approx(std::pow(2.0, s - 1 / p)).epsilon(0.03));
  }
}

TEST_CASE("dilation family kernels are L1 dilates") {
  // Phi = Laplacian e^{-x^2/2} = (x^2 - 1) e^{-x^2/2}; level k is 2^k Phi(2^k x).
  GridSpec g(1, 32.0, 4096);
  const auto pair = gaussian_local_means(g, 1);
  const auto fam = dilation_family(pair.phi0, pair.phi, Homogeneity::Inhomogeneous, 0, 3);
  REQUIRE(fam.kernels.size() == 4);
  CHECK(fam.k.front() == 0);
  // k = 0 of an inhomogeneous family is Phi0 itself.
  CHECK(std::abs(fam.kernels[0].space[2048] - pair.phi0.space[2048]) < 1e-14);
  for (std::size_t i = 1; i < fam.kernels.size(); ++i) {
    const double lam = std::ldexp(1.0, fam.k[i]);
    double e = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double y = lam * g.position(j)[0];
      e = std::max(e, std::abs(fam.kernels[i].space[j] - lam * (y * y - 1) * std::exp(-y * y / 2)));
    }
    CHECK(e < 1e-9 * lam);
  }
}

TEST_CASE("parameter validation") {
  GridSpec g(1, 16.0, 1024);
  const auto pair = gaussian_local_means(g, 1);  // L = 2
  auto np = params(ScaleTag::F, 2, 0.5, 2, 2, Homogeneity::Homogeneous);
  np.a = 0.4;  // Peetre needs a > d / min(p, q) = 0.5
  CHECK_THROWS_AS(validate(np, 1, pair.phi.meta), Error);
  np.a = 1.5;
  CHECK_NOTHROW(validate(np, 1, pair.phi.meta));
  np.s = 3.0;  // needs L > s
  CHECK_THROWS_AS(validate(np, 1, pair.phi.meta), Error);
  np.s = 0.5;
  np.p = 0.0;
  CHECK_THROWS_AS(validate(np, 1, pair.phi.meta), Error);
}
