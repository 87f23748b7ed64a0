#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besov/corpus.hpp"
#include "besov/group.hpp"

using namespace besov;

namespace {

bool same(const GroupPoint& a, const GroupPoint& b) {
  return std::abs(a.x[0] - b.x[0]) < 1e-12 && std::abs(a.x[1] - b.x[1]) < 1e-12 && std::abs(a.t - b.t) < 1e-12;
}

// F(x, t) = e^{-x^2/2} t^c on every ladder node.
GroupFunction separable(const GridSpec& g, const ScaleLadder& L, double c) {
  GroupFunction F(g, L);
  for (std::size_t m = 0; m < F.nodes(); ++m)
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.position(i)[0];
      F.columns[m][i] = std::exp(-x * x / 2) * std::pow(L.scale(m), c);
    }
  return F;
}

}  // namespace

TEST_CASE("ax+b group law") {
  const GroupPoint a{{1.0, -2.0}, 0.5}, b{{0.3, 4.0}, 3.0}, c{{-1.0, 0.25}, 2.0};
  const GroupPoint e{{0, 0}, 1};
  CHECK(same(gmul(a, ginv(a)), e));
  CHECK(same(gmul(ginv(a), a), e));
  CHECK(same(gmul(gmul(a, b), c), gmul(a, gmul(b, c))));
  // (x,t)(y,s) = (x + t y, s t)
  const auto ab = gmul(a, b);
  CHECK(ab.x[0] == doctest::Approx(1.0 + 0.5 * 0.3));
  CHECK(ab.t == doctest::Approx(1.5));
}

TEST_CASE("Haar weight and module") {
  const GroupPoint p{{0.0, 0.0}, 0.5};
  CHECK(haar_weight(p, 1) == doctest::Approx(4.0));
  CHECK(haar_weight(p, 2) == doctest::Approx(8.0));
  CHECK(haar_module(p, 1) == doctest::Approx(2.0));
  const WeightSpec w{1.0, 0.5, 2.0};
  CHECK(w(GroupPoint{{3.0, 0.0}, 4.0}) == doctest::Approx(4.0 * (16.0 + 0.5)));
}

TEST_CASE("L norm of a separable function") {
  // With t^c = t^{s + d/q} the scale integral is int dt/t = ln(t_max/t_min)
  // exactly under the log-trapezoid rule.
  GridSpec g(1, 16.0, 1024);
  const auto L = ScaleLadder::octaves(2.0, -1, 3, 8);
  const GroupNormParams gp{0.5, 2.0, 2.0, 1.5, GroupSpace::L};
  const auto F = separable(g, L, gp.s + 1 / gp.q);
  const double a = std::pow(kPi, 0.25);  // || e^{-x^2/2} ||_2
  const double span = std::log(L.scale(0) / L.scale(L.size() - 1));
  CHECK(group_norm(F, gp) == doctest::Approx(a * std::sqrt(span)).epsilon(1e-10));
  // q = infinity: sup_t t^{-s} |.| with the same profile gives || . ||_p t_max^{d/q} = || . ||_p.
  const GroupNormParams gi{0.5, 2.0, kInf, 1.5, GroupSpace::L};
  CHECK(group_norm(separable(g, L, 0.5), gi) == doctest::Approx(a).epsilon(1e-10));
}

TEST_CASE("P norm dominates the L norm at p = q") {
  GridSpec g(1, 16.0, 1024);
  const auto L = ScaleLadder::octaves(2.0, -1, 3, 4);
  const auto F = separable(g, L, 1.0);
  const double l = group_norm(F, {0.5, 2.0, 2.0, 2.0, GroupSpace::L});
  const double p = group_norm(F, {0.5, 2.0, 2.0, 2.0, GroupSpace::P});
  CHECK(p >= l);
}

TEST_CASE("left translation by a ladder-aligned dilation scales the L norm exactly") {
  GridSpec g(1, 32.0, 4096);
  const auto L = continuous_ladder(ScaleLadder::octaves(2.0, -3, 8, 8), g, Homogeneity::Homogeneous);
  const auto f = make_corpus("gaussian-derivatives", g).members[1].signal;
  const auto F = cwt(f, mexican_hat(g), L);
  const GroupNormParams gp{0.5, 2.0, 2.0, 1.5, GroupSpace::L};
  for (double r : {0.5, 2.0}) {
    const auto c = translation_scaling_check(F, gp, Side::Left, {1.0, 0.0}, r);
    CHECK_FALSE(c.is_bound);
    CHECK(c.predicted == doctest::Approx(std::pow(r, 0.5 - 0.5 - 0.5)));
    CHECK(c.ratio() == doctest::Approx(1.0).epsilon(0.02));
  }
}

TEST_CASE("ladder alignment is enforced") {
  const auto L = ScaleLadder::octaves(2.0, 0, 4, 8);
  CHECK(ladder_steps(L, 2.0) == 8);
  CHECK(ladder_steps(L, 0.5) == -8);
  CHECK_THROWS_AS(ladder_steps(L, 1.3), Error);
}

TEST_CASE("coorbit parameter pairing") {
  NormParams np;
  np.s = 0.5;
  np.p = 2;
  np.q = 2;
  np.scale = ScaleTag::B;
  np.variant = 1;
  auto gp = coorbit_params(np, 1, 1.5);
  CHECK(gp.space == GroupSpace::L);
  CHECK(gp.s == doctest::Approx(0.5 + 0.5 - 0.5));
  np.scale = ScaleTag::F;
  np.variant = 3;
  gp = coorbit_params(np, 1, 1.5);
  CHECK(gp.space == GroupSpace::T);
  CHECK(gp.s == doctest::Approx(1.0));
  np.variant = 2;
  gp = coorbit_params(np, 2, 2.5);
  CHECK(gp.space == GroupSpace::P);
  CHECK(gp.a == 2.5);
  CHECK(gp.s == doctest::Approx(0.5 + 1.0 - 1.0));
}

TEST_CASE("group norm parameter validation") {
  CHECK_THROWS_AS(validate(GroupNormParams{0.5, 0.0, 2.0, 1.5, GroupSpace::L}), Error);
  CHECK_THROWS_AS(group_space_from_string("Q"), Error);
  CHECK(group_space_from_string("P") == GroupSpace::P);
}
