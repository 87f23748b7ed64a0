#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "besov/grid.hpp"

using namespace besov;

namespace {

double gauss(Point x, int d, double w = 1.0) {
  const double r2 = x[0] * x[0] + (d == 2 ? x[1] * x[1] : 0.0);
  return std::exp(-r2 / (2 * w * w));
}

}  // namespace

TEST_CASE("grid geometry") {
  GridSpec g(1, 8.0, 64);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.coord(0) == doctest::Approx(-8.0));
  CHECK(g.coord(32) == doctest::Approx(0.0));
  CHECK(g.freq(32) == doctest::Approx(0.0));
  CHECK(g.nyquist() == doctest::Approx(kPi / 0.25));

  GridSpec g2(2, 4.0, 32);
  CHECK(g2.size() == 1024);
  const auto idx = g2.ravel(3, 17);
  const auto ij = g2.unravel(idx);
  CHECK(ij[0] == 3);
  CHECK(ij[1] == 17);
  CHECK(g2.position(idx)[0] == doctest::Approx(g2.coord(3)));
  CHECK(g2.position(idx)[1] == doctest::Approx(g2.coord(17)));
  CHECK(g2.cell_volume() == doctest::Approx(0.25 * 0.25));
}

TEST_CASE("grid validation names the constraint") {
  CHECK_THROWS_AS(GridSpec(1, 8.0, 100), Error);
  CHECK_THROWS_AS(GridSpec(3, 8.0, 64), Error);
  CHECK_THROWS_AS(GridSpec(1, -1.0, 64), Error);
  try {
    GridSpec(1, 8.0, 100);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}

TEST_CASE("Lp norms of a Gaussian match the closed form") {
  // || exp(-|x|^2/2) ||_p^p = (2 pi / p)^{d/2}
  for (int d : {1, 2}) {
    GridSpec g(d, 12.0, d == 1 ? 2048 : 256);
    auto f = SampledSignal::from_function(g, [&](Point x) { return gauss(x, d); });
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const double expect = std::pow(std::pow(2 * kPi / p, d / 2.0), 1 / p);
      CHECK(lp_norm(f, p) == doctest::Approx(expect).epsilon(1e-9));
    }
    CHECK(lp_norm(f, kInf) == doctest::Approx(1.0));
  }
}

TEST_CASE("pairwise sum agrees with a long-double accumulation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> v(100003);
  for (auto& x : v) x = u(rng);
  long double acc = 0;
  for (double x : v) acc += x;
  CHECK(pairwise_sum(v) == doctest::Approx(double(acc)).epsilon(1e-12));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("scale ladder nodes and log weights") {
  const auto L = ScaleLadder::octaves(2.0, -1, 2, 4);
  CHECK(L.m_min == -4);
  CHECK(L.m_max == 8);
  CHECK(L.size() == 13);
  CHECK(L.scale(0) == doctest::Approx(2.0));
  CHECK(L.scale(12) == doctest::Approx(0.25));
  const auto w = L.log_weights();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  CHECK(total == doctest::Approx(std::log(8.0)));
  CHECK_THROWS_AS(validate(ScaleLadder{0.5, 0, 3, 8}), Error);
}

TEST_CASE("scale integral integrates powers exactly on the log grid") {
  // int_{1/4}^{2} t^{1.5} t^{-1.5} dt/t = ln 8
  const auto L = ScaleLadder::octaves(2.0, -1, 2, 8);
  std::vector<double> v;
  for (double t : L.scales()) v.push_back(std::pow(t, 1.5));
  CHECK(scale_integral(v, L, 1.5) == doctest::Approx(std::log(8.0)).epsilon(1e-12));
  // q = infinity: sup_t t^{-s} v(t)
  CHECK(scale_aggregate(v, L, 1.5, kInf) == doctest::Approx(1.0));
}

TEST_CASE("mixed norms") {
  GridSpec g(1, 8.0, 256);
  std::vector<SampledSignal> rows;
  for (double w : {0.5, 1.0, 2.0}) rows.push_back(SampledSignal::from_function(g, [&](Point x) { return gauss(x, 1, w); }));
  // p = q: both orders coincide with the l_p sum of L_p norms.
  double acc = 0;
  for (const auto& r : rows) acc += std::pow(lp_norm(r, 2.0), 2.0);
  CHECK(lq_of_lp(rows, {2.0, 2.0}) == doctest::Approx(std::sqrt(acc)));
  CHECK(lp_of_lq(rows, {2.0, 2.0}) == doctest::Approx(std::sqrt(acc)));
  // Minkowski: for p >= q the L_p norm of the l_q sum is the smaller one.
  CHECK(lp_of_lq(rows, {3.0, 1.0}) <= lq_of_lp(rows, {3.0, 1.0}) * (1 + 1e-12));
}

TEST_CASE("resample matches the dilated and shifted closed form") {
  GridSpec g(1, 16.0, 1024);
  auto f = SampledSignal::from_function(g, [](Point x) { return gauss(x, 1); });
  const double lam = 2.0;
  const Point z{1.5, 0};
  auto r = resample(f, z, lam);
  double err = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = g.position(i)[0];
    err = std::max(err, std::abs(r.samples[i] - std::exp(-lam * lam * (x - 1.5) * (x - 1.5) / 2)));
  }
  CHECK(err < 1e-10);
}
