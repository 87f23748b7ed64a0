#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "besov/corpus.hpp"
#include "besov/harness.hpp"

using namespace besov;
using harness::json;

namespace {

ErrorKind config_kind(const json& j) {
  try {
    harness::parse_config(j);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Truncation;  // sentinel: accepted
}

}  // namespace

TEST_CASE("config parsing validates fields") {
  CHECK(config_kind({{"experiment", "norms"}, {"colour", 3}}) == ErrorKind::Configuration);
  CHECK(config_kind({{"experiment", "nonsense"}}) == ErrorKind::Configuration);
  CHECK(config_kind({{"experiment", "norms"}, {"mode", "calculator"}}) == ErrorKind::Configuration);
  CHECK(config_kind({{"experiment", "norms"}, {"grid", {{"extent", 8.0}, {"n", 100}}}}) == ErrorKind::Configuration);
  CHECK(config_kind({{"experiment", "norms"}, {"criterion", 14}}) == ErrorKind::Configuration);
  CHECK(config_kind(json::array()) == ErrorKind::Configuration);

  const auto c = harness::parse_config({{"experiment", "norms"}, {"grid", {{"dim", 2}, {"extent", 8.0}, {"n", 64}}}});
  CHECK(c.mode == "report");
  CHECK(c.grid == GridSpec(2, 8.0, 64));
  CHECK(c.lattice.dim == 2);
  // the JSON form parses back to the same config
  const auto again = harness::parse_config(harness::to_json(c));
  CHECK(again.grid == c.grid);
  CHECK(again.mode == c.mode);
}

TEST_CASE("experiment ids") {
  const auto& ids = harness::experiment_ids();
  for (const char* e : {"norms", "equivalence", "decay", "group-scaling", "coorbit", "frames", "wavelets-verify",
                        "propwiener"})
    CHECK(std::find(ids.begin(), ids.end(), e) != ids.end());
}

TEST_CASE("corpus selectors") {
  GridSpec g(1, 32.0, 4096);
  CHECK_THROWS_AS(make_corpus("", g), Error);
  CHECK_THROWS_AS(make_corpus("no-such-family", g), Error);
  const auto fam = make_corpus("gaussian-family", g);
  REQUIRE(fam.members.size() == 4);
  // width w: the L2 norm is (pi w^2)^{1/4}
  const double w[] = {0.5, 1.0, 2.0, 4.0};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(lp_norm(fam.members[i].signal, 2.0) == doctest::Approx(std::pow(kPi * w[i] * w[i], 0.25)).epsilon(1e-10));
  for (const auto& m : fam.members) CHECK(boundary_tail(m.signal) < kCorpusTailBound);
  // the widest member does not fit a small box
  CHECK_THROWS_AS(make_corpus("gaussian-family", GridSpec(1, 16.0, 1024)), Error);
}

TEST_CASE("runs are deterministic") {
  const auto c = harness::parse_config({{"experiment", "frames"},
                                        {"mode", "calculator"},
                                        {"params", {{"cases", {{3, 1, 2, 2, 0, -1.5, 1.5}}}}}});
  const auto a = harness::run(c), b = harness::run(c);
  CHECK(a.summary.dump() == b.summary.dump());
  CHECK(a.passed());
}

TEST_CASE("zero signal report") {
  const auto c = harness::parse_config({{"experiment", "norms"},
                                        {"corpus", "zero"},
                                        {"grid", {{"extent", 16.0}, {"n", 1024}}},
                                        {"ladder", {{"j_min", -3}, {"j_max", 6}, {"nu", 4}}}});
  const auto r = harness::run(c);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].pass);
  CHECK(harness::format_check(r.checks[0]).rfind("PASS", 0) == 0);
}
