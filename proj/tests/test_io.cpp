#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "besov/corpus.hpp"
#include "besov/io.hpp"

using namespace besov;

TEST_CASE("shortest decimal form round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, std::ldexp(1.0, -1074)}) {
    CHECK(std::strtod(io::num(v).c_str(), nullptr) == v);
  }
  CHECK(io::num(0.5) == "0.5");
}

TEST_CASE("signal CSV round trip in one and two dimensions") {
  for (int d : {1, 2}) {
    GridSpec g(d, 4.0, d == 1 ? 64 : 16);
    auto f = SampledSignal::from_function(g, [](const Point& x) { return std::exp(-x[0] * x[0] - 0.3 * x[1]); });
    f.samples[3] = cplx(0.25, -1.0 / 3.0);
    const auto back = io::parse_signal_csv(io::signal_csv(f));
    CHECK(back.grid == g);
    REQUIRE(back.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.samples[i] == f.samples[i]);
  }
}

TEST_CASE("malformed signal tables are rejected") {
  auto kind = [](const std::string& text) {
    try {
      io::parse_signal_csv(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Truncation;  // sentinel: nothing thrown
  };
  // spacing 1 does not match h = 2X/n for X = 2, n = 3
  CHECK(kind("x,re,im\n-2,0,0\n-1,0,0\n0.5,0,0\n") == ErrorKind::InvalidInput);
  // non-uniform rows
  CHECK(kind("x,re,im\n-2,0,0\n-1,0,0\n0.5,0,0\n1,0,0\n") == ErrorKind::InvalidInput);
  CHECK(kind("x,re,im\n-1,0\n0,0,0\n") == ErrorKind::InvalidInput);
  CHECK(kind("x,re,im\n-1,a,0\n0,0,0\n") == ErrorKind::InvalidInput);
  CHECK(kind("") == ErrorKind::InvalidInput);
}

TEST_CASE("kernel archive round trip keeps samples and metadata") {
  GridSpec g(1, 16.0, 512);
  const auto k = mexican_hat(g);
  const auto dir = std::filesystem::temp_directory_path() / "besov_test_io";
  std::filesystem::create_directories(dir);
  const std::string stem = (dir / "mexhat").string();
  io::write_kernel_archive(stem, k);
  const auto back = io::read_kernel_archive(stem);
  CHECK(back.grid == g);
  CHECK(back.id == k.id);
  CHECK(back.meta.L == k.meta.L);
  CHECK(back.meta.role == k.meta.role);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(back.space[i] == k.space[i]);
    CHECK(back.freq[i] == k.freq[i]);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("grid and ladder JSON") {
  GridSpec g(2, 12.0, 512);
  CHECK(io::grid_from_json(io::to_json(g)) == g);
  const auto l = ScaleLadder::octaves(2.0, -3, 5, 4);
  const auto lb = io::ladder_from_json(io::to_json(l));
  CHECK(lb.size() == l.size());
  CHECK(lb.scale(0) == doctest::Approx(l.scale(0)));
  CHECK_THROWS_AS(io::grid_from_json(io::json{{"extent", 4.0}, {"n", 100}}), Error);
  CHECK_THROWS_AS(io::grid_from_json(io::json{{"n", 64}}), std::exception);
}
