// Serial reference kernels against the OpenMP versions. Prints wall time,
// speed-up and the largest absolute difference for each pair.
//
//   bench_kernels [--reps N]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "besov/corpus.hpp"
#include "besov/transform.hpp"

using namespace besov;

namespace {

int reps = 3;

double seconds(const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

void row(const std::string& name, double t_ref, double t_par, double diff) {
  std::printf("%-28s %10.4f %10.4f %8.2fx %12.3e\n", name.c_str(), t_ref, t_par, t_ref / t_par, diff);
}

std::vector<double> field(const GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = g.position(i);
    v[i] = std::exp(-(x[0] * x[0] + x[1] * x[1]) / 8) * (0.5 + u(rng));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--reps") && i + 1 < argc) reps = std::max(1, std::atoi(argv[++i]));

  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
  std::printf("%-28s %10s %10s %9s %12s\n", "kernel", "serial s", "openmp s", "speed-up", "max |diff|");

  {
    GridSpec g(1, 32.0, 4096);
    const auto v = field(g, 1);
    std::vector<double> a, b;
    const double tr = seconds([&] { a = reference::peetre_sup(v, g, 0.5, 1.5); });
    const double tp = seconds([&] { b = peetre_sup(v, g, 0.5, 1.5); });
    row("peetre_sup 1-D n=4096", tr, tp, max_diff(a, b));
  }
  {
    GridSpec g(2, 8.0, 128);
    const auto v = field(g, 2);
    std::vector<double> a, b;
    const double tr = seconds([&] { a = reference::peetre_sup(v, g, 0.5, 2.5); });
    const double tp = seconds([&] { b = peetre_sup(v, g, 0.5, 2.5); });
    row("peetre_sup 2-D n=128^2", tr, tp, max_diff(a, b));
  }
  {
    GridSpec g(2, 8.0, 64);
    const auto v = field(g, 3);
    const SampledSignal f(g, std::vector<cplx>(v.begin(), v.end()));
    SampledSignal a, b;
    const double tr = seconds([&] { a = reference::hl_maximal(f); });
    const double tp = seconds([&] { b = hl_maximal(f); });
    row("hl_maximal 2-D n=64^2", tr, tp, max_diff(a.samples, b.samples));
  }
  {
    GridSpec g(2, 8.0, 128);
    const auto v = field(g, 4);
    std::vector<double> a, b;
    const double tr = seconds([&] { a = reference::ball_sums(v, g, 0.75); });
    const double tp = seconds([&] { b = ball_sums(v, g, 0.75); });
    row("ball_sums 2-D n=128^2", tr, tp, max_diff(a, b));
  }
  {
    GridSpec g(1, 32.0, 8192);
    const auto f = make_corpus("gaussian-derivatives", g).members[1].signal;
    const auto k = mexican_hat(g);
    const auto L = ScaleLadder::octaves(2.0, -3, 5, 8);
    const double tr = seconds([&] { (void)reference::cwt(f, k, L); });
    const double tp = seconds([&] { (void)cwt(f, k, L); });
    const auto W = cwt(f, k, L), R = reference::cwt(f, k, L);
    double e = 0;
    for (std::size_t m = 0; m < W.nodes(); ++m) e = std::max(e, max_diff(W.columns[m], R.columns[m]));
    row("cwt 1-D n=8192", tr, tp, e);
  }
  return 0;
}
