#include "besov/corpus.hpp"

#include <cmath>

#include "besov/splines.hpp"

namespace besov {

namespace {

double sq(const Point& x, int dim) { return x[0] * x[0] + (dim == 2 ? x[1] * x[1] : 0.0); }

// Probabilists' Hermite polynomial He_k.
double hermite(int k, double x) {
  double a = 1, b = x;
  if (k == 0) return a;
  for (int j = 1; j < k; ++j) {
    double c = x * b - j * a;
    a = b;
    b = c;
  }
  return b;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void add(Corpus& c, std::string name, std::string formula, SampledSignal s) {
  c.members.push_back({std::move(name), std::move(formula), std::move(s)});
}

template <class Fn>
SampledSignal sample(const GridSpec& g, Fn&& fn) {
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(g.position(i));
  return SampledSignal(g, std::move(v));
}

const char* kSelectors[] = {"gaussian-family", "gaussian-derivatives", "bsplines",           "chirps",
                            "dilation-family", "translation-family",   "dilation-translation", "zero"};

}  // namespace

std::vector<std::string> corpus_selectors() { return {std::begin(kSelectors), std::end(kSelectors)}; }

double boundary_tail(const SampledSignal& f) {
  const auto& g = f.grid;
  const double edge = 0.95 * g.extent;
  double peak = 0, tail = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::abs(f.samples[i]);
    peak = std::max(peak, a);
    Point p = g.position(i);
    double r = std::abs(p[0]);
    if (g.dim == 2) r = std::max(r, std::abs(p[1]));
    if (r >= edge) tail = std::max(tail, a);
  }
  return peak > 0 ? tail / peak : 0.0;
}

Corpus make_corpus(const std::string& selector, const GridSpec& grid) {
  require(!selector.empty(), ErrorKind::InvalidInput, "corpus selector is empty");
  const int d = grid.dim;
  Corpus c;
  c.selector = selector;

  if (selector == "gaussian-family") {
    for (double w : {0.5, 1.0, 2.0, 4.0})
      add(c, "gauss_w" + fmt(w), "exp(-|x|^2/(2*" + fmt(w * w) + "))",
          sample(grid, [&](Point x) { return cplx(std::exp(-sq(x, d) / (2 * w * w))); }));
  } else if (selector == "gaussian-derivatives") {
    for (int k = 1; k <= 4; ++k)
      add(c, "dgauss_" + std::to_string(k), "(-1)^k He_k(x1) exp(-|x|^2/2), k=" + std::to_string(k),
          sample(grid, [&](Point x) {
            return cplx((k % 2 ? -1.0 : 1.0) * hermite(k, x[0]) * std::exp(-sq(x, d) / 2));
          }));
  } else if (selector == "bsplines") {
    for (int m = 2; m <= 5; ++m) {
      PiecewisePoly N = bspline_poly(m);
      const double h = m / 2.0;
      add(c, "bspline_" + std::to_string(m), "N_m(x + m/2) (tensor), m=" + std::to_string(m),
          sample(grid, [&](Point x) { return cplx(N(x[0] + h) * (d == 2 ? N(x[1] + h) : 1.0)); }));
    }
  } else if (selector == "chirps") {
    for (double w : {2.0, 4.0, 8.0})
      add(c, "modgauss_" + fmt(w), "exp(-|x|^2/2) cos(" + fmt(w) + " x1)",
          sample(grid, [&](Point x) { return cplx(std::exp(-sq(x, d) / 2) * std::cos(w * x[0])); }));
    add(c, "chirp", "exp(-|x|^2/4 + i x1^2/2)",
        sample(grid, [&](Point x) { return std::exp(cplx(-sq(x, d) / 4, x[0] * x[0] / 2)); }));
  } else if (selector == "dilation-family") {
    for (int k = -2; k <= 3; ++k) {
      const double lam = std::pow(2.0, k / 2.0);
      add(c, "gauss_dil_" + fmt(lam), "exp(-|" + fmt(lam) + " x|^2/2)",
          sample(grid, [&](Point x) { return cplx(std::exp(-lam * lam * sq(x, d) / 2)); }));
    }
  } else if (selector == "translation-family") {
    for (double z : {-3.0, -1.5, 0.0, 1.5, 3.0, 4.5})
      add(c, "gauss_shift_" + fmt(z), "exp(-|x - (" + fmt(z) + ",0)|^2/2)", sample(grid, [&](Point x) {
            Point y{x[0] - z, x[1]};
            return cplx(std::exp(-sq(y, d) / 2));
          }));
  } else if (selector == "dilation-translation") {
    for (double lam : {0.5, 1.0, 2.0})
      for (double z : {0.0, 2.0})
        add(c, "gauss_" + fmt(lam) + "_" + fmt(z), "exp(-|" + fmt(lam) + "(x - (" + fmt(z) + ",0))|^2/2)",
            sample(grid, [&](Point x) {
              Point y{x[0] - z, x[1]};
              return cplx(std::exp(-lam * lam * sq(y, d) / 2));
            }));
  } else if (selector == "zero") {
    add(c, "zero", "0", SampledSignal(grid));
  } else {
    fail(ErrorKind::InvalidInput, "unknown corpus selector '" + selector + "'");
  }

  for (const auto& m : c.members) {
    const double tail = boundary_tail(m.signal);
    require(tail < kCorpusTailBound, ErrorKind::RangeTruncation,
            "corpus member " + m.name + " has boundary tail " + fmt(tail) + " on a box of half-width " +
                fmt(grid.extent));
  }
  return c;
}

Kernel mexican_hat(const GridSpec& grid) {
  const int d = grid.dim;
  return kernel_from_function(
      grid, [&](Point x) { return (d - sq(x, d)) * std::exp(-sq(x, d) / 2); }, KernelRole::Wavelet, "mexhat");
}

Kernel gaussian_kernel(const GridSpec& grid, double width, KernelRole role) {
  const int d = grid.dim;
  return kernel_from_function(
      grid, [&](Point x) { return std::exp(-sq(x, d) / (2 * width * width)); }, role, "gauss_w" + fmt(width));
}

KernelPair gaussian_derivative_pair(const GridSpec& grid, int L) {
  require(L >= 1 && L <= 6, ErrorKind::InvalidInput, "derivative order must lie in 1..6");
  const int d = grid.dim;
  KernelPair out;
  out.phi0 = gaussian_kernel(grid);
  out.phi = kernel_from_function(
      grid, [&](Point x) { return (L % 2 ? -1.0 : 1.0) * hermite(L, x[0]) * std::exp(-sq(x, d) / 2); },
      KernelRole::Phi, "dgauss_" + std::to_string(L));
  return out;
}

KernelPair gaussian_local_means(const GridSpec& grid, int N, double width) {
  Kernel g = gaussian_kernel(grid, width);
  return build_local_means(g, g, N);
}

}  // namespace besov
