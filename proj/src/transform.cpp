#include "besov/transform.hpp"

#include <algorithm>
#include <deque>
#include <cmath>
#include <sstream>

#include "besov/fourier.hpp"

namespace besov {

double DilationTag::exponent() const {
  switch (norm) {
    case Normalization::L1: return 1.0;
    case Normalization::L2: return 2.0;
    case Normalization::Lp:
      require(p > 0, ErrorKind::InvalidInput, "Lp dilation needs p > 0");
      return p;
  }
  return 1.0;
}

bool scale_resolvable(const GridSpec& grid, double t) {
  const double tol = 1e-12;
  return t >= 2 * grid.spacing() * (1 - tol) && t <= grid.extent / 2 * (1 + tol);
}

void require_resolvable(const GridSpec& grid, std::span<const double> scales) {
  std::ostringstream bad;
  int count = 0;
  for (double t : scales)
    if (!scale_resolvable(grid, t)) {
      if (count++ < 8) bad << (count > 1 ? ", " : "") << t;
    }
  if (count)
    fail(ErrorKind::OutOfResolvableRange, "scales outside [" + std::to_string(2 * grid.spacing()) + ", " +
                                              std::to_string(grid.extent / 2) + "]: " + bad.str() +
                                              (count > 8 ? " ..." : ""));
}

namespace {

std::vector<cplx> dilated_spectrum(const Kernel& g, double t) {
  return fourier::spectrum_at_scaled(g.grid, g.space, t);
}

std::vector<cplx> reflect(const GridSpec& grid, std::span<const cplx> v) {
  const int n = grid.n;
  std::vector<cplx> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [a, b] = grid.unravel(i);
    out[i] = v[grid.ravel((n - a) % n, grid.dim == 2 ? (n - b) % n : 0)];
  }
  return out;
}

double conv_factor(int d) { return std::pow(2 * kPi, d / 2.0); }

}  // namespace

Kernel dilate(const Kernel& g, double t, DilationTag tag) {
  require(std::isfinite(t) && t > 0, ErrorKind::InvalidInput, "dilation must be positive");
  if (t == 1.0) return g;
  require_resolvable(g.grid, std::span<const double>(&t, 1));
  const double p = tag.exponent();
  const double c = std::pow(t, g.grid.dim * (1.0 - 1.0 / p));
  Kernel out;
  out.grid = g.grid;
  out.freq = dilated_spectrum(g, t);
  for (auto& z : out.freq) z *= c;
  out.space = fourier::inverse(g.grid, out.freq);
  out.meta = g.meta;
  out.meta.eps = g.meta.eps / t;
  out.id = g.id + "@" + std::to_string(t);
  return out;
}

SampledSignal convolve(const SampledSignal& f, const Kernel& g) {
  require(f.grid == g.grid, ErrorKind::InvalidInput, "convolution grid mismatch");
  auto F = fourier::forward(f.grid, f.samples);
  const double c = conv_factor(f.grid.dim);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= c * g.freq[i];
  return SampledSignal(f.grid, fourier::inverse(f.grid, F));
}

SampledSignal convolve(const SampledSignal& f, const SampledSignal& g) {
  require(f.grid == g.grid, ErrorKind::InvalidInput, "convolution grid mismatch");
  auto F = fourier::forward(f.grid, f.samples);
  auto G = fourier::forward(g.grid, g.samples);
  const double c = conv_factor(f.grid.dim);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= c * G[i];
  return SampledSignal(f.grid, fourier::inverse(f.grid, F));
}

double edge_tail(const SampledSignal& f) {
  const auto& g = f.grid;
  double peak = 0, edge = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f.samples[i]);
    peak = std::max(peak, v);
    auto [a, b] = g.unravel(i);
    bool on_edge = a == 0 || a == g.n - 1;
    if (g.dim == 2) on_edge = on_edge || b == 0 || b == g.n - 1;
    if (on_edge) edge = std::max(edge, v);
  }
  return peak > 0 ? edge / peak : 0.0;
}

// ---------------------------------------------------------------------------

GroupFunction::GroupFunction(const GridSpec& g, const ScaleLadder& l)
    : grid(g), ladder(l), columns(l.size(), std::vector<cplx>(g.size())) {}

GroupFunction operator*(cplx c, const GroupFunction& F) {
  GroupFunction r = F;
  for (auto& col : r.columns)
    for (auto& z : col) z *= c;
  return r;
}

GroupFunction convolution_field(const SampledSignal& f, const Kernel& phi, const ScaleLadder& ladder) {
  require(f.grid == phi.grid, ErrorKind::InvalidInput, "grid mismatch");
  auto scales = ladder.scales();
  require_resolvable(f.grid, scales);
  GroupFunction out(f.grid, ladder);
  const auto F = fourier::forward(f.grid, f.samples);
  const double c = conv_factor(f.grid.dim);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(scales.size()); ++m) {
    auto G = dilated_spectrum(phi, scales[m]);
    for (std::size_t i = 0; i < G.size(); ++i) G[i] *= c * F[i];
    out.columns[m] = fourier::inverse(f.grid, G);
  }
  return out;
}

namespace {

std::vector<cplx> cwt_column(const GridSpec& grid, std::span<const cplx> g_reflected, std::span<const cplx> Fconj,
                             double t) {
  auto G = fourier::spectrum_at_scaled(grid, g_reflected, t);
  const double c = conv_factor(grid.dim) * std::pow(t, grid.dim / 2.0);
  for (std::size_t i = 0; i < G.size(); ++i) G[i] *= c * Fconj[i];
  return fourier::inverse(grid, G);
}

std::vector<cplx> conj_spectrum(const SampledSignal& f) {
  std::vector<cplx> fc(f.samples.size());
  for (std::size_t i = 0; i < fc.size(); ++i) fc[i] = std::conj(f.samples[i]);
  return fourier::forward(f.grid, fc);
}

}  // namespace

GroupFunction cwt(const SampledSignal& f, const Kernel& g, const ScaleLadder& ladder) {
  require(f.grid == g.grid, ErrorKind::InvalidInput, "grid mismatch");
  auto scales = ladder.scales();
  require_resolvable(f.grid, scales);
  GroupFunction out(f.grid, ladder);
  const auto gr = reflect(f.grid, g.space);
  const auto Fc = conj_spectrum(f);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(scales.size()); ++m)
    out.columns[m] = cwt_column(f.grid, gr, Fc, scales[m]);
  return out;
}

// ---------------------------------------------------------------------------
// Peetre maximal function

namespace {

// Weight (1 + |y|/t)^{-a} indexed by the absolute integer offset.
std::vector<double> weight_table(const GridSpec& grid, double t, double a) {
  const int n = grid.n;
  const double h = grid.spacing();
  if (grid.dim == 1) {
    std::vector<double> w(n);
    for (int m = 0; m < n; ++m) w[m] = std::pow(1.0 + m * h / t, -a);
    return w;
  }
  std::vector<double> w(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[std::size_t(i) * n + j] = std::pow(1.0 + h * std::hypot(double(i), double(j)) / t, -a);
  return w;
}

std::vector<double> peetre_1d(std::span<const double> v, const std::vector<double>& w, int n) {
  constexpr int B = 32;
  const int nb = (n + B - 1) / B;
  std::vector<double> bmax(nb, 0.0);
  for (int j = 0; j < n; ++j) bmax[j / B] = std::max(bmax[j / B], v[j]);
  const double gmax = *std::max_element(bmax.begin(), bmax.end());
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    double best = v[i];
    const int bi = i / B;
    for (int r = 0;; ++r) {
      if (r > 0 && gmax * w[(r - 1) * B] <= best) break;
      const int cand[2] = {bi - r, bi + r};
      bool any = false;
      for (int c = 0; c < (r == 0 ? 1 : 2); ++c) {
        const int b = cand[c];
        if (b < 0 || b >= nb) continue;
        any = true;
        const int s = b * B, e = std::min(n, s + B) - 1;
        const int dmin = (i >= s && i <= e) ? 0 : std::min(std::abs(i - s), std::abs(i - e));
        if (bmax[b] * w[dmin] <= best) continue;
        for (int j = s; j <= e; ++j) best = std::max(best, v[j] * w[std::abs(i - j)]);
      }
      if (!any) break;
    }
    out[i] = best;
  }
  return out;
}

// Branch and bound over a max-pyramid: level k stores the maximum of v over
// aligned 2^k x 2^k blocks. A block is only opened when its maximum times the
// weight at the smallest offset into the block can beat the current best.
std::vector<double> peetre_2d(std::span<const double> v, const std::vector<double>& w, int n) {
  std::vector<std::vector<double>> pyr{std::vector<double>(v.begin(), v.end())};
  for (int m = n; m > 1; m /= 2) {
    const auto& fine = pyr.back();
    const int c = m / 2;
    std::vector<double> coarse(std::size_t(c) * c);
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b)
        coarse[std::size_t(a) * c + b] =
            std::max({fine[std::size_t(2 * a) * m + 2 * b], fine[std::size_t(2 * a) * m + 2 * b + 1],
                      fine[std::size_t(2 * a + 1) * m + 2 * b], fine[std::size_t(2 * a + 1) * m + 2 * b + 1]});
    pyr.push_back(std::move(coarse));
  }
  const int top = int(pyr.size()) - 1;
  auto gap = [](int i, int s, int e) { return i < s ? s - i : (i > e ? i - e : 0); };
  std::vector<double> out(std::size_t(n) * n);
  std::vector<std::size_t> arg(out.size());
#pragma omp parallel
  {
    struct Node {
      int level, a, b;
    };
    std::vector<Node> stack;
#pragma omp for schedule(dynamic, 4)
    for (int i0 = 0; i0 < n; ++i0) {
      for (int i1 = 0; i1 < n; ++i1) {
        const std::size_t here = std::size_t(i0) * n + i1;
        double best = v[here];
        std::size_t best_at = here;
        // The maximiser moves slowly with x: seed the search with the product
        // at the left neighbour's maximiser (same row, so same thread).
        auto seed = [&](std::size_t y) {
          const int y0 = int(y / n), y1 = int(y % n);
          const double c = v[y] * w[std::size_t(std::abs(i0 - y0)) * n + std::abs(i1 - y1)];
          if (c > best) best = c, best_at = y;
        };
        if (i1 > 0) seed(arg[here - 1]);
        stack.assign(1, {top, 0, 0});
        while (!stack.empty()) {
          const Node nd = stack.back();
          stack.pop_back();
          const int side = 1 << nd.level, m = n >> nd.level;
          const int s0 = nd.a * side, s1 = nd.b * side;
          const double bound = pyr[nd.level][std::size_t(nd.a) * m + nd.b] *
                               w[std::size_t(gap(i0, s0, s0 + side - 1)) * n + gap(i1, s1, s1 + side - 1)];
          if (bound <= best) continue;
          if (nd.level == 0) {
            best = bound;
            best_at = std::size_t(s0) * n + s1;
            continue;
          }
          // Push children in increasing order of their bound so the most
          // promising block is opened first.
          const int half = side / 2, mc = n >> (nd.level - 1);
          std::pair<double, Node> ch[4];
          for (int c = 0; c < 4; ++c) {
            const Node k{nd.level - 1, 2 * nd.a + c / 2, 2 * nd.b + c % 2};
            const int c0 = k.a * half, c1 = k.b * half;
            ch[c] = {pyr[k.level][std::size_t(k.a) * mc + k.b] *
                         w[std::size_t(gap(i0, c0, c0 + half - 1)) * n + gap(i1, c1, c1 + half - 1)],
                     k};
          }
          std::sort(ch, ch + 4, [](const auto& x, const auto& y) { return x.first < y.first; });
          for (const auto& c : ch)
            if (c.first > best) stack.push_back(c.second);
        }
        out[here] = best;
        arg[here] = best_at;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> peetre_sup(std::span<const double> v, const GridSpec& grid, double t, double a) {
  require(v.size() == grid.size(), ErrorKind::InvalidInput, "size mismatch");
  require(t > 0 && a >= 0, ErrorKind::InvalidInput, "Peetre parameters need t > 0 and a >= 0");
  const auto w = weight_table(grid, t, a);
  return grid.dim == 1 ? peetre_1d(v, w, grid.n) : peetre_2d(v, w, grid.n);
}

GroupFunction peetre_maximal(const GroupFunction& F, double a) {
  GroupFunction out(F.grid, F.ladder);
  out.dropped = F.dropped;
  std::vector<double> absv(F.grid.size());
  for (std::size_t m = 0; m < F.nodes(); ++m) {
    for (std::size_t i = 0; i < absv.size(); ++i) absv[i] = std::abs(F.columns[m][i]);
    auto s = peetre_sup(absv, F.grid, F.scale(m), a);
    for (std::size_t i = 0; i < s.size(); ++i) out.columns[m][i] = s[i];
  }
  return out;
}

SampledSignal discrete_peetre(const SampledSignal& f, const Kernel& phi_k, double a, int k) {
  auto c = convolve(f, phi_k);
  std::vector<double> absv(c.size());
  for (std::size_t i = 0; i < absv.size(); ++i) absv[i] = std::abs(c.samples[i]);
  auto s = peetre_sup(absv, f.grid, std::ldexp(1.0, -k), a);
  return SampledSignal(f.grid, std::vector<cplx>(s.begin(), s.end()));
}

// ---------------------------------------------------------------------------
// Hardy-Littlewood maximal function and ball sums

SampledSignal hl_maximal(const SampledSignal& f) {
  const auto& g = f.grid;
  const int n = g.n;
  std::vector<cplx> out(f.size());
  if (g.dim == 1) {
    std::vector<double> S(n + 1, 0.0);
    for (int j = 0; j < n; ++j) S[j + 1] = S[j] + std::abs(f.samples[j]);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      double best = 0;
      for (int r = 0; r <= n; ++r) {
        const double sum = S[std::min(n, i + r + 1)] - S[std::max(0, i - r)];
        best = std::max(best, sum / (2 * r + 1));
      }
      out[i] = best;
    }
  } else {
    const std::size_t m = n + 1;
    std::vector<double> S(m * m, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        S[(a + 1) * m + b + 1] = std::abs(f.samples[std::size_t(a) * n + b]) + S[a * m + b + 1] +
                                 S[(a + 1) * m + b] - S[a * m + b];
#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1) {
        double best = 0;
        for (int r = 0; r <= n; ++r) {
          const int a0 = std::max(0, i0 - r), a1 = std::min(n, i0 + r + 1);
          const int b0 = std::max(0, i1 - r), b1 = std::min(n, i1 + r + 1);
          const double sum = S[a1 * m + b1] - S[a0 * m + b1] - S[a1 * m + b0] + S[a0 * m + b0];
          best = std::max(best, sum / (double(2 * r + 1) * (2 * r + 1)));
        }
        out[std::size_t(i0) * n + i1] = best;
      }
  }
  return SampledSignal(g, std::move(out));
}

namespace {
// Integer offsets m (per axis) inside the open ball of radius t.
double ball_radius2(const GridSpec& g, double t) {
  const double r = t / g.spacing();
  return r * r;
}
}  // namespace

std::vector<double> ball_sums(std::span<const double> v, const GridSpec& g, double t) {
  require(v.size() == g.size(), ErrorKind::InvalidInput, "size mismatch");
  const int n = g.n;
  const double R2 = ball_radius2(g, t);
  const double vol = g.cell_volume();
  std::vector<double> out(v.size());
  auto half_width = [&](long di) {
    long m = long(std::floor(std::sqrt(std::max(0.0, R2 - double(di * di)))));
    while (m >= 0 && double(di * di + m * m) >= R2) --m;
    while (double(di * di + (m + 1) * (m + 1)) < R2) ++m;
    return m;  // -1 when the row misses the ball
  };
  if (g.dim == 1) {
    std::vector<double> S(n + 1, 0.0);
    for (int j = 0; j < n; ++j) S[j + 1] = S[j] + v[j];
    const long R = half_width(0);
    for (int i = 0; i < n; ++i) {
      const long lo = std::max(0L, i - R), hi = std::min(long(n), i + R + 1);
      out[i] = R < 0 ? 0.0 : (S[hi] - S[lo]) * vol;
    }
    return out;
  }
  std::vector<double> S(std::size_t(n) * (n + 1), 0.0);  // row prefix sums
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) S[std::size_t(a) * (n + 1) + b + 1] = S[std::size_t(a) * (n + 1) + b] + v[std::size_t(a) * n + b];
  const long Rrow = half_width(0);
  std::vector<long> hw(2 * std::max(0L, Rrow) + 1);
  for (long di = -Rrow; di <= Rrow; ++di) hw[di + Rrow] = half_width(di);
#pragma omp parallel for schedule(static)
  for (int i0 = 0; i0 < n; ++i0)
    for (int i1 = 0; i1 < n; ++i1) {
      double acc = 0;
      for (long di = -Rrow; di <= Rrow; ++di) {
        const long r = i0 + di, m = hw[di + Rrow];
        if (r < 0 || r >= n || m < 0) continue;
        const long lo = std::max(0L, i1 - m), hi = std::min(long(n), i1 + m + 1);
        acc += S[std::size_t(r) * (n + 1) + hi] - S[std::size_t(r) * (n + 1) + lo];
      }
      out[std::size_t(i0) * n + i1] = acc * vol;
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y, double* residual) {
  const double n = double(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  const double slope = sxy / sxx;
  if (residual) {
    double r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (my + slope * (x[i] - mx));
      r += e * e;
    }
    *residual = std::sqrt(r / n);
  }
  return slope;
}

}  // namespace

DecayProfile cwt_decay_profile(const Kernel& phi, const Kernel& phi0, const ScaleLadder& ladder) {
  require(phi.grid == phi0.grid, ErrorKind::InvalidInput, "grid mismatch");
  const auto& grid = phi.grid;
  // Keep only resolvable nodes with t < 1.
  std::vector<double> ts;
  for (double t : ladder.scales())
    if (t < 1.0 && scale_resolvable(grid, t)) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  require(!ts.empty(), ErrorKind::Precondition, "no resolvable scale below 1");
  const double t_lo = ts.front(), t_hi = 10 * t_lo * (1 + 1e-12);
  std::vector<double> window;
  for (double t : ts)
    if (t <= t_hi) window.push_back(t);
  require(window.size() >= 4, ErrorKind::Precondition, "decay fit needs at least 4 ladder nodes in the smallest decade");

  // Build a ladder over exactly the fit window.
  const double lb = ladder.log_step();
  ScaleLadder fit = ladder;
  fit.m_max = int(std::lround(-std::log(window.front()) / lb));
  fit.m_min = int(std::lround(-std::log(window.back()) / lb));
  // One node at a time: only the sup of each column is kept, plus the
  // column at the largest scale for the spatial fit.
  DecayProfile out;
  std::vector<double> lx, ly;
  std::vector<cplx> col;
  for (std::size_t m = 0; m < fit.size(); ++m) {
    ScaleLadder one = fit;
    one.m_min = one.m_max = fit.node_index(m);
    auto W = cwt(phi0.signal(), phi, one);
    double s = 0;
    for (auto& z : W.columns[0]) s = std::max(s, std::abs(z));
    lx.push_back(std::log(W.scale(0)));
    ly.push_back(std::log(s));
    if (m == 0) col = std::move(W.columns[0]);
  }
  out.scale_slope = ls_slope(lx, ly, &out.residual);
  out.window = {window.front(), window.back()};

  // Spatial decay at the largest node of the window: fit the outer envelope
  // E(r) = max_{|x| >= r} |W(x,t)| against log(1 + r) until E reaches the
  // floating-point floor or the box edge.
  double peak = 0;
  for (auto& z : col) peak = std::max(peak, std::abs(z));
  std::vector<std::pair<double, double>> rv;
  for (std::size_t i = 0; i < col.size(); ++i) rv.emplace_back(grid.radius(i), std::abs(col[i]));
  std::sort(rv.begin(), rv.end());
  std::vector<double> env(rv.size());
  double run = 0;
  for (std::size_t i = rv.size(); i-- > 0;) env[i] = run = std::max(run, rv[i].second);
  std::vector<double> sx, sy;
  double next = 1.0;
  for (std::size_t i = 0; i < rv.size(); ++i) {
    const double r = rv[i].first;
    if (r > grid.extent / 2 || env[i] < 1e-12 * peak) break;
    if (r >= next) {
      sx.push_back(std::log1p(r));
      sy.push_back(std::log(env[i]));
      next = r * 1.05;
    }
  }
  out.spatial_order = sx.size() >= 3 ? -ls_slope(sx, sy, nullptr) : kInf;
  return out;
}

std::vector<double> weighted_chain_smoother(std::span<const double> g, double delta) {
  require(delta > 0, ErrorKind::InvalidInput, "delta must be positive");
  const std::size_t K = g.size();
  std::vector<double> G(K, 0.0);
  for (std::size_t l = 0; l < K; ++l)
    for (std::size_t k = 0; k < K; ++k) {
      const double dist = std::abs(double(k) - double(l));
      G[l] += std::exp2(-dist * delta) * g[k];
    }
  return G;
}

std::vector<SampledSignal> weighted_chain_smoother(std::span<const SampledSignal> g, double delta) {
  require(delta > 0, ErrorKind::InvalidInput, "delta must be positive");
  require(!g.empty(), ErrorKind::InvalidInput, "empty sequence");
  std::vector<SampledSignal> G(g.size(), SampledSignal(g[0].grid));
  for (std::size_t l = 0; l < g.size(); ++l)
    for (std::size_t k = 0; k < g.size(); ++k) {
      require(g[k].grid == g[0].grid, ErrorKind::InvalidInput, "grid mismatch");
      const double w = std::exp2(-std::abs(double(k) - double(l)) * delta);
      for (std::size_t i = 0; i < g[k].size(); ++i) G[l].samples[i] += w * g[k].samples[i];
    }
  return G;
}

// ---------------------------------------------------------------------------

// Sliding maximum of v over the open ball of radius t (clipped to the box).
std::vector<double> ball_max(std::span<const double> v, const GridSpec& g, double t) {
  const int n = g.n;
  const double r = t / g.spacing(), R2 = r * r;
  auto half_width = [&](long di) {
    long m = long(std::floor(std::sqrt(std::max(0.0, R2 - double(di * di)))));
    while (m >= 0 && double(di * di + m * m) >= R2) --m;
    while (double(di * di + (m + 1) * (m + 1)) < R2) ++m;
    return m;
  };
  auto slide = [n](const double* row, long m, double* out) {
    // out[i] = max row[i-m .. i+m] (clipped) via a monotone deque
    std::deque<int> dq;
    int hi = -1;
    for (int i = 0; i < n; ++i) {
      while (hi < std::min<long>(n - 1, i + m)) {
        ++hi;
        while (!dq.empty() && row[dq.back()] <= row[hi]) dq.pop_back();
        dq.push_back(hi);
      }
      while (dq.front() < i - m) dq.pop_front();
      out[i] = row[dq.front()];
    }
  };
  std::vector<double> out(v.size(), 0.0);
  if (g.dim == 1) {
    slide(v.data(), half_width(0), out.data());
    return out;
  }
  const long Rrow = half_width(0);
  std::vector<double> tmp(n);
  for (long di = -Rrow; di <= Rrow; ++di) {
    const long m = half_width(di);
    if (m < 0) continue;
    for (int r0 = 0; r0 < n; ++r0) {
      const long src = r0 + di;
      if (src < 0 || src >= n) continue;
      slide(v.data() + std::size_t(src) * n, m, tmp.data());
      for (int c = 0; c < n; ++c) out[std::size_t(r0) * n + c] = std::max(out[std::size_t(r0) * n + c], tmp[c]);
    }
  }
  return out;
}

namespace reference {

std::vector<double> peetre_sup(std::span<const double> v, const GridSpec& grid, double t, double a) {
  require(v.size() == grid.size(), ErrorKind::InvalidInput, "size mismatch");
  const auto w = weight_table(grid, t, a);
  const int n = grid.n;
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [i0, i1] = grid.unravel(i);
    double best = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      auto [j0, j1] = grid.unravel(j);
      const double wt = grid.dim == 1 ? w[std::abs(i0 - j0)] : w[std::size_t(std::abs(i0 - j0)) * n + std::abs(i1 - j1)];
      best = std::max(best, v[j] * wt);
    }
    out[i] = best;
  }
  return out;
}

SampledSignal hl_maximal(const SampledSignal& f) {
  const auto& g = f.grid;
  const int n = g.n;
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto [i0, i1] = g.unravel(i);
    double best = 0;
    for (int r = 0; r <= n; ++r) {
      double sum = 0;
      for (int a = i0 - r; a <= i0 + r; ++a) {
        if (a < 0 || a >= n) continue;
        if (g.dim == 1) {
          sum += std::abs(f.samples[a]);
          continue;
        }
        for (int b = i1 - r; b <= i1 + r; ++b)
          if (b >= 0 && b < n) sum += std::abs(f.samples[std::size_t(a) * n + b]);
      }
      best = std::max(best, sum / std::pow(2 * r + 1, g.dim));
    }
    out[i] = best;
  }
  return SampledSignal(g, std::move(out));
}

std::vector<double> ball_sums(std::span<const double> v, const GridSpec& g, double t) {
  const double R2 = ball_radius2(g, t);
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [i0, i1] = g.unravel(i);
    double acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      auto [j0, j1] = g.unravel(j);
      const long d0 = j0 - i0, d1 = g.dim == 2 ? j1 - i1 : 0;
      if (double(d0 * d0 + d1 * d1) < R2) acc += v[j];
    }
    out[i] = acc * g.cell_volume();
  }
  return out;
}

GroupFunction cwt(const SampledSignal& f, const Kernel& g, const ScaleLadder& ladder) {
  require(f.grid == g.grid, ErrorKind::InvalidInput, "grid mismatch");
  auto scales = ladder.scales();
  require_resolvable(f.grid, scales);
  GroupFunction out(f.grid, ladder);
  const auto gr = reflect(f.grid, g.space);
  const auto Fc = conj_spectrum(f);
  for (std::size_t m = 0; m < scales.size(); ++m) out.columns[m] = cwt_column(f.grid, gr, Fc, scales[m]);
  return out;
}

}  // namespace reference

}  // namespace besov
