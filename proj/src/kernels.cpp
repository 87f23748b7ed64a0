#include "besov/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "besov/fourier.hpp"

namespace besov {

const char* to_string(KernelRole role) {
  switch (role) {
    case KernelRole::Phi0: return "phi0";
    case KernelRole::Phi: return "phi";
    case KernelRole::Wavelet: return "wavelet";
  }
  return "phi";
}

KernelRole kernel_role_from_string(const std::string& s) {
  if (s == "phi0") return KernelRole::Phi0;
  if (s == "phi") return KernelRole::Phi;
  if (s == "wavelet") return KernelRole::Wavelet;
  fail(ErrorKind::InvalidInput, "unknown kernel role '" + s + "'");
}

namespace {

std::size_t origin_index(const GridSpec& g) { return g.ravel(g.n / 2, g.n / 2); }

double max_abs(std::span<const cplx> v) {
  double m = 0;
  for (auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

double monomial(const Point& x, const std::array<int, 2>& a) {
  double r = 1;
  for (int i = 0; i < a[0]; ++i) r *= x[0];
  for (int i = 0; i < a[1]; ++i) r *= x[1];
  return r;
}

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

}  // namespace

Kernel make_kernel_from_space(const GridSpec& grid, std::vector<cplx> space, KernelRole role, std::string id) {
  SampledSignal check(grid, space);
  require(check.all_finite(), ErrorKind::InvalidInput, "kernel samples must be finite");
  Kernel k;
  k.grid = grid;
  k.freq = fourier::forward(grid, space);
  k.space = std::move(space);
  k.id = std::move(id);
  k.meta = measure_meta(k, role);
  return k;
}

Kernel make_kernel_from_freq(const GridSpec& grid, std::vector<cplx> freq, KernelRole role, std::string id) {
  SampledSignal check(grid, freq);
  require(check.all_finite(), ErrorKind::InvalidInput, "kernel spectrum must be finite");
  Kernel k;
  k.grid = grid;
  k.space = fourier::inverse(grid, freq);
  k.freq = std::move(freq);
  k.id = std::move(id);
  k.meta = measure_meta(k, role);
  return k;
}

double consistency_error(const Kernel& g) {
  auto f = fourier::forward(g.grid, g.space);
  double scale = std::max(max_abs(g.freq), 1e-300), err = 0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(f[i] - g.freq[i]));
  return err / scale;
}

KernelMeta measure_meta(const Kernel& g, KernelRole role) {
  KernelMeta m;
  m.role = role;
  m.L = first_nonvanishing_moment(g);
  m.N_dec = 0;
  for (int N = 1; N <= kMaxDecayOrder; ++N) {
    if (!check_decay(g, N).ok) break;
    m.N_dec = N;
  }
  m.K = 0;
  for (int K = 0; K <= int(kMaxSmoothnessK); ++K) {
    if (!check_smoothness_weight(g, K, 0).ok) break;
    m.K = K;
  }
  m.eps = measure_band(g, role);
  return m;
}

// ---------------------------------------------------------------------------

double bump_phi0(double r) { return 1.0 - smooth_step(r - 1.0); }
double bump_phi(double r) { return bump_phi0(r) - bump_phi0(2.0 * r); }

std::vector<double> PartitionSystem::sum() const {
  std::vector<double> s(grid.size(), 0.0);
  for (auto& m : members)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += m[i];
  return s;
}

Kernel PartitionSystem::member_kernel(std::size_t i) const {
  require(i < members.size(), ErrorKind::InvalidInput, "partition member out of range");
  const bool base = !homogeneous && i == 0;
  std::vector<cplx> f(members[i].begin(), members[i].end());
  return make_kernel_from_freq(grid, std::move(f), base ? KernelRole::Phi0 : KernelRole::Phi,
                               (homogeneous ? "hpart_j" : "part_j") + std::to_string(index_to_j(i)));
}

namespace {
void check_partition_range(const GridSpec& grid, int j_max) {
  // The top member is supported up to 2^{j_max+1}; the full frequency width of
  // the box is 2 pi / h.
  require(std::ldexp(1.0, j_max + 1) <= grid.freq_extent() * (1 + 1e-12), ErrorKind::RangeTruncation,
          "frequency extent " + std::to_string(grid.freq_extent()) + " < 2^(j_max+1) for j_max = " +
              std::to_string(j_max));
}
}  // namespace

PartitionSystem build_inhomogeneous_partition(const GridSpec& grid, int j_max) {
  validate(grid);
  if (j_max < 0) j_max = int(std::floor(std::log2(grid.freq_extent() * (1 + 1e-12)))) - 1;
  check_partition_range(grid, j_max);
  PartitionSystem P;
  P.grid = grid;
  P.homogeneous = false;
  P.j_min = 0;
  P.j_max = j_max;
  for (int j = 0; j <= j_max; ++j) {
    std::vector<double> m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double r = grid.freq_radius(i);
      m[i] = j == 0 ? bump_phi0(r) : bump_phi(std::ldexp(r, -j));
    }
    P.members.push_back(std::move(m));
  }
  return P;
}

PartitionSystem build_homogeneous_partition(const GridSpec& grid, int j_min, int j_max) {
  validate(grid);
  require(j_min <= j_max, ErrorKind::InvalidInput, "empty partition range");
  check_partition_range(grid, j_max);
  PartitionSystem P;
  P.grid = grid;
  P.homogeneous = true;
  P.j_min = j_min;
  P.j_max = j_max;
  for (int j = j_min; j <= j_max; ++j) {
    std::vector<double> m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = bump_phi(std::ldexp(grid.freq_radius(i), -j));
    P.members.push_back(std::move(m));
  }
  return P;
}

// ---------------------------------------------------------------------------

KernelPair build_local_means(const Kernel& k0, const Kernel& k_up, int N) {
  require(N >= 1, ErrorKind::InvalidInput, "N must be positive");
  require(k0.grid == k_up.grid, ErrorKind::InvalidInput, "kernel grids differ");
  const auto& g = k0.grid;
  const std::size_t o = origin_index(g);
  require(std::abs(k0.freq[o]) > 1e-6 && std::abs(k_up.freq[o]) > 1e-6, ErrorKind::Precondition,
          "local means need non-vanishing Fourier transforms at the origin");
  // Spectral samples at round-off level are zeroed first: |xi|^{2N} would
  // otherwise amplify them into white noise that destroys the moments.
  const double floor = 1e-14 * max_abs(k_up.freq);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r2 = g.freq_radius(i) * g.freq_radius(i);
    f[i] = std::abs(k_up.freq[i]) > floor ? std::pow(-r2, N) * k_up.freq[i] : cplx(0);
  }
  KernelPair out;
  out.phi0 = k0;
  out.phi0.meta = measure_meta(k0, KernelRole::Phi0);
  out.phi = make_kernel_from_freq(g, std::move(f), KernelRole::Phi, "lap" + std::to_string(N) + "_" + k_up.id);
  require(out.phi.meta.L >= 2 * N, ErrorKind::InvalidKernel,
          "Laplacian kernel lost its vanishing moments (measured L = " + std::to_string(out.phi.meta.L) + ")");
  return out;
}

namespace {

// Central finite-difference estimate of the k-th derivative at the origin
// along one axis of the frequency grid.
double origin_derivative(const Kernel& k, int order, int axis) {
  const auto& g = k.grid;
  const int c = g.n / 2;
  const int step = (order % 2) ? 2 : 1;  // odd orders straddle the origin with step 2
  const double h = step * g.freq_step();
  double acc = 0, binom = 1;
  for (int i = 0; i <= order; ++i) {
    const int off = (order - 2 * i) * step / 2;
    const std::size_t idx = axis == 0 ? g.ravel(c + off, c) : g.ravel(c, c + off);
    acc += ((i % 2) ? -1.0 : 1.0) * binom * k.freq[idx].real();
    binom = binom * (order - i) / (i + 1);
  }
  return acc / std::pow(h, order);
}

}  // namespace

KernelPair build_radial_kernel(const Kernel& phi0_freq, int R) {
  require(R >= 0, ErrorKind::InvalidInput, "R must be non-negative");
  const auto& g = phi0_freq.grid;
  const std::size_t o = origin_index(g);
  const double v0 = phi0_freq.freq[o].real();
  require(std::abs(v0) > 1e-6, ErrorKind::InvalidKernel, "phi0(0) vanishes");
  const double scale = max_abs(phi0_freq.freq);
  const double tol = 1e-10 * scale;
  const int n = g.n, c = n / 2;

  // Radial symmetry (reflection per axis, and axis swap in 2D) and monotone
  // decay along the positive first axis.
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto [a, b] = g.unravel(i);
    if (a == 0 || (g.dim == 2 && b == 0)) continue;
    const std::size_t ra = g.ravel(n - a, g.dim == 2 ? b : 0);
    bool ok = std::abs(phi0_freq.freq[i] - phi0_freq.freq[ra]) <= tol;
    if (g.dim == 2) ok = ok && std::abs(phi0_freq.freq[i] - phi0_freq.freq[g.ravel(b, a)]) <= tol;
    require(ok, ErrorKind::InvalidKernel, "phi0 is not radial");
  }
  for (int k = c; k + 1 < n; ++k) {
    const double a = phi0_freq.freq[g.ravel(k, c)].real(), b = phi0_freq.freq[g.ravel(k + 1, c)].real();
    require(b <= a + tol, ErrorKind::InvalidKernel, "phi0 is not non-increasing");
  }
  for (int order = 1; order <= R; ++order)
    for (int axis = 0; axis < g.dim; ++axis) {
      const double d = origin_derivative(phi0_freq, order, axis);
      require(std::abs(d) <= 1e-6 * std::abs(v0), ErrorKind::InvalidKernel,
              "derivative of order " + std::to_string(order) + " of phi0 does not vanish at 0");
    }

  auto dil = fourier::spectrum_at_scaled(g, phi0_freq.space, 2.0);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = phi0_freq.freq[i] - dil[i];
  f[o] = 0.0;
  KernelPair out;
  out.phi0 = make_kernel_from_freq(g, phi0_freq.freq, KernelRole::Phi0, phi0_freq.id);
  out.phi = make_kernel_from_freq(g, std::move(f), KernelRole::Phi, "radial_" + phi0_freq.id);
  require(out.phi.meta.L >= R + 1, ErrorKind::InvalidKernel,
          "radial kernel has fewer vanishing moments than R + 1");
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::array<int, 2>> multi_indices(int dim, int lmax) {
  std::vector<std::array<int, 2>> out;
  for (int l = 0; l <= lmax; ++l) {
    if (dim == 1) {
      out.push_back({l, 0});
    } else {
      for (int a = l; a >= 0; --a) out.push_back({a, l - a});
    }
  }
  return out;
}

std::vector<cplx> moments(const Kernel& g, int lmax) {
  require(lmax >= 0 && lmax <= kMaxMomentOrder, ErrorKind::InvalidInput, "moment order out of range");
  auto idx = multi_indices(g.grid.dim, lmax);
  std::vector<cplx> out(idx.size());
  std::vector<double> re(g.space.size()), im(g.space.size());
  for (std::size_t m = 0; m < idx.size(); ++m) {
    for (std::size_t i = 0; i < g.space.size(); ++i) {
      const double w = monomial(g.grid.position(i), idx[m]);
      re[i] = w * g.space[i].real();
      im[i] = w * g.space[i].imag();
    }
    out[m] = cplx(pairwise_sum(re), pairwise_sum(im)) * g.grid.cell_volume();
  }
  return out;
}

int first_nonvanishing_moment(const Kernel& g, double rel_tol) {
  auto idx = multi_indices(g.grid.dim, kMaxMomentOrder);
  auto mom = moments(g, kMaxMomentOrder);
  std::vector<double> absw(g.space.size());
  for (std::size_t m = 0; m < idx.size(); ++m) {
    for (std::size_t i = 0; i < g.space.size(); ++i)
      absw[i] = std::abs(monomial(g.grid.position(i), idx[m])) * std::abs(g.space[i]);
    const double scale = pairwise_sum(absw) * g.grid.cell_volume();
    if (scale > 0 && std::abs(mom[m]) > rel_tol * scale) return idx[m][0] + idx[m][1];
  }
  return kMaxMomentOrder + 1;
}

DecayCheck check_decay(const Kernel& g, int N) {
  require(N >= 1 && N <= kMaxDecayOrder, ErrorKind::InvalidInput, "decay order out of range");
  DecayCheck r;
  const double peak = max_abs(g.space);
  if (peak == 0) {
    r.ok = true;
    return r;
  }
  double shell = 0;
  const double edge = g.grid.extent / 2;
  for (std::size_t i = 0; i < g.space.size(); ++i) {
    const Point x = g.grid.position(i);
    const double v = std::abs(g.space[i]) * std::pow(1.0 + g.grid.radius(i), N);
    r.c_N = std::max(r.c_N, v);
    if (std::max(std::abs(x[0]), std::abs(x[1])) >= edge) shell = std::max(shell, v);
  }
  r.edge_ratio = shell / peak;
  r.ok = r.c_N / peak < 1e6 && r.edge_ratio <= 1e-3;
  return r;
}

SmoothnessCheck check_smoothness_weight(const Kernel& g, double K, int A) {
  require(A >= 0 && A <= 4, ErrorKind::InvalidInput, "derivative cap out of range");
  require(K >= 0, ErrorKind::InvalidInput, "K must be non-negative");
  const auto& grid = g.grid;
  const double half = grid.nyquist() / 2;
  SmoothnessCheck out;
  out.ok = true;
  std::vector<cplx> xs(grid.size());
  std::vector<double> full(grid.size()), inner(grid.size());
  for (auto& alpha : multi_indices(grid.dim, A)) {
    std::vector<cplx> spec;
    if (alpha[0] + alpha[1] == 0) {
      spec = g.freq;
    } else {
      // D^alpha F g = F[(-i x)^alpha g]
      const cplx mi(0, -1);
      for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = std::pow(mi, alpha[0] + alpha[1]) * monomial(grid.position(i), alpha) * g.space[i];
      spec = fourier::forward(grid, xs);
    }
    // Samples below the floating-point floor of the transform would be
    // amplified by the polynomial weight; treat them as zero.
    const double floor = 1e-12 * max_abs(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double a = std::abs(spec[i]);
      const double v = a <= floor ? 0.0 : std::pow(1.0 + grid.freq_radius(i), K) * a;
      full[i] = v;
      const Point xi = grid.frequency(i);
      inner[i] = (std::abs(xi[0]) <= half && std::abs(xi[1]) <= half) ? v : 0.0;
    }
    const double If = pairwise_sum(full), Ii = pairwise_sum(inner);
    const double change = If > 0 ? (If - Ii) / If : 0.0;
    out.integrals.push_back(If * grid.freq_cell_volume());
    out.worst_change = std::max(out.worst_change, change);
    if (change >= 0.01) out.ok = false;
  }
  return out;
}

Admissibility admissibility(const Kernel& g) {
  const auto& grid = g.grid;
  const std::size_t o = origin_index(grid);
  const double peak = max_abs(g.freq);
  Admissibility a;
  if (peak == 0) return a;
  const int L = g.meta.L;
  if (L == 0 || std::abs(g.freq[o]) > 1e-8 * peak) {
    a.divergent = true;
    a.value = kInf;
    return a;
  }
  const int d = grid.dim;
  std::vector<double> terms(grid.size(), 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == o) continue;
    const double r = grid.freq_radius(i);
    terms[i] = std::norm(g.freq[i]) / std::pow(r, d);
  }
  double body = pairwise_sum(terms) * grid.freq_cell_volume();
  // Local model |F g|^2 ~ c |xi|^{2L} on the origin cell, c fitted at the
  // nearest sample on the first axis.
  const double dxi = grid.freq_step();
  const std::size_t nb = grid.ravel(grid.n / 2 + 1, grid.n / 2);
  const double c = std::norm(g.freq[nb]) / std::pow(dxi, 2 * L);
  double origin;
  if (d == 1) {
    origin = 2.0 * c * std::pow(dxi / 2, 2 * L) / (2 * L);
  } else {
    const double rho = dxi / std::sqrt(kPi);  // disk with the area of one cell
    origin = 2 * kPi * c * std::pow(rho, 2 * L) / (2 * L);
  }
  a.origin_part = origin;
  a.value = body + origin;
  return a;
}

double frame_constant(const Kernel& g) {
  auto a = admissibility(g);
  require(!a.divergent, ErrorKind::InvalidKernel, "analyzer is not admissible");
  const int d = g.grid.dim;
  const double sphere = d == 1 ? 2.0 : 2 * kPi;
  return std::pow(2 * kPi, d) * a.value / sphere;
}

double measure_band(const Kernel& g, KernelRole role) {
  const auto& grid = g.grid;
  const double thr = 1e-6;
  if (role == KernelRole::Phi0) {
    double r0 = grid.nyquist();
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (std::abs(g.freq[i]) <= thr) r0 = std::min(r0, grid.freq_radius(i));
    return r0 / 2;
  }
  // Radii at which |F g| is too small; eps works iff none lies in (eps/2, 2 eps).
  std::vector<double> bad;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(g.freq[i]) <= thr) bad.push_back(grid.freq_radius(i));
  std::sort(bad.begin(), bad.end());
  double best = 0;
  for (double eps = grid.nyquist() / 2; eps >= grid.freq_step(); eps /= std::pow(2.0, 1.0 / 16)) {
    auto it = std::upper_bound(bad.begin(), bad.end(), eps / 2);
    if (it == bad.end() || *it >= 2 * eps) {
      best = eps;
      break;
    }
  }
  return best;
}

}  // namespace besov
