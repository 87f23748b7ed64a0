#include "besov/discretization.hpp"

#include <algorithm>
#include <cmath>

namespace besov {

std::array<int, 2> LatticeSpec::k_range(int j) const {
  const double c = cell(j);
  const double eps = 1e-9;
  return {int(std::ceil(-box / c - eps)), int(std::ceil(box / c - eps)) - 1};
}

void validate(const LatticeSpec& s) {
  require(std::isfinite(s.alpha) && s.alpha > 0, ErrorKind::InvalidInput, "lattice alpha must be positive");
  require(std::isfinite(s.beta) && s.beta > 1, ErrorKind::InvalidInput, "lattice beta must exceed 1");
  require(s.dim == 1 || s.dim == 2, ErrorKind::InvalidInput, "lattice dimension must be 1 or 2");
  require(s.j_min <= s.j_max, ErrorKind::InvalidInput, "empty level range");
  require(std::isfinite(s.box) && s.box > 0, ErrorKind::InvalidInput, "lattice box must be positive");
  double count = 0;
  for (int j = s.j_min; j <= s.j_max; ++j) {
    auto kr = s.k_range(j);
    count += std::pow(std::max(0, kr[1] - kr[0] + 1), s.dim);
  }
  require(count <= 2e7, ErrorKind::InvalidInput, "lattice has too many points");
}

LatticePoint lattice_point(const LatticeSpec& s, int j, std::array<int, 2> k) {
  LatticePoint p;
  p.j = j;
  p.k = k;
  const double c = s.cell(j);
  p.pt.t = std::pow(s.beta, -j);
  for (int a = 0; a < s.dim; ++a) {
    p.pt.x[std::size_t(a)] = k[std::size_t(a)] * c;
    p.tile.lo[std::size_t(a)] = k[std::size_t(a)] * c;
    p.tile.hi[std::size_t(a)] = (k[std::size_t(a)] + 1) * c;
  }
  p.tile.t_lo = std::pow(s.beta, -(j + 1));
  p.tile.t_hi = p.pt.t;
  return p;
}

std::vector<LatticePoint> lattice_points(const LatticeSpec& s) {
  validate(s);
  std::vector<LatticePoint> out;
  for (int j = s.j_min; j <= s.j_max; ++j) {
    const auto kr = s.k_range(j);
    for (int k0 = kr[0]; k0 <= kr[1]; ++k0) {
      if (s.dim == 1) {
        out.push_back(lattice_point(s, j, {k0, 0}));
        continue;
      }
      for (int k1 = kr[0]; k1 <= kr[1]; ++k1) out.push_back(lattice_point(s, j, {k0, k1}));
    }
  }
  return out;
}

CoeffField CoeffField::wavelet_part() const {
  CoeffField r(lattice);
  for (auto& e : entries)
    if (e.c != 0) r.entries.push_back(e);
  return r;
}

double CoeffField::l2_squared() const {
  std::vector<double> v;
  v.reserve(entries.size());
  for (auto& e : entries) v.push_back(std::norm(e.value));
  return pairwise_sum(v);
}

CoeffField operator*(cplx a, const CoeffField& c) {
  CoeffField r = c;
  for (auto& e : r.entries) e.value *= a;
  return r;
}

namespace {

using KeyMap = std::map<std::array<int, 2>, double>;

// Per level: k -> combined magnitude over species. q-th powers are summed
// (or the max is taken for q = infinity).
std::map<int, KeyMap> level_maps(const CoeffField& c, double q) {
  std::map<int, KeyMap> m;
  for (auto& e : c.entries) {
    const double a = std::abs(e.value);
    auto& slot = m[e.j][e.k];
    if (std::isinf(q))
      slot = std::max(slot, a);
    else
      slot += a == 0 ? 0.0 : std::pow(a, q);
  }
  return m;
}

int level_of_scale(double t, double beta) {
  const double x = -std::log(t) / std::log(beta);
  return int(std::ceil(x - 1e-9)) - 1;
}

std::array<int, 2> cell_index(const Point& x, double cell, int dim) {
  std::array<int, 2> k{0, 0};
  for (int a = 0; a < dim; ++a) k[std::size_t(a)] = int(std::floor(x[std::size_t(a)] / cell + 1e-12));
  return k;
}

}  // namespace

GroupFunction indicator_embed(const CoeffField& c, const GridSpec& grid, const ScaleLadder& ladder) {
  const auto& L = c.lattice;
  validate(L);
  require(grid.dim == L.dim, ErrorKind::InvalidInput, "lattice and grid dimensions differ");
  auto levels = level_maps(c, 1.0);
  std::map<int, std::vector<std::size_t>> nodes_of_level;
  for (std::size_t m = 0; m < ladder.size(); ++m) nodes_of_level[level_of_scale(ladder.scale(m), L.beta)].push_back(m);
  for (auto& [j, km] : levels) {
    require(nodes_of_level.count(j) > 0, ErrorKind::InvalidInput,
            "level " + std::to_string(j) + " has no ladder node inside its scale interval");
    const double cell = L.cell(j);
    for (auto& [k, v] : km)
      for (int a = 0; a < L.dim; ++a)
        require(k[std::size_t(a)] * cell >= -grid.extent - 1e-12 && (k[std::size_t(a)] + 1) * cell <= grid.extent + 1e-12,
                ErrorKind::InvalidInput, "tile Q_{j,k} leaves the grid box");
  }
  GroupFunction F(grid, ladder);
  for (auto& [j, km] : levels) {
    const double cell = L.cell(j);
    std::vector<cplx> field(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto it = km.find(cell_index(grid.position(i), cell, grid.dim));
      if (it != km.end()) field[i] = it->second;
    }
    for (auto m : nodes_of_level[j]) F.columns[m] = field;
  }
  return F;
}

double p_sharp_norm(const CoeffField& c, double s, double p, double q) {
  validate_exponent(p, "p");
  validate_exponent(q, "q");
  const auto& L = c.lattice;
  const int d = L.dim;
  auto levels = level_maps(c, q);
  if (levels.empty()) return 0.0;

  // Breakpoints of all tiles, per axis.
  std::array<std::vector<double>, 2> bp;
  for (auto& [j, km] : levels)
    for (auto& [k, v] : km)
      for (int a = 0; a < d; ++a) {
        bp[std::size_t(a)].push_back(k[std::size_t(a)] * L.cell(j));
        bp[std::size_t(a)].push_back((k[std::size_t(a)] + 1) * L.cell(j));
      }
  for (int a = 0; a < d; ++a) {
    auto& b = bp[std::size_t(a)];
    std::sort(b.begin(), b.end());
    std::vector<double> u;
    for (double x : b)
      if (u.empty() || x - u.back() > 1e-12 * std::max(1.0, std::abs(x))) u.push_back(x);
    b = u;
  }
  if (d == 1) bp[1] = {0.0, 1.0};

  const double iq = std::isinf(q) ? 0.0 : 1.0 / q;
  std::map<int, double> weight;
  for (auto& [j, km] : levels) weight[j] = std::pow(L.beta, j * (s + d * iq) * (std::isinf(q) ? 1.0 : q));

  std::vector<double> terms;
  double sup = 0;
  for (std::size_t i0 = 0; i0 + 1 < bp[0].size(); ++i0)
    for (std::size_t i1 = 0; i1 + 1 < bp[1].size(); ++i1) {
      const Point mid{(bp[0][i0] + bp[0][i0 + 1]) / 2, (bp[1][i1] + bp[1][i1 + 1]) / 2};
      double g = 0;
      for (auto& [j, km] : levels) {
        auto it = km.find(cell_index(mid, L.cell(j), d));
        if (it == km.end()) continue;
        if (std::isinf(q))
          g = std::max(g, weight[j] * it->second);
        else
          g += weight[j] * it->second;
      }
      if (!std::isinf(q)) g = g == 0 ? 0.0 : std::pow(g, iq);
      if (g == 0) continue;
      const double area = (bp[0][i0 + 1] - bp[0][i0]) * (d == 2 ? bp[1][i1 + 1] - bp[1][i1] : 1.0);
      if (std::isinf(p))
        sup = std::max(sup, g);
      else
        terms.push_back(std::pow(g, p) * area);
    }
  if (std::isinf(p)) return sup;
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double l_sharp_norm(const CoeffField& c, double s, double p, double q) {
  validate_exponent(p, "p");
  validate_exponent(q, "q");
  const auto& L = c.lattice;
  const double d = L.dim;
  auto levels = level_maps(c, p);
  const double ip = std::isinf(p) ? 0.0 : 1.0 / p, iq = std::isinf(q) ? 0.0 : 1.0 / q;
  std::vector<double> terms;
  double sup = 0;
  for (auto& [j, km] : levels) {
    std::vector<double> v;
    for (auto& [k, x] : km) v.push_back(x);
    double S = std::isinf(p) ? (v.empty() ? 0.0 : *std::max_element(v.begin(), v.end())) : pairwise_sum(v);
    if (!std::isinf(p)) S = S == 0 ? 0.0 : std::pow(S, ip);
    const double w = std::pow(L.beta, j * (s + d * iq - d * ip));
    if (std::isinf(q))
      sup = std::max(sup, w * S);
    else
      terms.push_back(std::pow(w * S, q));
  }
  if (std::isinf(q)) return sup;
  return std::pow(pairwise_sum(terms), iq);
}

namespace {

// Sample index of a lattice position, or -1 when it is not a grid point.
long grid_index(const GridSpec& g, const Point& x) {
  std::array<long, 2> idx{0, 0};
  for (int a = 0; a < g.dim; ++a) {
    const double pos = (x[std::size_t(a)] + g.extent) / g.spacing();
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-6 || r < 0 || r >= g.n) return -1;
    idx[std::size_t(a)] = long(r);
  }
  return g.dim == 1 ? idx[0] : long(g.ravel(int(idx[0]), int(idx[1])));
}

const PiecewisePoly& factor(const SplineSystem& sys, int bit) { return bit ? sys.psi : sys.phi; }

// 2^{jd/2} Psi^c(sign * 2^j x) sampled exactly on the grid.
SampledSignal atom(const SplineSystem& sys, const GridSpec& g, int c, int j, double sign) {
  const double sc = std::ldexp(1.0, j), amp = std::pow(sc, g.dim / 2.0);
  const auto& P0 = factor(sys, c & 1);
  const auto& P1 = factor(sys, (c >> 1) & 1);
  return SampledSignal::from_function(g, [&](Point x) {
    double v = amp * P0(sign * sc * x[0]);
    if (g.dim == 2) v *= P1(sign * sc * x[1]);
    return v;
  });
}

std::vector<std::pair<int, int>> species_levels(const LatticeSpec& s, bool with_scaling) {
  std::vector<std::pair<int, int>> out;  // (c, j)
  const int n_species = s.dim == 1 ? 1 : 3;
  if (with_scaling) out.push_back({0, s.j_min});
  for (int j = s.j_min; j <= s.j_max; ++j)
    for (int c = 1; c <= n_species; ++c) out.push_back({c, j});
  return out;
}

void require_orthonormal_lattice(const LatticeSpec& s) {
  require(std::abs(s.alpha - 1) < 1e-12 && std::abs(s.beta - 2) < 1e-12, ErrorKind::Precondition,
          "the orthonormal wavelet path needs alpha = 1 and beta = 2");
}

}  // namespace

CoeffField frame_coefficients(const SampledSignal& f, const SplineSystem& sys, const LatticeSpec& spec) {
  validate(spec);
  require_orthonormal_lattice(spec);
  const auto& g = f.grid;
  require(g.dim == spec.dim, ErrorKind::InvalidInput, "lattice and grid dimensions differ");
  const auto pairs = species_levels(spec, true);
  std::vector<CoeffField> parts(pairs.size(), CoeffField(spec));
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(pairs.size()); ++i) {
    const auto [c, j] = pairs[std::size_t(i)];
    // <Psi_{j,k}, f> = (f * reflected atom)(k 2^-j)
    const auto corr = convolve(f, atom(sys, g, c, j, -1.0));
    for (auto& lp : lattice_points(LatticeSpec{spec.alpha, spec.beta, spec.dim, j, j, spec.box})) {
      const long idx = grid_index(g, lp.pt.x);
      require(idx >= 0, ErrorKind::InvalidInput, "lattice point is not a grid sample (level too fine for h)");
      parts[std::size_t(i)].add(c, j, lp.k, corr.samples[std::size_t(idx)]);
    }
  }
  CoeffField out(spec);
  for (auto& p : parts) out.entries.insert(out.entries.end(), p.entries.begin(), p.entries.end());
  return out;
}

std::vector<std::pair<int, Kernel>> spline_species(const SplineSystem& sys, const GridSpec& grid) {
  std::vector<std::pair<int, Kernel>> out;
  const int n = grid.dim == 1 ? 2 : 4;
  for (int c = 0; c < n; ++c) out.push_back({c, tensor_species(sys, grid, {c & 1, (c >> 1) & 1})});
  return out;
}

CoeffField frame_coefficients_cwt(const SampledSignal& f, const std::vector<std::pair<int, Kernel>>& species,
                                  const LatticeSpec& spec, bool include_scaling_at_coarsest) {
  validate(spec);
  const auto& g = f.grid;
  require(g.dim == spec.dim, ErrorKind::InvalidInput, "lattice and grid dimensions differ");
  CoeffField out(spec);
  for (auto& [c, K] : species) {
    if (c == 0 && !include_scaling_at_coarsest) continue;
    const int j_hi = c == 0 ? spec.j_min : spec.j_max;
    for (int j = spec.j_min; j <= j_hi; ++j) {
      const ScaleLadder one{spec.beta, j, j, 1};
      const auto W = cwt(f, K, one);
      for (auto& lp : lattice_points(LatticeSpec{spec.alpha, spec.beta, spec.dim, j, j, spec.box})) {
        const long idx = grid_index(g, lp.pt.x);
        require(idx >= 0, ErrorKind::InvalidInput, "lattice point is not a grid sample");
        out.add(c, j, lp.k, std::conj(W.columns[0][std::size_t(idx)]));
      }
    }
  }
  return out;
}

SampledSignal atomic_synthesis(const CoeffField& c, const SplineSystem& sys, const GridSpec& grid) {
  require(grid.dim == c.lattice.dim, ErrorKind::InvalidInput, "lattice and grid dimensions differ");
  require_orthonormal_lattice(c.lattice);
  std::map<std::pair<int, int>, std::vector<const CoeffEntry*>> groups;
  for (auto& e : c.entries) groups[{e.c, e.j}].push_back(&e);
  std::vector<std::pair<std::pair<int, int>, std::vector<const CoeffEntry*>>> list(groups.begin(), groups.end());
  std::vector<SampledSignal> parts(list.size(), SampledSignal(grid));
  const double inv_cell = 1.0 / grid.cell_volume();
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(list.size()); ++i) {
    const auto [cj, entries] = list[std::size_t(i)];
    SampledSignal impulses(grid);
    for (auto* e : entries) {
      const auto lp = lattice_point(c.lattice, e->j, e->k);
      const long idx = grid_index(grid, lp.pt.x);
      require(idx >= 0, ErrorKind::InvalidInput, "lattice point is not a grid sample");
      impulses.samples[std::size_t(idx)] += e->value * inv_cell;
    }
    parts[std::size_t(i)] = convolve(impulses, atom(sys, grid, cj.first, cj.second, 1.0));
  }
  SampledSignal out(grid);
  for (auto& p : parts)
    for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += p.samples[i];
  return out;
}

FrameEquivalence frame_norm_equivalence(const SampledSignal& f, const SplineSystem& sys, const LatticeSpec& spec,
                                        const NormParams& np, double a, const ScaleLadder& ladder) {
  require(f.grid.dim == 1, ErrorKind::InvalidInput, "frame norm equivalence is implemented for d = 1");
  FrameEquivalence r;
  r.window = spline_wavdec_range(sys.m, 1, np.p, np.q, np.scale);
  require(np.s > r.window.lo && np.s < r.window.hi, ErrorKind::Configuration,
          "s = " + std::to_string(np.s) + " is outside the spline frame window (" + std::to_string(r.window.lo) +
              ", " + std::to_string(r.window.hi) + ") for m = " + std::to_string(sys.m));
  const auto psi = tensor_species(sys, f.grid, {1, 0});
  r.function_norm = coorbit_norm(f, psi, np, a, ladder);
  const auto coeff = frame_coefficients(f, sys, spec).wavelet_part();
  const double iq = std::isinf(np.q) ? 0.0 : 1.0 / np.q;
  const double s_shift = np.s + 0.5 - iq;
  r.sequence_norm = np.scale == ScaleTag::F ? p_sharp_norm(coeff, s_shift, np.p, np.q)
                                            : l_sharp_norm(coeff, s_shift, np.p, np.q);
  r.ratio = r.sequence_norm > 0 ? r.function_norm / r.sequence_norm : 0.0;
  return r;
}

}  // namespace besov
