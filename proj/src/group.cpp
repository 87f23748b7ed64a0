#include "besov/group.hpp"

#include <algorithm>
#include <cmath>

namespace besov {

GroupPoint gmul(const GroupPoint& g1, const GroupPoint& g2) {
  return {{g1.x[0] + g1.t * g2.x[0], g1.x[1] + g1.t * g2.x[1]}, g1.t * g2.t};
}

GroupPoint ginv(const GroupPoint& g) {
  require(g.t > 0, ErrorKind::InvalidInput, "group scale must be positive");
  return {{-g.x[0] / g.t, -g.x[1] / g.t}, 1.0 / g.t};
}

double haar_weight(const GroupPoint& pt, int dim) { return std::pow(pt.t, -(dim + 1)); }
double haar_module(const GroupPoint& pt, int dim) { return std::pow(pt.t, -dim); }

double WeightSpec::operator()(const GroupPoint& pt) const {
  const double nx = std::hypot(pt.x[0], pt.x[1]);
  return std::pow(1.0 + nx, v) * (std::pow(pt.t, r2) + std::pow(pt.t, -r1));
}

const char* to_string(GroupSpace s) {
  switch (s) {
    case GroupSpace::L: return "L";
    case GroupSpace::T: return "T";
    case GroupSpace::P: return "P";
  }
  return "?";
}

GroupSpace group_space_from_string(const std::string& s) {
  if (s == "L") return GroupSpace::L;
  if (s == "T") return GroupSpace::T;
  if (s == "P") return GroupSpace::P;
  fail(ErrorKind::InvalidInput, "unknown group space '" + s + "' (expected L, T or P)");
}

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

void validate(const GroupNormParams& gp) {
  validate_exponent(gp.p, "p");
  validate_exponent(gp.q, "q");
  require(std::isfinite(gp.s), ErrorKind::InvalidInput, "smoothness must be finite");
  if (gp.space == GroupSpace::P) require(gp.a > 0, ErrorKind::Configuration, "Peetre parameter a must be positive");
}

int ladder_steps(const ScaleLadder& ladder, double r) {
  require(std::isfinite(r) && r > 0, ErrorKind::InvalidInput, "translation scale must be positive");
  const double k = std::log(r) * ladder.nu / std::log(ladder.base);
  const double kr = std::round(k);
  require(std::abs(k - kr) < 1e-9, ErrorKind::InvalidInput,
          "translation scale r = " + std::to_string(r) + " is not a power of the ladder step");
  return int(kr);
}

namespace {

// Nodes m (new labels) obtained by shifting every label by `shift`,
// intersected with the resolvable window.
GroupFunction relabelled(const GroupFunction& F, int shift, int* lo, int* hi) {
  const auto R = ScaleLadder::resolvable(F.grid, F.ladder.base, F.ladder.nu);
  *lo = std::max(F.ladder.m_min + shift, R.m_min);
  *hi = std::min(F.ladder.m_max + shift, R.m_max);
  require(*lo <= *hi, ErrorKind::OutOfResolvableRange, "translation moves every scale out of the resolvable window");
  GroupFunction G(F.grid, ScaleLadder{F.ladder.base, *lo, *hi, F.ladder.nu});
  G.dropped = F.dropped + (F.nodes() - G.nodes());
  return G;
}

std::vector<double> abs_of(std::span<const cplx> v) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  return a;
}

}  // namespace

GroupFunction left_translate(const GroupFunction& F, Point z, double r) {
  const int k = ladder_steps(F.ladder, r);
  int lo, hi;
  GroupFunction G = relabelled(F, -k, &lo, &hi);
#pragma omp parallel for schedule(dynamic)
  for (int m = lo; m <= hi; ++m) {
    const std::size_t src = std::size_t(m + k - F.ladder.m_min);
    G.columns[std::size_t(m - lo)] = resample(F.column(src), z, 1.0 / r).samples;
  }
  return G;
}

GroupFunction right_translate(const GroupFunction& F, Point z, double r) {
  const int k = ladder_steps(F.ladder, r);
  int lo, hi;
  GroupFunction G = relabelled(F, k, &lo, &hi);
#pragma omp parallel for schedule(dynamic)
  for (int m = lo; m <= hi; ++m) {
    const std::size_t src = std::size_t(m - k - F.ladder.m_min);
    const double t = G.ladder.scale(std::size_t(m - lo));
    if (z[0] == 0.0 && z[1] == 0.0)
      G.columns[std::size_t(m - lo)] = F.columns[src];
    else
      G.columns[std::size_t(m - lo)] = resample(F.column(src), Point{-t * z[0], -t * z[1]}, 1.0).samples;
  }
  return G;
}

double group_norm(const GroupFunction& F, const GroupNormParams& gp) {
  validate(gp);
  const auto& g = F.grid;
  const auto& L = F.ladder;
  const std::size_t M = F.nodes(), N = g.size();
  // dt/t^{d+1} = t^{-d} dt/t: the Haar factor shifts the smoothness index by d/q.
  const double s_eff = gp.s + (std::isinf(gp.q) ? 0.0 : g.dim / gp.q);

  if (gp.space == GroupSpace::L) {
    std::vector<double> per(M);
    for (std::size_t m = 0; m < M; ++m) per[m] = lp_norm(F.column(m), gp.p);
    return scale_aggregate(per, L, s_eff, gp.q);
  }

  if (gp.space == GroupSpace::T) require_resolvable(g, L.scales());
  std::vector<std::vector<double>> rows(M);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(M); ++m) {
    auto v = abs_of(F.columns[m]);
    const double t = L.scale(m);
    if (gp.space == GroupSpace::P) {
      v = peetre_sup(v, g, t, gp.a);
    } else if (std::isinf(gp.q)) {
      v = ball_max(v, g, t);
    } else {
      for (auto& x : v) x = x == 0 ? 0.0 : std::pow(x, gp.q);
      v = ball_sums(v, g, t);
    }
    rows[m] = std::move(v);
  }
  const bool tent_sum = gp.space == GroupSpace::T && !std::isinf(gp.q);
  std::vector<double> pointwise(N);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(N); ++i) {
    std::vector<double> col(M);
    for (std::size_t m = 0; m < M; ++m) col[m] = rows[m][i];
    pointwise[i] = tent_sum ? std::pow(scale_integral(col, L, gp.s * gp.q + g.dim), 1.0 / gp.q)
                            : scale_aggregate(col, L, s_eff, gp.q);
  }
  return lp_norm_values(pointwise, g, gp.p);
}

double predicted_scaling(const GroupNormParams& gp, int dim, Side side, Point z, double r, bool* is_bound) {
  const double d = dim;
  const double ip = std::isinf(gp.p) ? 0.0 : 1.0 / gp.p;
  const double iq = std::isinf(gp.q) ? 0.0 : 1.0 / gp.q;
  const double nz = std::hypot(z[0], z[1]);
  bool bound = false;
  double v = 1.0;
  if (side == Side::Left) {
    v = gp.space == GroupSpace::T ? std::pow(r, d * ip - gp.s) : std::pow(r, d * (ip - iq) - gp.s);
  } else {
    switch (gp.space) {
      case GroupSpace::L:
        v = std::pow(r, gp.s + d * iq);
        break;
      case GroupSpace::P:
        bound = true;
        v = std::pow(r, gp.s + d * iq) * std::max(1.0, std::pow(r, -gp.a)) * std::pow(1.0 + nz, gp.a);
        break;
      case GroupSpace::T: {
        bound = true;
        const double b = d / std::min(gp.p, gp.q);
        v = std::pow(r, gp.s + d * iq) * std::max(1.0, std::pow(r, -b) * std::pow(1.0 + nz, b));
        break;
      }
    }
  }
  if (is_bound) *is_bound = bound;
  return v;
}

ScalingCheck translation_scaling_check(const GroupFunction& F, const GroupNormParams& gp, Side side, Point z,
                                       double r) {
  ScalingCheck c;
  c.space = gp.space;
  c.side = side;
  c.z = z;
  c.r = r;
  c.predicted = predicted_scaling(gp, F.grid.dim, side, z, r, &c.is_bound);
  const auto G = side == Side::Left ? left_translate(F, z, r) : right_translate(F, z, r);
  c.dropped = G.dropped;
  const double base = group_norm(F, gp);
  require(base > 0, ErrorKind::InvalidInput, "scaling check needs a nonzero group function");
  c.measured = group_norm(G, gp) / base;
  return c;
}

GroupNormParams coorbit_params(const NormParams& np, int dim, double a) {
  GroupNormParams gp;
  gp.p = np.p;
  gp.q = np.q;
  gp.a = a;
  const double iq = std::isinf(np.q) ? 0.0 : 1.0 / np.q;
  if (np.scale == ScaleTag::B) {
    gp.space = GroupSpace::L;
    gp.s = np.s + dim / 2.0 - dim * iq;
  } else if (np.variant == 3) {
    gp.space = GroupSpace::T;
    gp.s = np.s + dim / 2.0;
  } else {
    gp.space = GroupSpace::P;
    gp.s = np.s + dim / 2.0 - dim * iq;
  }
  return gp;
}

double coorbit_norm(const SampledSignal& f, const Kernel& g, const NormParams& np, double a,
                    const ScaleLadder& ladder) {
  require(f.grid == g.grid, ErrorKind::InvalidInput, "grid mismatch");
  const auto adm = admissibility(g);
  require(!adm.divergent && g.meta.L >= 1, ErrorKind::Precondition,
          "coorbit characterisation needs an admissible analysing vector with a vanishing mean (measured L = " +
              std::to_string(g.meta.L) + ")");
  const auto gp = coorbit_params(np, f.grid.dim, a);
  if (gp.space == GroupSpace::P) {
    const double bound = f.grid.dim / std::min(np.p, np.q);
    require(a > bound, ErrorKind::Configuration,
            "Peetre pairing needs a > d/min(p,q) = " + std::to_string(bound));
  }
  const auto cl = continuous_ladder(ladder, f.grid, Homogeneity::Homogeneous);
  return group_norm(cwt(f, g, cl), gp);
}

}  // namespace besov
