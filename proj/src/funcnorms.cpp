#include "besov/funcnorms.hpp"

#include <algorithm>
#include <cmath>

namespace besov {

const char* to_string(ScaleTag s) { return s == ScaleTag::B ? "B" : "F"; }
const char* to_string(Homogeneity h) { return h == Homogeneity::Homogeneous ? "homogeneous" : "inhomogeneous"; }

bool NormParams::uses_peetre() const {
  return scale == ScaleTag::F ? (variant == 2 || variant == 4) : (variant == 2 || variant == 3);
}

void validate(const NormParams& np, int dim, const KernelMeta& meta) {
  auto cfg = [](bool ok, const std::string& what) { require(ok, ErrorKind::Configuration, what); };
  cfg(np.p > 0 && np.q > 0, "p and q must be positive");
  cfg(np.variant >= 1 && np.variant <= np.variant_count(),
      std::string("variant must be in 1..") + std::to_string(np.variant_count()) + " for " + to_string(np.scale));
  if (np.scale == ScaleTag::F) cfg(std::isfinite(np.p), "F-scale requires p < infinity");
  if (np.uses_peetre()) {
    const double bound = np.scale == ScaleTag::F ? dim / std::min(np.p, np.q) : dim / np.p;
    cfg(np.a > bound, std::string("Peetre variants need a > ") +
                          (np.scale == ScaleTag::F ? "d/min(p,q)" : "d/p") + " = " + std::to_string(bound) +
                          " (got a = " + std::to_string(np.a) + ")");
  }
  cfg(meta.L > np.s, "kernel moment condition R + 1 > s fails: measured L = " + std::to_string(meta.L) +
                         ", s = " + std::to_string(np.s));
}

ScaleLadder continuous_ladder(const ScaleLadder& ladder, const GridSpec& grid, Homogeneity hom) {
  validate(ladder);
  const double lo = ladder.scale(ladder.size() - 1);
  double hi = ladder.scale(0);
  if (hom == Homogeneity::Inhomogeneous) hi = std::min(hi, 1.0);
  return ScaleLadder::resolvable(grid, ladder.base, ladder.nu, lo * (1 - 1e-12), hi * (1 + 1e-12));
}

std::array<int, 2> discrete_levels(const ScaleLadder& ladder, const GridSpec& grid, Homogeneity hom) {
  auto cl = continuous_ladder(ladder, grid, hom);
  const double t_min = cl.scale(cl.size() - 1), t_max = cl.scale(0);
  const int k_max = int(std::floor(-std::log2(t_min) + 1e-9));
  int k_min = int(std::ceil(-std::log2(t_max) - 1e-9));
  if (hom == Homogeneity::Inhomogeneous) k_min = 0;
  require(k_min <= k_max, ErrorKind::OutOfResolvableRange, "no dyadic level inside the scale window");
  return {k_min, k_max};
}

DiscreteFamily dilation_family(const Kernel& phi0, const Kernel& phi, Homogeneity hom, int k_min, int k_max) {
  DiscreteFamily fam;
  for (int k = k_min; k <= k_max; ++k) {
    fam.k.push_back(k);
    if (hom == Homogeneity::Inhomogeneous && k == 0)
      fam.kernels.push_back(phi0);
    else
      fam.kernels.push_back(dilate(phi, std::ldexp(1.0, -k), DilationTag::l1()));
  }
  return fam;
}

DiscreteFamily partition_family(const PartitionSystem& P) {
  DiscreteFamily fam;
  for (std::size_t i = 0; i < P.size(); ++i) {
    fam.k.push_back(P.index_to_j(i));
    fam.kernels.push_back(P.member_kernel(i));
  }
  return fam;
}

namespace {

std::vector<double> abs_of(std::span<const cplx> v) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
  return a;
}

double powq(double v, double q) { return v == 0 ? 0.0 : std::pow(v, q); }

// (sum_k w_k^q v_k^q)^{1/q} or max_k w_k v_k, evaluated per sample.
std::vector<double> pointwise_lq(const std::vector<std::vector<double>>& rows, const std::vector<double>& weights,
                                 double q) {
  const std::size_t N = rows.empty() ? 0 : rows[0].size();
  std::vector<double> out(N, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(N); ++i) {
    if (std::isinf(q)) {
      double m = 0;
      for (std::size_t k = 0; k < rows.size(); ++k) m = std::max(m, weights[k] * rows[k][i]);
      out[i] = m;
    } else {
      std::vector<double> terms(rows.size());
      for (std::size_t k = 0; k < rows.size(); ++k) terms[k] = powq(weights[k] * rows[k][i], q);
      out[i] = std::pow(pairwise_sum(terms), 1.0 / q);
    }
  }
  return out;
}

double seq_lq(const std::vector<double>& v, double q) {
  if (std::isinf(q)) return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  std::vector<double> t(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) t[i] = powq(v[i], q);
  return std::pow(pairwise_sum(t), 1.0 / q);
}

// Level-k field |Phi_k * f| or its Peetre maximal function.
std::vector<double> level_field(const SampledSignal& f, const Kernel& phi_k, int k, bool peetre, double a) {
  auto c = convolve(f, phi_k);
  auto v = abs_of(c.samples);
  if (!peetre) return v;
  return peetre_sup(v, f.grid, std::ldexp(1.0, -k), a);
}

std::vector<std::vector<double>> family_fields(const SampledSignal& f, const DiscreteFamily& fam, bool peetre,
                                               double a) {
  std::vector<std::vector<double>> rows(fam.kernels.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = level_field(f, fam.kernels[i], fam.k[i], peetre, a);
  return rows;
}

std::vector<double> level_weights(const DiscreteFamily& fam, double s) {
  std::vector<double> w(fam.k.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp2(s * fam.k[i]);
  return w;
}

struct Continuous {
  ScaleLadder ladder;
  GroupFunction field;
};

Continuous continuous_field(const SampledSignal& f, const Kernel& phi, const ScaleLadder& ladder, Homogeneity hom) {
  Continuous c;
  c.ladder = continuous_ladder(ladder, f.grid, hom);
  c.field = convolution_field(f, phi, c.ladder);
  return c;
}

double base_term(const SampledSignal& f, const Kernel& phi0, const NormParams& np, bool peetre) {
  auto v = abs_of(convolve(f, phi0).samples);
  if (peetre) v = peetre_sup(v, f.grid, 1.0, np.a);
  return lp_norm_values(v, f.grid, np.p);
}

// Continuous F variants 1-3 (inner part, no base term).
double f_continuous(const SampledSignal& f, const Kernel& phi, const NormParams& np, const ScaleLadder& ladder) {
  auto C = continuous_field(f, phi, ladder, np.hom);
  const auto& L = C.ladder;
  const auto& g = f.grid;
  const std::size_t M = L.size(), N = g.size();
  std::vector<std::vector<double>> rows(M);
  for (std::size_t m = 0; m < M; ++m) {
    auto v = abs_of(C.field.columns[m]);
    const double t = L.scale(m);
    if (np.variant == 2) {
      v = peetre_sup(v, g, t, np.a);
    } else if (np.variant == 3) {
      if (std::isinf(np.q)) {
        v = ball_max(v, g, t);
      } else {
        for (auto& x : v) x = powq(x, np.q);
        v = ball_sums(v, g, t);
        const double td = std::pow(t, -g.dim);
        for (auto& x : v) x *= td;  // values now hold t^{-d} int_{|z|<t} |.|^q dz
      }
    }
    rows[m] = std::move(v);
  }
  std::vector<double> pointwise(N);
  const bool tent_sum = np.variant == 3 && !std::isinf(np.q);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(N); ++i) {
    std::vector<double> col(M);
    for (std::size_t m = 0; m < M; ++m) col[m] = rows[m][i];
    pointwise[i] = tent_sum ? std::pow(scale_integral(col, L, np.s * np.q), 1.0 / np.q)
                            : scale_aggregate(col, L, np.s, np.q);
  }
  return lp_norm_values(pointwise, g, np.p);
}

double b_continuous(const SampledSignal& f, const Kernel& phi, const NormParams& np, const ScaleLadder& ladder) {
  auto C = continuous_field(f, phi, ladder, np.hom);
  const auto& L = C.ladder;
  std::vector<double> per(L.size());
  for (std::size_t m = 0; m < L.size(); ++m) {
    auto v = abs_of(C.field.columns[m]);
    if (np.variant == 2) v = peetre_sup(v, f.grid, L.scale(m), np.a);
    per[m] = lp_norm_values(v, f.grid, np.p);
  }
  return scale_aggregate(per, L, np.s, np.q);
}

}  // namespace

double f_norm_discrete(const SampledSignal& f, const DiscreteFamily& fam, const NormParams& np) {
  require(np.scale == ScaleTag::F && (np.variant == 4 || np.variant == 5), ErrorKind::Configuration,
          "discrete F variants are 4 and 5");
  auto rows = family_fields(f, fam, np.variant == 4, np.a);
  auto pw = pointwise_lq(rows, level_weights(fam, np.s), np.q);
  return lp_norm_values(pw, f.grid, np.p);
}

double b_norm_discrete(const SampledSignal& f, const DiscreteFamily& fam, const NormParams& np) {
  require(np.scale == ScaleTag::B && (np.variant == 3 || np.variant == 4), ErrorKind::Configuration,
          "discrete B variants are 3 and 4");
  auto rows = family_fields(f, fam, np.variant == 3, np.a);
  auto w = level_weights(fam, np.s);
  std::vector<double> per(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) per[k] = w[k] * lp_norm_values(rows[k], f.grid, np.p);
  return seq_lq(per, np.q);
}

double f_norm(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
              const ScaleLadder& ladder) {
  require(np.scale == ScaleTag::F, ErrorKind::Configuration, "f_norm needs F-scale parameters");
  validate(np, f.grid.dim, phi.meta);
  if (np.variant >= 4) {
    auto lv = discrete_levels(ladder, f.grid, np.hom);
    return f_norm_discrete(f, dilation_family(phi0, phi, np.hom, lv[0], lv[1]), np);
  }
  double v = f_continuous(f, phi, np, ladder);
  if (!np.homogeneous()) v += base_term(f, phi0, np, np.variant == 2);
  return v;
}

double b_norm(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
              const ScaleLadder& ladder) {
  require(np.scale == ScaleTag::B, ErrorKind::Configuration, "b_norm needs B-scale parameters");
  validate(np, f.grid.dim, phi.meta);
  if (np.variant >= 3) {
    auto lv = discrete_levels(ladder, f.grid, np.hom);
    return b_norm_discrete(f, dilation_family(phi0, phi, np.hom, lv[0], lv[1]), np);
  }
  double v = b_continuous(f, phi, np, ladder);
  if (!np.homogeneous()) v += base_term(f, phi0, np, np.variant == 2);
  return v;
}

double norm_value(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
                  const ScaleLadder& ladder) {
  return np.scale == ScaleTag::F ? f_norm(f, phi0, phi, np, ladder) : b_norm(f, phi0, phi, np, ladder);
}

double definition_norm(const SampledSignal& f, const PartitionSystem& P, ScaleTag scale, double s, double p,
                       double q) {
  NormParams np;
  np.s = s;
  np.p = p;
  np.q = q;
  np.scale = scale;
  np.hom = P.homogeneous ? Homogeneity::Homogeneous : Homogeneity::Inhomogeneous;
  np.variant = np.reference_variant();
  auto fam = partition_family(P);
  return scale == ScaleTag::F ? f_norm_discrete(f, fam, np) : b_norm_discrete(f, fam, np);
}

NormReport norm_report(const SampledSignal& f, const std::vector<KernelPair>& pairs, const NormParams& base,
                       const ScaleLadder& ladder) {
  require(!pairs.empty(), ErrorKind::InvalidInput, "norm_report needs at least one kernel pair");
  NormReport r;
  r.params = base;
  for (auto& kp : pairs) r.kernel_ids.push_back(kp.phi0.id + "/" + kp.phi.id);
  const int count = base.variant_count();
  for (int v = 1; v <= count; ++v) {
    NormParams np = base;
    np.variant = v;
    r.values[v] = norm_value(f, pairs[0].phi0, pairs[0].phi, np, ladder);
    if (pairs.size() > 1) {
      const double other = norm_value(f, pairs[1].phi0, pairs[1].phi, np, ladder);
      if (r.values[v] > 0) r.cross_kernel[v] = other / r.values[v];
    }
  }
  r.all_zero = std::all_of(r.values.begin(), r.values.end(), [](auto& kv) { return kv.second == 0.0; });
  if (!r.all_zero) {
    const double ref = r.values[base.reference_variant()];
    for (auto& [v, val] : r.values)
      if (ref > 0) r.ratios[v] = val / ref;
  }
  return r;
}

}  // namespace besov
