#include "besov/grid.hpp"

#include <algorithm>
#include <cmath>

#include "besov/fourier.hpp"

namespace besov {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

GridSpec::GridSpec(int d, double X, int count) : dim(d), extent(X), n(count) { validate(*this); }

void validate(const GridSpec& g) {
  require(g.dim == 1 || g.dim == 2, ErrorKind::InvalidInput, "grid dimension must be 1 or 2");
  require(std::isfinite(g.extent) && g.extent > 0, ErrorKind::InvalidInput, "grid extent must be positive");
  require(g.n >= 16 && is_power_of_two(g.n), ErrorKind::InvalidInput,
          "samples per axis must be a power of two >= 16");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }
double GridSpec::freq_cell_volume() const { return std::pow(freq_step(), dim); }

std::array<int, 2> GridSpec::unravel(std::size_t idx) const {
  if (dim == 1) return {int(idx), 0};
  return {int(idx / std::size_t(n)), int(idx % std::size_t(n))};
}

Point GridSpec::position(std::size_t idx) const {
  auto [i, j] = unravel(idx);
  return dim == 1 ? Point{coord(i), 0.0} : Point{coord(i), coord(j)};
}

Point GridSpec::frequency(std::size_t idx) const {
  auto [i, j] = unravel(idx);
  return dim == 1 ? Point{freq(i), 0.0} : Point{freq(i), freq(j)};
}

double GridSpec::radius(std::size_t idx) const {
  auto p = position(idx);
  return std::hypot(p[0], p[1]);
}

double GridSpec::freq_radius(std::size_t idx) const {
  auto p = frequency(idx);
  return std::hypot(p[0], p[1]);
}

SampledSignal::SampledSignal(const GridSpec& g, std::vector<cplx> values) : grid(g), samples(std::move(values)) {
  validate(grid);
  require(samples.size() == grid.size(), ErrorKind::InvalidInput, "sample count does not match grid");
}

bool SampledSignal::all_finite() const {
  return std::all_of(samples.begin(), samples.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
  require(a.grid == b.grid, ErrorKind::InvalidInput, "grid mismatch");
  SampledSignal r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.samples[i] += b.samples[i];
  return r;
}

SampledSignal operator*(cplx c, const SampledSignal& a) {
  SampledSignal r = a;
  for (auto& z : r.samples) z *= c;
  return r;
}

// ---------------------------------------------------------------------------

ScaleLadder ScaleLadder::octaves(double base, int j_min, int j_max, int nu) {
  ScaleLadder l{base, j_min * nu, j_max * nu, nu};
  validate(l);
  return l;
}

ScaleLadder ScaleLadder::resolvable(const GridSpec& grid, double base, int nu, double lo, double hi) {
  const double tlo = std::max(2.0 * grid.spacing(), lo);
  const double thi = std::min(grid.extent / 2.0, hi);
  require(tlo <= thi, ErrorKind::OutOfResolvableRange, "empty resolvable scale window");
  const double lb = std::log(base) / nu;
  const double eps = 1e-9;
  // t_m = base^{-m/nu} in [tlo, thi]  <=>  -ln(thi)/lb <= m <= -ln(tlo)/lb
  int m_min = int(std::ceil(-std::log(thi) / lb - eps));
  int m_max = int(std::floor(-std::log(tlo) / lb + eps));
  require(m_min <= m_max, ErrorKind::OutOfResolvableRange, "no ladder node inside the resolvable window");
  ScaleLadder l{base, m_min, m_max, nu};
  validate(l);
  return l;
}

void validate(const ScaleLadder& l) {
  require(std::isfinite(l.base) && l.base > 1.0, ErrorKind::InvalidInput, "ladder base must exceed 1");
  require(l.nu >= 1, ErrorKind::InvalidInput, "ladder sub-steps must be positive");
  require(l.m_min <= l.m_max, ErrorKind::InvalidInput, "empty ladder");
}

double ScaleLadder::scale(std::size_t i) const { return std::pow(base, -double(node_index(i)) / nu); }

std::vector<double> ScaleLadder::scales() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = scale(i);
  return t;
}

double ScaleLadder::log_step() const { return std::log(base) / nu; }

std::vector<double> ScaleLadder::log_weights() const {
  std::vector<double> w(size(), log_step());
  if (w.size() > 1) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

void validate_exponent(double p, const char* name) {
  require(p > 0 && !std::isnan(p), ErrorKind::InvalidInput, std::string(name) + " must be in (0, inf]");
}

// ---------------------------------------------------------------------------

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

double lp_norm_values(std::span<const double> a, const GridSpec& grid, double p) {
  validate_exponent(p, "p");
  if (std::isinf(p)) {
    double m = 0;
    for (double x : a) m = std::max(m, x);
    return m;
  }
  std::vector<double> pw(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pw[i] = a[i] == 0 ? 0.0 : std::pow(a[i], p);
  return std::pow(pairwise_sum(pw) * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const SampledSignal& f, double p) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.samples[i]);
  return lp_norm_values(a, f.grid, p);
}

namespace {
void check_members(std::span<const SampledSignal> m) {
  require(!m.empty(), ErrorKind::InvalidInput, "empty family");
  for (auto& s : m) require(s.grid == m[0].grid, ErrorKind::InvalidInput, "family grid mismatch");
}

double lq_sum(std::span<const double> v, double q) {
  if (std::isinf(q)) return *std::max_element(v.begin(), v.end());
  std::vector<double> pw(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) pw[i] = v[i] == 0 ? 0.0 : std::pow(v[i], q);
  return std::pow(pairwise_sum(pw), 1.0 / q);
}
}  // namespace

double lq_of_lp(std::span<const SampledSignal> m, MixedNormParams mn) {
  check_members(m);
  validate_exponent(mn.q, "q");
  std::vector<double> v(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) v[k] = lp_norm(m[k], mn.p);
  return lq_sum(v, mn.q);
}

double lp_of_lq(std::span<const SampledSignal> m, MixedNormParams mn) {
  check_members(m);
  validate_exponent(mn.q, "q");
  const auto& g = m[0].grid;
  std::vector<double> pointwise(g.size()), col(m.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t k = 0; k < m.size(); ++k) col[k] = std::abs(m[k].samples[i]);
    pointwise[i] = lq_sum(col, mn.q);
  }
  return lp_norm_values(pointwise, g, mn.p);
}

// ---------------------------------------------------------------------------

SampledSignal resample(const SampledSignal& f, Point shift, double lambda) {
  require(std::isfinite(lambda) && lambda > 0, ErrorKind::InvalidInput, "dilation must be positive");
  const auto& g = f.grid;
  std::vector<cplx> spec = fourier::forward(g, f.samples);
  std::vector<cplx> out;
  if (lambda == 1.0) {
    out = f.samples;
  } else {
    out = fourier::interpolant_at_scaled(g, spec, lambda);
    spec = fourier::forward(g, out);
  }
  if (shift[0] != 0.0 || shift[1] != 0.0) {
    for (std::size_t i = 0; i < spec.size(); ++i) {
      auto xi = g.frequency(i);
      spec[i] *= std::polar(1.0, -(xi[0] * shift[0] + xi[1] * shift[1]));
    }
    out = fourier::inverse(g, spec);
  }
  return SampledSignal(g, std::move(out));
}

double scale_integral(std::span<const double> values, const ScaleLadder& ladder, double sq) {
  require(values.size() == ladder.size(), ErrorKind::InvalidInput, "values do not match ladder");
  auto w = ladder.log_weights();
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    terms[i] = values[i] == 0 ? 0.0 : w[i] * values[i] * std::pow(ladder.scale(i), -sq);
  return pairwise_sum(terms);
}

double scale_aggregate(std::span<const double> values, const ScaleLadder& ladder, double s, double q) {
  validate_exponent(q, "q");
  require(values.size() == ladder.size(), ErrorKind::InvalidInput, "values do not match ladder");
  if (std::isinf(q)) {
    double m = 0;
    for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, std::pow(ladder.scale(i), -s) * values[i]);
    return m;
  }
  std::vector<double> vq(values.size());
  for (std::size_t i = 0; i < vq.size(); ++i) vq[i] = values[i] == 0 ? 0.0 : std::pow(values[i], q);
  return std::pow(scale_integral(vq, ladder, s * q), 1.0 / q);
}

}  // namespace besov
