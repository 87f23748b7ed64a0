// Sampled signals on a truncated uniform box, geometric scale ladders, and
// the scalar / mixed Lebesgue (quasi-)norms everything else is built from.
//
// Layout: samples are stored row-major with axis 0 (x) slowest. Index j on
// an axis sits at x_j = -X + j h with h = 2X/n, so the origin is index n/2.
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "besov/errors.hpp"

namespace besov {

using cplx = std::complex<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

using Point = std::array<double, 2>;

struct GridSpec {
  int dim = 1;
  double extent = 32.0;  // half-width X of [-X, X]^d
  int n = 4096;          // samples per axis

  GridSpec() = default;
  GridSpec(int d, double X, int count);

  double spacing() const { return 2.0 * extent / n; }
  std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n); }
  double coord(int j) const { return -extent + j * spacing(); }
  double cell_volume() const;

  // Frequency box: xi_k = (k - n/2) * pi / X, full width 2*pi/h.
  double freq_step() const { return kPi / extent; }
  double freq(int k) const { return (k - n / 2) * freq_step(); }
  double nyquist() const { return kPi / spacing(); }
  double freq_extent() const { return 2.0 * kPi / spacing(); }
  double freq_cell_volume() const;

  std::array<int, 2> unravel(std::size_t idx) const;
  std::size_t ravel(int i0, int i1) const { return dim == 1 ? std::size_t(i0) : std::size_t(i0) * n + i1; }
  Point position(std::size_t idx) const;
  Point frequency(std::size_t idx) const;
  double radius(std::size_t idx) const;
  double freq_radius(std::size_t idx) const;

  bool operator==(const GridSpec&) const = default;
};

void validate(const GridSpec& grid);
bool is_power_of_two(long v);

struct SampledSignal {
  GridSpec grid;
  std::vector<cplx> samples;

  SampledSignal() = default;
  SampledSignal(const GridSpec& g, std::vector<cplx> values);
  explicit SampledSignal(const GridSpec& g) : SampledSignal(g, std::vector<cplx>(g.size())) {}

  template <class Fn>
  static SampledSignal from_function(const GridSpec& g, Fn&& fn) {
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cplx(fn(g.position(i)));
    return SampledSignal(g, std::move(v));
  }

  std::size_t size() const { return samples.size(); }
  bool all_finite() const;
};

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator*(cplx c, const SampledSignal& a);

/// Geometric ladder t_m = base^(-m/nu), m in [m_min, m_max]. Nodes run from
/// the coarsest scale (m_min) to the finest (m_max).
struct ScaleLadder {
  double base = 2.0;
  int m_min = 0;
  int m_max = 0;
  int nu = 8;

  static ScaleLadder octaves(double base, int j_min, int j_max, int nu);
  /// Largest node range whose scales lie inside [max(2h, lo), min(X/2, hi)].
  static ScaleLadder resolvable(const GridSpec& grid, double base, int nu, double lo = 0.0, double hi = kInf);

  std::size_t size() const { return std::size_t(m_max - m_min + 1); }
  int node_index(std::size_t i) const { return m_min + int(i); }
  double scale(std::size_t i) const;
  std::vector<double> scales() const;
  double log_step() const;
  /// Trapezoid weights in log t (interior ln(base)/nu, endpoints halved).
  std::vector<double> log_weights() const;
  bool operator==(const ScaleLadder&) const = default;
};

void validate(const ScaleLadder& ladder);

struct MixedNormParams {
  double p = 2.0;
  double q = 2.0;
};

void validate_exponent(double p, const char* name);

/// Fixed-order pairwise summation so parallel callers reproduce bit for bit.
double pairwise_sum(std::span<const double> v);

double lp_norm(const SampledSignal& f, double p);
/// L_p norm of nonnegative sampled values on `grid` (rectangle rule).
double lp_norm_values(std::span<const double> abs_values, const GridSpec& grid, double p);

double lq_of_lp(std::span<const SampledSignal> members, MixedNormParams mn);
double lp_of_lq(std::span<const SampledSignal> members, MixedNormParams mn);

/// Samples of x -> f(lambda (x - shift)). The shift is periodic on the box,
/// the dilation is about the origin with zero extension outside the box.
SampledSignal resample(const SampledSignal& f, Point shift, double lambda);

/// Geometric-grid quadrature of int v(t) t^{-sq} dt/t over the ladder.
double scale_integral(std::span<const double> values, const ScaleLadder& ladder, double sq);

/// (int t^{-sq} v(t)^q dt/t)^{1/q}, or sup_t t^{-s} v(t) when q is infinite.
double scale_aggregate(std::span<const double> values, const ScaleLadder& ladder, double s, double q);

}  // namespace besov
