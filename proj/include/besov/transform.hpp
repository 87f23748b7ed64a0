// Convolution with dilated kernels, the continuous wavelet transform, and the
// maximal operators (Peetre, Hardy-Littlewood, tent-ball sums).
//
// The hot loops come in two flavours: OpenMP-parallel production versions
// here, and brute-force serial references in namespace `reference` that the
// tests and the benchmark compare against.
#pragma once

#include <string>
#include <vector>

#include "besov/grid.hpp"
#include "besov/kernels.hpp"

namespace besov {

enum class Normalization { L1, L2, Lp };

struct DilationTag {
  Normalization norm = Normalization::L1;
  double p = 1.0;

  static DilationTag l1() { return {Normalization::L1, 1.0}; }
  static DilationTag l2() { return {Normalization::L2, 2.0}; }
  static DilationTag lp(double p) { return {Normalization::Lp, p}; }
  double exponent() const;
};

/// Resolvable scale window [2h, X/2] of a grid.
bool scale_resolvable(const GridSpec& grid, double t);
void require_resolvable(const GridSpec& grid, std::span<const double> scales);

/// t^{-d/p} g(x/t), computed on the frequency side as t^{d(1-1/p)} F g(t xi).
Kernel dilate(const Kernel& g, double t, DilationTag tag);

/// Circular convolution with F(f*g) = (2 pi)^{d/2} Ff Fg.
SampledSignal convolve(const SampledSignal& f, const Kernel& g);
SampledSignal convolve(const SampledSignal& f, const SampledSignal& g);

/// Largest |sample| on the boundary ring of the box, relative to the peak.
double edge_tail(const SampledSignal& f);

struct GroupFunction {
  GridSpec grid;
  ScaleLadder ladder;
  std::vector<std::vector<cplx>> columns;  // one spatial field per ladder node
  std::size_t dropped = 0;                 // nodes lost by a translation

  GroupFunction() = default;
  GroupFunction(const GridSpec& g, const ScaleLadder& l);

  std::size_t nodes() const { return columns.size(); }
  double scale(std::size_t i) const { return ladder.scale(i); }
  SampledSignal column(std::size_t i) const { return SampledSignal(grid, columns[i]); }
};

GroupFunction operator*(cplx c, const GroupFunction& F);

/// (D_t Phi) * f for every ladder node (L1 dilates).
GroupFunction convolution_field(const SampledSignal& f, const Kernel& phi, const ScaleLadder& ladder);

/// W_g f(x,t) = t^{d/2} [(D_t g(-.)) * conj(f)](x) on every ladder node.
GroupFunction cwt(const SampledSignal& f, const Kernel& g, const ScaleLadder& ladder);

/// Weighted sup over in-box offsets: out(x) = max_y |v(x+y)| / (1+|y|/t)^a.
std::vector<double> peetre_sup(std::span<const double> abs_values, const GridSpec& grid, double t, double a);

GroupFunction peetre_maximal(const GroupFunction& F, double a);

/// (Phi_k^* f)_a for a precomputed dilate Phi_k = 2^{kd} Phi(2^k .).
SampledSignal discrete_peetre(const SampledSignal& f, const Kernel& phi_k, double a, int k);

/// Centered-cube Hardy-Littlewood maximal function on the grid.
SampledSignal hl_maximal(const SampledSignal& f);

/// sum over grid offsets |z| < t of v(x+z) h^d, balls clipped to the box.
std::vector<double> ball_sums(std::span<const double> values, const GridSpec& grid, double t);

/// max over grid offsets |z| < t of v(x+z), balls clipped to the box.
std::vector<double> ball_max(std::span<const double> values, const GridSpec& grid, double t);

struct DecayProfile {
  double scale_slope = 0;
  double spatial_order = 0;
  std::array<double, 2> window{0, 0};  // t-range of the slope fit
  double residual = 0;                 // rms residual of the slope fit
};

/// Small-t behaviour of sup_x |W_Phi Phi0(x,t)| and spatial decay at a fixed small t.
DecayProfile cwt_decay_profile(const Kernel& phi, const Kernel& phi0, const ScaleLadder& ladder);

/// G_l = sum_k 2^{-|k-l| delta} g_k over a finite index window.
std::vector<double> weighted_chain_smoother(std::span<const double> g, double delta);
std::vector<SampledSignal> weighted_chain_smoother(std::span<const SampledSignal> g, double delta);

namespace reference {
std::vector<double> peetre_sup(std::span<const double> abs_values, const GridSpec& grid, double t, double a);
SampledSignal hl_maximal(const SampledSignal& f);
std::vector<double> ball_sums(std::span<const double> values, const GridSpec& grid, double t);
GroupFunction cwt(const SampledSignal& f, const Kernel& g, const ScaleLadder& ladder);
}  // namespace reference

}  // namespace besov
