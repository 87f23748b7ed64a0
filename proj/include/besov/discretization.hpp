// The lattice x_{j,k} = (alpha k beta^-j, beta^-j) on the ax+b group, the
// sequence-space norms attached to the L- and P-spaces, and wavelet
// analysis/synthesis on the sampled grid.
#pragma once

#include <array>
#include <map>
#include <tuple>
#include <vector>

#include "besov/group.hpp"
#include "besov/splines.hpp"

namespace besov {

/// Level j covers the spatial box [-R, R)^d with k such that
/// alpha k beta^-j lies in that box.
struct LatticeSpec {
  double alpha = 1.0;
  double beta = 2.0;
  int dim = 1;
  int j_min = 0;
  int j_max = 0;
  double box = 8.0;  // R

  std::array<int, 2> k_range(int j) const;  // inclusive, per axis
  double cell(int j) const { return alpha * std::pow(beta, -j); }
};

void validate(const LatticeSpec& spec);

struct Tile {
  std::array<double, 2> lo{0, 0}, hi{0, 0};  // Q_{j,k}
  double t_lo = 0, t_hi = 0;                 // [beta^-(j+1), beta^-j]
};

struct LatticePoint {
  int j = 0;
  std::array<int, 2> k{0, 0};
  GroupPoint pt;
  Tile tile;
};

LatticePoint lattice_point(const LatticeSpec& spec, int j, std::array<int, 2> k);
std::vector<LatticePoint> lattice_points(const LatticeSpec& spec);

/// Species code: 0 = scaling function, otherwise c_0 + 2 c_1 for the tensor
/// species (1-D: 1 = wavelet).
struct CoeffEntry {
  int c = 1;
  int j = 0;
  std::array<int, 2> k{0, 0};
  cplx value{0, 0};
};

struct CoeffField {
  LatticeSpec lattice;
  std::vector<CoeffEntry> entries;

  CoeffField() = default;
  explicit CoeffField(const LatticeSpec& l) : lattice(l) {}
  void add(int c, int j, std::array<int, 2> k, cplx v) { entries.push_back({c, j, k, v}); }
  /// Entries restricted to wavelet species (c != 0).
  CoeffField wavelet_part() const;
  double l2_squared() const;
};

CoeffField operator*(cplx a, const CoeffField& c);

/// F(x,t) = sum |lambda_{j,k}| chi_{Q_{j,k}}(x) chi_{[beta^-(j+1), beta^-j)}(t)
/// on the given grid and ladder (half-open tiles; species summed).
GroupFunction indicator_embed(const CoeffField& c, const GridSpec& grid, const ScaleLadder& ladder);

/// || (sum_l sum_k beta^{l(s+d/q)q} |lambda_{l,k}|^q chi_{l,k})^{1/q} | L_p ||, exactly.
double p_sharp_norm(const CoeffField& c, double s, double p, double q);
/// ( sum_l beta^{l(s+d/q-d/p)q} (sum_k |lambda_{l,k}|^p)^{q/p} )^{1/q}
double l_sharp_norm(const CoeffField& c, double s, double p, double q);

/// Orthonormal spline-wavelet coefficients <Psi^c_{j,k}, f> = int f conj(Psi)
/// for j in [j_min, j_max] (wavelet species) plus the scaling species at
/// j_min. Requires alpha = 1, beta = 2 and lattice points on the grid.
CoeffField frame_coefficients(const SampledSignal& f, const SplineSystem& sys, const LatticeSpec& spec);

/// Same coefficients read off the continuous wavelet transform:
/// lambda_{j,k} = conj(W_{Psi^c} f(alpha k beta^-j, beta^-j)). Works for any
/// lattice whose points sit on grid samples.
CoeffField frame_coefficients_cwt(const SampledSignal& f, const std::vector<std::pair<int, Kernel>>& species,
                                  const LatticeSpec& spec, bool include_scaling_at_coarsest = true);

/// The species kernels used by frame_coefficients (scaling species first).
std::vector<std::pair<int, Kernel>> spline_species(const SplineSystem& sys, const GridSpec& grid);

/// sum lambda_{j,k} Psi^c_{j,k} sampled on the grid.
SampledSignal atomic_synthesis(const CoeffField& c, const SplineSystem& sys, const GridSpec& grid);

struct FrameEquivalence {
  double function_norm = 0;
  double sequence_norm = 0;
  double ratio = 0;  // function / sequence
  Interval window;
};

/// Coorbit norm of f against the sequence norm of its wavelet coefficients
/// (P-sharp for F, L-sharp for B, smoothness shifted by d/2 - d/q). Refuses
/// parameters outside the spline frame window.
FrameEquivalence frame_norm_equivalence(const SampledSignal& f, const SplineSystem& sys, const LatticeSpec& spec,
                                        const NormParams& np, double a, const ScaleLadder& ladder);

}  // namespace besov
