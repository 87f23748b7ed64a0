// Analyzing kernels: partitions of unity, local means, and the numerical
// checkers for vanishing moments, decay, frequency-side smoothness and the
// admissibility constant.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "besov/grid.hpp"

namespace besov {

enum class KernelRole { Phi0, Phi, Wavelet };

const char* to_string(KernelRole role);
KernelRole kernel_role_from_string(const std::string& s);

/// Measured properties. Never set by hand: every field comes out of the
/// checkers below (see measure_meta).
struct KernelMeta {
  int L = 0;          // order of the first non-vanishing moment
  double K = 0;       // largest tested K for which the (1+|xi|)^K weight is integrable
  int N_dec = 0;      // largest tested N with a moderate decay constant
  double eps = 0;     // measured band on which the transform stays away from zero
  KernelRole role = KernelRole::Phi;
};

inline constexpr int kMaxMomentOrder = 10;
inline constexpr int kMaxDecayOrder = 8;
inline constexpr double kMaxSmoothnessK = 8.0;

struct Kernel {
  GridSpec grid;
  std::vector<cplx> space;
  std::vector<cplx> freq;
  KernelMeta meta;
  std::string id;

  SampledSignal signal() const { return SampledSignal(grid, space); }
};

/// Builds the frequency samples, checks consistency and measures the metadata.
Kernel make_kernel_from_space(const GridSpec& grid, std::vector<cplx> space, KernelRole role, std::string id);
Kernel make_kernel_from_freq(const GridSpec& grid, std::vector<cplx> freq, KernelRole role, std::string id);

template <class Fn>
Kernel kernel_from_function(const GridSpec& grid, Fn&& fn, KernelRole role, std::string id) {
  return make_kernel_from_space(grid, SampledSignal::from_function(grid, fn).samples, role, std::move(id));
}

/// Max deviation between the stored spectrum and the transform of the
/// stored space samples, relative to the largest spectral value.
double consistency_error(const Kernel& g);
KernelMeta measure_meta(const Kernel& g, KernelRole role);

// ---------------------------------------------------------------------------
// Partitions of unity

/// Smooth radial cut-off: 1 for r <= 1, 0 for r >= 2.
double bump_phi0(double r);
/// phi(r) = phi0(r) - phi0(2r), supported in 1/2 <= r <= 2.
double bump_phi(double r);

struct PartitionSystem {
  bool homogeneous = false;
  GridSpec grid;
  int j_min = 0;
  int j_max = 0;
  std::vector<std::vector<double>> members;  // frequency samples, one per j

  std::size_t size() const { return members.size(); }
  int index_to_j(std::size_t i) const { return j_min + int(i); }
  std::vector<double> sum() const;
  /// Kernel whose Fourier transform is the i-th member.
  Kernel member_kernel(std::size_t i) const;
};

/// j_max < 0 selects the largest level whose support starts inside the box.
PartitionSystem build_inhomogeneous_partition(const GridSpec& grid, int j_max = -1);
PartitionSystem build_homogeneous_partition(const GridSpec& grid, int j_min, int j_max);

// ---------------------------------------------------------------------------
// Local means

struct KernelPair {
  Kernel phi0;
  Kernel phi;
};

/// Phi0 = k0 and Phi = Laplacian^N k_up (frequency multiplication by (-|xi|^2)^N).
KernelPair build_local_means(const Kernel& k0, const Kernel& k_up, int N);
/// Phi0 = F^{-1} phi0 and Phi = F^{-1}(phi0 - phi0(2 .)) for a radial,
/// non-increasing phi0 with vanishing derivatives up to order R at 0.
KernelPair build_radial_kernel(const Kernel& phi0_freq, int R);

// ---------------------------------------------------------------------------
// Checkers

/// Multi-indices with |alpha|_1 <= lmax, ordered by total degree; in 2D
/// within a degree by decreasing first component.
std::vector<std::array<int, 2>> multi_indices(int dim, int lmax);

/// int x^alpha g(x) dx for every multi-index of multi_indices(dim, lmax).
std::vector<cplx> moments(const Kernel& g, int lmax);

/// First order whose moment is non-negligible against int |x^alpha g|.
int first_nonvanishing_moment(const Kernel& g, double rel_tol = 1e-8);

struct DecayCheck {
  bool ok = false;
  double c_N = 0;       // max |g| (1 + |x|)^N over the grid
  double edge_ratio = 0;  // shell sup of |g|(1+|x|)^N relative to max |g|
};
DecayCheck check_decay(const Kernel& g, int N);

struct SmoothnessCheck {
  bool ok = false;
  double worst_change = 0;  // relative change between half box and full box
  std::vector<double> integrals;  // full-box integral per multi-index
};
SmoothnessCheck check_smoothness_weight(const Kernel& g, double K, int A);

struct Admissibility {
  bool divergent = false;
  double value = 0;
  double origin_part = 0;
};
Admissibility admissibility(const Kernel& g);

/// Constant C with  int int |W_g f|^2 dx dt / t^{d+1} = C ||f||_2^2  for radial g:
/// C = (2 pi)^d c_g / |S^{d-1}|.
double frame_constant(const Kernel& g);

/// Measured band: Phi0-type -> half the radius where |F g| first drops to
/// 1e-6; Phi-type -> largest eps with |F g| > 1e-6 on eps/2 < |xi| < 2 eps.
double measure_band(const Kernel& g, KernelRole role);

}  // namespace besov
