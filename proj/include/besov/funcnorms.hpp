// Besov and Lizorkin-Triebel (quasi-)norms through local means: the
// continuous variants (plain, Peetre, Lusin/tent) and the discrete ones
// (Peetre sum, plain sum), homogeneous and inhomogeneous.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "besov/kernels.hpp"
#include "besov/transform.hpp"

namespace besov {

enum class ScaleTag { B, F };
enum class Homogeneity { Homogeneous, Inhomogeneous };

const char* to_string(ScaleTag s);
const char* to_string(Homogeneity h);

struct NormParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double a = 1.5;
  ScaleTag scale = ScaleTag::F;
  Homogeneity hom = Homogeneity::Inhomogeneous;
  int variant = 1;

  bool homogeneous() const { return hom == Homogeneity::Homogeneous; }
  int variant_count() const { return scale == ScaleTag::F ? 5 : 4; }
  /// Reference variant for ratios: 5 for F, 4 for B.
  int reference_variant() const { return variant_count(); }
  bool uses_peetre() const;
};

/// Checks the parameter constraints (p, q ranges, a against d/min(p,q) or
/// d/p for the Peetre variants, and L > s for the supplied kernel).
void validate(const NormParams& np, int dim, const KernelMeta& phi_meta);

/// Explicit per-level kernels for the discrete variants: either the L1
/// dilates 2^{kd} Phi(2^k .) (Phi0 at k = 0 when inhomogeneous) or the
/// members of a dyadic partition of unity.
struct DiscreteFamily {
  std::vector<int> k;
  std::vector<Kernel> kernels;
};

DiscreteFamily dilation_family(const Kernel& phi0, const Kernel& phi, Homogeneity hom, int k_min, int k_max);
DiscreteFamily partition_family(const PartitionSystem& P);

/// Level range whose dilates 2^{-k} fall inside the ladder's scale window.
std::array<int, 2> discrete_levels(const ScaleLadder& ladder, const GridSpec& grid, Homogeneity hom);

/// Ladder actually used by the continuous variants: clipped to the
/// resolvable window, and to t <= 1 when inhomogeneous.
ScaleLadder continuous_ladder(const ScaleLadder& ladder, const GridSpec& grid, Homogeneity hom);

double f_norm(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
              const ScaleLadder& ladder);
double b_norm(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
              const ScaleLadder& ladder);

/// Discrete variants on an explicit family (F: 4, 5; B: 3, 4).
double f_norm_discrete(const SampledSignal& f, const DiscreteFamily& fam, const NormParams& np);
double b_norm_discrete(const SampledSignal& f, const DiscreteFamily& fam, const NormParams& np);

/// The textbook norm built from a partition of unity.
double definition_norm(const SampledSignal& f, const PartitionSystem& P, ScaleTag scale, double s, double p,
                       double q);

double norm_value(const SampledSignal& f, const Kernel& phi0, const Kernel& phi, const NormParams& np,
                  const ScaleLadder& ladder);

struct NormReport {
  NormParams params;
  std::map<int, double> values;           // variant -> value
  std::map<int, double> ratios;           // variant -> value / reference value
  std::vector<std::string> kernel_ids;
  std::map<int, double> cross_kernel;     // variant -> value(pair 2) / value(pair 1)
  bool all_zero = false;
};

NormReport norm_report(const SampledSignal& f, const std::vector<KernelPair>& pairs, const NormParams& base,
                       const ScaleLadder& ladder);

}  // namespace besov
