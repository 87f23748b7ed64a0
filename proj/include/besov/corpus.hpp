// Deterministic test signals with closed forms, and the standard analysing
// kernels the experiments use.
#pragma once

#include <string>
#include <vector>

#include "besov/kernels.hpp"

namespace besov {

struct CorpusMember {
  std::string name;     // e.g. "gauss_w2"
  std::string formula;  // closed form, for reports
  SampledSignal signal;
};

struct Corpus {
  std::string selector;
  std::vector<CorpusMember> members;
};

/// Selectors:
///   gaussian-family        exp(-|x|^2 / (2 w^2)), w in {1/2, 1, 2, 4}
///   gaussian-derivatives   d^k/dx_1^k exp(-|x|^2/2), k = 1..4
///   bsplines               centred tensor B-splines N_m, m = 2..5
///   chirps                 exp(-|x|^2/2) cos(w x_1), w in {2, 4, 8}, and exp(-|x|^2/4 + i x_1^2/2)
///   dilation-family        exp(-|lambda x|^2/2) for lambda = 2^{k/2}, k = -2..3
///   translation-family     exp(-|x - z|^2/2) for z_1 in {-3, -1.5, 0, 1.5, 3, 4.5}
///   dilation-translation   three dilations times two shifts of exp(-|x|^2/2)
///   zero                   the zero signal
/// Every member is checked to have a boundary tail below 1e-10 of its peak.
Corpus make_corpus(const std::string& selector, const GridSpec& grid);
std::vector<std::string> corpus_selectors();

/// max |f| over the outer 5% shell of the box, relative to max |f|.
double boundary_tail(const SampledSignal& f);

inline constexpr double kCorpusTailBound = 1e-10;

// Standard kernels ----------------------------------------------------------

/// (d - |x|^2) exp(-|x|^2/2), role Wavelet.
Kernel mexican_hat(const GridSpec& grid);
/// exp(-|x|^2/2), role Phi0.
Kernel gaussian_kernel(const GridSpec& grid, double width = 1.0, KernelRole role = KernelRole::Phi0);
/// Phi0 = exp(-|x|^2/2), Phi = d^L/dx_1^L exp(-|x|^2/2) (first non-vanishing moment of order L).
KernelPair gaussian_derivative_pair(const GridSpec& grid, int L);
/// Gaussian local means: Phi0 = exp(-|x|^2/(2 w^2)), Phi = Laplacian^N of the same Gaussian.
KernelPair gaussian_local_means(const GridSpec& grid, int N, double width = 1.0);

}  // namespace besov
