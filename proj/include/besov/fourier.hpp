// Centered discrete Fourier transforms on the sampling box, matching the
// continuous convention F g(xi) = (2 pi)^{-d/2} int e^{-i x.xi} g(x) dx.
//
// FFTW does the power-of-two work. Fractional transforms (evaluation of
// the trigonometric interpolant on a rescaled lattice) go through
// Bluestein's chirp convolution.
#pragma once

#include <span>
#include <vector>

#include "besov/grid.hpp"

namespace besov::fourier {

/// In place: out_k = sum_j in_j exp(sign 2 pi i (j - n/2)(k - n/2) / n) per axis.
void centered_dft(std::span<cplx> data, int dim, int n, int sign);

/// out_k = sum_j in_j exp(sign 2 pi i alpha (j - n/2)(k - n/2) / n), 1D.
std::vector<cplx> fractional_dft(std::span<const cplx> in, double alpha, int sign);

/// Frequency samples F g(xi_k) from space samples.
std::vector<cplx> forward(const GridSpec& grid, std::span<const cplx> space);
/// Space samples from frequency samples (exact inverse of forward).
std::vector<cplx> inverse(const GridSpec& grid, std::span<const cplx> freq);

/// F g(t xi_k) from the space samples of g (band-limited interpolation of the
/// stored spectrum). Points with |t xi| beyond the Nyquist box are zeroed.
std::vector<cplx> spectrum_at_scaled(const GridSpec& grid, std::span<const cplx> space, double t);

/// Samples of the band-limited interpolant at lambda * x_j. Points with
/// |lambda x| outside the box are zeroed.
std::vector<cplx> interpolant_at_scaled(const GridSpec& grid, std::span<const cplx> freq, double lambda);

}  // namespace besov::fourier
