#include "besov/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace besov::fourier {

namespace {

// Plans are created once per (rank, n, sign) and reused from any thread via
// the new-array execute interface, which FFTW documents as thread safe.
std::mutex g_plan_mutex;

fftw_plan plan_for(int rank, int n, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(rank, n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const std::size_t total = rank == 1 ? std::size_t(n) : std::size_t(n) * n;
  fftw_complex* buf = fftw_alloc_complex(total);
  int dims[2] = {n, n};
  fftw_plan p = fftw_plan_dft(rank, dims, buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  require(p != nullptr, ErrorKind::Precondition, "FFTW plan creation failed");
  cache.emplace(key, p);
  return p;
}

void raw_fft(std::span<cplx> data, int rank, int n, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(rank, n, sign), ptr, ptr);
}

inline double parity(int j) { return (j & 1) ? -1.0 : 1.0; }

}  // namespace

void centered_dft(std::span<cplx> data, int dim, int n, int sign) {
  require(is_power_of_two(n) && n >= 4 && (n / 2) % 2 == 0, ErrorKind::InvalidInput, "bad transform length");
  require(data.size() == (dim == 1 ? std::size_t(n) : std::size_t(n) * n), ErrorKind::InvalidInput,
          "transform size mismatch");
  // (j - n/2)(k - n/2) = jk - (j + k) n/2 + n^2/4 ; with n/2 even the phase
  // reduces to (-1)^{j+k} around a plain DFT.
  if (dim == 1) {
    for (int j = 0; j < n; ++j) data[j] *= parity(j);
    raw_fft(data, 1, n, sign);
    for (int k = 0; k < n; ++k) data[k] *= parity(k);
  } else {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) data[std::size_t(a) * n + b] *= parity(a + b);
    raw_fft(data, 2, n, sign);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) data[std::size_t(a) * n + b] *= parity(a + b);
  }
}

std::vector<cplx> fractional_dft(std::span<const cplx> in, double alpha, int sign) {
  const int n = int(in.size());
  require(n >= 1, ErrorKind::InvalidInput, "empty fractional transform");
  int M = 1;
  while (M < 2 * n) M <<= 1;
  const double c = (sign < 0 ? -1.0 : 1.0) * kPi * alpha / n;
  auto chirp = [&](long m) { return std::polar(1.0, c * double(m) * double(m)); };

  std::vector<cplx> a(M, cplx(0)), b(M, cplx(0));
  for (int j = 0; j < n; ++j) a[j] = in[j] * chirp(j - n / 2);
  for (int m = 0; m < n; ++m) b[m] = std::conj(chirp(m));
  for (int m = 1; m < n; ++m) b[M - m] = std::conj(chirp(m));
  raw_fft(a, 1, M, -1);
  raw_fft(b, 1, M, -1);
  for (int i = 0; i < M; ++i) a[i] *= b[i];
  raw_fft(a, 1, M, +1);
  std::vector<cplx> out(n);
  for (int k = 0; k < n; ++k) out[k] = chirp(k - n / 2) * a[k] / double(M);
  return out;
}

std::vector<cplx> forward(const GridSpec& g, std::span<const cplx> space) {
  std::vector<cplx> v(space.begin(), space.end());
  centered_dft(v, g.dim, g.n, -1);
  const double s = std::pow(g.spacing() / std::sqrt(2 * kPi), g.dim);
  for (auto& z : v) z *= s;
  return v;
}

std::vector<cplx> inverse(const GridSpec& g, std::span<const cplx> freq) {
  std::vector<cplx> v(freq.begin(), freq.end());
  centered_dft(v, g.dim, g.n, +1);
  const double s = std::pow(g.freq_step() / std::sqrt(2 * kPi), g.dim);
  for (auto& z : v) z *= s;
  return v;
}

namespace {

// Separable fractional transform of a 1D or row-major 2D array.
std::vector<cplx> separable_fractional(const GridSpec& g, std::span<const cplx> in, double alpha, int sign) {
  const int n = g.n;
  if (g.dim == 1) return fractional_dft(in, alpha, sign);
  std::vector<cplx> v(in.begin(), in.end()), line(n);
  for (int r = 0; r < n; ++r) {
    auto row = fractional_dft(std::span<const cplx>(v.data() + std::size_t(r) * n, n), alpha, sign);
    std::copy(row.begin(), row.end(), v.begin() + std::size_t(r) * n);
  }
  for (int col = 0; col < n; ++col) {
    for (int r = 0; r < n; ++r) line[r] = v[std::size_t(r) * n + col];
    auto out = fractional_dft(line, alpha, sign);
    for (int r = 0; r < n; ++r) v[std::size_t(r) * n + col] = out[r];
  }
  return v;
}

}  // namespace

std::vector<cplx> spectrum_at_scaled(const GridSpec& g, std::span<const cplx> space, double t) {
  require(std::isfinite(t) && t > 0, ErrorKind::InvalidInput, "scale must be positive");
  require(space.size() == g.size(), ErrorKind::InvalidInput, "sample count does not match grid");
  std::vector<cplx> v;
  if (t == 1.0) {
    v.assign(space.begin(), space.end());
    centered_dft(v, g.dim, g.n, -1);
  } else {
    v = separable_fractional(g, space, t, -1);
  }
  const double s = std::pow(g.spacing() / std::sqrt(2 * kPi), g.dim);
  const double lim = g.nyquist() * (1 + 1e-12);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto xi = g.frequency(i);
    if (t > 1.0 && (std::abs(t * xi[0]) > lim || std::abs(t * xi[1]) > lim))
      v[i] = 0;
    else
      v[i] *= s;
  }
  return v;
}

std::vector<cplx> interpolant_at_scaled(const GridSpec& g, std::span<const cplx> freq, double lambda) {
  require(std::isfinite(lambda) && lambda > 0, ErrorKind::InvalidInput, "dilation must be positive");
  require(freq.size() == g.size(), ErrorKind::InvalidInput, "sample count does not match grid");
  std::vector<cplx> v = separable_fractional(g, freq, lambda, +1);
  const double s = std::pow(g.freq_step() / std::sqrt(2 * kPi), g.dim);
  const double lim = g.extent * (1 + 1e-12);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto x = g.position(i);
    if (std::abs(lambda * x[0]) > lim || std::abs(lambda * x[1]) > lim)
      v[i] = 0;
    else
      v[i] *= s;
  }
  return v;
}

}  // namespace besov::fourier
