#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "tactile/error.hpp"

namespace tactile {

namespace detail {

inline std::size_t smallest_factor(std::size_t n) {
  if (n % 2 == 0) return 2;
  for (std::size_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return f;
  }
  return n;
}

/// e^{-i 2 pi m / n}, with m reduced first so large products keep full accuracy.
inline std::complex<double> twiddle(std::size_t m, std::size_t n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(m % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// Mixed-radix decimation in time. Reads x[offset + stride * j] for j < n.
inline void fft_recursive(std::span<const std::complex<double>> x, std::size_t offset,
                          std::size_t stride, std::size_t n, std::span<std::complex<double>> out) {
  if (n == 1) {
    out[0] = x[offset];
    return;
  }
  const std::size_t p = smallest_factor(n);
  if (p == n) {
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t j = 0; j < n; ++j) acc += x[offset + stride * j] * twiddle(j * k, n);
      out[k] = acc;
    }
    return;
  }
  const std::size_t m = n / p;
  std::vector<std::complex<double>> sub(n);
  for (std::size_t r = 0; r < p; ++r) {
    fft_recursive(x, offset + stride * r, stride * p, m,
                  std::span<std::complex<double>>(sub).subspan(r * m, m));
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t q = 0; q < p; ++q) {
      const std::size_t kk = k + q * m;
      std::complex<double> acc = sub[k];
      for (std::size_t r = 1; r < p; ++r) acc += sub[r * m + k] * twiddle(r * kk, n);
      out[kk] = acc;
    }
  }
}

}  // namespace detail

/// Full two-sided forward transform X_k = sum_n x[n] e^{-i 2 pi k n / N}.
inline std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x) {
  if (x.empty()) throw Error(ErrorKind::Empty, "dft of an empty sequence");
  std::vector<std::complex<double>> out(x.size());
  detail::fft_recursive(x, 0, 1, x.size(), out);
  return out;
}

inline std::vector<std::complex<double>> dft(std::span<const double> x) {
  std::vector<std::complex<double>> cx(x.begin(), x.end());
  return dft(std::span<const std::complex<double>>(cx));
}

struct Spectrum {
  std::vector<double> freqs;
  std::vector<double> mags;
};

/// One-sided unnormalized magnitudes |X_k| for k = 0..N/2 at k * fs / N Hz.
inline Spectrum dft_magnitudes(std::span<const double> samples, double fs) {
  if (samples.size() < 2) {
    throw Error(ErrorKind::TooShort,
                "dft_magnitudes needs at least 2 samples, got " + std::to_string(samples.size()));
  }
  const auto full = dft(samples);
  const std::size_t n = samples.size();
  Spectrum s;
  s.freqs.reserve(n / 2 + 1);
  s.mags.reserve(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    s.freqs.push_back(static_cast<double>(k) * fs / static_cast<double>(n));
    s.mags.push_back(std::abs(full[k]));
  }
  return s;
}

}  // namespace tactile
