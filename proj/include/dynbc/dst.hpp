#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

namespace detail {

struct FourierTable {
  std::vector<double> cos_;  // cos(-2*pi*k/n), k < n/2
  std::vector<double> sin_;  // sin(-2*pi*k/n), k < n/2
};

/// Twiddle factors for a length-n transform, built once per size.
/// std::map nodes are stable, so returned references outlive later inserts.
inline const FourierTable& fourier_table(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, FourierTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) {
    FourierTable& tab = it->second;
    tab.cos_.resize(n / 2);
    tab.sin_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
      tab.cos_[k] = std::cos(ang);
      tab.sin_[k] = std::sin(ang);
    }
  }
  return it->second;
}

/// In-place radix-2 decimation-in-time transform with sign convention
/// X[k] = sum_j x[j] exp(-2*pi*i*j*k/n).  Size must be a power of two.
inline void fft_radix2(std::vector<double>& re, std::vector<double>& im) {
  const std::size_t n = re.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  const FourierTable& tab = fourier_table(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const double wr = tab.cos_[k * stride];
        const double wi = tab.sin_[k * stride];
        const std::size_t a = base + k;
        const std::size_t b = a + half;
        const double xr = re[b] * wr - im[b] * wi;
        const double xi = re[b] * wi + im[b] * wr;
        re[b] = re[a] - xr;
        im[b] = im[a] - xi;
        re[a] += xr;
        im[a] += xi;
      }
    }
  }
}

/// Unnormalized sine transform of the first kind on nx-1 interior samples:
/// out[k-1] = sum_{j=1}^{nx-1} in[j-1] * sin(pi*j*k/nx).  Runs the radix-2
/// transform on the odd extension of length 2*nx, whose spectrum is purely
/// imaginary with Im X[k] = -2 * out[k-1].
inline std::vector<double> dst_i(const std::vector<double>& in) {
  const std::size_t m = in.size();
  const std::size_t n = 2 * (m + 1);
  std::vector<double> re(n, 0.0), im(n, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    re[j] = in[j - 1];
    re[n - j] = -in[j - 1];
  }
  fft_radix2(re, im);
  std::vector<double> out(m);
  for (std::size_t k = 1; k <= m; ++k) out[k - 1] = -0.5 * im[k];
  return out;
}

}  // namespace detail

/// Sine coefficients of interior samples; the forward direction carries the
/// 2/nx normalization, so dst_inverse(dst_forward(g)) == g.
inline SpectrumFunction dst_forward(const GridFunction& g, const DomainParams& p) {
  detail::require(g.size() == p.interior_points(),
                  "dst_forward: grid size does not match domain");
  SpectrumFunction s{detail::dst_i(g.values)};
  const double scale = 2.0 / static_cast<double>(p.nx);
  for (double& ck : s.coeffs) ck *= scale;
  return s;
}

/// Interior samples of sum_k coeffs[k-1] * sin(k*pi*x/beta).
inline GridFunction dst_inverse(const SpectrumFunction& s, const DomainParams& p) {
  detail::require(s.size() == p.interior_points(),
                  "dst_inverse: spectrum size does not match domain");
  return GridFunction{detail::dst_i(s.coeffs)};
}

}  // namespace dynbc
