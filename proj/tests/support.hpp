#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fujita/fields.hpp"

namespace fujita::testing {

/// amplitude * max(0, 1 - |x - e_N|^2)^2
inline double bump(std::span<const double> x, double amplitude = 1.0) {
  double r2 = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    const double d = a + 1 == x.size() ? x[a] - 1.0 : x[a];
    r2 += d * d;
  }
  const double b = std::max(0.0, 1.0 - r2);
  return amplitude * b * b;
}

inline HalfSpaceData bump_half(const Grid& g, double amplitude = 1.0) {
  return sample_halfspace(g, [&](std::span<const double> x) { return bump(x, amplitude); });
}

inline std::vector<double> random_values(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Naive dx^N sum_x e^{-i x.xi} f(x): independent of FFTW and of the parity trick.
inline std::complex<double> naive_transform(const Field& f, std::span<const double> xi) {
  const Grid& g = f.grid();
  std::complex<double> s = 0.0;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    double phase = 0.0;
    for (int a = 0; a < g.dim; ++a) phase -= g.coordinate(idx[static_cast<std::size_t>(a)]) * xi[static_cast<std::size_t>(a)];
    s += f[flat] * std::polar(1.0, phase);
  }
  return s * g.cell_volume();
}

}  // namespace fujita::testing
