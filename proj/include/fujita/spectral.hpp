#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include <json.hpp>

#include "fujita/fields.hpp"

namespace fujita {

using complex = std::complex<double>;

/// Samples of a transform on the full frequency lattice, DFT index order.
struct Spectrum {
  Grid grid{};
  std::vector<complex> values{};
};

/// F(f)(xi) = int e^{-i x.xi} f(x) dx as a Riemann sum (factor dx^N, phase
/// from the box offset -L included), at xi_k = pi k / L.
Spectrum forward_dft(const Field& field);
/// (2 pi)^{-N} int e^{i x.xi} F(xi) dxi with factor (dxi / 2 pi)^N; returns the real part.
Field inverse_dft(const Spectrum& spectrum);

/// Direct-sum transform at an arbitrary frequency (no FFT).
complex dft_at(const Field& field, std::span<const double> xi);

/// dxi^N * sum |F(f)(xi_k)|.
double fourier_l1_norm(const Field& field);

/// Real-to-complex FFT on a grid, owning its FFTW plans and buffers.
///
/// Spectrum layout is the FFTW r2c layout: all axes full except the last,
/// which keeps n/2 + 1 nonnegative indices. Not safe to share across threads.
class RealTransform {
 public:
  explicit RealTransform(const Grid& grid);
  ~RealTransform();
  RealTransform(RealTransform&&) noexcept;
  RealTransform& operator=(RealTransform&&) noexcept;
  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  const Grid& grid() const;
  std::size_t spectrum_size() const;

  /// Raw (unscaled) forward FFT.
  void forward(std::span<const double> in, std::span<complex> out);
  /// Raw inverse FFT divided by n^N, so inverse(forward(f)) == f.
  void inverse(std::span<const complex> in, std::span<double> out);

  /// |xi|^2 and the frequency vector of a spectrum slot.
  std::array<double, kMaxDim> frequency(std::size_t slot) const;
  /// (-1)^{k_1 + ... + k_N}: phase relating raw FFT output to the continuum transform.
  double phase(std::size_t slot) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Spectral (periodic) convolution dx^N sum_y a(y) b(x - y).
Field spectral_convolve(const Field& a, const Field& b);

struct SmallXiReport {
  double m1 = 0.0;
  struct Probe {
    std::vector<double> xi;
    double magnitude = 0.0;
    double predicted = 0.0;  // 2 m1 |xi_N|
    double ratio = 0.0;      // magnitude / predicted, 0 when xi_N == 0
  };
  std::vector<Probe> probes;
  double hyperplane_max = 0.0;  // largest |F(v)| among probes with xi_N == 0
  double tolerance = 0.05;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Compares |F(v0)(xi)| with 2 m1 |xi_N| along a probe sequence of decreasing |xi|.
/// Passes when the ratio at the smallest probe with xi_N != 0 lies within
/// `tolerance` of 1 and hyperplane probes vanish to 1e-12.
SmallXiReport verify_fourier_small_xi(const Field& odd_field,
                                      const std::vector<std::vector<double>>& probes,
                                      double tolerance = 0.05);

}  // namespace fujita
