#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fujita/fields.hpp"
#include "fujita/symbols.hpp"

namespace fujita {

/// Sampled semigroup kernel G(t, .) plus an explicit Dirac atom at the origin.
///
/// The atom (weight e^{-t}) only occurs for the Convolution family and is never
/// smeared onto the lattice: total mass = dirac_weight + dx^N * sum(values).
struct KernelSnapshot {
  double time = 0.0;
  Field values{};
  double dirac_weight = 0.0;
  /// Largest continuous-part multiplier on the outermost frequency shell.
  double nyquist_level = 0.0;
  /// dx^N * sum |values| over points with some |x_k| > L/2.
  double outer_mass = 0.0;
  std::vector<std::string> warnings;

  double mass() const;
  nlohmann::json to_json() const;
};

/// Inverse transform of e^{t (J0 - 1)} (minus e^{-t} for the Convolution family).
/// Attaches warnings when the multiplier at the lattice edge exceeds 1e-12
/// or when more than 1e-10 of the mass sits outside |x| <= L/2. Throws for t <= 0.
KernelSnapshot kernel_from_symbol(const DiffusionSymbol& symbol, double t, const Grid& grid);

/// (4 pi t)^{-N/2} exp(-|x|^2 / 4t), N = x.size().
double heat_kernel_closed_form(double t, std::span<const double> x);
double heat_kernel_closed_form(double t, std::span<const double> x, int dim);

struct PoissonSeries {
  KernelSnapshot snapshot;
  /// e^{-t} sum_{k > k_max} t^k / k!, summed term by term.
  double dropped_mass_bound = 0.0;
};

/// e^{-t} delta_0 + e^{-t} sum_{k=1}^{k_max} (t^k / k!) J^{*k}, with the powers
/// J^{*k} built by direct (non-FFT) periodic lattice convolution.
PoissonSeries poisson_series_kernel(const Field& kernel_samples, double t, int k_max);

/// Poisson tail e^{-t} sum_{k > k_max} t^k / k!.
double poisson_tail(double t, int k_max);

/// Reflected half-space kernel G(t, x' - y', x_N - y_N) - G(t, x' - y', x_N + y_N)
/// from the continuous part of the snapshot, by multilinear interpolation.
double halfspace_kernel(const KernelSnapshot& snapshot, std::span<const double> x,
                        std::span<const double> y);

/// Multilinear interpolation of a field at an arbitrary point inside the box.
double interpolate(const Field& field, std::span<const double> x);

struct MonotoneReport {
  bool monotone = true;
  double worst_increase = 0.0;
  std::vector<double> worst_location;
  double tolerance = 1e-12;
  nlohmann::json to_json() const;
};

/// True iff x_N -> G(t, x', x_N) is nonincreasing on x_N > 0 for every lattice x'.
MonotoneReport check_monotone_in_xn(const KernelSnapshot& snapshot, double tolerance = 1e-12);
MonotoneReport check_monotone_in_xn(const Field& samples, double tolerance = 1e-12);

/// Centered 1-D sample arrays of odd length 2m + 1 (index m is the origin).
bool is_even_nonincreasing(std::span<const double> f, double tolerance = 1e-12);
/// Full (non-periodic) discrete convolution of two centered arrays.
std::vector<double> linear_convolve(std::span<const double> f, std::span<const double> g);
/// Convolves two even nonincreasing centered arrays and reports whether the
/// result is again even and nonincreasing on the positive half-line.
/// Throws when an input violates the precondition.
bool convolve_preserves_radial_monotone(std::span<const double> f, std::span<const double> g);

/// Direct periodic lattice convolution dx^N sum_y a(y) b(x - y); O(size^2).
Field direct_convolve(const Field& a, const Field& b);

/// Normalized isotropic Gaussian samples of standard deviation sigma (unit discrete mass).
Field gaussian_kernel(const Grid& grid, double sigma);
/// Two point masses at +-offset on the x_N axis, total mass one (1-D and N-D).
Field two_point_kernel(const Grid& grid, double offset);
/// Two narrow Gaussian bumps centred at +-offset on the x_N axis (unit mass).
Field bump_pair_kernel(const Grid& grid, double offset, double width);

}  // namespace fujita
