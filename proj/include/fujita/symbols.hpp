#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fujita/fields.hpp"

namespace fujita {

enum class SymbolFamily { Laplacian, FractionalLaplacian, Convolution };

std::string to_string(SymbolFamily f);
SymbolFamily symbol_family_from_string(const std::string& name);

/// The Fourier symbol J0 of the diffusion operator A, with the small-frequency
/// expansion J0(xi) = 1 - a |xi|^beta + o(|xi|^beta).
///
/// Laplacian: J0 = 1 - |xi|^2.  Fractional Laplacian: J0 = 1 - |xi|^beta.
/// Convolution: J0 = sampled transform of a nonnegative, unit-mass kernel J
/// that is even in x_N and in x'. Immutable once built.
class DiffusionSymbol {
 public:
  static DiffusionSymbol laplacian(int dim);
  static DiffusionSymbol fractional_laplacian(int dim, double beta);
  /// Kernel must be nonnegative, even in x_N and x', and have unit mass to 1e-9.
  static DiffusionSymbol convolution(Field kernel, double a, double beta);
  /// Same, with (a, beta) estimated by fit_small_frequency on the default range.
  static DiffusionSymbol convolution(Field kernel);

  SymbolFamily family() const { return family_; }
  int dim() const { return dim_; }
  double beta() const { return beta_; }
  double a() const { return a_; }
  /// Present only for the Convolution family.
  const Field* kernel() const { return kernel_.get(); }

  /// J0(xi). Throws on dimension mismatch.
  double operator()(std::span<const double> xi) const;

  nlohmann::json to_json() const;

 private:
  DiffusionSymbol(SymbolFamily family, int dim, double beta, double a,
                  std::shared_ptr<const Field> kernel);

  SymbolFamily family_ = SymbolFamily::Laplacian;
  int dim_ = 1;
  double beta_ = 2.0;
  double a_ = 1.0;
  std::shared_ptr<const Field> kernel_;
};

double eval_symbol(const DiffusionSymbol& symbol, std::span<const double> xi);

/// J0 - 1 on the r2c half-spectrum of `grid` (see RealTransform).
/// For the Convolution family the grid must equal the kernel grid.
std::vector<double> symbol_minus_one_on_spectrum(const DiffusionSymbol& symbol, const Grid& grid);

struct AssumptionReport {
  double j0_at_zero = 0.0;
  bool unit_mass_pass = false;
  double r = 0.0;
  double xi_max = 0.0;
  double sup_outside = 0.0;  // sup of J0 over sampled |xi| >= r
  std::vector<double> sup_location;
  bool sup_pass = false;
  double fit_a = 0.0;
  double fit_beta = 0.0;
  double fit_residual = 0.0;
  bool fit_ok = false;  // false when 1 - J0 <= 0 somewhere on the fit range
  double residual_threshold = 0.05;
  bool expansion_pass = false;
  double tol = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Checks J0(0) = 1, sup_{|xi| >= r} J0 < 1 - tol, and the fit residual on (0, r].
/// Radial families are scanned along e_N up to `xi_max` (default max(10 r, 4 pi));
/// the Convolution family is scanned over every lattice frequency of its grid.
AssumptionReport validate_assumptions(const DiffusionSymbol& symbol, double r, double tol,
                                      std::optional<double> xi_max = std::nullopt);

struct SmallFrequencyFit {
  double a = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // max relative deviation of a |xi|^beta from 1 - J0
};

/// Least squares of log(1 - J0) on log|xi| along e_N, log-spaced samples on [lo, hi].
SmallFrequencyFit fit_small_frequency(const DiffusionSymbol& symbol, double lo, double hi,
                                      int samples = 32);

/// Default fit range: [0.01, 0.1] times the kernel-grid Nyquist (Convolution) or
/// [0.01, 0.1] for the closed-form families.
std::pair<double, double> default_fit_range(const DiffusionSymbol& symbol);

/// p_F = 1 + beta / (N + 1).
double fujita_exponent(double beta, int dim);

}  // namespace fujita
