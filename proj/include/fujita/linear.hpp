#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "fujita/fields.hpp"
#include "fujita/spectral.hpp"
#include "fujita/symbols.hpp"

namespace fujita {

/// Exact-in-frequency solver for dv/dt = A v on a fixed grid.
///
/// Holds the FFT plans and J0 - 1 on the half-spectrum; reuse one instance for
/// repeated steps. Not thread-safe; give each thread its own.
class LinearPropagator {
 public:
  LinearPropagator(const DiffusionSymbol& symbol, const Grid& grid);

  const Grid& grid() const { return fft_.grid(); }
  const DiffusionSymbol& symbol() const { return symbol_; }

  /// v <- G(t) * v in place. The caller re-certifies symmetry.
  void apply(std::span<double> values, double t);
  /// Returns G(t) * field; odd and even certificates are carried over (and enforced).
  Field operator()(const Field& field, double t);

 private:
  DiffusionSymbol symbol_;
  RealTransform fft_;
  std::vector<double> exponent_;  // J0 - 1
  std::vector<complex> scratch_;
};

/// G(t) * field. t = 0 returns the input unchanged.
Field propagate_linear(const Field& field, const DiffusionSymbol& symbol, double t);

/// Linear interpolation along x_N at x' = 0.
double value_on_normal_axis(const Field& field, double xn);

/// v(t, gamma t^{1/beta} e_N) for the linear flow started at `initial`.
/// Throws std::out_of_range when the probe point leaves |x_N| < L/2.
double probe_value(const Field& initial, const DiffusionSymbol& symbol, double t, double gamma);
double probe_value(LinearPropagator& propagator, const Field& initial, double t, double gamma);

struct C1Result {
  double value = 0.0;
  /// gamma * int e^{-a|z|^beta} z_N^2 dz.
  double small_gamma = 0.0;
  double error_estimate = 0.0;
};

/// C1(gamma) = int_{R^N} e^{-a|z|^beta} z_N sin(gamma z_N) dz by nested adaptive
/// Gauss-Kronrod quadrature (radial reduction in z' for N >= 2).
/// Throws std::runtime_error if the requested tolerance is not reached.
C1Result compute_C1(double gamma, double a, double beta, int dim, double rel_tol = 1e-10);

/// argmax of C1 over gamma in {0.05, 0.10, ..., 1.00}.
double default_probe_gamma(double a, double beta, int dim);

struct DecayWindow {
  double t_begin = 10.0;
  double t_end = 100.0;
  int samples = 20;
  /// Accepted |slope - expected|; negative selects 0.05 * (N + 1) / beta.
  double tolerance = -1.0;
};

struct DecayReport {
  double slope = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  double data_norm = 0.0;  // m1 + ||F(v0)||_1
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> ratios;  // ||v(t)|| (1 + t)^{(N+1)/beta} / data_norm
  double ratio_max = 0.0;
  double box_leak = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Fits log ||v(t)||_inf against log(1 + t) on log-spaced times in the window.
/// Throws std::runtime_error when the solution reaches the outer half of the box
/// (max over |x_k| >= L/2 above 1e-3 of the peak at the last time).
DecayReport verify_decay_upper(const Field& initial, const DiffusionSymbol& symbol,
                               const DecayWindow& window = {});

/// sup_t ||v(t)||_inf (1 + t)^{(N+1)/beta} / (m1 + ||F(v0)||_1) over t = 0 and
/// `samples` log-spaced times in [1e-2, t_end]: the empirical decay constant C.
double measure_decay_constant(const Field& initial, const DiffusionSymbol& symbol, double t_end,
                              int samples = 200);

struct MomentReport {
  double initial = 0.0;
  double final = 0.0;
  double relative_drift = 0.0;
  double tolerance = 1e-8;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// |M1(G(t) * v) - M1(v)| / |M1(v)|. Throws when M1(v) == 0.
MomentReport verify_moment_conserved(const Field& field, const DiffusionSymbol& symbol, double t);

struct TruncationReport {
  double beta = 0.0;
  struct PerRadius {
    double radius = 0.0;
    double sign_min = 0.0;      // min over |x| >= 2R of x_N A(x_N zeta_R)
    double scaled_bound = 0.0;  // max over x_N != 0 of |A(x_N zeta_R)| R^beta / |x_N|
    double odd_defect = 0.0;
    double hyperplane_max = 0.0;
  };
  std::vector<PerRadius> radii;
  double sign_tolerance = -1e-10;
  double bound_spread = 0.0;  // max / min of scaled_bound across R
  bool sign_pass = false;
  bool bound_pass = false;    // spread < 2
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Smooth even cutoff with 1 on [-1, 1], 0 outside [-2, 2].
double cutoff_rho(double s);

/// Computes A(x_N zeta_R) = J * (x_N zeta_R) - x_N zeta_R on the kernel grid for each R.
/// Throws std::invalid_argument when J is not nonincreasing in z_N on z_N > 0.
TruncationReport verify_truncation_bounds(const Field& kernel_samples,
                                          std::span<const double> radii, double beta);

struct ProbeLowerReport {
  double gamma = 0.0;
  double m1 = 0.0;
  double c1 = 0.0;
  /// (2 pi)^{-N} C1 m1, the constant as literally stated for the check.
  double stated_limit = 0.0;
  /// 2 (2 pi)^{-N} C1 m1: the limit including the factor 2 from |F(v0)| ~ 2 m1 |xi_N|.
  double limit = 0.0;
  std::vector<double> times;
  std::vector<double> normalized;  // f(t) t^{(N+1)/beta}
  double worst_stated_deviation = 0.0;
  double worst_deviation = 0.0;
  double tolerance = 0.1;
  bool stated_pass = false;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Samples f(t) t^{(N+1)/beta} on log-spaced times and compares it with the
/// limit constant built from C1(gamma).
ProbeLowerReport verify_probe_lower(const Field& initial, const DiffusionSymbol& symbol,
                                    double gamma, double t_begin, double t_end, int samples = 16,
                                    double tolerance = 0.1);

}  // namespace fujita
