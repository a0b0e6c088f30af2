#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fujita/fields.hpp"
#include "fujita/linear.hpp"
#include "fujita/symbols.hpp"

namespace fujita {

/// Everything needed for one run of du/dt = A u + |u|^alpha u on the half-space.
struct SimConfig {
  DiffusionSymbol symbol = DiffusionSymbol::laplacian(1);
  Grid grid{};
  double alpha = 1.0;
  HalfSpaceData initial{};
  double dt_initial = 0.5;
  /// Fraction of the pointwise ODE singularity time 1 / (alpha |u|^alpha) used as dt.
  double dt_safety = 0.2;
  double t_max = 100.0;
  double blowup_threshold = 1e8;
  double record_every = 1.0;
  /// Step size below which the run is declared blown up.
  double min_dt = 1e-12;
  /// Probe parameter; unset means argmax of C1 over (0, 1].
  std::optional<double> probe_gamma;
  /// false switches the reaction term off (pure linear flow).
  bool reaction = true;
  /// Free-form provenance of the initial data.
  std::string initial_description;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
  nlohmann::json to_json() const;
};

struct BlowupSignal {
  /// Smallest pointwise singularity time 1 / (alpha |u|^alpha).
  double singularity_time = 0.0;
};

/// Exact flow of u' = |u|^alpha u over dt, pointwise and in place.
/// Leaves `values` untouched and returns the signal when some point would blow up within dt.
std::optional<BlowupSignal> nonlinear_substep(std::span<double> values, double alpha, double dt);
std::variant<Field, BlowupSignal> nonlinear_substep(const Field& field, double alpha, double dt);

/// N(dt/2) o G(dt) o N(dt/2).
std::variant<Field, BlowupSignal> strang_step(const Field& field, LinearPropagator& propagator,
                                              double alpha, double dt);
std::variant<Field, BlowupSignal> strang_step(const Field& field, const DiffusionSymbol& symbol,
                                              double alpha, double dt);

/// Time-stepping state for one run.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);
  /// Starts from an arbitrary full-lattice field (its certificate is kept as given).
  Simulation(const SimConfig& config, Field initial);

  double time() const { return time_; }
  const Field& state() const { return state_; }
  const SimConfig& config() const { return config_; }
  double last_dt() const { return last_dt_; }

  /// 1 / (alpha ||u||^alpha); infinity for zero state or reaction off.
  double singularity_time() const;
  /// min(dt_initial, dt_safety * singularity_time()).
  double suggested_dt() const;

  /// One Strang step landing exactly on `t_target`. On a signal the state is unchanged.
  std::optional<BlowupSignal> advance_to(double t_target);
  std::optional<BlowupSignal> step(double dt) { return advance_to(time_ + dt); }
  /// Replaces state and clock (rollback for lockstep runs).
  void reset(Field state, double time);

 private:
  SimConfig config_;
  LinearPropagator propagator_;
  Field state_;
  double time_ = 0.0;
  double last_dt_ = 0.0;
};

enum class RunStatus { BlewUp, Decayed, Undecided };
std::string to_string(RunStatus s);

struct SeriesRecord {
  double t = 0.0;
  double sup_norm = 0.0;
  double M1 = 0.0;
  /// Linear-flow probe v(t, gamma t^{1/beta} e_N); unset once the probe leaves the box.
  std::optional<double> f_probe;
  double dt = 0.0;
  double odd_defect = 0.0;
};

struct SimResult {
  RunStatus status = RunStatus::Undecided;
  std::optional<double> t_star;
  std::optional<double> fitted_rate;
  /// Log-log slope of the sup norm over the last half of the horizon (diagnostic).
  std::optional<double> tail_slope;
  double horizon = 0.0;
  double probe_gamma = 0.0;
  std::vector<SeriesRecord> series;
  SimConfig config_echo;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  /// Columns t, sup_norm, M1, f_probe, dt.
  std::string series_csv() const;
};

/// Called after every accepted step.
using StepObserver = std::function<void(const Simulation&)>;

/// Odd-extends the data, integrates with adaptive Strang steps and classifies the run.
SimResult run_simulation(const SimConfig& config, const StepObserver& observer = {});
/// Same, from an explicit full-lattice start (e.g. a field with a broken symmetry).
SimResult run_simulation(const SimConfig& config, Field initial, const StepObserver& observer = {});

struct ComparisonReport {
  std::vector<double> times;
  std::vector<double> violations;  // max over x_N > 0 of (u_small - u_large)_+
  double max_violation = 0.0;
  std::optional<double> stopped_at;  // first blow-up trigger in either run
  double tolerance = 1e-8;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Runs both configs in lockstep (shared step sizes) and compares them at the sample times.
ComparisonReport comparison_check(const SimConfig& config_small, const SimConfig& config_large,
                                  std::span<const double> sample_times);

struct ProbeBoundsReport {
  double gamma = 0.0;
  double alpha = 0.0;
  double m1 = 0.0;
  double lower_constant = 0.0;  // 2 (2 pi)^{-N} C1(gamma)
  std::vector<double> times;
  std::vector<double> f;
  std::vector<double> lower_normalized;   // f t^{(N+1)/beta}
  std::vector<double> upper_normalized;   // f (1 + t)^{1/alpha}
  std::vector<double> jensen_normalized;  // f (alpha t)^{1/alpha}, at most 1 while u exists
  bool global_over_horizon = false;
  std::optional<double> t_star;
  /// First sample where f(t) exceeds (alpha t)^{-1/alpha}.
  std::optional<double> crossing_time;
  /// Solution of lower_constant m1 t^{-(N+1)/beta} = (alpha t)^{-1/alpha} (subcritical only).
  std::optional<double> envelope_crossing;
  double lower_spread = 0.0;  // max/min of lower_normalized over the second half of samples
  double upper_max = 0.0;
  double jensen_max = 0.0;
  bool consistent = false;
  nlohmann::json to_json() const;
};

/// Linear-flow probe against the lower bound and the Jensen ceiling of the nonlinear run.
ProbeBoundsReport probe_lower_and_upper(const SimConfig& config, double gamma, double t_begin,
                                        double t_end, int samples = 48);

/// (1 - beta alpha C^alpha D^alpha / (alpha (N+1) - beta) (1 - (1+t)^{1 - alpha (N+1)/beta}))^{-1/alpha};
/// +infinity once the bracket reaches zero. Throws when alpha (N+1) <= beta.
double supersolution_g(double t, double alpha, double beta, int dim, double c_decay, double data_norm);
/// (1/C) ((alpha (N+1) - beta) / (alpha beta))^{1/alpha}.
double epsilon_star(double alpha, double beta, int dim, double c_decay);

struct SupersolutionReport {
  double c_decay = 0.0;
  double data_norm = 0.0;
  double eps_star = 0.0;
  double g_final = 0.0;
  double max_violation = 0.0;  // max over steps and x_N > 0 of u - g v
  double tolerance = 0.0;      // 1e-6 ||u0||
  int checks = 0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// Runs the nonlinear solver and the linear flow side by side up to config.t_max and
/// checks u <= g(t) v on the half-space after every step. `c_decay` defaults to
/// measure_decay_constant over [0, t_max]. Throws when data_norm >= eps_star.
SupersolutionReport supersolution_check(const SimConfig& config,
                                        std::optional<double> c_decay = std::nullopt);

struct MomentMonotonicityReport {
  double max_dip = 0.0;            // largest decrease between consecutive records
  double relative_variation = 0.0; // (max - min) / |M1(0)|
  double late_growth_fraction = 0.0;
  bool nondecreasing = false;
  bool bounded = true;
  bool symmetry_ok = true;
  double max_odd_defect = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

/// M1 nondecreasing up to 1e-8 relative dips; for Decayed runs the growth over the
/// second half must stay below half of the total. Flags odd-symmetry defects above 1e-12.
MomentMonotonicityReport moment_monotonicity(const SimResult& result);

struct ConvergenceStudy {
  double dt = 0.0;
  double error_coarse = 0.0;  // ||u_dt - u_ref||
  double error_fine = 0.0;    // ||u_{dt/2} - u_ref||
  double order = 0.0;
};

/// Fixed-step self-convergence of the Strang scheme against a dt/8 reference.
ConvergenceStudy strang_self_convergence(const SimConfig& config, double t_end, double dt);

}  // namespace fujita
