#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fujita/config.hpp"
#include "fujita/semilinear.hpp"

namespace fujita {

struct PhasePoint {
  double alpha = 0.0;
  /// The value listed in the sweep file (absolute or a fraction of eps*).
  double amplitude_input = 0.0;
  /// Bump amplitude actually simulated.
  double amplitude = 0.0;
  double data_norm = 0.0;
  int grid_level = 0;
  std::size_t points = 0;
  RunStatus status = RunStatus::Undecided;
  std::optional<double> t_star;
  std::optional<double> fitted_rate;
  /// Non-empty when the run itself failed; the sweep carries on.
  std::string error;
};

struct SweepOutcome {
  std::vector<PhasePoint> points;  // sorted by (alpha, amplitude_input, grid_level)
  std::vector<double> alpha_grid;
  /// Largest tested alpha at which every run blew up.
  std::optional<double> alpha_hat;
  double fujita_threshold = 0.0;  // beta / (N + 1)

  /// Header line carries the timestamp; it is the only line allowed to differ between runs.
  std::string phase_csv(const std::string& timestamp) const;
  nlohmann::json summary() const;
};

/// Concrete run spec for one sweep point (reproducible with `simulate`).
RunSpec point_run_spec(const SweepSpec& spec, double alpha, double amplitude, int grid_level);

/// Runs every (alpha, amplitude, level) on `threads` workers.
SweepOutcome run_sweep(const SweepSpec& spec, int threads = 1);

}  // namespace fujita
