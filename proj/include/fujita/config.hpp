#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "fujita/fields.hpp"
#include "fujita/semilinear.hpp"
#include "fujita/symbols.hpp"

namespace fujita {

/// Bad or inconsistent user configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymbolSpec {
  std::string family = "laplacian";
  double beta = 2.0;
  /// Convolution only: with `a` given, (a, beta) are taken as stated; otherwise fitted.
  std::optional<double> a;
  /// Convolution kernel source: "gaussian" (with sigma) or a CSV file.
  std::string kernel = "gaussian";
  double sigma = 1.0;
  std::string kernel_file;
};

struct InitialSpec {
  /// "bump": amplitude * max(0, 1 - |x - e_N|^2)^2; "file": half-space CSV.
  std::string kind = "bump";
  double amplitude = 1.0;
  std::string file;
};

/// Parsed run configuration; every field has a default that is echoed back.
struct RunSpec {
  SymbolSpec symbol;
  int dim = 1;
  double half_width = 160.0;
  std::size_t points = 4096;
  double alpha = 1.5;
  InitialSpec initial;
  double dt_initial = 0.5;
  double dt_safety = 0.2;
  double t_max = 100.0;
  double record_every = 1.0;
  double blowup_threshold = 1e8;
  double min_dt = 1e-12;
  std::optional<double> probe_gamma;
  bool reaction = true;
  /// Directory that relative file paths are resolved against.
  std::filesystem::path base_dir = ".";

  Grid grid() const;
  YAML::Node to_yaml() const;
};

RunSpec parse_run_spec(const YAML::Node& node, const std::filesystem::path& base_dir = ".");
RunSpec load_run_spec(const std::filesystem::path& file);
std::string dump_yaml(const YAML::Node& node);

DiffusionSymbol build_symbol(const RunSpec& spec);
/// amplitude * max(0, 1 - |x - e_N|^2)^2 on the upper half-lattice.
HalfSpaceData bump_data(const Grid& grid, double amplitude);
SimConfig build_sim_config(const RunSpec& spec);

struct SweepSpec {
  RunSpec base;
  std::vector<double> alpha_values;
  std::vector<double> amplitude_values;
  /// "absolute" bump amplitudes, or "epsilon_star": fractions of eps*(alpha) for data_norm.
  std::string amplitude_units = "absolute";
  /// Grid-refinement levels; level k uses points * 2^k.
  int repetitions = 1;

  YAML::Node to_yaml() const;
};

SweepSpec parse_sweep_spec(const YAML::Node& node, const std::filesystem::path& base_dir = ".");
SweepSpec load_sweep_spec(const std::filesystem::path& file);

}  // namespace fujita
