#include "fujita/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fujita/io.hpp"
#include "fujita/kernels.hpp"

namespace fujita {
namespace {

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node) return;
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, T& out, const std::string& where) {
  if (!node || !node[key]) return;
  try {
    out = node[key].as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, std::optional<T>& out, const std::string& where) {
  if (!node || !node[key] || node[key].IsNull()) return;
  T v{};
  read(node, key, v, where);
  out = v;
}

std::vector<double> read_list(const YAML::Node& node, const char* key) {
  if (!node[key] || !node[key].IsSequence()) throw ConfigError(std::string("sweep: '") + key + "' must be a list");
  try {
    return node[key].as<std::vector<double>>();
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("sweep.") + key + ": " + e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

Grid RunSpec::grid() const {
  try {
    return Grid::make(dim, half_width, points);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

YAML::Node RunSpec::to_yaml() const {
  YAML::Node n;
  n["symbol"]["family"] = symbol.family;
  n["symbol"]["beta"] = symbol.beta;
  if (symbol.family == "convolution") {
    if (symbol.a) n["symbol"]["a"] = *symbol.a;
    n["symbol"]["kernel"] = symbol.kernel;
    if (symbol.kernel == "gaussian") n["symbol"]["sigma"] = symbol.sigma;
    else n["symbol"]["kernel_file"] = symbol.kernel_file;
  }
  n["grid"]["dim"] = dim;
  n["grid"]["half_width"] = half_width;
  n["grid"]["points"] = points;
  n["alpha"] = alpha;
  n["initial_data"]["kind"] = initial.kind;
  if (initial.kind == "bump") n["initial_data"]["amplitude"] = initial.amplitude;
  else n["initial_data"]["file"] = initial.file;
  n["time"]["dt_initial"] = dt_initial;
  n["time"]["dt_safety"] = dt_safety;
  n["time"]["t_max"] = t_max;
  n["time"]["record_every"] = record_every;
  n["time"]["min_dt"] = min_dt;
  n["blowup_threshold"] = blowup_threshold;
  if (probe_gamma) n["probe_gamma"] = *probe_gamma;
  else n["probe_gamma"] = YAML::Null;
  n["reaction"] = reaction;
  return n;
}

RunSpec parse_run_spec(const YAML::Node& node, const std::filesystem::path& base_dir) {
  if (!node || !node.IsMap()) throw ConfigError("run config must be a mapping");
  check_keys(node, "config", {"symbol", "grid", "alpha", "initial_data", "time", "blowup_threshold",
                              "probe_gamma", "reaction"});
  RunSpec s;
  s.base_dir = base_dir;
  const auto sym = node["symbol"];
  check_keys(sym, "symbol", {"family", "beta", "a", "kernel", "sigma", "kernel_file"});
  read(sym, "family", s.symbol.family, "symbol");
  read(sym, "beta", s.symbol.beta, "symbol");
  read(sym, "a", s.symbol.a, "symbol");
  read(sym, "kernel", s.symbol.kernel, "symbol");
  read(sym, "sigma", s.symbol.sigma, "symbol");
  read(sym, "kernel_file", s.symbol.kernel_file, "symbol");
  if (sym && sym["kernel_file"] && !sym["kernel"]) s.symbol.kernel = "file";

  const auto grid = node["grid"];
  check_keys(grid, "grid", {"dim", "half_width", "points"});
  read(grid, "dim", s.dim, "grid");
  read(grid, "half_width", s.half_width, "grid");
  read(grid, "points", s.points, "grid");

  read(node, "alpha", s.alpha, "config");
  const auto init = node["initial_data"];
  check_keys(init, "initial_data", {"kind", "amplitude", "file"});
  read(init, "kind", s.initial.kind, "initial_data");
  read(init, "amplitude", s.initial.amplitude, "initial_data");
  read(init, "file", s.initial.file, "initial_data");
  if (init && init["file"] && !init["kind"]) s.initial.kind = "file";

  const auto time = node["time"];
  check_keys(time, "time", {"dt_initial", "dt_safety", "t_max", "record_every", "min_dt"});
  read(time, "dt_initial", s.dt_initial, "time");
  read(time, "dt_safety", s.dt_safety, "time");
  read(time, "t_max", s.t_max, "time");
  read(time, "record_every", s.record_every, "time");
  read(time, "min_dt", s.min_dt, "time");
  read(node, "blowup_threshold", s.blowup_threshold, "config");
  read(node, "probe_gamma", s.probe_gamma, "config");
  read(node, "reaction", s.reaction, "config");

  try {
    symbol_family_from_string(s.symbol.family);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("symbol.family: ") + e.what());
  }
  if (s.initial.kind != "bump" && s.initial.kind != "file") {
    throw ConfigError("initial_data.kind must be 'bump' or 'file'");
  }
  if (s.initial.kind == "bump" && !(s.initial.amplitude >= 0.0)) {
    throw ConfigError("initial_data.amplitude must be nonnegative");
  }
  if (s.symbol.kernel != "gaussian" && s.symbol.kernel != "file") {
    throw ConfigError("symbol.kernel must be 'gaussian' or 'file'");
  }
  s.grid();
  return s;
}

RunSpec load_run_spec(const std::filesystem::path& file) {
  YAML::Node node;
  try {
    node = YAML::LoadFile(file.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return parse_run_spec(node, file.parent_path().empty() ? "." : file.parent_path());
}

std::string dump_yaml(const YAML::Node& node) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << node;
  return std::string(out.c_str()) + "\n";
}

DiffusionSymbol build_symbol(const RunSpec& spec) {
  try {
    switch (symbol_family_from_string(spec.symbol.family)) {
      case SymbolFamily::Laplacian:
        if (spec.symbol.beta != 2.0) throw ConfigError("symbol.beta must be 2 for the laplacian");
        return DiffusionSymbol::laplacian(spec.dim);
      case SymbolFamily::FractionalLaplacian:
        return DiffusionSymbol::fractional_laplacian(spec.dim, spec.symbol.beta);
      case SymbolFamily::Convolution: {
        const Grid g = spec.grid();
        Field kernel;
        if (spec.symbol.kernel == "gaussian") {
          kernel = gaussian_kernel(g, spec.symbol.sigma);
        } else {
          kernel = read_field_csv(resolve(spec.base_dir, spec.symbol.kernel_file));
          if (!(kernel.grid() == g)) throw ConfigError("symbol.kernel_file grid differs from the run grid");
        }
        if (spec.symbol.a) return DiffusionSymbol::convolution(std::move(kernel), *spec.symbol.a, spec.symbol.beta);
        return DiffusionSymbol::convolution(std::move(kernel));
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("symbol: ") + e.what());
  }
  throw ConfigError("symbol: unknown family");
}

HalfSpaceData bump_data(const Grid& grid, double amplitude) {
  return sample_halfspace(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const double d = a + 1 == x.size() ? x[a] - 1.0 : x[a];
      r2 += d * d;
    }
    const double b = std::max(0.0, 1.0 - r2);
    return amplitude * b * b;
  });
}

SimConfig build_sim_config(const RunSpec& spec) {
  SimConfig c;
  c.grid = spec.grid();
  c.symbol = build_symbol(spec);
  c.alpha = spec.alpha;
  if (spec.initial.kind == "bump") {
    c.initial = bump_data(c.grid, spec.initial.amplitude);
    c.initial_description = "bump amplitude " + std::to_string(spec.initial.amplitude);
  } else {
    try {
      c.initial = read_halfspace_csv(resolve(spec.base_dir, spec.initial.file), c.grid);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("initial_data.file: ") + e.what());
    }
    c.initial_description = "file " + spec.initial.file;
  }
  c.dt_initial = spec.dt_initial;
  c.dt_safety = spec.dt_safety;
  c.t_max = spec.t_max;
  c.record_every = spec.record_every;
  c.blowup_threshold = spec.blowup_threshold;
  c.min_dt = spec.min_dt;
  c.probe_gamma = spec.probe_gamma;
  c.reaction = spec.reaction;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

YAML::Node SweepSpec::to_yaml() const {
  YAML::Node n;
  n["base"] = base.to_yaml();
  for (double a : alpha_values) n["alpha_values"].push_back(a);
  for (double a : amplitude_values) n["amplitude_values"].push_back(a);
  n["amplitude_units"] = amplitude_units;
  n["repetitions"] = repetitions;
  return n;
}

SweepSpec parse_sweep_spec(const YAML::Node& node, const std::filesystem::path& base_dir) {
  if (!node || !node.IsMap()) throw ConfigError("sweep spec must be a mapping");
  check_keys(node, "sweep", {"base", "alpha_values", "amplitude_values", "amplitude_units", "repetitions"});
  SweepSpec s;
  if (!node["base"]) throw ConfigError("sweep: missing 'base'");
  s.base = parse_run_spec(node["base"], base_dir);
  s.alpha_values = read_list(node, "alpha_values");
  s.amplitude_values = read_list(node, "amplitude_values");
  read(node, "amplitude_units", s.amplitude_units, "sweep");
  read(node, "repetitions", s.repetitions, "sweep");
  if (s.alpha_values.empty() || s.amplitude_values.empty()) throw ConfigError("sweep: value lists must be nonempty");
  if (std::any_of(s.alpha_values.begin(), s.alpha_values.end(), [](double a) { return !(a > 0.0); })) {
    throw ConfigError("sweep: alpha values must be positive");
  }
  if (std::any_of(s.amplitude_values.begin(), s.amplitude_values.end(), [](double a) { return !(a > 0.0); })) {
    throw ConfigError("sweep: amplitudes must be positive");
  }
  if (s.amplitude_units != "absolute" && s.amplitude_units != "epsilon_star") {
    throw ConfigError("sweep.amplitude_units must be 'absolute' or 'epsilon_star'");
  }
  if (s.repetitions < 1 || s.repetitions > 4) throw ConfigError("sweep.repetitions must be in [1, 4]");
  if (s.base.initial.kind != "bump") throw ConfigError("sweep base must use bump initial data");
  return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& file) {
  YAML::Node node;
  try {
    node = YAML::LoadFile(file.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return parse_sweep_spec(node, file.parent_path().empty() ? "." : file.parent_path());
}

}  // namespace fujita
