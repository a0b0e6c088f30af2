#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fujita/config.hpp"
#include "fujita/io.hpp"
#include "fujita/kernels.hpp"
#include "fujita/lemmas.hpp"
#include "fujita/plots.hpp"
#include "fujita/semilinear.hpp"
#include "fujita/sweep.hpp"

namespace fs = std::filesystem;
using namespace fujita;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kConfigError = 2;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

int simulate(const fs::path& config_path, const fs::path& out) {
  const RunSpec spec = load_run_spec(config_path);
  const SimConfig config = build_sim_config(spec);
  const SimResult result = run_simulation(config);
  auto j = result.to_json();
  j["config_yaml"] = dump_yaml(spec.to_yaml());
  write_json(out / "result.json", j);
  write_text(out / "series.csv", result.series_csv());
  write_text(out / "config.yaml", dump_yaml(spec.to_yaml()));
  std::cout << "status " << to_string(result.status);
  if (result.t_star) std::cout << "  t* " << *result.t_star;
  if (result.fitted_rate) std::cout << "  rate " << *result.fitted_rate;
  std::cout << "\n";
  return kOk;
}

int sweep(const fs::path& spec_path, const fs::path& out, int threads) {
  const SweepSpec spec = load_sweep_spec(spec_path);
  const SweepOutcome outcome = run_sweep(spec, threads);
  write_text(out / "phase.csv", outcome.phase_csv(utc_timestamp()));
  write_json(out / "summary.json", outcome.summary());
  write_text(out / "sweep.yaml", dump_yaml(spec.to_yaml()));
  for (std::size_t i = 0; i < outcome.points.size(); ++i) {
    const auto& p = outcome.points[i];
    write_text(out / "points" / ("point_" + std::to_string(i) + ".yaml"),
               dump_yaml(point_run_spec(spec, p.alpha, p.amplitude, p.grid_level).to_yaml()));
  }
  std::cout << outcome.summary().dump(2) << "\n";
  return kOk;
}

int kernel(const fs::path& config_path, const fs::path& out, double t) {
  const RunSpec spec = load_run_spec(config_path);
  const DiffusionSymbol symbol = build_symbol(spec);
  KernelSnapshot snap;
  try {
    snap = kernel_from_symbol(symbol, t, spec.grid());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_field_csv(out / "kernel.csv", snap.values);
  write_json(out / "kernel.json", snap.to_json());
  std::cout << "mass " << snap.mass() << "  dirac " << snap.dirac_weight << "\n";
  for (const auto& w : snap.warnings) std::cout << "warning: " << w << "\n";
  return kOk;
}

int verify(const fs::path& config_path, const fs::path& out, const std::vector<std::string>& selection,
           std::uint64_t seed) {
  const SimConfig config = build_sim_config(load_run_spec(config_path));
  const auto report = verify_lemmas(config, selection, seed);
  write_json(out / "report.json", report);
  for (const auto& [tag, r] : report.at("checks").items()) {
    std::cout << (r.value("pass", false) ? "PASS " : "FAIL ") << tag << "\n";
  }
  return report.at("pass").get<bool>() ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semilinear nonlocal diffusion on the half-space: simulation and checks"};
  app.require_subcommand(1);
  std::string out = ".";
  int threads = 1;
  std::uint64_t seed = 12345;
  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "Seed for randomized property checks")->capture_default_str();

  std::string config_path, spec_path, artifact;
  double kernel_t = 1.0;
  std::string select;

  auto* sim = app.add_subcommand("simulate", "Run one simulation");
  sim->add_option("config", config_path, "Run config (YAML)")->required();
  auto* sw = app.add_subcommand("sweep", "Phase-diagram sweep");
  sw->add_option("spec", spec_path, "Sweep spec (YAML)")->required();
  auto* ker = app.add_subcommand("kernel", "Kernel snapshot G(t)");
  ker->add_option("config", config_path, "Run config (YAML)")->required();
  ker->add_option("--t", kernel_t, "Time")->required();
  auto* ver = app.add_subcommand("verify-lemmas", "Lemma verification bundle");
  ver->add_option("config", config_path, "Run config (YAML)")->required();
  auto* sel = ver->add_option("--select", select, "Comma-separated tags (default: all)");
  auto* plt = app.add_subcommand("plots", "Write gnuplot scripts");
  plt->add_option("artifact", artifact, "result.json, phase.csv or a directory")->required();
  for (auto* sub : {sim, sw, ker, ver, plt}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    fs::create_directories(out);
    if (sim->parsed()) return simulate(config_path, out);
    if (sw->parsed()) return sweep(spec_path, out, threads);
    if (ker->parsed()) return kernel(config_path, out, kernel_t);
    if (ver->parsed()) {
      const auto selection = sel->count() > 0 ? parse_selection(select) : lemma_tags();
      return verify(config_path, out, selection, seed);
    }
    if (plt->parsed()) {
      for (const auto& p : emit_plots(artifact, out)) std::cout << p.string() << "\n";
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
