#include "fujita/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>
#include <tuple>

#include "fujita/linear.hpp"
#include "fujita/spectral.hpp"

namespace fujita {
namespace {

std::string num(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

struct LevelNorms {
  double c_decay = 0.0;
  double unit_norm = 0.0;  // data_norm of the amplitude-1 bump
  double beta = 2.0;
};

}  // namespace

RunSpec point_run_spec(const SweepSpec& spec, double alpha, double amplitude, int grid_level) {
  RunSpec r = spec.base;
  r.alpha = alpha;
  r.initial.kind = "bump";
  r.initial.amplitude = amplitude;
  r.points = spec.base.points << grid_level;
  return r;
}

std::string SweepOutcome::phase_csv(const std::string& timestamp) const {
  std::string out = "# generated " + timestamp + "\n";
  out += "alpha,amplitude_input,amplitude,data_norm,grid_level,points,status,t_star,fitted_rate,error\n";
  for (const auto& p : points) {
    out += num(p.alpha) + "," + num(p.amplitude_input) + "," + num(p.amplitude) + "," + num(p.data_norm) + "," +
           std::to_string(p.grid_level) + "," + std::to_string(p.points) + "," +
           (p.error.empty() ? to_string(p.status) : "error") + "," + num(p.t_star) + "," +
           num(p.fitted_rate) + "," + p.error + "\n";
  }
  return out;
}

nlohmann::json SweepOutcome::summary() const {
  std::map<std::string, int> counts;
  for (const auto& p : points) ++counts[p.error.empty() ? to_string(p.status) : "error"];
  return {{"alpha_grid", alpha_grid},
          {"alpha_hat", alpha_hat ? nlohmann::json(*alpha_hat) : nlohmann::json(nullptr)},
          {"fujita_threshold", fujita_threshold},
          {"counts", counts},
          {"runs", points.size()}};
}

SweepOutcome run_sweep(const SweepSpec& spec, int threads) {
  struct Job {
    double alpha, amplitude_input;
    int level;
  };
  std::vector<Job> jobs;
  for (int level = 0; level < spec.repetitions; ++level) {
    for (double a : spec.alpha_values) {
      for (double amp : spec.amplitude_values) jobs.push_back({a, amp, level});
    }
  }

  // Decay constant and unit data norm per grid level, shared by every job on that level.
  std::vector<LevelNorms> norms(static_cast<std::size_t>(spec.repetitions));
  for (int level = 0; level < spec.repetitions; ++level) {
    const RunSpec unit = point_run_spec(spec, spec.alpha_values.front(), 1.0, level);
    const SimConfig c = build_sim_config(unit);
    const Field u0 = odd_extend(c.initial);
    auto& n = norms[static_cast<std::size_t>(level)];
    n.unit_norm = moment_m1(c.initial) + fourier_l1_norm(u0);
    n.beta = c.symbol.beta();
    if (spec.amplitude_units == "epsilon_star") n.c_decay = measure_decay_constant(u0, c.symbol, c.t_max);
  }

  std::vector<PhasePoint> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      PhasePoint& p = results[i];
      p.alpha = job.alpha;
      p.amplitude_input = job.amplitude_input;
      p.grid_level = job.level;
      p.points = spec.base.points << job.level;
      try {
        const auto& n = norms[static_cast<std::size_t>(job.level)];
        p.amplitude = job.amplitude_input;
        if (spec.amplitude_units == "epsilon_star") {
          const double eps = epsilon_star(job.alpha, n.beta, spec.base.dim, n.c_decay);
          p.amplitude = job.amplitude_input * eps / n.unit_norm;
        }
        p.data_norm = p.amplitude * n.unit_norm;
        const SimResult r = run_simulation(build_sim_config(point_run_spec(spec, job.alpha, p.amplitude, job.level)));
        p.status = r.status;
        p.t_star = r.t_star;
        p.fitted_rate = r.fitted_rate;
      } catch (const std::exception& e) {
        p.error = e.what();
        std::replace(p.error.begin(), p.error.end(), ',', ';');
        std::replace(p.error.begin(), p.error.end(), '\n', ' ');
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepOutcome out;
  out.points = std::move(results);
  std::sort(out.points.begin(), out.points.end(), [](const PhasePoint& a, const PhasePoint& b) {
    return std::tie(a.alpha, a.amplitude_input, a.grid_level) < std::tie(b.alpha, b.amplitude_input, b.grid_level);
  });
  out.alpha_grid = spec.alpha_values;
  std::sort(out.alpha_grid.begin(), out.alpha_grid.end());
  out.alpha_grid.erase(std::unique(out.alpha_grid.begin(), out.alpha_grid.end()), out.alpha_grid.end());
  out.fujita_threshold = norms.front().beta / (spec.base.dim + 1.0);
  for (double a : out.alpha_grid) {
    const bool all_blew = std::all_of(out.points.begin(), out.points.end(), [&](const PhasePoint& p) {
      return p.alpha != a || (p.error.empty() && p.status == RunStatus::BlewUp);
    });
    if (all_blew) out.alpha_hat = a;
  }
  return out;
}

}  // namespace fujita
