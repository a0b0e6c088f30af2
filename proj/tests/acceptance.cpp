// Acceptance checks, one line per criterion. Usage: acceptance [--only N]
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "fujita/config.hpp"
#include "fujita/kernels.hpp"
#include "fujita/lemmas.hpp"
#include "fujita/linear.hpp"
#include "fujita/semilinear.hpp"
#include "fujita/spectral.hpp"
#include "fujita/sweep.hpp"
#include "support.hpp"

using namespace fujita;
using namespace fujita::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double c1_gaussian_1d(double g) { return g * std::sqrt(std::numbers::pi) / 2.0 * std::exp(-g * g / 4.0); }

Outcome kernel_oracle() {
  const auto t0 = Clock::now();
  const Grid g = Grid::make(1, 40.0, 2048);
  const auto snap = kernel_from_symbol(DiffusionSymbol::laplacian(1), 1.0, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.points; ++i) {
    const double x = g.coordinate(i);
    err = std::max(err, std::abs(snap.values[i] - std::exp(-x * x / 4.0) / std::sqrt(4.0 * std::numbers::pi)));
  }
  const double secs = seconds_since(t0);
  return {err <= 1e-8 && secs < 1.0, fmt("max error %.3g (<= 1e-8), %.3f s (< 1 s)", err, secs)};
}

Outcome series_cross_check() {
  const Grid g = Grid::make(1, 20.0, 256);
  const Field j = gaussian_kernel(g, 1.0);
  const auto spectral = kernel_from_symbol(DiffusionSymbol::convolution(j, 0.5, 2.0), 0.1, g);
  const auto series = poisson_series_kernel(j, 0.1, 20);
  const double values = max_abs_diff(spectral.values.values(), series.snapshot.values.values());
  const double atoms = std::max(std::abs(spectral.dirac_weight - std::exp(-0.1)),
                                std::abs(series.snapshot.dirac_weight - std::exp(-0.1)));
  const double err = std::max(values, atoms);
  return {err <= 1e-10, fmt("max error %.3g incl. Dirac weight (<= 1e-10), dropped mass %.3g", err,
                            series.dropped_mass_bound)};
}

Outcome linear_decay() {
  auto run = [](const DiffusionSymbol& s, const Grid& g, double tol, double& secs) {
    const auto t0 = Clock::now();
    DecayWindow w;
    w.tolerance = tol;
    const auto rep = verify_decay_upper(odd_extend(bump_half(g)), s, w);
    secs = seconds_since(t0);
    return rep;
  };
  double s2 = 0.0, s1 = 0.0;
  const auto heat = run(DiffusionSymbol::laplacian(1), Grid::make(1, 160.0, 4096), 0.05, s2);
  const auto frac = run(DiffusionSymbol::fractional_laplacian(1, 1.0), Grid::make(1, 4096.0, 32768), 0.1, s1);
  const bool ok = std::abs(heat.slope + 1.0) <= 0.05 && std::abs(frac.slope + 2.0) <= 0.1 && s2 < 30.0 && s1 < 30.0;
  return {ok, fmt("beta=2 slope %.4f (-1 +- 0.05, %.2f s); beta=1 slope %.4f (-2 +- 0.1, %.2f s)", heat.slope, s2,
                  frac.slope, s1)};
}

Outcome probe_lower() {
  const double c1_closed = c1_gaussian_1d(0.1);
  const double c1_err = std::abs(compute_C1(0.1, 1.0, 2.0, 1).value - c1_closed);
  const Grid g = Grid::make(1, 160.0, 4096);
  const double gamma = default_probe_gamma(1.0, 2.0, 1);
  const auto rep = verify_probe_lower(odd_extend(bump_half(g)), DiffusionSymbol::laplacian(1), gamma, 50.0, 200.0);
  const bool ok = c1_err <= 1e-6 && rep.stated_pass;
  return {ok, fmt("gamma %.2f, C1 %.6g, m1 %.6g; C1(0.1) closed-form error %.2g (<= 1e-6); "
                  "worst deviation from (2pi)^-1 C1 m1 = %.4f: %.3f (<= 0.10); "
                  "from 2 (2pi)^-1 C1 m1 = %.4f: %.4f",
                  gamma, rep.c1, rep.m1, c1_err, rep.stated_limit, rep.worst_stated_deviation, rep.limit,
                  rep.worst_deviation)};
}

Outcome fujita_dichotomy() {
  const auto t0 = Clock::now();
  const std::string dir = FUJITA_CONFIG_DIR;
  const SweepSpec sub = load_sweep_spec(dir + "/sweep_subcritical.yaml");
  const SweepSpec sup = load_sweep_spec(dir + "/sweep_supercritical.yaml");
  bool ok = sub.alpha_values == std::vector<double>{0.4, 0.6, 0.8} &&
            sub.amplitude_values == std::vector<double>{0.25, 0.5, 1.0, 2.0} &&
            sup.alpha_values == std::vector<double>{1.3, 1.6};
  const auto a = run_sweep(sub, 4);
  int blew = 0;
  double t_max_star = 0.0;
  for (const auto& p : a.points) {
    if (p.status == RunStatus::BlewUp && p.t_star && std::isfinite(*p.t_star)) {
      ++blew;
      t_max_star = std::max(t_max_star, *p.t_star);
    }
  }
  ok = ok && blew == static_cast<int>(a.points.size());

  // independent eps* from the same unit bump
  const SimConfig unit = build_sim_config(point_run_spec(sup, sup.alpha_values.front(), 1.0, 0));
  const Field u0 = odd_extend(unit.initial);
  const double c_decay = measure_decay_constant(u0, unit.symbol, unit.t_max);
  const auto b = run_sweep(sup, 4);
  std::string rates;
  int decayed = 0;
  for (const auto& p : b.points) {
    const double eps = epsilon_star(p.alpha, 2.0, 1, c_decay);
    const bool small = p.data_norm <= 0.5 * eps * (1.0 + 1e-12);
    const bool good = small && p.status == RunStatus::Decayed && p.fitted_rate && std::abs(*p.fitted_rate + 1.0) <= 0.15;
    if (good) ++decayed;
    rates += fmt(" alpha %.1f: %s rate %.4f data/eps* %.3f;", p.alpha, to_string(p.status).c_str(),
                 p.fitted_rate.value_or(std::nan("")), p.data_norm / eps);
  }
  ok = ok && decayed == static_cast<int>(b.points.size());
  const double secs = seconds_since(t0);
  ok = ok && secs < 600.0;
  return {ok, fmt("subcritical %d/%zu blew up (latest t* %.1f);%s %.1f s (< 600 s)", blew, a.points.size(), t_max_star,
                  rates.c_str(), secs)};
}

SimConfig half_eps_config(double alpha, double t_max) {
  SimConfig c;
  c.grid = Grid::make(1, 512.0, 8192);
  c.alpha = alpha;
  c.t_max = t_max;
  const HalfSpaceData unit = bump_half(c.grid);
  const Field odd = odd_extend(unit);
  const double c_decay = measure_decay_constant(odd, c.symbol, t_max);
  const double unit_norm = moment_m1(unit) + fourier_l1_norm(odd);
  c.initial = bump_half(c.grid, 0.5 * epsilon_star(alpha, 2.0, 1, c_decay) / unit_norm);
  return c;
}

Outcome supersolution() {
  const auto rep = supersolution_check(half_eps_config(1.5, 50.0));
  return {rep.pass, fmt("max(u - g v) %.3g vs 1e-6 ||u0|| = %.3g over %d steps, data/eps* %.3f, g(50) %.4f",
                        rep.max_violation, rep.tolerance, rep.checks, rep.data_norm / rep.eps_star, rep.g_final)};
}

Outcome conservation() {
  double mass_err = 0.0;
  const Grid g1 = Grid::make(1, 64.0, 1024);
  const Grid g2 = Grid::make(2, 24.0, 128);
  for (double t : {0.1, 1.0, 5.0}) {
    for (const auto& [s, g] : std::vector<std::pair<DiffusionSymbol, Grid>>{
             {DiffusionSymbol::laplacian(1), g1},
             {DiffusionSymbol::fractional_laplacian(1, 1.5), g1},
             {DiffusionSymbol::convolution(gaussian_kernel(g1, 1.0), 0.5, 2.0), g1},
             {DiffusionSymbol::laplacian(2), g2}}) {
      mass_err = std::max(mass_err, std::abs(kernel_from_symbol(s, t, g).mass() - 1.0));
    }
  }
  const Grid gm = Grid::make(1, 80.0, 2048);
  const Field bump = odd_extend(bump_half(gm));
  const double drift = std::max(
      verify_moment_conserved(bump, DiffusionSymbol::laplacian(1), 5.0).relative_drift,
      verify_moment_conserved(bump, DiffusionSymbol::convolution(gaussian_kernel(gm, 1.0), 0.5, 2.0), 5.0).relative_drift);

  SimConfig c;
  c.grid = Grid::make(1, 160.0, 4096);
  c.alpha = 0.5;
  c.initial = bump_half(c.grid, 0.5);
  c.t_max = 100.0;
  double odd = 0.0, trace = 0.0;
  int steps = 0;
  const auto r = run_simulation(c, [&](const Simulation& sim) {
    odd = std::max(odd, sim.state().symmetry_defect(Symmetry::OddInXn));
    trace = std::max(trace, sim.state().trace_defect());
    ++steps;
  });

  const Grid gp = Grid::make(2, 6.0, 32);
  const Field f(gp, random_values(gp.size(), 77));
  const Spectrum spec = forward_dft(f);
  double lhs = 0.0, rhs = 0.0;
  for (double v : f.values()) lhs += v * v;
  lhs *= gp.cell_volume();
  for (const auto& z : spec.values) rhs += std::norm(z);
  rhs *= std::pow(gp.frequency_spacing() / (2.0 * std::numbers::pi), gp.dim);
  const double parseval = std::abs(lhs - rhs) / lhs;

  const bool ok = mass_err <= 1e-10 && drift <= 1e-8 && odd <= 1e-12 && trace <= 1e-12 && parseval <= 1e-10;
  return {ok, fmt("kernel mass error %.2g; M1 drift %.2g; odd defect %.2g, trace %.2g over %d steps (%s run); "
                  "Parseval %.2g",
                  mass_err, drift, odd, trace, steps, to_string(r.status).c_str(), parseval)};
}

Outcome properties() {
  // comparison on random ordered pairs
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_data = [&](const Grid& g) {
    const int k = 1 + static_cast<int>(3 * u(rng));
    std::vector<std::array<double, 3>> bumps;
    for (int i = 0; i < k; ++i) bumps.push_back({0.5 + 4.0 * u(rng), 0.3 + 1.5 * u(rng), 0.2 + u(rng)});
    return sample_halfspace(g, [&](std::span<const double> x) {
      double v = 0.0;
      for (const auto& [c, w, a] : bumps) {
        const double d = (x[0] - c) / w;
        v += d * d < 1.0 ? a * (1.0 - d * d) * (1.0 - d * d) : 0.0;
      }
      return v;
    });
  };
  double worst = 0.0;
  int ordered = 0;
  const std::vector<double> times{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  for (int pair = 0; pair < 20; ++pair) {
    SimConfig small;
    small.grid = Grid::make(1, 80.0, 2048);
    small.alpha = 0.3 + 1.2 * u(rng);
    small.t_max = 16.0;
    small.initial = random_data(small.grid);
    SimConfig large = small;
    const HalfSpaceData extra = random_data(large.grid);
    for (std::size_t i = 0; i < extra.values.size(); ++i) large.initial.values[i] += extra.values[i];
    const auto rep = comparison_check(small, large, times);
    worst = std::max(worst, rep.max_violation);
    if (rep.pass) ++ordered;
  }

  const auto radial = radial_monotone_cases(1000, 12345);

  SimConfig sc;
  sc.grid = Grid::make(1, 40.0, 1024);
  sc.alpha = 1.0;
  sc.initial = bump_half(sc.grid);
  const auto conv = strang_self_convergence(sc, 1.0, 0.05);

  std::vector<double> ones(16, 1.0);
  const auto sig = nonlinear_substep(ones, 1.0, 2.0);
  const double t_sig = sig ? sig->singularity_time : std::nan("");
  SimConfig flat;
  flat.grid = Grid::make(1, 400.0, 4096);
  flat.alpha = 1.0;
  flat.initial = sample_halfspace(flat.grid, [](std::span<const double> x) { return x[0] > 5.0 && x[0] < 395.0 ? 1.0 : 0.0; });
  flat.t_max = 5.0;
  const auto fr = run_simulation(flat);
  const double t_run = fr.t_star.value_or(std::nan(""));

  const bool ok = ordered == 20 && radial.passed == 1000 && std::abs(conv.order - 2.0) <= 0.2 &&
                  std::abs(t_sig - 1.0) <= 0.01 && std::abs(t_run - 1.0) <= 0.01;
  return {ok, fmt("comparison %d/20 ordered (worst %.2g); radial %d/%d; Strang order %.3f; "
                  "u0=1 blow-up time %.6f (substep), %.6f (run)",
                  ordered, worst, radial.passed, radial.cases, conv.order, t_sig, t_run)};
}

Outcome truncation() {
  const Grid g = Grid::make(1, 64.0, 1024);
  const std::vector<double> radii{4.0, 8.0, 16.0};
  const auto rep = verify_truncation_bounds(gaussian_kernel(g, 1.0), radii, 2.0);
  std::string per;
  for (const auto& r : rep.radii) per += fmt(" R=%g sign_min %.2g bound %.4f;", r.radius, r.sign_min, r.scaled_bound);
  return {rep.pass, fmt("%s spread %.3f (< 2)", per.c_str(), rep.bound_spread)};
}

Outcome critical() {
  std::string detail;
  bool ok = true;
  for (double amp : {0.5, 1.0, 2.0}) {
    SimConfig c;
    c.grid = Grid::make(1, 160.0, 4096);
    c.alpha = 1.0;
    c.t_max = 500.0;
    c.initial = bump_half(c.grid, amp);
    const auto r = run_simulation(c);
    ok = ok && r.status != RunStatus::Decayed;
    detail += fmt(" amplitude %g: %s", amp, to_string(r.status).c_str());
    if (r.t_star) detail += fmt(" t* %.2f", *r.t_star);
    if (r.tail_slope) detail += fmt(" tail slope %.3f", *r.tail_slope);
    detail += ";";
  }
  return {ok, "never decayed at alpha = 1:" + detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<std::function<Outcome()>> checks{kernel_oracle, series_cross_check, linear_decay, probe_lower,
                                                     fujita_dichotomy, supersolution, conservation, properties,
                                                     truncation, critical};
  if (only < 0 || only > static_cast<int>(checks.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", checks.size());
    return 2;
  }
  bool all = true;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (only != 0 && only != static_cast<int>(i + 1)) continue;
    Outcome o;
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
