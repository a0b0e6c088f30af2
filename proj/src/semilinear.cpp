#include "fujita/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fujita/spectral.hpp"

namespace fujita {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::exp(a + (b - a) * i / (n - 1)));
  return out;
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// max over x_N > 0 of (a - b)
double upper_half_max_difference(const Field& a, const Field& b) {
  const auto ha = restrict_to_halfspace(a);
  const auto hb = restrict_to_halfspace(b);
  double worst = -kInf;
  for (std::size_t i = 0; i < ha.values.size(); ++i) worst = std::max(worst, ha.values[i] - hb.values[i]);
  return worst;
}

double odd_defect(const Field& f) {
  return std::max(f.symmetry_defect(Symmetry::OddInXn), f.trace_defect());
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("SimConfig: " + msg); };
  if (symbol.dim() != grid.dim) fail("symbol and grid dimensions differ");
  if (!(initial.grid == grid)) fail("initial data lives on a different grid");
  if (initial.values.size() != HalfSpaceData::size_for(grid)) fail("initial data has the wrong size");
  for (double v : initial.values) {
    if (!std::isfinite(v) || v < 0.0) fail("initial data must be finite and nonnegative");
  }
  if (!(alpha > 0.0)) fail("alpha must be positive");
  if (!(dt_initial > 0.0)) fail("dt_initial must be positive");
  if (!(dt_safety > 0.0 && dt_safety < 1.0)) fail("dt_safety must lie in (0, 1)");
  if (!(t_max > 0.0)) fail("t_max must be positive");
  if (!(blowup_threshold > 0.0)) fail("blowup_threshold must be positive");
  if (!(record_every > 0.0)) fail("record_every must be positive");
  if (!(min_dt > 0.0)) fail("min_dt must be positive");
  if (probe_gamma && !(*probe_gamma > 0.0)) fail("probe_gamma must be positive");
  if (symbol.family() == SymbolFamily::Convolution && !(symbol.kernel()->grid() == grid)) {
    fail("convolution kernel grid differs from the simulation grid");
  }
}

nlohmann::json SimConfig::to_json() const {
  double sup = 0.0;
  for (double v : initial.values) sup = std::max(sup, std::abs(v));
  nlohmann::json j = {
      {"symbol", symbol.to_json()},
      {"grid", {{"dim", grid.dim}, {"half_width", grid.half_width}, {"points", grid.points}}},
      {"alpha", alpha},
      {"dt_initial", dt_initial},
      {"dt_safety", dt_safety},
      {"t_max", t_max},
      {"blowup_threshold", blowup_threshold},
      {"record_every", record_every},
      {"min_dt", min_dt},
      {"probe_gamma", optional_json(probe_gamma)},
      {"reaction", reaction},
      {"initial", {{"description", initial_description}, {"sup_norm", sup}}}};
  return j;
}

std::optional<BlowupSignal> nonlinear_substep(std::span<double> values, double alpha, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("nonlinear_substep needs dt > 0");
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return std::nullopt;
  const double peak_pow = std::pow(peak, alpha);
  if (1.0 - alpha * dt * peak_pow <= 0.0) return BlowupSignal{1.0 / (alpha * peak_pow)};
  const double inv = -1.0 / alpha;
  for (double& v : values) {
    if (v == 0.0) continue;
    v *= std::pow(1.0 - alpha * dt * std::pow(std::abs(v), alpha), inv);
  }
  return std::nullopt;
}

std::variant<Field, BlowupSignal> nonlinear_substep(const Field& field, double alpha, double dt) {
  std::vector<double> v(field.values().begin(), field.values().end());
  if (auto sig = nonlinear_substep(std::span<double>(v), alpha, dt)) return *sig;
  // The map is odd and acts pointwise, so both symmetry classes survive bitwise.
  return Field(field.grid(), std::move(v), field.symmetry());
}

std::variant<Field, BlowupSignal> strang_step(const Field& field, LinearPropagator& propagator,
                                              double alpha, double dt) {
  auto first = nonlinear_substep(field, alpha, 0.5 * dt);
  if (auto* sig = std::get_if<BlowupSignal>(&first)) return *sig;
  const Field mid = propagator(std::get<Field>(first), dt);
  return nonlinear_substep(mid, alpha, 0.5 * dt);
}

std::variant<Field, BlowupSignal> strang_step(const Field& field, const DiffusionSymbol& symbol,
                                              double alpha, double dt) {
  LinearPropagator prop(symbol, field.grid());
  return strang_step(field, prop, alpha, dt);
}

Simulation::Simulation(const SimConfig& config)
    : config_((config.validate(), config)),
      propagator_(config.symbol, config.grid),
      state_(odd_extend(config.initial)) {}

Simulation::Simulation(const SimConfig& config, Field initial)
    : config_((config.validate(), config)),
      propagator_(config.symbol, config.grid),
      state_(std::move(initial)) {
  if (!(state_.grid() == config_.grid)) throw std::invalid_argument("initial field grid differs");
}

double Simulation::singularity_time() const {
  if (!config_.reaction) return kInf;
  const double m = state_.sup_norm();
  if (m == 0.0) return kInf;
  return 1.0 / (config_.alpha * std::pow(m, config_.alpha));
}

double Simulation::suggested_dt() const {
  return std::min(config_.dt_initial, config_.dt_safety * singularity_time());
}

std::optional<BlowupSignal> Simulation::advance_to(double t_target) {
  const double dt = t_target - time_;
  if (!(dt > 0.0)) throw std::invalid_argument("advance_to needs a later time");
  if (!config_.reaction) {
    state_ = propagator_(state_, dt);
  } else {
    auto next = strang_step(state_, propagator_, config_.alpha, dt);
    if (auto* sig = std::get_if<BlowupSignal>(&next)) return *sig;
    state_ = std::move(std::get<Field>(next));
  }
  time_ = t_target;
  last_dt_ = dt;
  return std::nullopt;
}

void Simulation::reset(Field state, double time) {
  if (!(state.grid() == config_.grid)) throw std::invalid_argument("reset field grid differs");
  state_ = std::move(state);
  time_ = time;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::BlewUp: return "blew_up";
    case RunStatus::Decayed: return "decayed";
    case RunStatus::Undecided: return "undecided";
  }
  return "undecided";
}

nlohmann::json SimResult::to_json() const {
  nlohmann::json s = {{"t", nlohmann::json::array()},        {"sup_norm", nlohmann::json::array()},
                      {"M1", nlohmann::json::array()},       {"f_probe", nlohmann::json::array()},
                      {"dt", nlohmann::json::array()},       {"odd_defect", nlohmann::json::array()}};
  for (const auto& r : series) {
    s["t"].push_back(r.t);
    s["sup_norm"].push_back(r.sup_norm);
    s["M1"].push_back(r.M1);
    s["f_probe"].push_back(optional_json(r.f_probe));
    s["dt"].push_back(r.dt);
    s["odd_defect"].push_back(r.odd_defect);
  }
  return {{"status", to_string(status)},
          {"t_star", optional_json(t_star)},
          {"fitted_rate", optional_json(fitted_rate)},
          {"tail_slope", optional_json(tail_slope)},
          {"horizon", horizon},
          {"probe_gamma", probe_gamma},
          {"notes", notes},
          {"config", config_echo.to_json()},
          {"series", s}};
}

std::string SimResult::series_csv() const {
  std::ostringstream out;
  out << "t,sup_norm,M1,f_probe,dt\n";
  char buf[160];
  for (const auto& r : series) {
    if (r.f_probe) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.sup_norm, r.M1, *r.f_probe, r.dt);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,,%.17g\n", r.t, r.sup_norm, r.M1, r.dt);
    }
    out << buf;
  }
  return out.str();
}

SimResult run_simulation(const SimConfig& config, const StepObserver& observer) {
  config.validate();
  return run_simulation(config, odd_extend(config.initial), observer);
}

SimResult run_simulation(const SimConfig& config, Field initial, const StepObserver& observer) {
  Simulation sim(config, std::move(initial));
  const Field start = sim.state();
  SimResult result;
  result.config_echo = config;
  result.horizon = config.t_max;
  result.probe_gamma = config.probe_gamma.value_or(
      default_probe_gamma(config.symbol.a(), config.symbol.beta(), config.grid.dim));

  LinearPropagator probe_prop(config.symbol, config.grid);
  bool probe_alive = true;
  auto record = [&](double dt) {
    SeriesRecord rec;
    rec.t = sim.time();
    rec.sup_norm = sim.state().sup_norm();
    rec.M1 = moment_M1(sim.state());
    if (probe_alive) {
      try {
        rec.f_probe = probe_value(probe_prop, start, rec.t, result.probe_gamma);
      } catch (const std::out_of_range&) {
        probe_alive = false;
        result.notes.push_back("probe left the box at t = " + std::to_string(rec.t));
      }
    }
    rec.dt = dt;
    rec.odd_defect = odd_defect(sim.state());
    result.series.push_back(rec);
  };
  auto declare_blowup = [&](double dt) {
    result.status = RunStatus::BlewUp;
    const double m = sim.state().sup_norm();
    result.t_star = sim.time() + 1.0 / (config.alpha * std::pow(m, config.alpha));
    if (result.series.empty() || result.series.back().t < sim.time()) record(dt);
  };

  record(0.0);
  long next_index = 1;
  bool blew_up = false;
  while (sim.time() < config.t_max && !blew_up) {
    if (sim.state().sup_norm() >= config.blowup_threshold) {
      declare_blowup(sim.last_dt());
      blew_up = true;
      break;
    }
    const double landing = std::min(config.record_every * static_cast<double>(next_index), config.t_max);
    double dt = sim.suggested_dt();
    bool lands = false;
    if (sim.time() + dt >= landing) {
      dt = landing - sim.time();
      lands = true;
    }
    while (true) {
      if (dt < config.min_dt) {
        declare_blowup(dt);
        blew_up = true;
        break;
      }
      const auto sig = lands ? sim.advance_to(landing) : sim.step(dt);
      if (!sig) break;
      dt *= 0.5;
      lands = false;
    }
    if (blew_up) break;
    if (observer) observer(sim);
    if (lands) {
      record(dt);
      if (landing >= config.record_every * static_cast<double>(next_index)) ++next_index;
    }
  }
  if (blew_up) return result;

  std::vector<double> lx, ly, tail;
  for (const auto& r : result.series) {
    if (r.t >= 0.5 * config.t_max && r.t > 0.0) tail.push_back(r.sup_norm);
  }
  if (std::all_of(result.series.begin(), result.series.end(), [](const auto& r) { return r.sup_norm == 0.0; })) {
    result.status = RunStatus::Decayed;
    result.notes.push_back("zero data: trivial decay, no rate");
    return result;
  }
  bool monotone = tail.size() >= 3;
  for (std::size_t i = 1; i < tail.size(); ++i) monotone = monotone && tail[i] <= tail[i - 1];
  for (const auto& r : result.series) {
    if (r.t >= 0.5 * config.t_max && r.t > 0.0 && r.sup_norm > 0.0) {
      lx.push_back(std::log1p(r.t));
      ly.push_back(std::log(r.sup_norm));
    }
  }
  if (lx.size() >= 3) result.tail_slope = slope_fit(lx, ly);
  const double threshold = -(config.grid.dim + 1.0) / config.symbol.beta() + 0.25;
  if (monotone && result.tail_slope && *result.tail_slope <= threshold) {
    result.status = RunStatus::Decayed;
    result.fitted_rate = result.tail_slope;
  } else {
    result.status = RunStatus::Undecided;
  }
  return result;
}

nlohmann::json ComparisonReport::to_json() const {
  return {{"times", times},          {"violations", violations},
          {"max_violation", max_violation}, {"stopped_at", optional_json(stopped_at)},
          {"tolerance", tolerance},  {"pass", pass}};
}

ComparisonReport comparison_check(const SimConfig& config_small, const SimConfig& config_large,
                                  std::span<const double> sample_times) {
  config_small.validate();
  config_large.validate();
  if (!(config_small.grid == config_large.grid) ||
      config_small.symbol.to_json() != config_large.symbol.to_json() ||
      config_small.alpha != config_large.alpha || config_small.reaction != config_large.reaction) {
    throw std::invalid_argument("comparison needs the same grid, symbol and alpha");
  }
  for (std::size_t i = 0; i < config_small.initial.values.size(); ++i) {
    if (config_small.initial.values[i] > config_large.initial.values[i]) {
      throw std::invalid_argument("comparison needs ordered initial data");
    }
  }
  std::vector<double> times(sample_times.begin(), sample_times.end());
  std::sort(times.begin(), times.end());

  Simulation a(config_small), b(config_large);
  ComparisonReport rep;
  auto sample = [&] {
    rep.times.push_back(a.time());
    const double v = std::max(0.0, upper_half_max_difference(a.state(), b.state()));
    rep.violations.push_back(v);
    rep.max_violation = std::max(rep.max_violation, v);
  };
  const double threshold = std::min(config_small.blowup_threshold, config_large.blowup_threshold);
  const double min_dt = std::max(config_small.min_dt, config_large.min_dt);

  for (double target : times) {
    if (target < 0.0) continue;
    while (!rep.stopped_at && a.time() < target) {
      if (a.state().sup_norm() >= threshold || b.state().sup_norm() >= threshold) {
        rep.stopped_at = a.time();
        break;
      }
      double dt = std::min(a.suggested_dt(), b.suggested_dt());
      bool lands = a.time() + dt >= target;
      if (lands) dt = target - a.time();
      while (true) {
        if (dt < min_dt) {
          rep.stopped_at = a.time();
          break;
        }
        const Field saved = a.state();
        const double t0 = a.time();
        const double t1 = lands ? target : t0 + dt;
        if (!a.advance_to(t1) && !b.advance_to(t1)) break;
        a.reset(saved, t0);
        dt *= 0.5;
        lands = false;
      }
    }
    if (rep.stopped_at) break;
    if (rep.times.empty() || rep.times.back() < target) sample();
  }
  rep.pass = rep.max_violation <= rep.tolerance;
  return rep;
}

nlohmann::json ProbeBoundsReport::to_json() const {
  return {{"gamma", gamma},
          {"alpha", alpha},
          {"m1", m1},
          {"lower_constant", lower_constant},
          {"times", times},
          {"f", f},
          {"lower_normalized", lower_normalized},
          {"upper_normalized", upper_normalized},
          {"jensen_normalized", jensen_normalized},
          {"global_over_horizon", global_over_horizon},
          {"t_star", optional_json(t_star)},
          {"crossing_time", optional_json(crossing_time)},
          {"envelope_crossing", optional_json(envelope_crossing)},
          {"lower_spread", lower_spread},
          {"upper_max", upper_max},
          {"jensen_max", jensen_max},
          {"consistent", consistent}};
}

ProbeBoundsReport probe_lower_and_upper(const SimConfig& config, double gamma, double t_begin,
                                        double t_end, int samples) {
  config.validate();
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(t_begin > 0.0 && t_end > t_begin) || samples < 2) {
    throw std::invalid_argument("probe window must satisfy 0 < t_begin < t_end");
  }
  const int dim = config.grid.dim;
  const double beta = config.symbol.beta();
  const double alpha = config.alpha;
  const double order = (dim + 1.0) / beta;

  ProbeBoundsReport rep;
  rep.gamma = gamma;
  rep.alpha = alpha;
  rep.m1 = moment_m1(config.initial);
  const double c1 = compute_C1(gamma, config.symbol.a(), beta, dim).value;
  rep.lower_constant = 2.0 * std::pow(2.0 * std::numbers::pi, -dim) * c1;

  const Field initial = odd_extend(config.initial);
  LinearPropagator prop(config.symbol, config.grid);
  rep.times = log_spaced(t_begin, t_end, samples);
  for (double t : rep.times) {
    const double f = probe_value(prop, initial, t, gamma);
    rep.f.push_back(f);
    rep.lower_normalized.push_back(f * std::pow(t, order));
    rep.upper_normalized.push_back(f * std::pow(1.0 + t, 1.0 / alpha));
    rep.jensen_normalized.push_back(f * std::pow(alpha * t, 1.0 / alpha));
    if (!rep.crossing_time && rep.jensen_normalized.back() > 1.0) rep.crossing_time = t;
  }
  rep.upper_max = *std::max_element(rep.upper_normalized.begin(), rep.upper_normalized.end());
  rep.jensen_max = *std::max_element(rep.jensen_normalized.begin(), rep.jensen_normalized.end());
  const auto half = rep.lower_normalized.begin() + samples / 2;
  const double lo = *std::min_element(half, rep.lower_normalized.end());
  const double hi = *std::max_element(half, rep.lower_normalized.end());
  rep.lower_spread = lo > 0.0 ? hi / lo : kInf;

  if (1.0 / alpha > order && rep.m1 > 0.0) {
    rep.envelope_crossing = std::pow(std::pow(alpha, -1.0 / alpha) / (rep.lower_constant * rep.m1),
                                     1.0 / (1.0 / alpha - order));
  }

  SimConfig run = config;
  run.t_max = t_end;
  const SimResult res = run_simulation(run);
  rep.global_over_horizon = res.status != RunStatus::BlewUp;
  rep.t_star = res.t_star;
  if (rep.global_over_horizon) {
    rep.consistent = lo > 0.0 && rep.jensen_max <= 1.0;
  } else {
    rep.consistent = !rep.crossing_time || *rep.t_star <= *rep.crossing_time;
  }
  return rep;
}

double supersolution_g(double t, double alpha, double beta, int dim, double c_decay, double data_norm) {
  const double gap = alpha * (dim + 1.0) - beta;
  if (!(gap > 0.0)) throw std::invalid_argument("supersolution needs alpha (N + 1) > beta");
  const double coeff = beta * alpha * std::pow(c_decay * data_norm, alpha) / gap;
  const double bracket = 1.0 - coeff * (1.0 - std::pow(1.0 + t, 1.0 - alpha * (dim + 1.0) / beta));
  if (bracket <= 0.0) return kInf;
  return std::pow(bracket, -1.0 / alpha);
}

double epsilon_star(double alpha, double beta, int dim, double c_decay) {
  const double gap = alpha * (dim + 1.0) - beta;
  if (!(gap > 0.0)) throw std::invalid_argument("epsilon_star needs alpha (N + 1) > beta");
  if (!(c_decay > 0.0)) throw std::invalid_argument("decay constant must be positive");
  return std::pow(gap / (alpha * beta), 1.0 / alpha) / c_decay;
}

nlohmann::json SupersolutionReport::to_json() const {
  return {{"c_decay", c_decay},     {"data_norm", data_norm},       {"eps_star", eps_star},
          {"g_final", g_final},     {"max_violation", max_violation}, {"tolerance", tolerance},
          {"checks", checks},       {"pass", pass}};
}

SupersolutionReport supersolution_check(const SimConfig& config, std::optional<double> c_decay) {
  config.validate();
  const int dim = config.grid.dim;
  const double beta = config.symbol.beta();
  SupersolutionReport rep;
  const Field initial = odd_extend(config.initial);
  const double u0_sup = initial.sup_norm();
  if (u0_sup == 0.0) {
    rep.pass = true;
    rep.g_final = 1.0;
    return rep;
  }
  rep.c_decay = c_decay ? *c_decay : measure_decay_constant(initial, config.symbol, config.t_max);
  rep.data_norm = moment_m1(config.initial) + fourier_l1_norm(initial);
  rep.eps_star = epsilon_star(config.alpha, beta, dim, rep.c_decay);
  if (!(rep.data_norm < rep.eps_star)) {
    throw std::invalid_argument("supersolution check needs data_norm < eps_star");
  }
  rep.tolerance = 1e-6 * u0_sup;
  LinearPropagator prop(config.symbol, config.grid);
  auto check = [&](const Field& u, double t) {
    const double g = supersolution_g(t, config.alpha, beta, dim, rep.c_decay, rep.data_norm);
    const Field v = t > 0.0 ? prop(initial, t) : initial;
    rep.max_violation = std::max(rep.max_violation, upper_half_max_difference(u, v.scaled(g)));
    rep.g_final = g;
    ++rep.checks;
  };
  rep.max_violation = -kInf;
  check(initial, 0.0);
  const SimResult res = run_simulation(config, [&](const Simulation& sim) { check(sim.state(), sim.time()); });
  if (res.status == RunStatus::BlewUp) rep.max_violation = kInf;
  rep.pass = rep.max_violation <= rep.tolerance;
  return rep;
}

nlohmann::json MomentMonotonicityReport::to_json() const {
  return {{"max_dip", max_dip},
          {"relative_variation", relative_variation},
          {"late_growth_fraction", late_growth_fraction},
          {"nondecreasing", nondecreasing},
          {"bounded", bounded},
          {"symmetry_ok", symmetry_ok},
          {"max_odd_defect", max_odd_defect},
          {"pass", pass}};
}

MomentMonotonicityReport moment_monotonicity(const SimResult& result) {
  MomentMonotonicityReport rep;
  const auto& s = result.series;
  if (s.empty()) throw std::invalid_argument("moment check needs a recorded series");
  double scale = 0.0, lo = kInf, hi = -kInf;
  for (const auto& r : s) {
    scale = std::max(scale, std::abs(r.M1));
    lo = std::min(lo, r.M1);
    hi = std::max(hi, r.M1);
    rep.max_odd_defect = std::max(rep.max_odd_defect, r.odd_defect);
  }
  for (std::size_t i = 1; i < s.size(); ++i) rep.max_dip = std::max(rep.max_dip, s[i - 1].M1 - s[i].M1);
  rep.nondecreasing = rep.max_dip <= 1e-8 * scale;
  rep.relative_variation = s.front().M1 != 0.0 ? (hi - lo) / std::abs(s.front().M1) : hi - lo;
  rep.symmetry_ok = rep.max_odd_defect <= 1e-12;
  if (result.status == RunStatus::Decayed) {
    const double total = s.back().M1 - s.front().M1;
    auto mid = std::find_if(s.begin(), s.end(), [&](const auto& r) { return r.t >= 0.5 * result.horizon; });
    if (total > 1e-8 * scale && mid != s.end()) {
      rep.late_growth_fraction = (s.back().M1 - mid->M1) / total;
    }
    // Linear growth would give one half; a convergent moment gives less.
    rep.bounded = std::isfinite(hi) && rep.late_growth_fraction < 0.5;
  }
  rep.pass = rep.nondecreasing && rep.bounded && rep.symmetry_ok;
  return rep;
}

ConvergenceStudy strang_self_convergence(const SimConfig& config, double t_end, double dt) {
  config.validate();
  if (!(dt > 0.0 && t_end > 0.0)) throw std::invalid_argument("need positive t_end and dt");
  const long steps = std::lround(t_end / dt);
  if (steps < 1 || std::abs(steps * dt - t_end) > 1e-9 * t_end) {
    throw std::invalid_argument("t_end must be a multiple of dt");
  }
  auto solve = [&](long n) {
    Simulation sim(config);
    for (long i = 1; i <= n; ++i) {
      if (sim.advance_to(t_end * static_cast<double>(i) / static_cast<double>(n))) {
        throw std::runtime_error("blow-up signal inside the convergence window");
      }
    }
    return sim.state();
  };
  const Field coarse = solve(steps), fine = solve(2 * steps), ref = solve(8 * steps);
  auto dist = [](const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };
  ConvergenceStudy c;
  c.dt = dt;
  c.error_coarse = dist(coarse, ref);
  c.error_fine = dist(fine, ref);
  c.order = std::log2(c.error_coarse / c.error_fine);
  return c;
}

}  // namespace fujita
