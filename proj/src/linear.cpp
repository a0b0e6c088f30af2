#include "fujita/linear.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fujita/kernels.hpp"

namespace fujita {
namespace {

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] =
        count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  }
  return t;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

double outer_peak(const Field& f) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    const auto idx = g.unflatten(flat);
    bool outer = false;
    for (int a = 0; a < g.dim; ++a) {
      outer = outer || std::abs(g.coordinate(idx[static_cast<std::size_t>(a)])) >= 0.5 * g.half_width;
    }
    if (outer) m = std::max(m, std::abs(f[flat]));
  }
  return m;
}

}  // namespace

LinearPropagator::LinearPropagator(const DiffusionSymbol& symbol, const Grid& grid)
    : symbol_(symbol), fft_(grid), exponent_(symbol_minus_one_on_spectrum(symbol, grid)),
      scratch_(fft_.spectrum_size()) {}

void LinearPropagator::apply(std::span<double> values, double t) {
  if (t < 0.0) throw std::invalid_argument("propagation time must be nonnegative");
  if (t == 0.0) return;
  fft_.forward(values, scratch_);
  for (std::size_t k = 0; k < scratch_.size(); ++k) scratch_[k] *= std::exp(t * exponent_[k]);
  fft_.inverse(scratch_, values);
}

Field LinearPropagator::operator()(const Field& field, double t) {
  if (!(field.grid() == grid())) throw std::invalid_argument("field grid differs from propagator grid");
  if (t == 0.0) return field;
  Field out = field;
  const Symmetry s = field.symmetry();
  apply(out.mutable_values(), t);
  // The kernel is even in x_N, so both symmetry classes survive; re-project exactly.
  out.enforce(s);
  return out;
}

Field propagate_linear(const Field& field, const DiffusionSymbol& symbol, double t) {
  if (t < 0.0) throw std::invalid_argument("propagation time must be nonnegative");
  if (t == 0.0) return field;
  LinearPropagator prop(symbol, field.grid());
  return prop(field, t);
}

double value_on_normal_axis(const Field& field, double xn) {
  const Grid& g = field.grid();
  std::array<double, kMaxDim> x{};
  x[static_cast<std::size_t>(g.dim - 1)] = xn;
  return interpolate(field, std::span<const double>(x.data(), static_cast<std::size_t>(g.dim)));
}

double probe_value(LinearPropagator& propagator, const Field& initial, double t, double gamma) {
  const Grid& g = initial.grid();
  const double xn = gamma * std::pow(t, 1.0 / propagator.symbol().beta());
  if (!(xn < 0.5 * g.half_width)) throw std::out_of_range("probe point left the reliable box");
  return value_on_normal_axis(propagator(initial, t), xn);
}

double probe_value(const Field& initial, const DiffusionSymbol& symbol, double t, double gamma) {
  LinearPropagator prop(symbol, initial.grid());
  return probe_value(prop, initial, t, gamma);
}

C1Result compute_C1(double gamma, double a, double beta, int dim, double rel_tol) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(a > 0.0) || !(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("need a > 0, beta in (0, 2]");
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dimension must be in [1, 3]");
  using boost::math::quadrature::gauss_kronrod;
  // Integrand falls below 1e-16 * Z^N past Z = (40 / a)^{1/beta}.
  const double cutoff = std::pow(40.0 / a, 1.0 / beta);
  constexpr unsigned depth = 20;

  double inner_err_max = 0.0;
  // h(z) = int_{R^{N-1}} e^{-a (|z'|^2 + z^2)^{beta/2}} dz'.
  auto h = [&](double z) {
    if (dim == 1) return std::exp(-a * std::pow(std::abs(z), beta));
    const double sphere = dim == 2 ? 2.0 : 2.0 * std::numbers::pi;
    const int power = dim - 2;
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(
        [&](double rho) {
          return std::pow(rho, power) * std::exp(-a * std::pow(rho * rho + z * z, 0.5 * beta));
        },
        0.0, cutoff, depth, rel_tol * 0.1, &err);
    inner_err_max = std::max(inner_err_max, err);
    return sphere * v;
  };

  C1Result out;
  double err = 0.0;
  out.value = 2.0 * gauss_kronrod<double, 61>::integrate(
                        [&](double z) { return z * std::sin(gamma * z) * h(z); }, 0.0, cutoff,
                        depth, rel_tol, &err);
  out.error_estimate = 2.0 * err + inner_err_max;
  double err2 = 0.0;
  out.small_gamma = 2.0 * gamma *
                    gauss_kronrod<double, 61>::integrate([&](double z) { return z * z * h(z); },
                                                         0.0, cutoff, depth, rel_tol, &err2);
  if (out.error_estimate > std::max(1e3 * rel_tol * std::abs(out.value), 1e-13)) {
    throw std::runtime_error("C1 quadrature did not reach the requested tolerance");
  }
  return out;
}

double default_probe_gamma(double a, double beta, int dim) {
  double best_gamma = 0.05;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 20; ++i) {
    const double g = 0.05 * i;
    const double v = compute_C1(g, a, beta, dim).value;
    if (v > best) {
      best = v;
      best_gamma = g;
    }
  }
  return best_gamma;
}

nlohmann::json DecayReport::to_json() const {
  return {{"slope", slope},       {"expected", expected}, {"tolerance", tolerance},
          {"data_norm", data_norm}, {"times", times},      {"sup_norms", sup_norms},
          {"ratios", ratios},     {"ratio_max", ratio_max}, {"box_leak", box_leak},
          {"pass", pass}};
}

DecayReport verify_decay_upper(const Field& initial, const DiffusionSymbol& symbol,
                               const DecayWindow& window) {
  if (initial.symmetry() != Symmetry::OddInXn) {
    throw std::invalid_argument("decay check needs odd initial data");
  }
  if (!(window.t_begin > 0.0 && window.t_end > window.t_begin) || window.samples < 2) {
    throw std::invalid_argument("invalid decay window");
  }
  const Grid& g = initial.grid();
  const double order = (g.dim + 1.0) / symbol.beta();
  DecayReport rep;
  rep.expected = -order;
  rep.tolerance = window.tolerance >= 0.0 ? window.tolerance : 0.05 * order;
  rep.data_norm = moment_m1(restrict_to_halfspace(initial)) + fourier_l1_norm(initial);
  rep.times = log_spaced(window.t_begin, window.t_end, window.samples);

  LinearPropagator prop(symbol, g);
  std::vector<double> lx, ly;
  for (double t : rep.times) {
    const Field v = prop(initial, t);
    const double s = v.sup_norm();
    rep.sup_norms.push_back(s);
    const double r = s * std::pow(1.0 + t, order) / rep.data_norm;
    rep.ratios.push_back(r);
    rep.ratio_max = std::max(rep.ratio_max, r);
    lx.push_back(std::log1p(t));
    ly.push_back(std::log(s));
    if (t == rep.times.back()) rep.box_leak = outer_peak(v) / s;
  }
  if (rep.box_leak > 1e-3) {
    throw std::runtime_error("decay window exits the reliable box; enlarge L");
  }
  rep.slope = fit_slope(lx, ly);
  rep.pass = std::abs(rep.slope - rep.expected) <= rep.tolerance;
  return rep;
}

double measure_decay_constant(const Field& initial, const DiffusionSymbol& symbol, double t_end,
                              int samples) {
  const Grid& g = initial.grid();
  const double order = (g.dim + 1.0) / symbol.beta();
  const double norm = moment_m1(restrict_to_halfspace(initial)) + fourier_l1_norm(initial);
  if (!(norm > 0.0)) throw std::invalid_argument("decay constant needs nonzero data");
  LinearPropagator prop(symbol, g);
  double best = initial.sup_norm() / norm;
  for (double t : log_spaced(1e-2, t_end, samples)) {
    best = std::max(best, prop(initial, t).sup_norm() * std::pow(1.0 + t, order) / norm);
  }
  return best;
}

nlohmann::json MomentReport::to_json() const {
  return {{"initial", initial}, {"final", final}, {"relative_drift", relative_drift},
          {"tolerance", tolerance}, {"pass", pass}};
}

MomentReport verify_moment_conserved(const Field& field, const DiffusionSymbol& symbol, double t) {
  MomentReport rep;
  rep.initial = moment_M1(field);
  Field abs_field = field;
  for (double& v : abs_field.mutable_values()) v = std::abs(v);
  // |x_N| |u| weighted scale; M1 at roundoff level of it counts as zero
  double scale = 0.0;
  const Grid& g = field.grid();
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    scale += std::abs(g.coordinate(g.unflatten(flat)[static_cast<std::size_t>(g.dim - 1)])) * abs_field[flat];
  }
  scale *= g.cell_volume();
  if (!(std::abs(rep.initial) > 1e-13 * scale)) throw std::invalid_argument("moment check needs M1 != 0");
  rep.final = moment_M1(propagate_linear(field, symbol, t));
  rep.relative_drift = std::abs(rep.final - rep.initial) / std::abs(rep.initial);
  rep.pass = rep.relative_drift <= rep.tolerance;
  return rep;
}

double cutoff_rho(double s) {
  const double r = std::abs(s);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  auto psi = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double up = psi(2.0 - r);
  return up / (up + psi(r - 1.0));
}

nlohmann::json TruncationReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : radii) {
    rs.push_back({{"radius", r.radius},
                  {"sign_min", r.sign_min},
                  {"scaled_bound", r.scaled_bound},
                  {"odd_defect", r.odd_defect},
                  {"hyperplane_max", r.hyperplane_max}});
  }
  return {{"beta", beta},           {"radii", rs},
          {"sign_tolerance", sign_tolerance}, {"bound_spread", bound_spread},
          {"sign_pass", sign_pass}, {"bound_pass", bound_pass},
          {"pass", pass}};
}

TruncationReport verify_truncation_bounds(const Field& kernel_samples,
                                          std::span<const double> radii, double beta) {
  if (!check_monotone_in_xn(kernel_samples).monotone) {
    throw std::invalid_argument("kernel is not nonincreasing in z_N on z_N > 0");
  }
  const Grid& g = kernel_samples.grid();
  Field J = kernel_samples;
  J.enforce(Symmetry::EvenInXn);
  TruncationReport rep;
  rep.beta = beta;
  rep.sign_pass = true;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double R : radii) {
    if (!(R > 0.0) || 4.0 * R > g.half_width) {
      throw std::invalid_argument("truncation radius must satisfy 0 < 4R <= L");
    }
    Field phi = sample_field(g, [&](std::span<const double> x) {
      double r2 = 0.0;
      for (double v : x) r2 += v * v;
      return x.back() * cutoff_rho(std::sqrt(r2) / R);
    });
    phi.enforce(Symmetry::OddInXn);
    Field a_phi = spectral_convolve(J, phi);
    {
      auto v = a_phi.mutable_values();
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= phi[i];
    }
    TruncationReport::PerRadius pr;
    pr.radius = R;
    pr.odd_defect = a_phi.symmetry_defect(Symmetry::OddInXn);
    pr.hyperplane_max = a_phi.trace_defect();
    pr.sign_min = std::numeric_limits<double>::infinity();
    const double rb = std::pow(R, beta);
    for (std::size_t flat = 0; flat < a_phi.size(); ++flat) {
      const auto idx = g.unflatten(flat);
      double r2 = 0.0;
      for (int ax = 0; ax < g.dim; ++ax) {
        const double c = g.coordinate(idx[static_cast<std::size_t>(ax)]);
        r2 += c * c;
      }
      const double xn = g.coordinate(idx[static_cast<std::size_t>(g.dim - 1)]);
      if (std::sqrt(r2) >= 2.0 * R) pr.sign_min = std::min(pr.sign_min, xn * a_phi[flat]);
      if (xn != 0.0) pr.scaled_bound = std::max(pr.scaled_bound, std::abs(a_phi[flat]) * rb / std::abs(xn));
    }
    rep.sign_pass = rep.sign_pass && pr.sign_min >= rep.sign_tolerance;
    lo = std::min(lo, pr.scaled_bound);
    hi = std::max(hi, pr.scaled_bound);
    rep.radii.push_back(pr);
  }
  rep.bound_spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  rep.bound_pass = rep.bound_spread < 2.0;
  rep.pass = rep.sign_pass && rep.bound_pass;
  return rep;
}

nlohmann::json ProbeLowerReport::to_json() const {
  return {{"gamma", gamma},
          {"m1", m1},
          {"c1", c1},
          {"stated_limit", stated_limit},
          {"limit", limit},
          {"times", times},
          {"normalized", normalized},
          {"worst_stated_deviation", worst_stated_deviation},
          {"worst_deviation", worst_deviation},
          {"tolerance", tolerance},
          {"stated_pass", stated_pass},
          {"pass", pass}};
}

ProbeLowerReport verify_probe_lower(const Field& initial, const DiffusionSymbol& symbol,
                                    double gamma, double t_begin, double t_end, int samples,
                                    double tolerance) {
  if (initial.symmetry() != Symmetry::OddInXn) throw std::invalid_argument("probe check needs odd data");
  const Grid& g = initial.grid();
  ProbeLowerReport rep;
  rep.gamma = gamma;
  rep.tolerance = tolerance;
  rep.m1 = moment_m1(restrict_to_halfspace(initial));
  rep.c1 = compute_C1(gamma, symbol.a(), symbol.beta(), g.dim).value;
  const double fourier = std::pow(2.0 * std::numbers::pi, -g.dim);
  rep.stated_limit = fourier * rep.c1 * rep.m1;
  rep.limit = 2.0 * rep.stated_limit;
  rep.times = log_spaced(t_begin, t_end, samples);
  const double order = (g.dim + 1.0) / symbol.beta();
  LinearPropagator prop(symbol, g);
  for (double t : rep.times) {
    const double f = probe_value(prop, initial, t, gamma);
    const double n = f * std::pow(t, order);
    rep.normalized.push_back(n);
    rep.worst_stated_deviation = std::max(rep.worst_stated_deviation, std::abs(n / rep.stated_limit - 1.0));
    rep.worst_deviation = std::max(rep.worst_deviation, std::abs(n / rep.limit - 1.0));
  }
  rep.stated_pass = rep.worst_stated_deviation <= tolerance;
  rep.pass = rep.worst_deviation <= tolerance;
  return rep;
}

}  // namespace fujita
