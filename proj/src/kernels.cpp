#include "fujita/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fujita/spectral.hpp"

namespace fujita {
namespace {

void symmetrize_even(Field& f) {
  f.enforce(Symmetry::EvenInXn);
  const Grid& g = f.grid();
  if (g.dim == 1) return;
  auto v = f.mutable_values();
  for (std::size_t p = 0; p < v.size(); ++p) {
    const std::size_t q = g.reflect_tangential(p);
    if (q <= p) continue;
    const double m = 0.5 * (v[p] + v[q]);
    v[p] = m;
    v[q] = m;
  }
  f.certify(Symmetry::EvenInXn);
}

void normalize_mass(Field& f) {
  double mass = 0.0;
  for (double v : f.values()) mass += v;
  mass *= f.grid().cell_volume();
  const Symmetry s = f.symmetry();
  for (double& v : f.mutable_values()) v /= mass;
  f.certify(s);
}

bool on_outer_shell(const Grid& g, const std::array<double, kMaxDim>& xi) {
  for (int a = 0; a < g.dim; ++a) {
    if (std::abs(std::abs(xi[static_cast<std::size_t>(a)]) - g.nyquist()) < 1e-9 * g.nyquist()) {
      return true;
    }
  }
  return false;
}

}  // namespace

double KernelSnapshot::mass() const {
  double s = 0.0;
  for (double v : values.values()) s += v;
  return dirac_weight + s * values.grid().cell_volume();
}

nlohmann::json KernelSnapshot::to_json() const {
  return {{"time", time},
          {"dirac_weight", dirac_weight},
          {"mass", mass()},
          {"nyquist_level", nyquist_level},
          {"outer_mass", outer_mass},
          {"warnings", warnings}};
}

KernelSnapshot kernel_from_symbol(const DiffusionSymbol& symbol, double t, const Grid& grid) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel time must be positive");
  RealTransform fft(grid);
  const auto s = symbol_minus_one_on_spectrum(symbol, grid);
  const bool atom = symbol.family() == SymbolFamily::Convolution;

  KernelSnapshot snap;
  snap.time = t;
  snap.dirac_weight = atom ? std::exp(-t) : 0.0;

  std::vector<complex> spec(fft.spectrum_size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double m = std::exp(t * s[k]) - snap.dirac_weight;
    if (on_outer_shell(grid, fft.frequency(k))) snap.nyquist_level = std::max(snap.nyquist_level, std::abs(m));
    spec[k] = m * fft.phase(k);
  }
  std::vector<double> values(grid.size());
  fft.inverse(spec, values);
  const double inv_vol = 1.0 / grid.cell_volume();
  for (double& v : values) v *= inv_vol;

  snap.values = Field(grid, std::move(values));
  symmetrize_even(snap.values);

  const double half = 0.5 * grid.half_width;
  for (std::size_t flat = 0; flat < snap.values.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    bool outer = false;
    for (int a = 0; a < grid.dim; ++a) {
      outer = outer || std::abs(grid.coordinate(idx[static_cast<std::size_t>(a)])) > half;
    }
    if (outer) snap.outer_mass += std::abs(snap.values[flat]);
  }
  snap.outer_mass *= grid.cell_volume();

  if (snap.nyquist_level > 1e-12) {
    snap.warnings.push_back("aliasing: multiplier at the lattice edge is " +
                            std::to_string(snap.nyquist_level) + " > 1e-12; refine the grid");
  }
  if (snap.outer_mass > 1e-10) {
    snap.warnings.push_back("truncation: kernel mass outside |x| <= L/2 is " +
                            std::to_string(snap.outer_mass) + " > 1e-10; enlarge the box");
  }
  return snap;
}

double heat_kernel_closed_form(double t, std::span<const double> x) {
  return heat_kernel_closed_form(t, x, static_cast<int>(x.size()));
}

double heat_kernel_closed_form(double t, std::span<const double> x, int dim) {
  if (!(t > 0.0)) throw std::invalid_argument("heat kernel time must be positive");
  if (static_cast<int>(x.size()) != dim) throw std::invalid_argument("point dimension mismatch");
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * dim) * std::exp(-r2 / (4.0 * t));
}

double poisson_tail(double t, int k_max) {
  // Start from the first dropped term and sum forward until it no longer matters.
  double term = std::exp(-t);
  for (int k = 1; k <= k_max + 1; ++k) term *= t / k;
  double sum = 0.0;
  for (int k = k_max + 1; term > 0.0 && term > sum * 1e-17; ++k) {
    sum += term;
    term *= t / (k + 1);
  }
  return sum;
}

Field direct_convolve(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("convolution grids differ");
  const Grid& g = a.grid();
  const std::size_t n = g.points;
  std::vector<double> out(g.size(), 0.0);
  if (g.dim == 1) {
    for (std::size_t m = 0; m < n; ++m) {
      const double am = a[m];
      if (am == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] += am * b[(j + n + n / 2 - m) % n];
    }
  } else {
    for (std::size_t m = 0; m < g.size(); ++m) {
      const double am = a[m];
      if (am == 0.0) continue;
      const auto mi = g.unflatten(m);
      for (std::size_t j = 0; j < g.size(); ++j) {
        auto ji = g.unflatten(j);
        for (int ax = 0; ax < g.dim; ++ax) {
          const auto u = static_cast<std::size_t>(ax);
          ji[u] = (ji[u] + n + n / 2 - mi[u]) % n;
        }
        out[j] += am * b[g.flatten(ji)];
      }
    }
  }
  const double vol = g.cell_volume();
  for (double& v : out) v *= vol;
  return Field(g, std::move(out));
}

PoissonSeries poisson_series_kernel(const Field& kernel_samples, double t, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("series time must be positive");
  for (double v : kernel_samples.values()) {
    if (v < 0.0) throw std::invalid_argument("kernel samples must be nonnegative");
  }
  const Grid& g = kernel_samples.grid();
  std::vector<double> acc(g.size(), 0.0);
  Field power = kernel_samples;
  double coeff = std::exp(-t);
  for (int k = 1; k <= k_max; ++k) {
    coeff *= t / k;
    if (k > 1) power = direct_convolve(power, kernel_samples);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += coeff * power[i];
  }
  PoissonSeries out;
  out.snapshot.time = t;
  out.snapshot.dirac_weight = std::exp(-t);
  out.snapshot.values = Field(g, std::move(acc));
  symmetrize_even(out.snapshot.values);
  out.dropped_mass_bound = poisson_tail(t, k_max);
  return out;
}

double interpolate(const Field& field, std::span<const double> x) {
  const Grid& g = field.grid();
  if (static_cast<int>(x.size()) != g.dim) throw std::invalid_argument("point dimension mismatch");
  const double dx = g.spacing();
  std::array<std::size_t, kMaxDim> lo{};
  std::array<double, kMaxDim> w{};
  for (int a = 0; a < g.dim; ++a) {
    const auto u = static_cast<std::size_t>(a);
    if (std::abs(x[u]) > g.half_width) throw std::out_of_range("point lies outside the truncation box");
    const double s = (x[u] + g.half_width) / dx;
    double fl = std::floor(s);
    if (fl >= static_cast<double>(g.points)) fl = static_cast<double>(g.points) - 1.0;
    lo[u] = static_cast<std::size_t>(fl);
    w[u] = s - fl;
  }
  double sum = 0.0;
  const int corners = 1 << g.dim;
  for (int c = 0; c < corners; ++c) {
    std::array<std::size_t, kMaxDim> idx{};
    double weight = 1.0;
    for (int a = 0; a < g.dim; ++a) {
      const auto u = static_cast<std::size_t>(a);
      const bool up = (c >> a) & 1;
      weight *= up ? w[u] : 1.0 - w[u];
      idx[u] = (lo[u] + (up ? 1 : 0)) % g.points;
    }
    if (weight != 0.0) sum += weight * field[g.flatten(idx)];
  }
  return sum;
}

double halfspace_kernel(const KernelSnapshot& snapshot, std::span<const double> x,
                        std::span<const double> y) {
  const Grid& g = snapshot.values.grid();
  if (static_cast<int>(x.size()) != g.dim || static_cast<int>(y.size()) != g.dim) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (x.back() < 0.0 || y.back() < 0.0) {
    throw std::invalid_argument("half-space kernel needs x_N >= 0 and y_N >= 0");
  }
  std::array<double, kMaxDim> minus{}, plus{};
  for (int a = 0; a < g.dim; ++a) {
    const auto u = static_cast<std::size_t>(a);
    minus[u] = x[u] - y[u];
    plus[u] = x[u] - y[u];
  }
  const auto last = static_cast<std::size_t>(g.dim - 1);
  plus[last] = x[last] + y[last];
  const auto d = static_cast<std::size_t>(g.dim);
  return interpolate(snapshot.values, std::span<const double>(minus.data(), d)) -
         interpolate(snapshot.values, std::span<const double>(plus.data(), d));
}

nlohmann::json MonotoneReport::to_json() const {
  return {{"monotone", monotone},
          {"worst_increase", worst_increase},
          {"worst_location", worst_location},
          {"tolerance", tolerance}};
}

MonotoneReport check_monotone_in_xn(const Field& samples, double tolerance) {
  const Grid& g = samples.grid();
  const std::size_t n = g.points;
  MonotoneReport rep;
  rep.tolerance = tolerance;
  for (std::size_t base = 0; base < samples.size(); base += n) {
    for (std::size_t i = n / 2; i + 1 < n; ++i) {
      const double inc = samples[base + i + 1] - samples[base + i];
      if (inc > rep.worst_increase) {
        rep.worst_increase = inc;
        const auto idx = g.unflatten(base + i + 1);
        rep.worst_location.clear();
        for (int a = 0; a < g.dim; ++a) rep.worst_location.push_back(g.coordinate(idx[static_cast<std::size_t>(a)]));
      }
    }
  }
  rep.monotone = rep.worst_increase <= tolerance;
  return rep;
}

MonotoneReport check_monotone_in_xn(const KernelSnapshot& snapshot, double tolerance) {
  return check_monotone_in_xn(snapshot.values, tolerance);
}

bool is_even_nonincreasing(std::span<const double> f, double tolerance) {
  if (f.size() % 2 == 0) return false;
  const std::size_t m = f.size() / 2;
  for (std::size_t i = 1; i <= m; ++i) {
    if (std::abs(f[m + i] - f[m - i]) > tolerance) return false;
    if (f[m + i] > f[m + i - 1] + tolerance) return false;
  }
  return true;
}

std::vector<double> linear_convolve(std::span<const double> f, std::span<const double> g) {
  if (f.empty() || g.empty()) return {};
  std::vector<double> out(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  }
  return out;
}

bool convolve_preserves_radial_monotone(std::span<const double> f, std::span<const double> g) {
  if (!is_even_nonincreasing(f, 0.0) || !is_even_nonincreasing(g, 0.0)) {
    throw std::invalid_argument("inputs must be even and nonincreasing on the positive half-line");
  }
  const auto h = linear_convolve(f, g);
  return is_even_nonincreasing(h, 1e-12);
}

Field gaussian_kernel(const Grid& grid, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  Field f = sample_field(grid, [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::exp(-r2 / (2.0 * sigma * sigma));
  });
  symmetrize_even(f);
  normalize_mass(f);
  return f;
}

Field two_point_kernel(const Grid& grid, double offset) {
  const std::size_t ip = grid.index_of(offset);
  const std::size_t im = grid.index_of(-offset);
  if (ip == Grid::npos || im == Grid::npos || offset <= 0.0) {
    throw std::invalid_argument("two-point kernel offset must be a positive lattice coordinate");
  }
  std::vector<double> v(grid.size(), 0.0);
  std::array<std::size_t, kMaxDim> idx{};
  for (int a = 0; a < grid.dim - 1; ++a) idx[static_cast<std::size_t>(a)] = grid.origin_index();
  const auto last = static_cast<std::size_t>(grid.dim - 1);
  const double w = 0.5 / grid.cell_volume();
  idx[last] = ip;
  v[grid.flatten(idx)] = w;
  idx[last] = im;
  v[grid.flatten(idx)] = w;
  return Field(grid, std::move(v), Symmetry::EvenInXn);
}

Field bump_pair_kernel(const Grid& grid, double offset, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  Field f = sample_field(grid, [&](std::span<const double> x) {
    double r2p = 0.0, r2m = 0.0;
    for (std::size_t a = 0; a + 1 < x.size(); ++a) {
      r2p += x[a] * x[a];
      r2m += x[a] * x[a];
    }
    const double xn = x.back();
    r2p += (xn - offset) * (xn - offset);
    r2m += (xn + offset) * (xn + offset);
    const double s2 = 2.0 * width * width;
    return std::exp(-r2p / s2) + std::exp(-r2m / s2);
  });
  symmetrize_even(f);
  normalize_mass(f);
  return f;
}

}  // namespace fujita
