#include "fujita/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fujita/spectral.hpp"

namespace fujita {
namespace {

double norm(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return std::sqrt(s);
}

void check_even_kernel(const Field& kernel) {
  const Grid& g = kernel.grid();
  double scale = kernel.sup_norm();
  double defect = 0.0;
  double mass = 0.0;
  for (std::size_t flat = 0; flat < kernel.size(); ++flat) {
    const double v = kernel[flat];
    if (v < -1e-14 * scale) throw std::invalid_argument("convolution kernel must be nonnegative");
    defect = std::max(defect, std::abs(v - kernel[g.reflect_normal(flat)]));
    defect = std::max(defect, std::abs(v - kernel[g.reflect_tangential(flat)]));
    mass += v;
  }
  mass *= g.cell_volume();
  if (defect > 1e-12 * scale) {
    throw std::invalid_argument("convolution kernel must be even in x_N and in x'");
  }
  if (std::abs(mass - 1.0) > 1e-9) {
    throw std::invalid_argument("convolution kernel must have unit mass");
  }
}

}  // namespace

std::string to_string(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::Laplacian: return "laplacian";
    case SymbolFamily::FractionalLaplacian: return "fractional_laplacian";
    case SymbolFamily::Convolution: return "convolution";
  }
  return "unknown";
}

SymbolFamily symbol_family_from_string(const std::string& name) {
  if (name == "laplacian") return SymbolFamily::Laplacian;
  if (name == "fractional_laplacian" || name == "fractional") return SymbolFamily::FractionalLaplacian;
  if (name == "convolution") return SymbolFamily::Convolution;
  throw std::invalid_argument("unknown symbol family '" + name + "'");
}

DiffusionSymbol::DiffusionSymbol(SymbolFamily family, int dim, double beta, double a,
                                 std::shared_ptr<const Field> kernel)
    : family_(family), dim_(dim), beta_(beta), a_(a), kernel_(std::move(kernel)) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("symbol dimension must be in [1, 3]");
  if (!(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in (0, 2]");
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
}

DiffusionSymbol DiffusionSymbol::laplacian(int dim) {
  return DiffusionSymbol(SymbolFamily::Laplacian, dim, 2.0, 1.0, nullptr);
}

DiffusionSymbol DiffusionSymbol::fractional_laplacian(int dim, double beta) {
  return DiffusionSymbol(SymbolFamily::FractionalLaplacian, dim, beta, 1.0, nullptr);
}

DiffusionSymbol DiffusionSymbol::convolution(Field kernel, double a, double beta) {
  check_even_kernel(kernel);
  kernel.enforce(Symmetry::EvenInXn);
  const int dim = kernel.grid().dim;
  return DiffusionSymbol(SymbolFamily::Convolution, dim, beta, a,
                         std::make_shared<const Field>(std::move(kernel)));
}

DiffusionSymbol DiffusionSymbol::convolution(Field kernel) {
  // Provisional (a, beta) only to get a valid object for the fit.
  DiffusionSymbol provisional = convolution(std::move(kernel), 1.0, 2.0);
  const auto [lo, hi] = default_fit_range(provisional);
  const SmallFrequencyFit fit = fit_small_frequency(provisional, lo, hi);
  provisional.a_ = fit.a;
  provisional.beta_ = std::min(fit.beta, 2.0);
  return provisional;
}

double DiffusionSymbol::operator()(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) {
    throw std::invalid_argument("frequency dimension does not match symbol");
  }
  switch (family_) {
    case SymbolFamily::Laplacian: {
      double s = 0.0;
      for (double x : xi) s += x * x;
      return 1.0 - s;
    }
    case SymbolFamily::FractionalLaplacian:
      return 1.0 - std::pow(norm(xi), beta_);
    case SymbolFamily::Convolution:
      if (!kernel_) throw std::logic_error("convolution symbol without kernel samples");
      return dft_at(*kernel_, xi).real();
  }
  return 0.0;
}

nlohmann::json DiffusionSymbol::to_json() const {
  return {{"family", to_string(family_)}, {"dim", dim_}, {"beta", beta_}, {"a", a_}};
}

double eval_symbol(const DiffusionSymbol& symbol, std::span<const double> xi) { return symbol(xi); }

std::vector<double> symbol_minus_one_on_spectrum(const DiffusionSymbol& symbol, const Grid& grid) {
  if (symbol.dim() != grid.dim) throw std::invalid_argument("symbol and grid dimensions differ");
  RealTransform fft(grid);
  std::vector<double> out(fft.spectrum_size());
  if (symbol.family() == SymbolFamily::Convolution) {
    const Field& kernel = *symbol.kernel();
    if (!(kernel.grid() == grid)) {
      throw std::invalid_argument("convolution kernel grid differs from simulation grid");
    }
    std::vector<complex> spec(fft.spectrum_size());
    fft.forward(kernel.values(), spec);
    const double vol = grid.cell_volume();
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = spec[k].real() * vol * fft.phase(k) - 1.0;
    }
    return out;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto xi = fft.frequency(k);
    double s = 0.0;
    for (int a = 0; a < grid.dim; ++a) s += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
    out[k] = symbol.family() == SymbolFamily::Laplacian ? -s : -std::pow(s, 0.5 * symbol.beta());
  }
  return out;
}

nlohmann::json AssumptionReport::to_json() const {
  return {{"j0_at_zero", j0_at_zero},
          {"unit_mass_pass", unit_mass_pass},
          {"r", r},
          {"xi_max", xi_max},
          {"sup_outside", sup_outside},
          {"sup_location", sup_location},
          {"sup_pass", sup_pass},
          {"fit", {{"a", fit_a}, {"beta", fit_beta}, {"residual", fit_residual}, {"ok", fit_ok}}},
          {"residual_threshold", residual_threshold},
          {"expansion_pass", expansion_pass},
          {"tol", tol},
          {"pass", pass}};
}

AssumptionReport validate_assumptions(const DiffusionSymbol& symbol, double r, double tol,
                                      std::optional<double> xi_max) {
  AssumptionReport rep;
  rep.r = r;
  rep.tol = tol;
  const int dim = symbol.dim();
  std::vector<double> zero(static_cast<std::size_t>(dim), 0.0);
  rep.j0_at_zero = symbol(zero);
  rep.unit_mass_pass = std::abs(rep.j0_at_zero - 1.0) <= tol;

  rep.sup_outside = -std::numeric_limits<double>::infinity();
  if (symbol.family() == SymbolFamily::Convolution) {
    const Grid& g = symbol.kernel()->grid();
    RealTransform fft(g);
    const auto values = symbol_minus_one_on_spectrum(symbol, g);
    rep.xi_max = g.nyquist() * std::sqrt(static_cast<double>(dim));
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto xi = fft.frequency(k);
      if (norm(std::span<const double>(xi.data(), static_cast<std::size_t>(dim))) < r) continue;
      const double j0 = values[k] + 1.0;
      if (j0 > rep.sup_outside) {
        rep.sup_outside = j0;
        rep.sup_location.assign(xi.begin(), xi.begin() + dim);
      }
    }
  } else {
    rep.xi_max = xi_max.value_or(std::max(10.0 * r, 4.0 * std::numbers::pi));
    const int samples = 4096;
    std::vector<double> xi(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < samples; ++i) {
      xi.back() = r + (rep.xi_max - r) * static_cast<double>(i) / (samples - 1);
      const double j0 = symbol(xi);
      if (j0 > rep.sup_outside) {
        rep.sup_outside = j0;
        rep.sup_location = xi;
      }
    }
  }
  rep.sup_pass = rep.sup_outside < 1.0 - tol;

  try {
    const SmallFrequencyFit fit = fit_small_frequency(symbol, 0.1 * r, r);
    rep.fit_a = fit.a;
    rep.fit_beta = fit.beta;
    rep.fit_residual = fit.residual;
    rep.fit_ok = true;
  } catch (const std::domain_error&) {
    rep.fit_ok = false;
  }
  rep.expansion_pass = rep.fit_ok && rep.fit_residual <= rep.residual_threshold;
  rep.pass = rep.unit_mass_pass && rep.sup_pass && rep.expansion_pass;
  return rep;
}

SmallFrequencyFit fit_small_frequency(const DiffusionSymbol& symbol, double lo, double hi,
                                      int samples) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("fit range must satisfy 0 < lo < hi");
  if (samples < 8) throw std::invalid_argument("fit needs at least 8 sample frequencies");
  if (symbol.family() == SymbolFamily::Convolution && hi >= symbol.kernel()->grid().nyquist()) {
    throw std::invalid_argument("fit range exceeds the kernel grid Nyquist frequency");
  }
  std::vector<double> xs, ys, gaps;
  std::vector<double> xi(static_cast<std::size_t>(symbol.dim()), 0.0);
  for (int i = 0; i < samples; ++i) {
    const double s = lo * std::pow(hi / lo, static_cast<double>(i) / (samples - 1));
    xi.back() = s;
    const double gap = 1.0 - symbol(xi);
    if (!(gap > 0.0)) throw std::domain_error("1 - J0 is not positive on the fit range");
    xs.push_back(std::log(s));
    ys.push_back(std::log(gap));
    gaps.push_back(gap);
  }
  const double n = static_cast<double>(samples);
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < samples; ++i) {
    mx += xs[static_cast<std::size_t>(i)];
    my += ys[static_cast<std::size_t>(i)];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double dx = xs[static_cast<std::size_t>(i)] - mx;
    sxx += dx * dx;
    sxy += dx * (ys[static_cast<std::size_t>(i)] - my);
  }
  SmallFrequencyFit fit;
  fit.beta = sxy / sxx;
  fit.a = std::exp(my - fit.beta * mx);
  for (int i = 0; i < samples; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double model = fit.a * std::exp(fit.beta * xs[u]);
    fit.residual = std::max(fit.residual, std::abs(model - gaps[u]) / gaps[u]);
  }
  return fit;
}

std::pair<double, double> default_fit_range(const DiffusionSymbol& symbol) {
  if (symbol.family() == SymbolFamily::Convolution) {
    const double nyq = symbol.kernel()->grid().nyquist();
    return {std::min(0.01, 0.01 * nyq), std::min(0.1, 0.1 * nyq)};
  }
  return {0.01, 0.1};
}

double fujita_exponent(double beta, int dim) {
  if (!(beta > 0.0 && beta <= 2.0)) throw std::invalid_argument("beta must lie in (0, 2]");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return 1.0 + beta / (dim + 1.0);
}

}  // namespace fujita
