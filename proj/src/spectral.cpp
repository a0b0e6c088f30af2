#include "fujita/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fujita {
namespace {

// The FFTW planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<int> dims_of(const Grid& g) {
  return std::vector<int>(static_cast<std::size_t>(g.dim), static_cast<int>(g.points));
}

double parity(const Grid& g, std::size_t flat) {
  const auto idx = g.unflatten(flat);
  std::size_t s = 0;
  for (int a = 0; a < g.dim; ++a) s += idx[static_cast<std::size_t>(a)];
  return (s % 2 == 0) ? 1.0 : -1.0;
}

// One-shot complex transform of `data` in place.
void complex_fft(const Grid& g, std::vector<complex>& data, int sign) {
  const auto dims = dims_of(g);
  auto* buf = reinterpret_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * data.size()));
  if (buf == nullptr) throw std::bad_alloc();
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(g.dim, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  std::memcpy(static_cast<void*>(buf), static_cast<const void*>(data.data()), sizeof(fftw_complex) * data.size());
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(buf), sizeof(fftw_complex) * data.size());
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
}

}  // namespace

Spectrum forward_dft(const Field& field) {
  const Grid& g = field.grid();
  std::vector<complex> data(field.values().begin(), field.values().end());
  complex_fft(g, data, FFTW_FORWARD);
  const double vol = g.cell_volume();
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= vol * parity(g, k);
  return Spectrum{g, std::move(data)};
}

Field inverse_dft(const Spectrum& spectrum) {
  const Grid& g = spectrum.grid;
  if (spectrum.values.size() != g.size()) {
    throw std::invalid_argument("spectrum size does not match grid");
  }
  std::vector<complex> data = spectrum.values;
  for (std::size_t k = 0; k < data.size(); ++k) data[k] *= parity(g, k);
  complex_fft(g, data, FFTW_BACKWARD);
  const double scale = std::pow(1.0 / (2.0 * g.half_width), g.dim);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real() * scale;
  return Field(g, std::move(out));
}

complex dft_at(const Field& field, std::span<const double> xi) {
  const Grid& g = field.grid();
  if (static_cast<int>(xi.size()) != g.dim) {
    throw std::invalid_argument("frequency dimension does not match grid");
  }
  // Sum as a product of per-axis phase tables.
  std::vector<std::vector<complex>> phase(static_cast<std::size_t>(g.dim),
                                          std::vector<complex>(g.points));
  for (int a = 0; a < g.dim; ++a) {
    for (std::size_t i = 0; i < g.points; ++i) {
      const double arg = -g.coordinate(i) * xi[static_cast<std::size_t>(a)];
      phase[static_cast<std::size_t>(a)][i] = complex(std::cos(arg), std::sin(arg));
    }
  }
  complex sum = 0.0;
  for (std::size_t flat = 0; flat < field.size(); ++flat) {
    const double v = field[flat];
    if (v == 0.0) continue;
    const auto idx = g.unflatten(flat);
    complex p = 1.0;
    for (int a = 0; a < g.dim; ++a) p *= phase[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    sum += v * p;
  }
  return sum * g.cell_volume();
}

double fourier_l1_norm(const Field& field) {
  const Spectrum s = forward_dft(field);
  double sum = 0.0;
  for (const complex& c : s.values) sum += std::abs(c);
  return sum * std::pow(field.grid().frequency_spacing(), field.grid().dim);
}

struct RealTransform::Impl {
  Grid grid;
  std::size_t real_size = 0;
  std::size_t spectrum_size = 0;
  double* real_buf = nullptr;
  fftw_complex* spec_buf = nullptr;
  fftw_plan forward_plan = nullptr;
  fftw_plan inverse_plan = nullptr;

  explicit Impl(const Grid& g) : grid(g) {
    real_size = g.size();
    spectrum_size = g.size() / g.points * (g.points / 2 + 1);
    real_buf = fftw_alloc_real(real_size);
    spec_buf = fftw_alloc_complex(spectrum_size);
    if (real_buf == nullptr || spec_buf == nullptr) throw std::bad_alloc();
    const auto dims = dims_of(g);
    std::lock_guard lock(planner_mutex());
    forward_plan = fftw_plan_dft_r2c(g.dim, dims.data(), real_buf, spec_buf, FFTW_ESTIMATE);
    inverse_plan = fftw_plan_dft_c2r(g.dim, dims.data(), spec_buf, real_buf, FFTW_ESTIMATE);
  }

  ~Impl() {
    {
      std::lock_guard lock(planner_mutex());
      if (forward_plan != nullptr) fftw_destroy_plan(forward_plan);
      if (inverse_plan != nullptr) fftw_destroy_plan(inverse_plan);
    }
    fftw_free(real_buf);
    fftw_free(spec_buf);
  }
};

RealTransform::RealTransform(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
RealTransform::~RealTransform() = default;
RealTransform::RealTransform(RealTransform&&) noexcept = default;
RealTransform& RealTransform::operator=(RealTransform&&) noexcept = default;

const Grid& RealTransform::grid() const { return impl_->grid; }
std::size_t RealTransform::spectrum_size() const { return impl_->spectrum_size; }

void RealTransform::forward(std::span<const double> in, std::span<complex> out) {
  if (in.size() != impl_->real_size || out.size() != impl_->spectrum_size) {
    throw std::invalid_argument("RealTransform::forward size mismatch");
  }
  std::copy(in.begin(), in.end(), impl_->real_buf);
  fftw_execute(impl_->forward_plan);
  std::memcpy(static_cast<void*>(out.data()), static_cast<const void*>(impl_->spec_buf), sizeof(fftw_complex) * impl_->spectrum_size);
}

void RealTransform::inverse(std::span<const complex> in, std::span<double> out) {
  if (in.size() != impl_->spectrum_size || out.size() != impl_->real_size) {
    throw std::invalid_argument("RealTransform::inverse size mismatch");
  }
  // c2r overwrites its input, so always go through the owned buffer.
  std::memcpy(static_cast<void*>(impl_->spec_buf), static_cast<const void*>(in.data()), sizeof(fftw_complex) * impl_->spectrum_size);
  fftw_execute(impl_->inverse_plan);
  const double scale = 1.0 / static_cast<double>(impl_->real_size);
  for (std::size_t i = 0; i < impl_->real_size; ++i) out[i] = impl_->real_buf[i] * scale;
}

std::array<double, kMaxDim> RealTransform::frequency(std::size_t slot) const {
  const Grid& g = impl_->grid;
  const std::size_t last = g.points / 2 + 1;
  std::array<double, kMaxDim> xi{};
  xi[static_cast<std::size_t>(g.dim - 1)] =
      std::numbers::pi * static_cast<double>(slot % last) / g.half_width;
  std::size_t rem = slot / last;
  for (int a = g.dim - 2; a >= 0; --a) {
    xi[static_cast<std::size_t>(a)] = g.frequency(rem % g.points);
    rem /= g.points;
  }
  return xi;
}

double RealTransform::phase(std::size_t slot) const {
  const Grid& g = impl_->grid;
  const std::size_t last = g.points / 2 + 1;
  std::size_t s = slot % last;
  std::size_t rem = slot / last;
  for (int a = g.dim - 2; a >= 0; --a) {
    s += rem % g.points;
    rem /= g.points;
  }
  return (s % 2 == 0) ? 1.0 : -1.0;
}

Field spectral_convolve(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("convolution grids differ");
  const Grid& g = a.grid();
  RealTransform fft(g);
  std::vector<complex> fa(fft.spectrum_size()), fb(fft.spectrum_size());
  fft.forward(a.values(), fa);
  fft.forward(b.values(), fb);
  // The lattice origin sits at index n/2 per axis, which contributes the parity phase.
  const double vol = g.cell_volume();
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k] * vol * fft.phase(k);
  std::vector<double> out(g.size());
  fft.inverse(fa, out);
  Symmetry sym = Symmetry::None;
  if (a.symmetry() != Symmetry::None && b.symmetry() != Symmetry::None) {
    sym = (a.symmetry() == b.symmetry()) ? Symmetry::EvenInXn : Symmetry::OddInXn;
  }
  Field result(g, std::move(out));
  result.enforce(sym);
  return result;
}

nlohmann::json SmallXiReport::to_json() const {
  nlohmann::json probes_json = nlohmann::json::array();
  for (const auto& p : probes) {
    probes_json.push_back({{"xi", p.xi}, {"magnitude", p.magnitude},
                           {"predicted", p.predicted}, {"ratio", p.ratio}});
  }
  return {{"m1", m1}, {"probes", probes_json}, {"hyperplane_max", hyperplane_max},
          {"tolerance", tolerance}, {"pass", pass}};
}

SmallXiReport verify_fourier_small_xi(const Field& odd_field,
                                      const std::vector<std::vector<double>>& probes,
                                      double tolerance) {
  if (odd_field.symmetry() != Symmetry::OddInXn) {
    throw std::invalid_argument("verify_fourier_small_xi needs an odd field");
  }
  SmallXiReport report;
  report.tolerance = tolerance;
  report.m1 = moment_m1(restrict_to_halfspace(odd_field));
  if (!(report.m1 > 0.0)) throw std::invalid_argument("verify_fourier_small_xi needs m1 > 0");

  const int dim = odd_field.grid().dim;
  std::vector<std::vector<double>> ordered = probes;
  auto norm = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const auto& a, const auto& b) { return norm(a) > norm(b); });

  double last_ratio = -1.0;
  for (const auto& xi : ordered) {
    if (static_cast<int>(xi.size()) != dim) {
      throw std::invalid_argument("probe frequency dimension does not match grid");
    }
    SmallXiReport::Probe p;
    p.xi = xi;
    p.magnitude = std::abs(dft_at(odd_field, xi));
    const double xn = std::abs(xi.back());
    p.predicted = 2.0 * report.m1 * xn;
    if (xn == 0.0) {
      report.hyperplane_max = std::max(report.hyperplane_max, p.magnitude);
    } else {
      p.ratio = p.magnitude / p.predicted;
      last_ratio = p.ratio;
    }
    report.probes.push_back(std::move(p));
  }
  const bool ratio_ok = last_ratio < 0.0 || std::abs(last_ratio - 1.0) <= tolerance;
  report.pass = ratio_ok && report.hyperplane_max <= 1e-12;
  return report;
}

}  // namespace fujita
