#include "fujita/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fujita {

Grid Grid::make(int dim, double half_width, std::size_t points) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("grid dimension must be in [1, 3]");
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("grid half-width must be positive");
  }
  if (points < 4 || (points & (points - 1)) != 0) {
    throw std::invalid_argument("grid points per axis must be a power of two >= 4");
  }
  return Grid{dim, half_width, points};
}

double Grid::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= points;
  return s;
}

double Grid::frequency(std::size_t k) const {
  const auto n = static_cast<long long>(points);
  auto signed_k = static_cast<long long>(k);
  if (signed_k >= n / 2) signed_k -= n;
  return std::numbers::pi * static_cast<double>(signed_k) / half_width;
}

double Grid::frequency_spacing() const { return std::numbers::pi / half_width; }

double Grid::nyquist() const { return std::numbers::pi / spacing(); }

std::array<std::size_t, kMaxDim> Grid::unflatten(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> idx{};
  for (int a = dim - 1; a >= 0; --a) {
    idx[static_cast<std::size_t>(a)] = flat % points;
    flat /= points;
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, kMaxDim>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a) flat = flat * points + idx[static_cast<std::size_t>(a)];
  return flat;
}

std::size_t Grid::reflect_normal(std::size_t flat) const {
  const std::size_t i = flat % points;
  return flat - i + reflect(i);
}

std::size_t Grid::reflect_tangential(std::size_t flat) const {
  auto idx = unflatten(flat);
  for (int a = 0; a < dim - 1; ++a) {
    idx[static_cast<std::size_t>(a)] = reflect(idx[static_cast<std::size_t>(a)]);
  }
  return flatten(idx);
}

std::size_t Grid::index_of(double x, double tol) const {
  const double s = (x + half_width) / spacing();
  const double r = std::round(s);
  if (std::abs(s - r) > tol || r < 0.0 || r >= static_cast<double>(points)) return npos;
  return static_cast<std::size_t>(r);
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << "Grid(N=" << dim << ", L=" << half_width << ", n=" << points << ")";
  return os.str();
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::OddInXn: return "odd";
    case Symmetry::EvenInXn: return "even";
    case Symmetry::None: break;
  }
  return "none";
}

Field::Field(Grid grid, std::vector<double> values, Symmetry symmetry)
    : grid_(grid), values_(std::move(values)), symmetry_(symmetry) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("field size does not match grid");
  }
}

Field Field::zeros(const Grid& grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0), Symmetry::OddInXn);
}

void Field::enforce(Symmetry s) {
  if (s == Symmetry::None) {
    symmetry_ = s;
    return;
  }
  const std::size_t n = grid_.points;
  for (std::size_t base = 0; base < values_.size(); base += n) {
    double* row = values_.data() + base;
    for (std::size_t i = 1; i < n / 2; ++i) {
      const std::size_t j = n - i;
      if (s == Symmetry::OddInXn) {
        const double v = 0.5 * (row[j] - row[i]);
        row[j] = v;
        row[i] = -v;
      } else {
        const double v = 0.5 * (row[j] + row[i]);
        row[j] = v;
        row[i] = v;
      }
    }
    if (s == Symmetry::OddInXn) {
      row[0] = 0.0;
      row[n / 2] = 0.0;
    }
  }
  symmetry_ = s;
}

double Field::symmetry_defect(Symmetry s) const {
  if (s == Symmetry::None) return 0.0;
  const double sign = s == Symmetry::OddInXn ? -1.0 : 1.0;
  double worst = 0.0;
  for (std::size_t flat = 0; flat < values_.size(); ++flat) {
    worst = std::max(worst, std::abs(values_[flat] - sign * values_[grid_.reflect_normal(flat)]));
  }
  return worst;
}

double Field::trace_defect() const {
  const std::size_t n = grid_.points;
  double worst = 0.0;
  for (std::size_t base = 0; base < values_.size(); base += n) {
    worst = std::max(worst, std::abs(values_[base + n / 2]));
  }
  return worst;
}

double Field::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field Field::scaled(double c) const {
  Field out = *this;
  for (double& v : out.values_) v *= c;
  return out;
}

std::size_t HalfSpaceData::size_for(const Grid& grid) {
  return grid.size() / grid.points * (grid.points / 2 - 1);
}

HalfSpaceData HalfSpaceData::zeros(const Grid& grid) {
  return HalfSpaceData{grid, std::vector<double>(size_for(grid), 0.0)};
}

double HalfSpaceData::normal_coordinate(std::size_t flat) const {
  return static_cast<double>(flat % normal_points() + 1) * grid.spacing();
}

Field odd_extend(const HalfSpaceData& half) {
  const Grid& g = half.grid;
  if (half.values.size() != HalfSpaceData::size_for(g)) {
    throw std::invalid_argument("half-space data size does not match grid");
  }
  const std::size_t n = g.points;
  const std::size_t m = half.normal_points();
  std::vector<double> out(g.size(), 0.0);
  const std::size_t rows = g.size() / n;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t flat0 = r * n;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = half.values[r * m + j];
      if (!std::isfinite(v)) throw std::invalid_argument("half-space data must be finite");
      out[flat0 + n / 2 + 1 + j] = v;
      out[flat0 + n / 2 - 1 - j] = -v;
    }
  }
  return Field(g, std::move(out), Symmetry::OddInXn);
}

HalfSpaceData restrict_to_halfspace(const Field& field) {
  const Grid& g = field.grid();
  HalfSpaceData half = HalfSpaceData::zeros(g);
  const std::size_t n = g.points;
  const std::size_t m = half.normal_points();
  const std::size_t rows = g.size() / n;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < m; ++j) half.values[r * m + j] = field[r * n + n / 2 + 1 + j];
  }
  return half;
}

double moment_m1(const HalfSpaceData& half) {
  const std::size_t m = half.normal_points();
  double sum = 0.0;
  for (std::size_t i = 0; i < half.values.size(); ++i) {
    const double v = half.values[i];
    if (v < 0.0) throw std::invalid_argument("m1 requires nonnegative half-space data");
    sum += static_cast<double>(i % m + 1) * half.grid.spacing() * v;
  }
  return sum * half.grid.cell_volume();
}

double moment_M1(const Field& field) {
  const Grid& g = field.grid();
  const std::size_t n = g.points;
  double sum = 0.0;
  // The x_N = -L plane is its own periodic mirror and carries no moment.
  for (std::size_t flat = 0; flat < field.size(); ++flat) {
    if (flat % n != 0) sum += g.coordinate(flat % n) * field[flat];
  }
  return sum * g.cell_volume();
}

}  // namespace fujita
