#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fujita {

inline constexpr int kMaxDim = 3;

/// Uniform periodic lattice on the box [-L, L)^N.
///
/// Lattice points are x_i = -L + i*dx for i in [0, n), so x = 0 sits at
/// index n/2 and reflection x -> -x maps index i to (n - i) mod n.  The last
/// axis is the normal direction x_N and is stored contiguously.
struct Grid {
  int dim = 1;
  double half_width = 1.0;
  std::size_t points = 2;

  /// Validates and builds a grid; points must be an even power of two.
  static Grid make(int dim, double half_width, std::size_t points);

  double spacing() const { return 2.0 * half_width / static_cast<double>(points); }
  double cell_volume() const;
  std::size_t size() const;
  double coordinate(std::size_t i) const {
    return -half_width + static_cast<double>(i) * spacing();
  }
  std::size_t origin_index() const { return points / 2; }
  std::size_t reflect(std::size_t i) const { return (points - i) % points; }

  /// Signed frequency pi*k/L for DFT index k (k >= n/2 wraps to k - n).
  double frequency(std::size_t k) const;
  double frequency_spacing() const;
  double nyquist() const;

  /// Flat index <-> per-axis indices (axis dim-1 is x_N, stride 1).
  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, kMaxDim>& idx) const;
  /// Flat index of the point reflected in x_N only.
  std::size_t reflect_normal(std::size_t flat) const;
  /// Flat index of the point reflected in x' only.
  std::size_t reflect_tangential(std::size_t flat) const;
  /// Nearest lattice index to coordinate x, or npos when off-lattice by more than tol*dx.
  std::size_t index_of(double x, double tol = 1e-9) const;

  bool operator==(const Grid&) const = default;
  std::string describe() const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

enum class Symmetry { None, OddInXn, EvenInXn };

std::string to_string(Symmetry s);

/// Real lattice function with a symmetry certificate in x_N.
///
/// The certificate is only set by operations that produce exactly symmetric
/// values; `mutable_values()` drops it.
class Field {
 public:
  Field() = default;
  Field(Grid grid, std::vector<double> values, Symmetry symmetry = Symmetry::None);

  static Field zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  Symmetry symmetry() const { return symmetry_; }
  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() {
    symmetry_ = Symmetry::None;
    return values_;
  }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Projects onto the requested symmetry class so that it holds bitwise,
  /// then sets the certificate. Zeroes the x_N = 0 (and x_N = -L) planes for OddInXn.
  void enforce(Symmetry s);
  /// Marks the certificate without touching values; caller guarantees exactness.
  void certify(Symmetry s) { symmetry_ = s; }

  /// max |u(x', x_N) - s * u(x', -x_N)| with s = -1 (odd) or +1 (even).
  double symmetry_defect(Symmetry s) const;
  /// max |u| over the x_N = 0 plane.
  double trace_defect() const;

  double sup_norm() const;
  Field scaled(double c) const;

 private:
  Grid grid_{};
  std::vector<double> values_{};
  Symmetry symmetry_ = Symmetry::None;
};

/// Values on the open upper half-lattice x_N > 0 (x_N in {dx, ..., L - dx}).
///
/// Layout: tangential multi-index in row-major order, then the x_N offset
/// j in [0, n/2 - 1), with x_N = (j + 1) * dx.
struct HalfSpaceData {
  Grid grid{};
  std::vector<double> values{};

  static HalfSpaceData zeros(const Grid& grid);
  static std::size_t size_for(const Grid& grid);
  std::size_t normal_points() const { return grid.points / 2 - 1; }
  double normal_coordinate(std::size_t flat) const;
};

/// Odd reflection in x_N: values above, negated mirror below, zero on x_N = 0.
Field odd_extend(const HalfSpaceData& half);
/// The x_N > 0 slice.
HalfSpaceData restrict_to_halfspace(const Field& field);

/// m1 = dx^N * sum x_N u over the half-lattice; throws on negative data.
double moment_m1(const HalfSpaceData& half);
/// M1 = dx^N * sum x_N u over the full lattice, excluding the x_N = -L plane.
double moment_M1(const Field& field);

/// Builds half-space data by sampling f(x) at every upper lattice point.
template <typename F>
HalfSpaceData sample_halfspace(const Grid& grid, F&& f) {
  HalfSpaceData half = HalfSpaceData::zeros(grid);
  const std::size_t m = half.normal_points();
  const std::size_t tangential = half.values.size() / m;
  std::array<double, kMaxDim> x{};
  for (std::size_t t = 0; t < tangential; ++t) {
    std::size_t rem = t;
    for (int axis = grid.dim - 2; axis >= 0; --axis) {
      x[static_cast<std::size_t>(axis)] = grid.coordinate(rem % grid.points);
      rem /= grid.points;
    }
    for (std::size_t j = 0; j < m; ++j) {
      x[static_cast<std::size_t>(grid.dim - 1)] = static_cast<double>(j + 1) * grid.spacing();
      half.values[t * m + j] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim)));
    }
  }
  return half;
}

/// Builds a full-lattice field by sampling f(x).
template <typename F>
Field sample_field(const Grid& grid, F&& f) {
  std::vector<double> v(grid.size());
  std::array<double, kMaxDim> x{};
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    const auto idx = grid.unflatten(flat);
    for (int a = 0; a < grid.dim; ++a) {
      x[static_cast<std::size_t>(a)] = grid.coordinate(idx[static_cast<std::size_t>(a)]);
    }
    v[flat] = f(std::span<const double>(x.data(), static_cast<std::size_t>(grid.dim)));
  }
  return Field(grid, std::move(v));
}

}  // namespace fujita
