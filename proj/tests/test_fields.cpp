#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fujita/fields.hpp"
#include "fujita/kernels.hpp"
#include "fujita/spectral.hpp"
#include "support.hpp"

using namespace fujita;
using namespace fujita::testing;

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(Grid::make(0, 1.0, 8), std::invalid_argument);
  EXPECT_THROW(Grid::make(4, 1.0, 8), std::invalid_argument);
  EXPECT_THROW(Grid::make(1, 1.0, 12), std::invalid_argument);
  EXPECT_THROW(Grid::make(1, -1.0, 8), std::invalid_argument);
  EXPECT_NO_THROW(Grid::make(3, 2.0, 8));
}

TEST(Grid, LatticeIsSymmetricAndContainsOrigin) {
  const Grid g = Grid::make(1, 4.0, 16);
  EXPECT_DOUBLE_EQ(g.spacing() * static_cast<double>(g.points), 2.0 * g.half_width);
  EXPECT_EQ(g.coordinate(g.origin_index()), 0.0);
  for (std::size_t i = 1; i < g.points; ++i) EXPECT_DOUBLE_EQ(g.coordinate(g.reflect(i)), -g.coordinate(i));
  EXPECT_DOUBLE_EQ(g.frequency(1), std::numbers::pi / 4.0);
  EXPECT_DOUBLE_EQ(g.frequency(15), -std::numbers::pi / 4.0);
}

TEST(Grid, FlattenRoundTrip) {
  const Grid g = Grid::make(3, 1.0, 8);
  for (std::size_t flat = 0; flat < g.size(); flat += 7) EXPECT_EQ(g.flatten(g.unflatten(flat)), flat);
  EXPECT_EQ(g.index_of(g.coordinate(5)), 5u);
  EXPECT_EQ(g.index_of(0.1), Grid::npos);
}

TEST(OddExtend, ConstantBecomesSign) {
  const Grid g = Grid::make(1, 2.0, 16);
  HalfSpaceData h = HalfSpaceData::zeros(g);
  std::fill(h.values.begin(), h.values.end(), 3.0);
  const Field f = odd_extend(h);
  EXPECT_EQ(f.symmetry(), Symmetry::OddInXn);
  for (std::size_t i = 1; i < g.points; ++i) {
    const double x = g.coordinate(i);
    EXPECT_EQ(f[i], x > 0 ? 3.0 : (x < 0 ? -3.0 : 0.0)) << "i=" << i;
  }
  // x_N = -L pairs with itself under reflection, so oddness forces zero there.
  EXPECT_EQ(f[0], 0.0);
}

TEST(OddExtend, RoundTripIsExact) {
  for (int dim = 1; dim <= 3; ++dim) {
    const Grid g = Grid::make(dim, 3.0, 8);
    HalfSpaceData h{g, random_values(HalfSpaceData::size_for(g), 7 + dim, 0.0, 2.0)};
    const Field f = odd_extend(h);
    EXPECT_EQ(restrict_to_halfspace(f).values, h.values);
    EXPECT_EQ(f.symmetry_defect(Symmetry::OddInXn), 0.0);
    EXPECT_EQ(f.trace_defect(), 0.0);
    // restriction keeps the max norm of an odd field
    EXPECT_EQ(f.sup_norm(), *std::max_element(h.values.begin(), h.values.end()));
  }
}

TEST(OddExtend, FullSpaceMomentIsTwiceHalfMoment) {
  const Grid g = Grid::make(2, 4.0, 32);
  const HalfSpaceData h = bump_half(g);
  const Field f = odd_extend(h);
  // Oracle: dx^N sum |x_N f| over the whole lattice.
  double s = 0.0;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    s += std::abs(g.coordinate(g.unflatten(flat)[1]) * f[flat]);
  }
  s *= g.cell_volume();
  EXPECT_NEAR(s, 2.0 * moment_m1(h), 1e-13);
  EXPECT_NEAR(moment_M1(f), 2.0 * moment_m1(h), 1e-13);
}

TEST(Field, EnforceProjectsAndCertifies) {
  const Grid g = Grid::make(2, 1.0, 8);
  Field f(g, random_values(g.size(), 3));
  EXPECT_EQ(f.symmetry(), Symmetry::None);
  f.enforce(Symmetry::EvenInXn);
  EXPECT_EQ(f.symmetry_defect(Symmetry::EvenInXn), 0.0);
  f.enforce(Symmetry::OddInXn);
  EXPECT_EQ(f.symmetry_defect(Symmetry::OddInXn), 0.0);
  EXPECT_EQ(f.trace_defect(), 0.0);
  f.mutable_values()[0] = 1.0;
  EXPECT_EQ(f.symmetry(), Symmetry::None);
}

TEST(Restrict, NonnegativeIffUpperHalfNonnegative) {
  const Grid g = Grid::make(1, 2.0, 16);
  HalfSpaceData h{g, random_values(HalfSpaceData::size_for(g), 5, 0.0, 1.0)};
  const auto r = restrict_to_halfspace(odd_extend(h));
  EXPECT_TRUE(std::all_of(r.values.begin(), r.values.end(), [](double v) { return v >= 0.0; }));
  h.values[2] = -0.5;
  const auto r2 = restrict_to_halfspace(odd_extend(h));
  EXPECT_FALSE(std::all_of(r2.values.begin(), r2.values.end(), [](double v) { return v >= 0.0; }));
}

TEST(Moments, SingleCell) {
  const Grid g = Grid::make(2, 2.0, 16);
  HalfSpaceData h = HalfSpaceData::zeros(g);
  const std::size_t slot = 3 * h.normal_points() + 4;
  h.values[slot] = 1.0;
  EXPECT_DOUBLE_EQ(moment_m1(h), h.normal_coordinate(slot) * g.cell_volume());
  h.values[0] = -1.0;
  EXPECT_THROW(moment_m1(h), std::invalid_argument);
}

TEST(Moments, EvenFieldHasZeroM1) {
  const Grid g = Grid::make(2, 2.0, 16);
  Field f(g, random_values(g.size(), 11));
  f.enforce(Symmetry::EvenInXn);
  EXPECT_NEAR(moment_M1(f), 0.0, 1e-14);
}

TEST(Moments, HatBumpMatchesQuadrature) {
  const Grid g = Grid::make(1, 8.0, 1 << 14);
  auto hat = [](double x) { return std::max(0.0, 1.0 - std::abs(x - 1.0)); };
  const auto h = sample_halfspace(g, [&](std::span<const double> x) { return hat(x[0]); });
  using boost::math::quadrature::gauss_kronrod;
  const double oracle = gauss_kronrod<double, 61>::integrate([&](double x) { return x * hat(x); }, 0.0, 1.0) +
                        gauss_kronrod<double, 61>::integrate([&](double x) { return x * hat(x); }, 1.0, 2.0);
  EXPECT_NEAR(moment_m1(h), oracle, 1e-6);
}

TEST(Dft, MatchesNaiveTransform) {
  const Grid g = Grid::make(2, 2.0, 8);
  const Field f(g, random_values(g.size(), 19));
  const Spectrum s = forward_dft(f);
  for (std::size_t k = 0; k < s.values.size(); k += 5) {
    const auto idx = g.unflatten(k);
    const std::vector<double> xi{g.frequency(idx[0]), g.frequency(idx[1])};
    EXPECT_LT(std::abs(s.values[k] - naive_transform(f, xi)), 1e-12);
    EXPECT_LT(std::abs(dft_at(f, xi) - naive_transform(f, xi)), 1e-12);
  }
}

TEST(Dft, OddFieldTransformIsSineSum) {
  // 1-D: purely imaginary. 2-D: equals the x' transform of -2i sum_{x_N>0} sin(x_N xi_N) u.
  const Grid g1 = Grid::make(1, 2.0, 8);
  HalfSpaceData h1{g1, random_values(HalfSpaceData::size_for(g1), 23)};
  for (const auto& c : forward_dft(odd_extend(h1)).values) EXPECT_LE(std::abs(c.real()), 1e-12);

  const Grid g = Grid::make(2, 2.0, 8);
  HalfSpaceData h{g, random_values(HalfSpaceData::size_for(g), 29)};
  const Field f = odd_extend(h);
  const Spectrum s = forward_dft(f);
  const std::size_t m = h.normal_points();
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const auto idx = g.unflatten(k);
    const double xi1 = g.frequency(idx[0]), xi2 = g.frequency(idx[1]);
    std::complex<double> oracle = 0.0;
    for (std::size_t slot = 0; slot < h.values.size(); ++slot) {
      const double x1 = g.coordinate(slot / m);
      oracle += std::polar(1.0, -x1 * xi1) * std::complex<double>(0.0, -2.0) *
                std::sin(h.normal_coordinate(slot) * xi2) * h.values[slot];
    }
    oracle *= g.cell_volume();
    EXPECT_LT(std::abs(s.values[k] - oracle), 1e-12);
  }
}

TEST(Dft, RoundTripIdentity) {
  for (int dim = 1; dim <= 3; ++dim) {
    const Grid g = Grid::make(dim, 1.5, 16);
    const Field f(g, random_values(g.size(), 31 + dim));
    EXPECT_LT(max_abs_diff(inverse_dft(forward_dft(f)).values(), f.values()), 1e-12);
  }
}

TEST(Dft, Parseval) {
  const Grid g = Grid::make(2, 3.0, 32);
  const Field f(g, random_values(g.size(), 37));
  double lhs = 0.0, rhs = 0.0;
  for (double v : f.values()) lhs += v * v;
  lhs *= g.cell_volume();
  for (const auto& c : forward_dft(f).values) rhs += std::norm(c);
  rhs *= std::pow(g.frequency_spacing() / (2.0 * std::numbers::pi), g.dim);
  EXPECT_NEAR(rhs / lhs, 1.0, 1e-10);
}

TEST(Dft, HeatKernelTransform) {
  const Grid g = Grid::make(1, 40.0, 2048);
  const Field k = sample_field(g, [](std::span<const double> x) { return heat_kernel_closed_form(1.0, x); });
  const Spectrum s = forward_dft(k);
  EXPECT_NEAR(s.values[0].real(), 1.0, 1e-12);
  for (std::size_t i = 0; i < g.points; ++i) {
    const double xi = g.frequency(i);
    EXPECT_NEAR(s.values[i].real(), std::exp(-xi * xi), 1e-8);
  }
}

TEST(FourierL1, Basics) {
  const Grid g = Grid::make(1, 40.0, 2048);
  EXPECT_EQ(fourier_l1_norm(Field::zeros(g)), 0.0);
  const Field k = sample_field(g, [](std::span<const double> x) { return heat_kernel_closed_form(1.0, x); });
  EXPECT_NEAR(fourier_l1_norm(k), std::sqrt(std::numbers::pi), 1e-6);
  EXPECT_NEAR(fourier_l1_norm(k.scaled(-2.5)), 2.5 * fourier_l1_norm(k), 1e-12);

  const Grid g2 = Grid::make(2, 20.0, 256);
  const Field k2 = sample_field(g2, [](std::span<const double> x) { return heat_kernel_closed_form(1.0, x); });
  EXPECT_NEAR(fourier_l1_norm(k2), std::numbers::pi, 1e-6);
}

TEST(FourierSmallXi, BumpRatioNearOne) {
  const Grid g = Grid::make(2, 16.0, 128);
  const Field f = odd_extend(bump_half(g));
  const auto rep = verify_fourier_small_xi(f, {{0.0, 0.1}, {0.0, 0.01}, {0.3, 0.0}});
  EXPECT_TRUE(rep.pass);
  // probes are reported in decreasing |xi|
  const auto& last = rep.probes.back();
  EXPECT_NEAR(last.ratio, 1.0, 0.02);
  EXPECT_LE(rep.hyperplane_max, 1e-12);

  const auto doubled = verify_fourier_small_xi(f.scaled(2.0), {{0.0, 0.01}});
  EXPECT_NEAR(doubled.probes[0].ratio, last.ratio, 1e-12);
}

TEST(FourierSmallXi, Errors) {
  const Grid g = Grid::make(1, 4.0, 32);
  EXPECT_THROW(verify_fourier_small_xi(Field::zeros(g), {{0.1}}), std::invalid_argument);
  EXPECT_THROW(verify_fourier_small_xi(Field(g, random_values(g.size(), 1)), {{0.1}}), std::invalid_argument);
}
