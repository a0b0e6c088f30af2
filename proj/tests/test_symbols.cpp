#include <gtest/gtest.h>

#include "fujita/kernels.hpp"
#include "fujita/spectral.hpp"
#include "fujita/symbols.hpp"
#include "support.hpp"

using namespace fujita;
using namespace fujita::testing;

namespace {

DiffusionSymbol gaussian_symbol(double sigma, const Grid& g) {
  return DiffusionSymbol::convolution(gaussian_kernel(g, sigma), 0.5 * sigma * sigma, 2.0);
}

}  // namespace

TEST(EvalSymbol, LaplacianValues) {
  const auto s = DiffusionSymbol::laplacian(2);
  const std::vector<double> xi{1.0, 0.0};
  EXPECT_DOUBLE_EQ(eval_symbol(s, xi), 0.0);
  const std::vector<double> xi2{0.3, 0.4};
  EXPECT_DOUBLE_EQ(eval_symbol(s, xi2), 1.0 - 0.25);
}

TEST(EvalSymbol, FractionalValue) {
  const auto s = DiffusionSymbol::fractional_laplacian(1, 1.5);
  const std::vector<double> xi{0.25};
  EXPECT_DOUBLE_EQ(s(xi), 1.0 - std::pow(0.25, 1.5));
}

TEST(EvalSymbol, UnitAtZeroForEveryFamily) {
  const Grid g = Grid::make(1, 40.0, 1024);
  const std::vector<double> zero{0.0};
  EXPECT_DOUBLE_EQ(DiffusionSymbol::laplacian(1)(zero), 1.0);
  EXPECT_DOUBLE_EQ(DiffusionSymbol::fractional_laplacian(1, 0.7)(zero), 1.0);
  EXPECT_NEAR(gaussian_symbol(1.0, g)(zero), 1.0, 1e-14);
}

TEST(EvalSymbol, GaussianConvolutionMatchesAnalyticTransform) {
  const Grid g = Grid::make(1, 40.0, 2048);
  const double sigma = 1.3;
  const auto s = gaussian_symbol(sigma, g);
  for (double xi : {0.001, 0.01, 0.1, 0.5, 1.0, 2.0}) {
    const std::vector<double> v{xi};
    const double exact = std::exp(-0.5 * sigma * sigma * xi * xi);
    EXPECT_NEAR(s(v), exact, 1e-12);
    if (xi <= 0.01) EXPECT_NEAR((1.0 - s(v)) / (xi * xi), 0.5 * sigma * sigma, 1e-4);
  }
}

TEST(EvalSymbol, Errors) {
  const auto s = DiffusionSymbol::laplacian(2);
  const std::vector<double> xi{1.0};
  EXPECT_THROW(s(xi), std::invalid_argument);
  EXPECT_THROW(DiffusionSymbol::fractional_laplacian(1, 2.5), std::invalid_argument);
  EXPECT_THROW(DiffusionSymbol::fractional_laplacian(1, 0.0), std::invalid_argument);
}

TEST(ConvolutionSymbol, RejectsBadKernels) {
  const Grid g = Grid::make(1, 10.0, 256);
  Field k = gaussian_kernel(g, 1.0);
  EXPECT_THROW(DiffusionSymbol::convolution(k.scaled(2.0), 0.5, 2.0), std::invalid_argument);
  std::vector<double> shifted(k.values().begin(), k.values().end());
  std::rotate(shifted.begin(), shifted.begin() + 3, shifted.end());
  EXPECT_THROW(DiffusionSymbol::convolution(Field(g, shifted), 0.5, 2.0), std::invalid_argument);
  std::vector<double> negative(k.values().begin(), k.values().end());
  negative[g.origin_index() + 40] = negative[g.origin_index() - 40] = -1e-3;
  negative[g.origin_index()] += 2e-3 / g.spacing();
  EXPECT_THROW(DiffusionSymbol::convolution(Field(g, negative), 0.5, 2.0), std::invalid_argument);
}

TEST(ConvolutionSymbol, ImaginaryPartVanishes) {
  const Grid g = Grid::make(2, 8.0, 32);
  const Field k = gaussian_kernel(g, 0.8);
  const Spectrum s = forward_dft(k);
  for (const auto& c : s.values) EXPECT_LE(std::abs(c.imag()), 1e-12);
}

TEST(SymbolProperty, NeverAboveOne) {
  const Grid g = Grid::make(1, 20.0, 512);
  const std::vector<DiffusionSymbol> symbols{DiffusionSymbol::laplacian(1), DiffusionSymbol::fractional_laplacian(1, 0.5),
                                             DiffusionSymbol::fractional_laplacian(1, 1.7), gaussian_symbol(0.7, g),
                                             DiffusionSymbol::convolution(two_point_kernel(g, 1.25), 0.5, 2.0)};
  for (const auto& s : symbols) {
    for (std::size_t k = 0; k < g.points; ++k) {
      const std::vector<double> xi{g.frequency(k)};
      EXPECT_LE(s(xi), 1.0 + 1e-12);
    }
  }
}

TEST(ValidateAssumptions, LaplacianPasses) {
  const auto rep = validate_assumptions(DiffusionSymbol::laplacian(1), 0.5, 1e-6);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.sup_outside, 0.75, 1e-12);
  EXPECT_NEAR(rep.j0_at_zero, 1.0, 1e-15);
}

TEST(ValidateAssumptions, FractionalPasses) {
  const auto rep = validate_assumptions(DiffusionSymbol::fractional_laplacian(1, 1.0), 1.0, 1e-6);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.sup_outside, 0.0, 1e-12);
}

TEST(ValidateAssumptions, TwoSpikesFail) {
  // (delta_{-1} + delta_{+1}) / 2 has J0 = cos(xi), which returns to 1 at 2 pi.
  const Grid g = Grid::make(1, 16.0, 256);
  const auto s = DiffusionSymbol::convolution(two_point_kernel(g, 1.0), 0.5, 2.0);
  const std::vector<double> xi{2.0 * std::numbers::pi};
  EXPECT_NEAR(s(xi), 1.0, 1e-12);
  const auto rep = validate_assumptions(s, 0.5, 1e-6);
  EXPECT_FALSE(rep.sup_pass);
  EXPECT_FALSE(rep.pass);
  EXPECT_NEAR(rep.sup_outside, 1.0, 1e-12);
}

TEST(FitSmallFrequency, ExactPowerLaws) {
  auto lap = fit_small_frequency(DiffusionSymbol::laplacian(1), 0.01, 0.1);
  EXPECT_NEAR(lap.a, 1.0, 1e-6);
  EXPECT_NEAR(lap.beta, 2.0, 1e-6);
  auto frac = fit_small_frequency(DiffusionSymbol::fractional_laplacian(1, 1.5), 0.01, 0.1);
  EXPECT_NEAR(frac.a, 1.0, 1e-6);
  EXPECT_NEAR(frac.beta, 1.5, 1e-6);
}

TEST(FitSmallFrequency, RandomRangesRecoverParameters) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(1e-3, 0.5);
  for (int i = 0; i < 50; ++i) {
    double lo = u(rng), hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    if (hi / lo < 1.5) continue;
    const double beta = 0.2 + 1.8 * (i % 10) / 9.0;
    const auto fit = fit_small_frequency(DiffusionSymbol::fractional_laplacian(2, beta), lo, hi);
    EXPECT_NEAR(fit.a, 1.0, 1e-6);
    EXPECT_NEAR(fit.beta / beta, 1.0, 1e-6);
  }
}

TEST(FitSmallFrequency, GaussianKernel) {
  const Grid g = Grid::make(1, 40.0, 2048);
  const auto fit = fit_small_frequency(gaussian_symbol(1.0, g), 0.01, 0.1);
  EXPECT_NEAR(fit.a, 0.5, 2e-3);
  EXPECT_NEAR(fit.beta, 2.0, 2e-3);
  EXPECT_LT(fit.residual, 1e-3);
  const auto fitted = DiffusionSymbol::convolution(gaussian_kernel(g, 1.0));
  EXPECT_NEAR(fitted.a(), 0.5, 2e-3);
  EXPECT_NEAR(fitted.beta(), 2.0, 2e-3);
}

TEST(FitSmallFrequency, Errors) {
  EXPECT_THROW(fit_small_frequency(DiffusionSymbol::laplacian(1), 0.1, 0.01), std::invalid_argument);
  EXPECT_THROW(fit_small_frequency(DiffusionSymbol::laplacian(1), 0.01, 0.1, 4), std::invalid_argument);
  // 1 - J0 = 0 at 2 pi for the two-spike kernel
  const Grid g = Grid::make(1, 16.0, 256);
  const auto s = DiffusionSymbol::convolution(two_point_kernel(g, 1.0), 0.5, 2.0);
  EXPECT_THROW(fit_small_frequency(s, 2.0 * std::numbers::pi, 7.0), std::domain_error);
}

TEST(FujitaExponent, Values) {
  EXPECT_DOUBLE_EQ(fujita_exponent(2.0, 1), 2.0);
  EXPECT_DOUBLE_EQ(fujita_exponent(2.0, 3), 1.5);
  EXPECT_DOUBLE_EQ(fujita_exponent(1.0, 1), 1.5);
  EXPECT_THROW(fujita_exponent(2.5, 1), std::invalid_argument);
  EXPECT_THROW(fujita_exponent(1.0, 0), std::invalid_argument);
}
