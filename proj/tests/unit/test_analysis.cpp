#include <functional>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace lpdc;

namespace {

constexpr double kLambda = kDefaultDegenerateWavelength;

// dlambda / domega at degeneracy
double lambda_per_omega() { return kLambda * kLambda / (2 * kPi * kSpeedOfLight); }

BiphotonSpectrum synthetic(const std::function<double(double)>& intensity) {
  const DetuningGrid grid(8192, 2e10);
  BiphotonSpectrum s{grid, std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size()), true};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double a = std::sqrt(intensity(grid.omega(k)));
    s.phi_si[k] = a;
    s.phi_is[k] = cplx(0.0, a);
  }
  return s;
}

double bandwidth(const CrystalConfig& c, Side side, double filter = kDefaultFilterFwhm) {
  const auto s = spectrum(c, build_grid(c, test::kSmallGrid));
  return fwhm_bandwidth(filtered_spectrum(s, side, filter));
}

}  // namespace

TEST(Wavelength, SignalIsBlueOfIdlerForPositiveDetuning) {
  EXPECT_DOUBLE_EQ(wavelength(Side::signal, 0.0, kLambda), kLambda);
  EXPECT_DOUBLE_EQ(wavelength(Side::idler, 0.0, kLambda), kLambda);
  EXPECT_LT(wavelength(Side::signal, 1e13, kLambda), kLambda);
  EXPECT_GT(wavelength(Side::idler, 1e13, kLambda), kLambda);
}

TEST(FilteredSpectrum, SingleLineReproducesTheFilter) {
  const auto s = synthetic([](double w) { return w == 0.0 ? 1.0 : 0.0; });
  for (auto side : {Side::signal, Side::idler}) {
    const auto fs = filtered_spectrum(s, side, 1e-9);
    EXPECT_NEAR(fwhm_bandwidth(fs), 1e-9, 1e-3 * 1e-9);
    EXPECT_DOUBLE_EQ(*std::max_element(fs.intensity.begin(), fs.intensity.end()), 1.0);
    EXPECT_TRUE(std::is_sorted(fs.wavelengths.begin(), fs.wavelengths.end()));
  }
}

TEST(FilteredSpectrum, GaussianWidthsAddInQuadrature) {
  const double width = 2e-9;  // intensity FWHM in wavelength
  const double sigma_w = width / lambda_per_omega() / (2 * std::sqrt(2 * std::log(2.0)));
  const auto s = synthetic([&](double w) { return std::exp(-0.5 * w * w / (sigma_w * sigma_w)); });
  for (double filter : {0.5e-9, 1e-9, 2e-9}) {
    const double expected = std::hypot(width, filter);
    EXPECT_NEAR(fwhm_bandwidth(filtered_spectrum(s, Side::signal, filter)), expected,
                0.01 * expected);
  }
}

TEST(FilteredSpectrum, WiderFiltersGiveWiderCurves) {
  const auto c = test::tapered(0.6);
  EXPECT_LT(bandwidth(c, Side::idler, 0.5e-9), bandwidth(c, Side::idler, 1e-9));
  EXPECT_LT(bandwidth(c, Side::idler, 1e-9), bandwidth(c, Side::idler, 2e-9));
}

TEST(FilteredSpectrum, BandwidthGrowsWithTheLossyRegion) {
  for (auto side : {Side::signal, Side::idler}) {
    double previous = 0.0;
    for (double f : {0.0, 0.6, 0.9}) {
      const double b = bandwidth(test::tapered(f), side);
      EXPECT_GT(b, previous) << to_string(side) << " " << f;
      previous = b;
    }
  }
}

TEST(FilteredSpectrum, SignalAndIdlerBandwidthsAgree) {
  for (double f : {0.0, 0.6, 0.9}) {
    const auto c = test::tapered(f);
    const double s = bandwidth(c, Side::signal);
    const double i = bandwidth(c, Side::idler);
    EXPECT_NEAR(s / i, 1.0, 0.02) << f;
  }
}

TEST(FilteredSpectrum, RejectsGridsThatCannotResolveTheFilter) {
  const auto c = test::short_lossy();
  // too coarse: one sample is wider than a quarter of the filter
  const auto coarse = spectrum(c, DetuningGrid(4096, 1e12));
  EXPECT_THROW(filtered_spectrum(coarse, Side::signal), NumericError);
  // too narrow: the band does not hold three filter widths
  const auto narrow = spectrum(c, DetuningGrid(64, 1e10));
  EXPECT_THROW(filtered_spectrum(narrow, Side::signal), NumericError);
  EXPECT_THROW(filtered_spectrum(coarse, Side::signal, 0.0), ConfigError);
}
