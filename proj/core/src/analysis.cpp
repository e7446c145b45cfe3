#include "lpdc/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "lpdc/parallel.hpp"

namespace lpdc {

namespace {

constexpr double kPointsPerFilterWidth = 50.0;
constexpr double kPaddingWidths = 3.0;
constexpr double kSupportLevel = 1e-3;
constexpr double kKernelReach = 6.0;  // kernel truncated at this many sigma
constexpr std::size_t kMaxOutputPoints = 200'000;

struct Sample {
  double lambda;
  double weight;
};

}  // namespace

const char* to_string(Side s) { return s == Side::signal ? "signal" : "idler"; }

double wavelength(Side side, double omega, double degenerate_wavelength) {
  const double w0 = 2.0 * kPi * kSpeedOfLight / degenerate_wavelength;
  const double w = side == Side::signal ? w0 + omega : w0 - omega;
  return 2.0 * kPi * kSpeedOfLight / w;
}

FilteredSpectrum filtered_spectrum(const BiphotonSpectrum& spectrum, Side side,
                                   double filter_fwhm, double degenerate_wavelength) {
  if (!(filter_fwhm > 0.0)) throw ConfigError("filter FWHM must be positive");
  if (!(degenerate_wavelength > 0.0)) throw ConfigError("degenerate wavelength must be positive");
  const auto& grid = spectrum.grid;
  const auto& amp = side == Side::signal ? spectrum.phi_si : spectrum.phi_is;
  const double w0 = 2.0 * kPi * kSpeedOfLight / degenerate_wavelength;

  std::vector<Sample> samples;
  samples.reserve(grid.size());
  double lo = degenerate_wavelength, hi = degenerate_wavelength;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = grid.omega(k);
    if (std::abs(w) >= w0) continue;
    const double lambda = wavelength(side, w, degenerate_wavelength);
    samples.push_back({lambda, std::norm(amp[k])});
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  // The filter has to fit inside the sampled band with room to spare, and a
  // single sample must not be wider than a fraction of it.
  const double step_at_centre =
      wavelength(side, 0.5 * grid.spacing(), degenerate_wavelength) -
      wavelength(side, -0.5 * grid.spacing(), degenerate_wavelength);
  if (hi - degenerate_wavelength < kPaddingWidths * filter_fwhm ||
      degenerate_wavelength - lo < kPaddingWidths * filter_fwhm ||
      std::abs(step_at_centre) > 0.25 * filter_fwhm) {
    throw NumericError("detuning grid cannot support a " + std::to_string(filter_fwhm * 1e9) +
                       " nm filter; change the grid size or the filter width");
  }
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.lambda < b.lambda; });

  double peak = 0.0;
  for (const auto& s : samples) peak = std::max(peak, s.weight);
  if (!(peak > 0.0)) throw NumericError("spectrum vanishes; nothing to filter");
  double first = hi, last = lo;
  for (const auto& s : samples) {
    if (s.weight >= kSupportLevel * peak) {
      first = std::min(first, s.lambda);
      last = std::max(last, s.lambda);
    }
  }
  first -= kPaddingWidths * filter_fwhm;
  last += kPaddingWidths * filter_fwhm;
  const double step = filter_fwhm / kPointsPerFilterWidth;
  const auto n_out = std::min(kMaxOutputPoints,
                              static_cast<std::size_t>(std::ceil((last - first) / step)) + 1);

  FilteredSpectrum out;
  out.side = side;
  out.filter_fwhm = filter_fwhm;
  out.wavelengths.resize(n_out);
  out.intensity.resize(n_out);
  const double sigma = filter_fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const double reach = kKernelReach * sigma;
  detail::parallel_for(n_out, [&](std::size_t j) {
    const double centre = first + step * static_cast<double>(j);
    auto it = std::lower_bound(samples.begin(), samples.end(), centre - reach,
                               [](const Sample& s, double v) { return s.lambda < v; });
    double acc = 0.0;
    for (; it != samples.end() && it->lambda <= centre + reach; ++it) {
      const double x = (it->lambda - centre) / sigma;
      acc += it->weight * std::exp(-0.5 * x * x);
    }
    out.wavelengths[j] = centre;
    out.intensity[j] = acc;
  });
  const double top = *std::max_element(out.intensity.begin(), out.intensity.end());
  if (!(top > 0.0)) throw NumericError("filtered spectrum vanishes");
  for (auto& v : out.intensity) v /= top;
  return out;
}

double fwhm_bandwidth(const FilteredSpectrum& fs) {
  const auto& v = fs.intensity;
  const auto& x = fs.wavelengths;
  if (v.size() < 3) throw NumericError("spectrum too short for a bandwidth");
  const auto p = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  const double half = 0.5 * v[p];
  std::size_t l = p;
  while (l > 0 && v[l] >= half) --l;
  std::size_t r = p;
  while (r + 1 < v.size() && v[r] >= half) ++r;
  if (v[l] >= half || v[r] >= half) throw NumericError("half maximum not crossed on both sides");
  const double xl = x[l] + (half - v[l]) * (x[l + 1] - x[l]) / (v[l + 1] - v[l]);
  const double xr = x[r - 1] + (half - v[r - 1]) * (x[r] - x[r - 1]) / (v[r] - v[r - 1]);
  return xr - xl;
}

}  // namespace lpdc
