#include "lpdc/hom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpdc/parallel.hpp"

namespace lpdc {

namespace {

// The lowest grid sample has no -w partner. Dropping it makes the w <-> -w
// pairing in the cross term exact, so the fast path and the time-domain
// integral agree to rounding.
std::vector<cplx> drop_unpaired(std::vector<cplx> v) {
  if (!v.empty()) v.front() = 0.0;
  return v;
}

struct CrossSpectrum {
  std::vector<cplx> product;  // phi_si(w) phi_is(-w)^*
  double s_si = 0.0;
  double s_is = 0.0;
};

CrossSpectrum cross_spectrum(const BiphotonSpectrum& s) {
  const auto& grid = s.grid;
  const std::size_t n = grid.size();
  CrossSpectrum out;
  out.product.assign(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    out.product[k] = s.phi_si[k] * std::conj(s.phi_is[grid.mirror(k)]);
    out.s_si += std::norm(s.phi_si[k]);
    out.s_is += std::norm(s.phi_is[k]);
  }
  const double w = grid.spacing() / (2.0 * kPi);
  out.s_si *= w;
  out.s_is *= w;
  return out;
}

void check_window(const DetuningGrid& grid, double t, const char* what) {
  const double half = 0.5 * grid.time_window();
  if (std::abs(t) > half) {
    std::ostringstream os;
    os << what << " " << t << " s lies outside the time window +-" << half
       << " s; increase the grid size";
    throw NumericError(os.str());
  }
}

HomScan make_scan(std::vector<double> delays, std::vector<double> coincidence) {
  HomScan scan;
  scan.path_differences.reserve(delays.size());
  for (double d : delays) scan.path_differences.push_back(path_difference(d));
  scan.delays = std::move(delays);
  scan.coincidence = std::move(coincidence);
  analyse(scan);
  return scan;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct Baseline {
  double level;
  std::size_t band;
};

Baseline baseline_of(const HomScan& scan) {
  const auto& c = scan.coincidence;
  if (c.size() < 20) throw NumericError("HOM scan too short to estimate a baseline");
  const std::size_t band = std::max<std::size_t>(1, c.size() / 10);
  const double left = median({c.begin(), c.begin() + static_cast<std::ptrdiff_t>(band)});
  const double right = median({c.end() - static_cast<std::ptrdiff_t>(band), c.end()});
  const double level = 0.5 * (left + right);
  if (!(level > 0.0)) throw NumericError("HOM baseline is not positive");
  return {level, band};
}

struct Minimum {
  double value;
  double delay;
  std::size_t index;
};

Minimum refined_minimum(const HomScan& scan) {
  const auto& c = scan.coincidence;
  const auto& d = scan.delays;
  const auto i = static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin());
  Minimum m{c[i], d[i], i};
  if (i == 0 || i + 1 == c.size()) return m;
  // parabola through three equally spaced samples
  const double a = 0.5 * (c[i - 1] + c[i + 1]) - c[i];
  const double b = 0.5 * (c[i + 1] - c[i - 1]);
  if (a > 0.0) {
    const double x = -b / (2.0 * a);
    m.value = c[i] - b * b / (4.0 * a);
    m.delay = d[i] + x * (d[i + 1] - d[i]);
  }
  return m;
}

}  // namespace

double path_difference(double delay) { return 2.0 * kSpeedOfLight * delay; }

double hom_g2(const CrystalConfig& config, const BiphotonSpectrum& spectrum, double delay,
              double tau) {
  const double dt = delay + config.walk_off_centre();
  check_window(spectrum.grid, dt + tau, "dt + tau =");
  check_window(spectrum.grid, dt - tau, "dt - tau =");
  const auto si = drop_unpaired(spectrum.phi_si);
  const auto is = drop_unpaired(spectrum.phi_is);
  const cplx a = evaluate_at(spectrum.grid, si, dt + tau, KernelSign::negative);
  const cplx b = evaluate_at(spectrum.grid, is, dt - tau, KernelSign::negative);
  return std::norm(0.5 * (a - b));
}

double hom_g2(const CrystalConfig& config, const DetuningGrid& grid, double delay, double tau) {
  return hom_g2(config, spectrum(config, grid), delay, tau);
}

HomScan hom_scan(const CrystalConfig& config, const BiphotonSpectrum& spectrum,
                 std::pair<double, double> range, std::size_t n_delays) {
  if (n_delays < 41) throw NumericError("a HOM scan needs at least 41 delays");
  if (!(range.first < range.second)) throw NumericError("HOM delay range is empty");
  const double centre = config.walk_off_centre();
  check_window(spectrum.grid, 2.0 * (range.first + centre), "cross-term shift");
  check_window(spectrum.grid, 2.0 * (range.second + centre), "cross-term shift");

  const auto cross = cross_spectrum(spectrum);
  const double flat = 0.25 * (cross.s_si + cross.s_is);
  std::vector<double> delays(n_delays), coincidence(n_delays);
  const double step = (range.second - range.first) / static_cast<double>(n_delays - 1);
  for (std::size_t j = 0; j < n_delays; ++j) delays[j] = range.first + step * j;
  detail::parallel_for(n_delays, [&](std::size_t j) {
    const double shift = 2.0 * (delays[j] + centre);
    const cplx x = evaluate_at(spectrum.grid, cross.product, shift, KernelSign::negative);
    coincidence[j] = flat - 0.5 * x.real();
  });
  return make_scan(std::move(delays), std::move(coincidence));
}

HomScan hom_scan_lattice(const CrystalConfig& config, const BiphotonSpectrum& spectrum,
                         std::pair<double, double> range) {
  if (!(range.first < range.second)) throw NumericError("HOM delay range is empty");
  const auto& grid = spectrum.grid;
  const double centre = config.walk_off_centre();
  check_window(grid, 2.0 * (range.first + centre), "cross-term shift");
  check_window(grid, 2.0 * (range.second + centre), "cross-term shift");

  const auto cross = cross_spectrum(spectrum);
  const double flat = 0.25 * (cross.s_si + cross.s_is);
  const auto x = to_time_domain(grid, cross.product, KernelSign::negative);
  std::vector<double> delays, coincidence;
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double d = 0.5 * grid.time(m) - centre;
    if (d < range.first || d > range.second) continue;
    delays.push_back(d);
    coincidence.push_back(flat - 0.5 * x[m].real());
  }
  if (delays.size() < 41) {
    throw NumericError("HOM delay range holds fewer than 41 lattice points; widen it or "
                       "increase the grid size");
  }
  return make_scan(std::move(delays), std::move(coincidence));
}

std::pair<double, double> default_delay_range(const CrystalConfig& config,
                                              const BiphotonSpectrum& spectrum) {
  const auto& grid = spectrum.grid;
  struct Moments {
    double mean, rms;
  };
  auto moments = [&](const std::vector<cplx>& amp) {
    const auto phi = to_time_domain(grid, drop_unpaired(amp), KernelSign::negative);
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t m = 0; m < phi.size(); ++m) {
      const double p = std::norm(phi[m]);
      const double t = grid.time(m);
      w += p;
      m1 += p * t;
      m2 += p * t * t;
    }
    if (!(w > 0.0)) throw NumericError("biphoton amplitude vanishes; no HOM scan possible");
    const double mean = m1 / w;
    return Moments{mean, std::sqrt(std::max(0.0, m2 / w - mean * mean))};
  };
  const auto si = moments(spectrum.phi_si);
  const auto is = moments(spectrum.phi_is);
  // The dip sits where phi_si(dt + tau) and phi_is(dt - tau) overlap best.
  const double dip = 0.5 * (si.mean + is.mean) - config.walk_off_centre();
  // A sharply peaked packet can have a small rms width and still carry long
  // wings, so the lossless duration sets the minimum reach.
  double reach = 4.0 * std::max({config.walk_off_time(), si.rms, is.rms});
  // keep 2 dt inside the time window
  const double limit = 0.25 * grid.time_window() - std::abs(dip + config.walk_off_centre());
  reach = std::min(reach, 0.95 * limit);
  if (!(reach > 0.0)) throw NumericError("time window too short for a HOM scan; increase the grid size");
  return {dip - reach, dip + reach};
}

void analyse(HomScan& scan) {
  const auto base = baseline_of(scan);
  const auto min = refined_minimum(scan);
  scan.baseline = base.level;
  scan.minimum = min.value;
  scan.dip_delay = min.delay;
  scan.visibility = std::max(0.0, (base.level - min.value) / base.level);
  scan.fwhm_path.reset();
  if (scan.visibility > 0.05) {
    try {
      scan.fwhm_path = fwhm(scan);
    } catch (const NumericError&) {
      // dip too close to the scan edge; width left unset
    }
  }
}

double visibility(const HomScan& scan) {
  const auto base = baseline_of(scan);
  const auto min = refined_minimum(scan);
  if (!(min.value < base.level)) return 0.0;
  if (min.index < base.band || min.index >= scan.coincidence.size() - base.band) {
    throw NumericError("HOM minimum lies in the baseline bands; the scan is too narrow");
  }
  return std::max(0.0, (base.level - min.value) / base.level);
}

double fwhm(const HomScan& scan) {
  const auto base = baseline_of(scan);
  const auto min = refined_minimum(scan);
  const double v = (base.level - min.value) / base.level;
  if (!(v > 0.05)) throw NumericError("no HOM dip to measure (visibility <= 0.05)");

  const auto& c = scan.coincidence;
  const auto& x = scan.path_differences;
  const double half = 0.5 * (base.level + min.value);
  std::size_t l = min.index;
  while (l > 0 && c[l] < half) --l;
  std::size_t r = min.index;
  while (r + 1 < c.size() && c[r] < half) ++r;
  if (c[l] < half || c[r] < half) throw NumericError("half depth not crossed on both sides");
  const double xl = x[l] + (half - c[l]) * (x[l + 1] - x[l]) / (c[l + 1] - c[l]);
  const double xr = x[r - 1] + (half - c[r - 1]) * (x[r] - x[r - 1]) / (c[r] - c[r - 1]);
  return xr - xl;
}

}  // namespace lpdc
