#include "lpdc/biphoton.hpp"

#include <algorithm>
#include <cmath>

#include "lpdc/parallel.hpp"

namespace lpdc {

namespace {

double max_value(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

const char* to_string(Trigger t) { return t == Trigger::idler ? "idler" : "signal"; }

BiphotonSpectrum spectrum(const CrystalConfig& config, const DetuningGrid& grid,
                          const QuadratureOptions& options) {
  BiphotonSpectrum out{grid, std::vector<cplx>(grid.size()), std::vector<cplx>(grid.size()),
                       config.langevin_enabled};
  detail::parallel_for(grid.size(), [&](std::size_t k) {
    const auto r = frequency_response(config, grid.omega(k), options);
    const auto& c = r.coefficients;
    cplx si = std::conj(c.B) * c.D;
    cplx is = std::conj(c.A) * c.C;
    if (config.langevin_enabled) {
      si += r.integrals.conj_f_h;
      is += r.integrals.conj_e_g;
    }
    out.phi_si[k] = si;
    out.phi_is[k] = is;
  });
  return out;
}

SinglesRates rates(const CrystalConfig& config, const DetuningGrid& grid,
                   const QuadratureOptions& options) {
  std::vector<double> rs(grid.size()), ri(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t k) {
    const auto r = frequency_response(config, grid.omega(k), options);
    rs[k] = std::norm(r.coefficients.B);
    ri[k] = std::norm(r.coefficients.C);
    if (config.langevin_enabled) {
      rs[k] += r.integrals.abs_f2;
      ri[k] += r.integrals.abs_g2;
    }
  });
  // Fixed-order reduction keeps the result independent of threading.
  SinglesRates out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.signal += rs[k];
    out.idler += ri[k];
  }
  const double w = grid.spacing() / (2.0 * kPi);
  out.signal *= w;
  out.idler *= w;
  return out;
}

KernelSign wave_packet_kernel(Trigger trigger) {
  return trigger == Trigger::idler ? KernelSign::negative : KernelSign::positive;
}

std::vector<cplx> wave_packet(const BiphotonSpectrum& s, Trigger trigger) {
  return to_time_domain(s.grid, s.amplitude(trigger), wave_packet_kernel(trigger));
}

CorrelationFunction correlation(const BiphotonSpectrum& s, Trigger trigger,
                                double accidental_floor) {
  const auto phi = wave_packet(s, trigger);
  CorrelationFunction g;
  g.trigger = trigger;
  g.time_grid = s.grid.times();
  g.values.resize(phi.size());
  for (std::size_t m = 0; m < phi.size(); ++m) g.values[m] = std::norm(phi[m]);
  g.accidental_floor = accidental_floor;
  return g;
}

CorrelationFunction correlation(const CrystalConfig& config, const DetuningGrid& grid,
                                Trigger trigger, const QuadratureOptions& options) {
  double floor = 0.0;
  if (config.include_accidentals) {
    const auto r = rates(config, grid, options);
    floor = r.signal * r.idler;
  }
  return correlation(spectrum(config, grid, options), trigger, floor);
}

double integrated_intensity(const CorrelationFunction& g) {
  if (g.time_grid.size() < 2) return 0.0;
  const double dt = g.time_grid[1] - g.time_grid[0];
  double acc = 0.0;
  for (double v : g.values) acc += v;
  return acc * dt;
}

double spectral_norm(const BiphotonSpectrum& s, Trigger trigger) {
  double acc = 0.0;
  for (const auto& p : s.amplitude(trigger)) acc += std::norm(p);
  return acc * s.grid.spacing() / (2.0 * kPi);
}

double fit_log_slope(const CorrelationFunction& g) {
  const double peak = max_value(g.values);
  if (!(peak > 0.0)) throw NumericError("cannot fit a slope to an all-zero waveform");
  const double level = 0.05 * peak;
  std::size_t first = g.values.size(), last = 0;
  for (std::size_t m = 0; m < g.values.size(); ++m) {
    if (g.values[m] >= level) {
      first = std::min(first, m);
      last = m;
    }
  }
  const auto width = static_cast<double>(last - first);
  const auto lo = first + static_cast<std::size_t>(std::ceil(0.2 * width));
  const auto hi = last - static_cast<std::size_t>(std::ceil(0.2 * width));

  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t m = lo; m <= hi && m < g.values.size(); ++m) {
    if (!(g.values[m] > 0.0)) continue;
    const double x = g.time_grid[m];
    const double y = std::log(g.values[m]);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (n < 3 || !(den > 0.0)) throw NumericError("waveform support too short for a slope fit");
  return (n * sxy - sx * sy) / den;
}

double centroid(const CorrelationFunction& g) {
  double w = 0.0, wt = 0.0;
  for (std::size_t m = 0; m < g.values.size(); ++m) {
    w += g.values[m];
    wt += g.values[m] * g.time_grid[m];
  }
  if (!(w > 0.0)) throw NumericError("centroid of an all-zero waveform");
  return wt / w;
}

double fwhm_duration(const CorrelationFunction& g) {
  const auto& v = g.values;
  const auto& t = g.time_grid;
  if (v.size() < 3) throw NumericError("waveform too short");
  const auto peak_it = std::max_element(v.begin(), v.end());
  const double half = 0.5 * *peak_it;
  if (!(half > 0.0)) throw NumericError("FWHM of an all-zero waveform");
  const auto p = static_cast<std::size_t>(peak_it - v.begin());

  std::size_t l = p;
  while (l > 0 && v[l] >= half) --l;
  std::size_t r = p;
  while (r + 1 < v.size() && v[r] >= half) ++r;
  if (v[l] >= half || v[r] >= half) throw NumericError("half maximum not crossed inside the window");
  const double tl = t[l] + (half - v[l]) * (t[l + 1] - t[l]) / (v[l + 1] - v[l]);
  const double tr = t[r - 1] + (half - v[r - 1]) * (t[r] - t[r - 1]) / (v[r] - v[r - 1]);
  return tr - tl;
}

}  // namespace lpdc
