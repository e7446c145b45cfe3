#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lpdc/biphoton.hpp"

namespace lpdc {

/// Coincidence rate against beam-splitter delay.
///
/// Delays d are measured from the walk-off centre c_1 L / 2, so the arrival
/// time difference in the interference formula is dt = d + c_1 L / 2. The
/// path axis is the free-space round trip 2 c0 d: the two amplitudes are
/// displaced by 2 dt, so this axis makes the lossless dip as wide as the
/// wave packet length.
struct HomScan {
  std::vector<double> delays;            // s
  std::vector<double> path_differences;  // m
  std::vector<double> coincidence;       // integrated G2, 1/s
  double baseline = 0.0;
  double minimum = 0.0;
  double dip_delay = 0.0;  // s, refined position of the minimum
  double visibility = 0.0;
  std::optional<double> fwhm_path;  // m, absent when there is no dip
};

/// Path difference for a delay.
double path_difference(double delay);

/// |1/2 [phi_si(dt + tau) - phi_is(dt - tau)]|^2, evaluated exactly from the
/// spectrum by direct summation. Throws NumericError when dt +- tau leaves the
/// time window of the grid.
double hom_g2(const CrystalConfig& config, const BiphotonSpectrum& spectrum, double delay,
              double tau);
double hom_g2(const CrystalConfig& config, const DetuningGrid& grid, double delay, double tau);

/// Scan at n_delays evenly spaced delays in [range.first, range.second].
/// C(d) = (S_si + S_is)/4 - Re X(2 dt)/2, where
/// X(T) = (1/2 pi) int phi_si(w) phi_is(-w)^* e^{-i w T} dw.
HomScan hom_scan(const CrystalConfig& config, const BiphotonSpectrum& spectrum,
                 std::pair<double, double> range, std::size_t n_delays);

/// Scan on every delay of the FFT lattice (spacing dtau/2) that falls in
/// [range.first, range.second]. X is computed for the whole axis with one
/// transform.
HomScan hom_scan_lattice(const CrystalConfig& config, const BiphotonSpectrum& spectrum,
                         std::pair<double, double> range);

/// Delay range centred on the expected dip, extending four wave-packet
/// durations beyond it on each side. The duration is the larger of the
/// lossless box T0 and the rms widths of the two amplitudes.
std::pair<double, double> default_delay_range(const CrystalConfig& config,
                                              const BiphotonSpectrum& spectrum);

/// V = (baseline - min) / baseline. Baseline: mean of the medians of the
/// outer 10% of samples on each side. Minimum: 3-point parabolic refinement.
double visibility(const HomScan& scan);

/// Full width at half depth as a path difference, linear interpolation.
/// Requires a dip with V > 0.05.
double fwhm(const HomScan& scan);

/// Fills baseline, minimum, dip_delay, visibility and (when a dip exists)
/// fwhm_path from the coincidence samples.
void analyse(HomScan& scan);

}  // namespace lpdc
