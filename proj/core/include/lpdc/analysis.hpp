#pragma once

#include <vector>

#include "lpdc/biphoton.hpp"

namespace lpdc {

enum class Side { signal, idler };

const char* to_string(Side s);

inline constexpr double kDefaultFilterFwhm = 1.0e-9;  // m

/// Heralded spectrum as seen through a band-pass filter whose centre
/// wavelength is scanned.
struct FilteredSpectrum {
  Side side = Side::signal;
  std::vector<double> wavelengths;  // filter centre, m, ascending
  std::vector<double> intensity;    // peak normalised to 1
  double filter_fwhm = kDefaultFilterFwhm;
};

/// Wavelength of the detected photon for signal detuning w'. The signal sits
/// at w0 + w', the idler at w0 - w', with w0 = 2 pi c0 / lambda_deg.
double wavelength(Side side, double omega, double degenerate_wavelength);

/// Counts against filter centre: sum_k |phi(w_k)|^2 T(lambda(w_k) - lambda_c)
/// with a Gaussian transmission T of the given FWHM. Uses |phi_si|^2 for the
/// signal side and |phi_is|^2 for the idler side, restricted to |w'| < w0.
/// The output axis covers every sample above 1e-3 of the spectral peak plus
/// three filter widths, with 50 points per filter width.
FilteredSpectrum filtered_spectrum(const BiphotonSpectrum& spectrum, Side side,
                                   double filter_fwhm = kDefaultFilterFwhm,
                                   double degenerate_wavelength = kDefaultDegenerateWavelength);

/// FWHM of a single-peaked curve by linear interpolation at half maximum.
double fwhm_bandwidth(const FilteredSpectrum& fs);

}  // namespace lpdc
