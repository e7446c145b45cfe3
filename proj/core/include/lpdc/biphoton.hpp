#pragma once

#include <vector>

#include "lpdc/model.hpp"
#include "lpdc/fourier.hpp"
#include "lpdc/transfer.hpp"

namespace lpdc {

/// Which photon heralds the other. Idler triggering measures phi_si,
/// signal triggering measures phi_is.
enum class Trigger { idler, signal };

const char* to_string(Trigger t);

/// Two-photon amplitudes sampled on the detuning grid. Both arrays are
/// indexed by the signal detuning w' (the idler sits at -w').
struct BiphotonSpectrum {
  DetuningGrid grid;
  std::vector<cplx> phi_si;
  std::vector<cplx> phi_is;
  bool langevin_enabled = true;

  [[nodiscard]] const std::vector<cplx>& amplitude(Trigger t) const {
    return t == Trigger::idler ? phi_si : phi_is;
  }
};

struct SinglesRates {
  double signal = 0.0;  // 1/s
  double idler = 0.0;   // 1/s
};

/// |phi_ab(tau)|^2 on the conjugate time axis. The accidental floor is kept
/// separate; g2() adds it back.
struct CorrelationFunction {
  Trigger trigger = Trigger::idler;
  std::vector<double> time_grid;  // s
  std::vector<double> values;     // 1/s^2
  double accidental_floor = 0.0;  // R_s R_i, zero unless requested

  [[nodiscard]] double g2(std::size_t m) const { return values[m] + accidental_floor; }
};

BiphotonSpectrum spectrum(const CrystalConfig& config, const DetuningGrid& grid,
                          const QuadratureOptions& options = {});

SinglesRates rates(const CrystalConfig& config, const DetuningGrid& grid,
                   const QuadratureOptions& options = {});

/// phi_ab(tau) = (1/2 pi) int phi_ab(w) e^{-i w tau} dw in the detected
/// photon's own detuning. For the signal-triggered amplitude that detuning is
/// -w', so its kernel in terms of the stored index is e^{+i w' tau}.
std::vector<cplx> wave_packet(const BiphotonSpectrum& spectrum, Trigger trigger);

/// Kernel sign used by wave_packet() for the given trigger.
KernelSign wave_packet_kernel(Trigger trigger);

CorrelationFunction correlation(const BiphotonSpectrum& spectrum, Trigger trigger,
                                double accidental_floor = 0.0);

/// Full pipeline; adds R_s R_i when config.include_accidentals is set.
CorrelationFunction correlation(const CrystalConfig& config, const DetuningGrid& grid,
                                Trigger trigger, const QuadratureOptions& options = {});

/// Sum of values * dtau.
double integrated_intensity(const CorrelationFunction& g);

/// (1/2 pi) int |phi(w)|^2 dw for the amplitude behind the trigger.
double spectral_norm(const BiphotonSpectrum& spectrum, Trigger trigger);

/// Least-squares slope of log(values) in 1/s over the central 60% of the
/// support (samples above 5% of the peak), which leaves out the edge bands.
double fit_log_slope(const CorrelationFunction& g);

/// Intensity-weighted mean arrival time.
double centroid(const CorrelationFunction& g);

/// Full width at half maximum of the waveform, linear interpolation.
double fwhm_duration(const CorrelationFunction& g);

}  // namespace lpdc
