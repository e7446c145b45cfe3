#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "lpdc/errors.hpp"

namespace lpdc {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

/// Group-index mismatch n_g(signal) - n_g(idler) used by the figure presets.
/// The TM signal is the faster (extraordinary) mode, hence the sign.
inline constexpr double kDefaultGroupIndexMismatch = -0.039;
inline constexpr double kDefaultKappa = 1.0e-4;  // 1/m, deep low-gain regime
inline constexpr double kDefaultDegenerateWavelength = 1.560e-6;  // m
inline constexpr double kMaxGainParameter = 0.3;  // bound on |kappa| L
inline constexpr std::size_t kMaxSegments = 64;
inline constexpr std::size_t kMinGridPoints = 16;
/// Default time window of the conjugate grid in units of the lossless
/// biphoton duration T0.
inline constexpr double kDefaultWindowFactor = 32.0;

/// Piecewise-constant loss on [z_start, z_end). Absorption coefficients are
/// amplitude coefficients in 1/m.
struct LossSegment {
  double z_start = 0.0;
  double z_end = 0.0;
  double alpha_s = 0.0;
  double alpha_i = 0.0;

  [[nodiscard]] double length() const { return z_end - z_start; }
  [[nodiscard]] bool lossless() const { return alpha_s == 0.0 && alpha_i == 0.0; }
};

struct LossProfile {
  std::vector<LossSegment> segments;

  static LossProfile uniform(double length, double alpha_s, double alpha_i);

  /// (alpha_s1, alpha_i1) on [0, z_split) followed by (alpha_s2, alpha_i2) on
  /// [z_split, length]. A split at 0 or at length collapses to one segment.
  static LossProfile two_region(double length, double z_split, double alpha_s1,
                                double alpha_i1, double alpha_s2 = 0.0,
                                double alpha_i2 = 0.0);

  /// Index of the segment holding z (segments are closed on the left, the
  /// last one is also closed on the right).
  [[nodiscard]] std::size_t segment_index(double z) const;
  [[nodiscard]] const LossSegment& segment_at(double z) const {
    return segments[segment_index(z)];
  }
};

/// Phase mismatch as a polynomial in the signal detuning without constant
/// term: dk(w) = sum_n c_n w^n, coefficients[0] = c_1.
struct DispersionModel {
  std::vector<double> coefficients;

  [[nodiscard]] double phase_mismatch(double omega) const;

  /// c_1 in s/m: the signal-idler walk-off per unit length.
  [[nodiscard]] double walk_off_per_length() const {
    return coefficients.empty() ? 0.0 : coefficients.front();
  }

  /// Linear group-velocity-mismatch model c_1 = -delta_ng / c0, where
  /// delta_ng = n_g(signal) - n_g(idler).
  static DispersionModel group_velocity_mismatch(double delta_ng);
};

struct CrystalConfig {
  double length = 0.0;  // m
  cplx kappa{kDefaultKappa, 0.0};
  LossProfile loss;
  DispersionModel dispersion;
  bool langevin_enabled = true;
  bool include_accidentals = false;
  double degenerate_wavelength = kDefaultDegenerateWavelength;

  /// Lossless biphoton duration T0 = |c_1| L.
  [[nodiscard]] double walk_off_time() const {
    const double c1 = dispersion.walk_off_per_length();
    return (c1 < 0.0 ? -c1 : c1) * length;
  }

  /// Centre of the lossless biphoton box, c_1 L / 2. HOM delays are reported
  /// relative to this point.
  [[nodiscard]] double walk_off_centre() const {
    return 0.5 * dispersion.walk_off_per_length() * length;
  }
};

/// Checks every invariant of the configuration and returns it with the loss
/// segments sorted by position. Throws ConfigError on violation.
CrystalConfig validate_config(CrystalConfig config);

/// Symmetric detuning grid w_k = (k - n/2) dw, k = 0..n-1, together with its
/// conjugate time axis t_m = (m - n/2) dt, dt = 2 pi / (n dw).
class DetuningGrid {
 public:
  DetuningGrid(std::size_t n_points, double spacing);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double spacing() const { return spacing_; }
  [[nodiscard]] double span() const { return static_cast<double>(n_) * spacing_; }

  [[nodiscard]] double omega(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_ / 2)) * spacing_;
  }
  /// Index of -w_k. The lowest sample has no partner and maps onto itself.
  [[nodiscard]] std::size_t mirror(std::size_t k) const { return (n_ - k) % n_; }

  [[nodiscard]] double time_step() const { return 2.0 * kPi / span(); }
  [[nodiscard]] double time_window() const { return 2.0 * kPi / spacing_; }
  [[nodiscard]] double time(std::size_t m) const {
    return (static_cast<double>(m) - static_cast<double>(n_ / 2)) * time_step();
  }

  [[nodiscard]] std::vector<double> omegas() const;
  [[nodiscard]] std::vector<double> times() const;

 private:
  std::size_t n_;
  double spacing_;
};

/// Chooses the spacing so that the conjugate time window is
/// window_factor * T0. Requires at least 100 time samples across T0 and a
/// detuning span of at least 40 lossless sinc lobes (80 pi / T0).
DetuningGrid build_grid(const CrystalConfig& config, std::size_t n_points,
                        double window_factor = kDefaultWindowFactor);

}  // namespace lpdc
