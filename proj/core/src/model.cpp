#include "lpdc/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace lpdc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

std::string describe(const LossSegment& s) {
  std::ostringstream os;
  os << "[" << s.z_start << ", " << s.z_end << "] m";
  return os.str();
}

}  // namespace

LossProfile LossProfile::uniform(double length, double alpha_s, double alpha_i) {
  return LossProfile{{LossSegment{0.0, length, alpha_s, alpha_i}}};
}

LossProfile LossProfile::two_region(double length, double z_split, double alpha_s1,
                                    double alpha_i1, double alpha_s2, double alpha_i2) {
  if (z_split <= 0.0) return uniform(length, alpha_s2, alpha_i2);
  if (z_split >= length) return uniform(length, alpha_s1, alpha_i1);
  return LossProfile{{LossSegment{0.0, z_split, alpha_s1, alpha_i1},
                      LossSegment{z_split, length, alpha_s2, alpha_i2}}};
}

std::size_t LossProfile::segment_index(double z) const {
  // Segments are few (<= 64); a linear scan keeps the boundary rule obvious.
  for (std::size_t j = 0; j + 1 < segments.size(); ++j) {
    if (z < segments[j].z_end) return j;
  }
  return segments.empty() ? 0 : segments.size() - 1;
}

double DispersionModel::phase_mismatch(double omega) const {
  double acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = (acc + *it) * omega;
  }
  return acc;
}

DispersionModel DispersionModel::group_velocity_mismatch(double delta_ng) {
  return DispersionModel{{-delta_ng / kSpeedOfLight}};
}

CrystalConfig validate_config(CrystalConfig config) {
  const double L = config.length;
  if (!std::isfinite(L) || L <= 0.0) fail("crystal length must be positive and finite");
  if (!std::isfinite(config.kappa.real()) || !std::isfinite(config.kappa.imag())) {
    fail("coupling kappa must be finite");
  }
  if (std::abs(config.kappa) * L >= kMaxGainParameter) {
    std::ostringstream os;
    os << "|kappa| L = " << std::abs(config.kappa) * L
       << " is outside the low-gain bound (< " << kMaxGainParameter << ")";
    fail(os.str());
  }
  if (!std::isfinite(config.degenerate_wavelength) || config.degenerate_wavelength <= 0.0) {
    fail("degenerate wavelength must be positive");
  }
  for (double c : config.dispersion.coefficients) {
    if (!std::isfinite(c)) fail("dispersion coefficients must be finite");
  }

  auto& segs = config.loss.segments;
  if (segs.empty()) fail("loss profile has no segments");
  if (segs.size() > kMaxSegments) {
    fail("loss profile has " + std::to_string(segs.size()) + " segments (max " +
         std::to_string(kMaxSegments) + ")");
  }
  for (const auto& s : segs) {
    if (!std::isfinite(s.z_start) || !std::isfinite(s.z_end) || !(s.z_start < s.z_end) ||
        s.z_start < 0.0) {
      fail("loss segment " + describe(s) + " must satisfy 0 <= z_start < z_end");
    }
    if (!std::isfinite(s.alpha_s) || !std::isfinite(s.alpha_i) || s.alpha_s < 0.0 ||
        s.alpha_i < 0.0) {
      fail("loss segment " + describe(s) + " has a negative or non-finite absorption");
    }
  }
  std::stable_sort(segs.begin(), segs.end(), [](const LossSegment& a, const LossSegment& b) {
    return a.z_start < b.z_start;
  });

  const double tol = 1e-12 * L;
  if (std::abs(segs.front().z_start) > tol) {
    fail("loss profile must start at z = 0, first segment is " + describe(segs.front()));
  }
  for (std::size_t j = 1; j < segs.size(); ++j) {
    const double gap = segs[j].z_start - segs[j - 1].z_end;
    if (gap > tol) fail("gap in loss profile between " + describe(segs[j - 1]) + " and " + describe(segs[j]));
    if (gap < -tol) fail("overlap in loss profile between " + describe(segs[j - 1]) + " and " + describe(segs[j]));
  }
  if (std::abs(segs.back().z_end - L) > tol) {
    std::ostringstream os;
    os << "loss profile ends at " << segs.back().z_end << " m but the crystal length is " << L << " m";
    fail(os.str());
  }
  return config;
}

DetuningGrid::DetuningGrid(std::size_t n_points, double spacing)
    : n_(n_points), spacing_(spacing) {
  if (n_points < kMinGridPoints || n_points % 2 != 0) {
    throw ConfigError("grid size must be even and >= " + std::to_string(kMinGridPoints) +
                      ", got " + std::to_string(n_points));
  }
  if (!std::isfinite(spacing) || spacing <= 0.0) {
    throw ConfigError("grid spacing must be positive");
  }
}

std::vector<double> DetuningGrid::omegas() const {
  std::vector<double> out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = omega(k);
  return out;
}

std::vector<double> DetuningGrid::times() const {
  std::vector<double> out(n_);
  for (std::size_t m = 0; m < n_; ++m) out[m] = time(m);
  return out;
}

DetuningGrid build_grid(const CrystalConfig& config, std::size_t n_points, double window_factor) {
  if (n_points < kMinGridPoints || n_points % 2 != 0) {
    throw ConfigError("grid size must be even and >= " + std::to_string(kMinGridPoints) +
                      ", got " + std::to_string(n_points));
  }
  const double t0 = config.walk_off_time();
  if (!(t0 > 0.0)) {
    throw ConfigError("dispersion model has no walk-off (c_1 = 0); cannot size the grid");
  }
  if (!(window_factor >= 1.0)) throw ConfigError("window factor must be >= 1");

  const double dt = window_factor * t0 / static_cast<double>(n_points);
  const double span = 2.0 * kPi / dt;
  const bool resolves_box = dt <= t0 / 100.0;
  const bool covers_lobes = span >= 80.0 * kPi / t0;
  if (!resolves_box || !covers_lobes) {
    const auto needed = static_cast<std::size_t>(std::ceil(100.0 * window_factor));
    throw ConfigError("grid of " + std::to_string(n_points) +
                      " points cannot resolve the biphoton box with a window of " +
                      std::to_string(window_factor) + " T0; use at least " +
                      std::to_string(needed + needed % 2) + " points");
  }
  return DetuningGrid(n_points, span / static_cast<double>(n_points));
}

}  // namespace lpdc
