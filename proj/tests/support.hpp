#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <lpdc/lpdc.hpp>

namespace lpdc::test {

inline CrystalConfig crystal(double length, LossProfile loss, bool langevin = true,
                             cplx kappa = kDefaultKappa) {
  CrystalConfig c;
  c.length = length;
  c.kappa = kappa;
  c.dispersion = DispersionModel::group_velocity_mismatch(kDefaultGroupIndexMismatch);
  c.loss = std::move(loss);
  c.langevin_enabled = langevin;
  return validate_config(c);
}

inline CrystalConfig uniform(double length, double as, double ai, bool langevin = true) {
  return crystal(length, LossProfile::uniform(length, as, ai), langevin);
}

inline CrystalConfig short_lossy(bool langevin = true) {
  return uniform(0.008, 87.00, 29.77, langevin);
}

inline CrystalConfig tapered(double fraction, bool langevin = true) {
  return crystal(0.02, LossProfile::two_region(0.02, fraction * 0.02, 1100.0, 60.0), langevin);
}

/// Smallest grid that satisfies the resolution rules at the default window.
inline constexpr std::size_t kSmallGrid = 4096;

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline Matrix2c random_matrix(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
}

}  // namespace lpdc::test
