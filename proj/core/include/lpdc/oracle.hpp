#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpdc/transfer.hpp"

namespace lpdc {

/// Fundamental solution of dX/dz = -M(z) X, X(z_from) = I, by classical
/// fourth-order Runge-Kutta with fixed steps. Steps are shared out between
/// the segments in proportion to their overlap with [z_from, z_to] so that
/// no step straddles a boundary. Requires n_steps >= 100.
Matrix2c ode_propagator(const CrystalConfig& config, double omega, double z_from, double z_to,
                        std::size_t n_steps);

/// Coefficients and kernel integrals by an independent route: Phi(L, z) is
/// marched backwards from z = L with RK4 (dPsi/dz = Psi M) and the kernel
/// products are integrated with composite Simpson on the RK4 nodes.
FrequencyResponse ode_frequency_response(const CrystalConfig& config, double omega,
                                         std::size_t n_steps);

/// Closed-form lossless solution. With d = dk/2 and g = sqrt(|kappa|^2 - d^2):
///   A = cosh(gL) - i d sinh(gL)/g,  B = i kappa sinh(gL)/g,
///   C = -i kappa^* sinh(gL)/g,      D = cosh(gL) + i d sinh(gL)/g.
TransferCoefficients lossless_reference(cplx kappa, double delta_k, double length);

/// Replacement for propagator() inside certify(); used to inject faults.
using PropagatorHook =
    std::function<Matrix2c(const CrystalConfig&, double omega, double z_from, double z_to)>;

struct CertifyOptions {
  std::size_t n_steps = 10'000;
  std::size_t n_frequencies = 17;
  /// Sampled detunings stay within this many lobes of the lossless sinc on
  /// each side, where the fixed-step integrator is still accurate to 1e-10.
  double lobes = 8.0;
  double commutator_tolerance = 1e-6;
  double propagator_tolerance = 1e-8;
  double analytic_tolerance = 1e-10;
  PropagatorHook propagator;  // defaults to lpdc::propagator
};

struct OracleCheck {
  std::string name;
  double omega = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  [[nodiscard]] bool passed() const { return error <= tolerance; }
};

struct OracleReport {
  double max_relative_error = 0.0;
  std::size_t n_steps = 0;
  std::string config_digest;
  std::vector<OracleCheck> checks;  // worst case of each named check
  [[nodiscard]] bool passed() const;
  /// The check with the largest error-to-tolerance ratio (null when empty).
  [[nodiscard]] const OracleCheck* worst_offender() const;
};

/// 64-bit FNV-1a over the configuration, rendered as 16 hex digits.
std::string config_digest(const CrystalConfig& config);

/// Cross-checks the fast path against the oracles on a subsample of the
/// grid. Failures are reported, never thrown.
OracleReport certify(const CrystalConfig& config, const DetuningGrid& grid,
                     const CertifyOptions& options = {});

}  // namespace lpdc
