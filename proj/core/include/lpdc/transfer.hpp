#pragma once

#include "lpdc/model.hpp"

namespace lpdc {

/// Dense 2x2 complex matrix, row-major entries.
struct Matrix2c {
  cplx m11{}, m12{}, m21{}, m22{};

  static constexpr Matrix2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Matrix2c zero() { return {}; }

  [[nodiscard]] Matrix2c adjoint() const {
    return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
  }
  [[nodiscard]] cplx trace() const { return m11 + m22; }
  [[nodiscard]] cplx determinant() const { return m11 * m22 - m12 * m21; }
  [[nodiscard]] double max_abs() const;

  friend Matrix2c operator*(const Matrix2c& a, const Matrix2c& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend Matrix2c operator+(const Matrix2c& a, const Matrix2c& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
  }
  friend Matrix2c operator-(const Matrix2c& a, const Matrix2c& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  friend Matrix2c operator*(cplx s, const Matrix2c& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
  }
};

/// max |a - b| / max |b| (absolute when b vanishes).
double relative_difference(const Matrix2c& a, const Matrix2c& b);

/// [A B; C D] = e^{-M L}: maps (a_s(0), a_i^dag(0)) onto the output fields.
struct TransferCoefficients {
  cplx A, B, C, D;
};

/// [E F; G H] = e^{-M (L - z)} diag(sqrt(2 alpha_s), sqrt(2 alpha_i)).
struct LangevinKernels {
  cplx E, F, G, H;
};

/// z-integrals of kernel products over the whole crystal.
struct KernelIntegrals {
  cplx conj_e_g{};  // int E^* G dz
  cplx conj_f_h{};  // int F^* H dz
  double abs_e2 = 0.0;
  double abs_f2 = 0.0;
  double abs_g2 = 0.0;
  double abs_h2 = 0.0;
};

enum class KernelQuadrature {
  /// Closed-form per-segment Gramians; exact up to rounding at every detuning.
  exact,
  /// Composite Simpson on nodes that never straddle a segment boundary.
  simpson,
};

struct QuadratureOptions {
  KernelQuadrature method = KernelQuadrature::exact;
  int simpson_intervals = 64;  // per segment, rounded up to even
};

struct FrequencyResponse {
  TransferCoefficients coefficients;
  KernelIntegrals integrals;
};

/// M = [[alpha_s + i dk/2, -i kappa], [i kappa^*, alpha_i - i dk/2]] for the
/// segment's absorption and dk(omega) from the dispersion model.
Matrix2c build_m(const CrystalConfig& config, double omega, const LossSegment& segment);

/// exp(-m dz) in closed form. With mu = tr(m)/2 and s = sqrt(mu^2 - det m):
/// e^{-mu dz} [cosh(s dz) I - sinh(s dz)/s (m - mu I)]. The branch of the
/// square root is irrelevant; near the defective point the sinh(x)/x series
/// is used.
Matrix2c expm2(const Matrix2c& m, double dz);

/// Ordered product of segment exponentials from z_from to z_to (later
/// segments multiply on the left). Throws NumericError for positions outside
/// [0, L] or z_from > z_to.
Matrix2c propagator(const CrystalConfig& config, double omega, double z_from, double z_to);

TransferCoefficients coefficients(const CrystalConfig& config, double omega);

/// Kernels for a noise source at z, using the absorption of the segment that
/// holds z.
LangevinKernels langevin_kernel(const CrystalConfig& config, double omega, double z);

/// W(h) = int_0^h e^{-m s} q e^{-m^H s} ds.
Matrix2c segment_gramian(const Matrix2c& m, const Matrix2c& q, double h);

KernelIntegrals kernel_integrals(const CrystalConfig& config, double omega,
                                 const QuadratureOptions& options = {});

/// Coefficients and kernel integrals from one sweep over the segments.
FrequencyResponse frequency_response(const CrystalConfig& config, double omega,
                                     const QuadratureOptions& options = {});

/// Deviations of the two commutator sums from 1:
///   |A|^2 - |B|^2 + int(|E|^2 - |F|^2) - 1,  |D|^2 - |C|^2 + int(|H|^2 - |G|^2) - 1.
struct CommutatorResiduals {
  double signal = 0.0;
  double idler = 0.0;
};
CommutatorResiduals commutator_residuals(const FrequencyResponse& response);

}  // namespace lpdc
