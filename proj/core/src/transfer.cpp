#include "lpdc/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace lpdc {

namespace {

constexpr double kSeriesThreshold = 1e-6;
// Largest ||m|| h for which the Gramian Taylor series is summed directly.
constexpr double kGramianBaseNorm = 0.25;
constexpr int kGramianTerms = 24;

double row_sum_norm(const Matrix2c& m) {
  return std::max(std::abs(m.m11) + std::abs(m.m12), std::abs(m.m21) + std::abs(m.m22));
}

// L(X) = m X + X m^H
Matrix2c lyapunov_apply(const Matrix2c& m, const Matrix2c& x) {
  return m * x + x * m.adjoint();
}

Matrix2c sandwich(const Matrix2c& e, const Matrix2c& x) { return e * x * e.adjoint(); }

void check_range(const CrystalConfig& config, double z_from, double z_to) {
  const double tol = 1e-12 * config.length;
  if (!(z_from >= -tol) || !(z_to <= config.length + tol) || !(z_from <= z_to)) {
    std::ostringstream os;
    os << "positions [" << z_from << ", " << z_to << "] m are outside the crystal [0, "
       << config.length << "] m";
    throw NumericError(os.str());
  }
}

struct SegmentStep {
  Matrix2c m;
  Matrix2c e;  // exp(-m h)
  double h;
  double alpha_s;
  double alpha_i;
};

std::vector<SegmentStep> segment_steps(const CrystalConfig& config, double omega) {
  std::vector<SegmentStep> steps;
  steps.reserve(config.loss.segments.size());
  for (const auto& seg : config.loss.segments) {
    const Matrix2c m = build_m(config, omega, seg);
    steps.push_back({m, expm2(m, seg.length()), seg.length(), seg.alpha_s, seg.alpha_i});
  }
  return steps;
}

void accumulate_kernels(KernelIntegrals& out, const Matrix2c& phi, double alpha_s,
                        double alpha_i, double weight) {
  const double ws = 2.0 * alpha_s * weight;
  const double wi = 2.0 * alpha_i * weight;
  out.abs_e2 += ws * std::norm(phi.m11);
  out.abs_g2 += ws * std::norm(phi.m21);
  out.conj_e_g += ws * std::conj(phi.m11) * phi.m21;
  out.abs_f2 += wi * std::norm(phi.m12);
  out.abs_h2 += wi * std::norm(phi.m22);
  out.conj_f_h += wi * std::conj(phi.m12) * phi.m22;
}

KernelIntegrals simpson_integrals(const std::vector<SegmentStep>& steps, int intervals) {
  const int n = std::max(2, intervals + intervals % 2);
  // suffix[j] = propagator from the end of segment j to L
  std::vector<Matrix2c> suffix(steps.size(), Matrix2c::identity());
  for (std::size_t j = steps.size(); j-- > 1;) suffix[j - 1] = suffix[j] * steps[j].e;

  KernelIntegrals out;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const auto& st = steps[j];
    if (st.alpha_s == 0.0 && st.alpha_i == 0.0) continue;
    const double dz = st.h / n;
    for (int q = 0; q <= n; ++q) {
      const double w = (q == 0 || q == n) ? 1.0 : (q % 2 ? 4.0 : 2.0);
      // distance from the node to the segment end
      const double rest = st.h - q * dz;
      const Matrix2c phi = suffix[j] * expm2(st.m, rest);
      accumulate_kernels(out, phi, st.alpha_s, st.alpha_i, w * dz / 3.0);
    }
  }
  return out;
}

}  // namespace

double Matrix2c::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

double relative_difference(const Matrix2c& a, const Matrix2c& b) {
  const double diff = (a - b).max_abs();
  const double scale = b.max_abs();
  return scale > 0.0 ? diff / scale : diff;
}

Matrix2c build_m(const CrystalConfig& config, double omega, const LossSegment& segment) {
  const double half_dk = 0.5 * config.dispersion.phase_mismatch(omega);
  const cplx i{0.0, 1.0};
  return {cplx{segment.alpha_s, half_dk}, -i * config.kappa, i * std::conj(config.kappa),
          cplx{segment.alpha_i, -half_dk}};
}

Matrix2c expm2(const Matrix2c& m, double dz) {
  if (dz == 0.0) return Matrix2c::identity();
  const cplx mu = 0.5 * m.trace();
  const cplx s = std::sqrt(mu * mu - m.determinant());
  const cplx x = s * dz;
  const cplx ch = std::cosh(x);
  // sinh(s dz) / s
  const cplx sh = std::abs(x) < kSeriesThreshold ? dz * (1.0 + x * x / 6.0) : std::sinh(x) / s;
  const cplx scale = std::exp(-mu * dz);
  const Matrix2c n{m.m11 - mu, m.m12, m.m21, m.m22 - mu};
  return {scale * (ch - sh * n.m11), -scale * sh * n.m12, -scale * sh * n.m21,
          scale * (ch - sh * n.m22)};
}

Matrix2c propagator(const CrystalConfig& config, double omega, double z_from, double z_to) {
  check_range(config, z_from, z_to);
  Matrix2c out = Matrix2c::identity();
  for (const auto& seg : config.loss.segments) {
    const double a = std::max(z_from, seg.z_start);
    const double b = std::min(z_to, seg.z_end);
    if (b > a) out = expm2(build_m(config, omega, seg), b - a) * out;
  }
  return out;
}

TransferCoefficients coefficients(const CrystalConfig& config, double omega) {
  const Matrix2c p = propagator(config, omega, 0.0, config.length);
  return {p.m11, p.m12, p.m21, p.m22};
}

LangevinKernels langevin_kernel(const CrystalConfig& config, double omega, double z) {
  const Matrix2c p = propagator(config, omega, z, config.length);
  const auto& seg = config.loss.segment_at(z);
  const double rs = std::sqrt(2.0 * seg.alpha_s);
  const double ri = std::sqrt(2.0 * seg.alpha_i);
  return {p.m11 * rs, p.m12 * ri, p.m21 * rs, p.m22 * ri};
}

Matrix2c segment_gramian(const Matrix2c& m, const Matrix2c& q, double h) {
  if (h <= 0.0) return Matrix2c::zero();
  const double norm = row_sum_norm(m) * h;
  int doublings = 0;
  if (norm > kGramianBaseNorm) {
    doublings = static_cast<int>(std::ceil(std::log2(norm / kGramianBaseNorm)));
  }
  const double base = std::ldexp(h, -doublings);

  // W(h) = sum_n (-1)^n L^n(q) h^{n+1} / (n+1)!
  Matrix2c w = Matrix2c::zero();
  Matrix2c term = q;
  double factor = base;
  for (int n = 0; n < kGramianTerms; ++n) {
    w = w + cplx(factor) * term;
    term = cplx(-1.0) * lyapunov_apply(m, term);
    factor *= base / (n + 2);
  }
  // W(2h) = W(h) + e^{-m h} W(h) e^{-m^H h}
  double step = base;
  for (int k = 0; k < doublings; ++k) {
    w = w + sandwich(expm2(m, step), w);
    step *= 2.0;
  }
  return w;
}

FrequencyResponse frequency_response(const CrystalConfig& config, double omega,
                                     const QuadratureOptions& options) {
  const auto steps = segment_steps(config, omega);
  Matrix2c p = Matrix2c::identity();
  for (const auto& st : steps) p = st.e * p;

  FrequencyResponse out;
  out.coefficients = {p.m11, p.m12, p.m21, p.m22};

  if (options.method == KernelQuadrature::simpson) {
    out.integrals = simpson_integrals(steps, options.simpson_intervals);
    return out;
  }

  // Controllability Gramians of the two noise inputs, swept left to right:
  // G_c = int_0^L Phi(L,z) Q_c Phi(L,z)^H dz.
  Matrix2c g_signal = Matrix2c::zero();
  Matrix2c g_idler = Matrix2c::zero();
  for (const auto& st : steps) {
    g_signal = sandwich(st.e, g_signal);
    g_idler = sandwich(st.e, g_idler);
    if (st.alpha_s > 0.0) {
      g_signal = g_signal + segment_gramian(st.m, {2.0 * st.alpha_s, 0.0, 0.0, 0.0}, st.h);
    }
    if (st.alpha_i > 0.0) {
      g_idler = g_idler + segment_gramian(st.m, {0.0, 0.0, 0.0, 2.0 * st.alpha_i}, st.h);
    }
  }
  auto& k = out.integrals;
  k.abs_e2 = g_signal.m11.real();
  k.abs_g2 = g_signal.m22.real();
  k.conj_e_g = g_signal.m21;
  k.abs_f2 = g_idler.m11.real();
  k.abs_h2 = g_idler.m22.real();
  k.conj_f_h = g_idler.m21;
  return out;
}

KernelIntegrals kernel_integrals(const CrystalConfig& config, double omega,
                                 const QuadratureOptions& options) {
  return frequency_response(config, omega, options).integrals;
}

CommutatorResiduals commutator_residuals(const FrequencyResponse& r) {
  const auto& c = r.coefficients;
  const auto& k = r.integrals;
  return {std::norm(c.A) - std::norm(c.B) + k.abs_e2 - k.abs_f2 - 1.0,
          std::norm(c.D) - std::norm(c.C) + k.abs_h2 - k.abs_g2 - 1.0};
}

}  // namespace lpdc
