#include "lpdc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>

#include "lpdc/parallel.hpp"

namespace lpdc {

namespace {

struct Piece {
  Matrix2c m;
  double a, b;
  std::size_t steps;
  double alpha_s, alpha_i;
};

std::vector<Piece> pieces(const CrystalConfig& config, double omega, double z_from,
                          double z_to, std::size_t n_steps) {
  std::vector<Piece> out;
  const double span = z_to - z_from;
  for (const auto& seg : config.loss.segments) {
    const double a = std::max(z_from, seg.z_start);
    const double b = std::min(z_to, seg.z_end);
    if (!(b > a)) continue;
    auto steps = static_cast<std::size_t>(std::llround(n_steps * (b - a) / span));
    steps = std::max<std::size_t>(2, steps + steps % 2);
    out.push_back({build_m(config, omega, seg), a, b, steps, seg.alpha_s, seg.alpha_i});
  }
  return out;
}

// One RK4 step of dY/dz = sign * f(Y) with f(Y) = M Y (left) or Y M (right).
Matrix2c rk4_left(const Matrix2c& m, const Matrix2c& y, double h) {
  const Matrix2c mm = cplx(-1.0) * m;
  const Matrix2c k1 = mm * y;
  const Matrix2c k2 = mm * (y + cplx(0.5 * h) * k1);
  const Matrix2c k3 = mm * (y + cplx(0.5 * h) * k2);
  const Matrix2c k4 = mm * (y + cplx(h) * k3);
  return y + cplx(h / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
}

// Psi(z) = Phi(L, z) obeys dPsi/dz = Psi M; stepping backwards by h.
Matrix2c rk4_backward(const Matrix2c& m, const Matrix2c& y, double h) {
  const Matrix2c mm = cplx(-1.0) * m;  // d/d(-z)
  const Matrix2c k1 = y * mm;
  const Matrix2c k2 = (y + cplx(0.5 * h) * k1) * mm;
  const Matrix2c k3 = (y + cplx(0.5 * h) * k2) * mm;
  const Matrix2c k4 = (y + cplx(h) * k3) * mm;
  return y + cplx(h / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
}

double relative_error(cplx a, cplx b, double scale) { return std::abs(a - b) / scale; }

double coefficient_error(const TransferCoefficients& x, const TransferCoefficients& y) {
  const double scale =
      std::max({std::abs(y.A), std::abs(y.B), std::abs(y.C), std::abs(y.D), 1e-300});
  return std::max({relative_error(x.A, y.A, scale), relative_error(x.B, y.B, scale),
                   relative_error(x.C, y.C, scale), relative_error(x.D, y.D, scale)});
}

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_double(std::uint64_t& h, double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into +0
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  fnv_bytes(h, &bits, sizeof bits);
}

}  // namespace

FrequencyResponse ode_frequency_response(const CrystalConfig& config, double omega,
                                         std::size_t n_steps) {
  if (n_steps < 100) throw NumericError("the ODE oracle needs at least 100 steps");
  const auto ps = pieces(config, omega, 0.0, config.length, n_steps);
  KernelIntegrals k;
  Matrix2c psi = Matrix2c::identity();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    const double h = (it->b - it->a) / static_cast<double>(it->steps);
    const double ws = 2.0 * it->alpha_s;
    const double wi = 2.0 * it->alpha_i;
    for (std::size_t q = 0; q <= it->steps; ++q) {
      const double w = (q == 0 || q == it->steps) ? 1.0 : (q % 2 ? 4.0 : 2.0);
      const double c = w * h / 3.0;
      k.abs_e2 += c * ws * std::norm(psi.m11);
      k.abs_g2 += c * ws * std::norm(psi.m21);
      k.conj_e_g += c * ws * std::conj(psi.m11) * psi.m21;
      k.abs_f2 += c * wi * std::norm(psi.m12);
      k.abs_h2 += c * wi * std::norm(psi.m22);
      k.conj_f_h += c * wi * std::conj(psi.m12) * psi.m22;
      if (q < it->steps) psi = rk4_backward(it->m, psi, h);
    }
  }
  // psi is now Phi(L, 0)
  return {{psi.m11, psi.m12, psi.m21, psi.m22}, k};
}

Matrix2c ode_propagator(const CrystalConfig& config, double omega, double z_from, double z_to,
                        std::size_t n_steps) {
  if (n_steps < 100) throw NumericError("the ODE oracle needs at least 100 steps");
  if (!(z_from <= z_to) || z_from < 0.0 || z_to > config.length * (1.0 + 1e-12)) {
    throw NumericError("ODE oracle positions outside the crystal");
  }
  Matrix2c x = Matrix2c::identity();
  if (z_to == z_from) return x;
  for (const auto& p : pieces(config, omega, z_from, z_to, n_steps)) {
    const double h = (p.b - p.a) / static_cast<double>(p.steps);
    for (std::size_t q = 0; q < p.steps; ++q) x = rk4_left(p.m, x, h);
  }
  return x;
}

TransferCoefficients lossless_reference(cplx kappa, double delta_k, double length) {
  // Real arithmetic on the two branches: growth when |kappa| > |d|,
  // oscillation otherwise.
  const double d = 0.5 * delta_k;
  const double g2 = std::norm(kappa) - d * d;
  const double x = std::sqrt(std::abs(g2)) * length;
  double ch, sh;
  if (x < 1e-6) {
    ch = 1.0 + 0.5 * (g2 > 0 ? x * x : -x * x);
    sh = length * (1.0 + (g2 > 0 ? x * x : -x * x) / 6.0);
  } else if (g2 > 0) {
    ch = std::cosh(x);
    sh = std::sinh(x) * length / x;
  } else {
    ch = std::cos(x);
    sh = std::sin(x) * length / x;
  }
  const cplx i{0.0, 1.0};
  return {ch - i * d * sh, i * kappa * sh, -i * std::conj(kappa) * sh, ch + i * d * sh};
}

bool OracleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed(); });
}

const OracleCheck* OracleReport::worst_offender() const {
  const OracleCheck* worst = nullptr;
  double ratio = -1.0;
  for (const auto& c : checks) {
    double r = c.tolerance > 0.0 ? c.error / c.tolerance : c.error;
    if (std::isnan(r)) r = HUGE_VAL;
    if (r > ratio) {
      ratio = r;
      worst = &c;
    }
  }
  return worst;
}

std::string config_digest(const CrystalConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_double(h, config.length);
  fnv_double(h, config.kappa.real());
  fnv_double(h, config.kappa.imag());
  fnv_double(h, config.degenerate_wavelength);
  const unsigned char flags[2] = {static_cast<unsigned char>(config.langevin_enabled),
                                  static_cast<unsigned char>(config.include_accidentals)};
  fnv_bytes(h, flags, sizeof flags);
  for (double c : config.dispersion.coefficients) fnv_double(h, c);
  for (const auto& s : config.loss.segments) {
    fnv_double(h, s.z_start);
    fnv_double(h, s.z_end);
    fnv_double(h, s.alpha_s);
    fnv_double(h, s.alpha_i);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OracleReport certify(const CrystalConfig& config, const DetuningGrid& grid,
                     const CertifyOptions& options) {
  const PropagatorHook prop =
      options.propagator ? options.propagator
                         : PropagatorHook([](const CrystalConfig& c, double w, double a, double b) {
                             return propagator(c, w, a, b);
                           });
  const bool lossless = std::all_of(config.loss.segments.begin(), config.loss.segments.end(),
                                    [](const LossSegment& s) { return s.lossless(); });

  // Sample detunings on the grid, symmetric about zero.
  const double t0 = config.walk_off_time();
  double reach = 0.5 * grid.span() - grid.spacing();
  if (t0 > 0.0) reach = std::min(reach, 2.0 * kPi * options.lobes / t0);
  const std::size_t nf = std::max<std::size_t>(options.n_frequencies, 1);
  std::vector<double> omegas(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    const double target = nf == 1 ? 0.0 : -reach + 2.0 * reach * j / static_cast<double>(nf - 1);
    const auto k = static_cast<long long>(std::llround(target / grid.spacing())) +
                   static_cast<long long>(grid.size() / 2);
    omegas[j] = grid.omega(static_cast<std::size_t>(
        std::clamp<long long>(k, 1, static_cast<long long>(grid.size()) - 1)));
  }

  const double z_mid = 0.5 * config.length;
  const std::size_t n_steps = options.n_steps;
  std::vector<std::vector<OracleCheck>> per(nf);
  detail::parallel_for(nf, [&](std::size_t j) {
    const double w = omegas[j];
    auto& out = per[j];
    const auto fast = frequency_response(config, w);
    const auto res = commutator_residuals(fast);
    out.push_back({"commutator", w, std::max(std::abs(res.signal), std::abs(res.idler)),
                   options.commutator_tolerance});
    const auto ode_res = commutator_residuals(ode_frequency_response(config, w, n_steps));
    out.push_back({"commutator-ode", w, std::max(std::abs(ode_res.signal), std::abs(ode_res.idler)),
                   options.commutator_tolerance});

    const Matrix2c full = prop(config, w, 0.0, config.length);
    out.push_back({"propagator-vs-ode", w,
                   relative_difference(full, ode_propagator(config, w, 0.0, config.length, n_steps)),
                   options.propagator_tolerance});
    const Matrix2c tail = prop(config, w, z_mid, config.length);
    out.push_back({"tail-propagator-vs-ode", w,
                   relative_difference(tail, ode_propagator(config, w, z_mid, config.length, n_steps)),
                   options.propagator_tolerance});
    const Matrix2c fast_p{fast.coefficients.A, fast.coefficients.B, fast.coefficients.C,
                          fast.coefficients.D};
    out.push_back({"response-vs-propagator", w, relative_difference(fast_p, full),
                   options.propagator_tolerance});
    if (lossless) {
      const auto ref =
          lossless_reference(config.kappa, config.dispersion.phase_mismatch(w), config.length);
      out.push_back({"lossless-analytic", w,
                     coefficient_error({full.m11, full.m12, full.m21, full.m22}, ref),
                     options.analytic_tolerance});
    }
  });

  // Keep the worst sample of every check, in first-seen order.
  OracleReport report;
  report.n_steps = n_steps;
  report.config_digest = config_digest(config);
  std::map<std::string, std::size_t> slot;
  for (const auto& list : per) {
    for (const auto& c : list) {
      auto [it, fresh] = slot.try_emplace(c.name, report.checks.size());
      if (fresh) {
        report.checks.push_back(c);
      } else if (!(c.error <= report.checks[it->second].error)) {
        report.checks[it->second] = c;
      }
      report.max_relative_error = std::max(report.max_relative_error, c.error);
      if (std::isnan(c.error)) report.max_relative_error = c.error;
    }
  }
  return report;
}

}  // namespace lpdc
