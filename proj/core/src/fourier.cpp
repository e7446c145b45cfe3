#include "lpdc/fourier.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>
#include <string>

namespace lpdc {

namespace {

// Planning is the only part of FFTW that is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

void check_size(const DetuningGrid& grid, const std::vector<cplx>& spectrum) {
  if (spectrum.size() != grid.size()) {
    throw NumericError("spectrum has " + std::to_string(spectrum.size()) +
                       " samples but the grid has " + std::to_string(grid.size()));
  }
}

}  // namespace

std::vector<cplx> to_time_domain(const DetuningGrid& grid, const std::vector<cplx>& spectrum,
                                 KernelSign sign) {
  check_size(grid, spectrum);
  const std::size_t n = grid.size();
  const std::size_t h = n / 2;
  std::unique_ptr<fftw_complex[], FftwDeleter> buf(fftw_alloc_complex(n));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(),
                            sign == KernelSign::negative ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double s = (k % 2 == 0) ? 1.0 : -1.0;
    buf[k][0] = s * spectrum[k].real();
    buf[k][1] = s * spectrum[k].imag();
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double norm = grid.spacing() / (2.0 * kPi);
  std::vector<cplx> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double s = ((m + h) % 2 == 0) ? norm : -norm;
    out[m] = cplx(s * buf[m][0], s * buf[m][1]);
  }
  return out;
}

cplx evaluate_at(const DetuningGrid& grid, const std::vector<cplx>& spectrum, double t,
                 KernelSign sign) {
  check_size(grid, spectrum);
  const double sgn = sign == KernelSign::negative ? -1.0 : 1.0;
  cplx acc{};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    acc += spectrum[k] * std::polar(1.0, sgn * grid.omega(k) * t);
  }
  return acc * (grid.spacing() / (2.0 * kPi));
}

}  // namespace lpdc
