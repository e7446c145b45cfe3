#pragma once

#include <vector>

#include "lpdc/model.hpp"

namespace lpdc {

/// Sign of the exponent in the frequency-to-time kernel e^{sign i w t}.
enum class KernelSign { negative = -1, positive = 1 };

/// phi(t_m) = (dw / 2 pi) sum_k phi_k e^{sign i w_k t_m} on the conjugate time
/// axis of the grid, in O(n log n). With h = n/2 the centred sum reduces to an
/// unshifted DFT: phi(t_m) = (dw / 2 pi) (-1)^{m+h} DFT[(-1)^k phi_k]_m.
std::vector<cplx> to_time_domain(const DetuningGrid& grid, const std::vector<cplx>& spectrum,
                                 KernelSign sign);

/// The same sum evaluated directly at an arbitrary time. This is the exact
/// band-limited interpolant of to_time_domain().
cplx evaluate_at(const DetuningGrid& grid, const std::vector<cplx>& spectrum, double t,
                 KernelSign sign);

}  // namespace lpdc
