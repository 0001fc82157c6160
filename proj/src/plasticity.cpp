// SPDX-License-Identifier: Apache-2.0
#include "qbrain/plasticity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbrain {

void PlasticityParams::validate() const {
  auto fail = [](const char* key, const std::string& why) {
    throw std::invalid_argument(std::string(key) + ": " + why);
  };
  if (!std::isfinite(tau_r)) fail("tau_r", "must be finite");
  if (!std::isfinite(tau_f)) fail("tau_f", "must be finite");
  if (!(U_base > 0.0 && U_base <= 1.0)) fail("U_base", "must lie in (0, 1]");
  if (!(r0 >= 0.0 && r0 <= 1.0)) fail("r0", "must lie in [0, 1]");
  if (!(U0 >= 0.0 && U0 <= 1.0)) fail("U0", "must lie in [0, 1]");
}

SynapseState initial_synapse(const PlasticityParams& params) noexcept {
  return SynapseState{params.r0, params.facilitation_enabled() ? params.U0 : params.U_base};
}

SynapseRates plasticity_derivatives(const SynapseState& state, double excitation,
                                    const PlasticityParams& params) noexcept {
  SynapseRates rates;
  if (params.depression_enabled()) rates.dr = (1.0 - state.r) / params.tau_r - state.U * state.r * excitation;
  if (params.facilitation_enabled())
    rates.dU = (params.U_base - state.U) / params.tau_f + params.U_base * (1.0 - state.U) * excitation;
  return rates;
}

}  // namespace qbrain
