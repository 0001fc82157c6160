// SPDX-License-Identifier: Apache-2.0
#pragma once

// Classical short-term plasticity driving the coupling g(t) = g0 r(t):
//
//   dr/dt = (1 - r)/tau_r - U r E
//   dU/dt = (U_base - U)/tau_f + U_base (1 - U) E
//
// where E = 1/2 + <Jz>/N is the excited fraction. A time constant <= 0
// freezes its channel: r stays at r0, U stays at U_base.

namespace qbrain {

struct PlasticityParams {
  double tau_r = 0.0;   ///< depression recovery time; <= 0 disables depression
  double tau_f = 0.0;   ///< facilitation time; <= 0 disables facilitation
  double U_base = 0.5;  ///< baseline release probability, in (0, 1]
  double r0 = 1.0;      ///< initial efficacy, in [0, 1]
  double U0 = 0.5;      ///< initial release probability, in [0, 1]

  bool depression_enabled() const noexcept { return tau_r > 0.0; }
  bool facilitation_enabled() const noexcept { return tau_f > 0.0; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SynapseState {
  double r = 1.0;
  double U = 0.5;
};

struct SynapseRates {
  double dr = 0.0;
  double dU = 0.0;
};

/// Initial (r, U); U is pinned to U_base when facilitation is off.
SynapseState initial_synapse(const PlasticityParams& params) noexcept;

SynapseRates plasticity_derivatives(const SynapseState& state, double excitation, const PlasticityParams& params) noexcept;

inline double effective_coupling(double g0, double r) noexcept { return g0 * r; }

}  // namespace qbrain
