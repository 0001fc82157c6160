// SPDX-License-Identifier: Apache-2.0
#pragma once

// Joint integration of the pure state psi and the synapse (r, U):
//
//   d psi/dt = -i (g0 r K + h M) psi
//   (dr, dU)  = plasticity_derivatives(r, U, E),   E = 1/2 + <Jz>_psi / N
//
// with fixed-step classical RK4. All four stages evaluate the quantum and
// the classical rates on the same stage values.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qbrain/collective_spin.hpp"
#include "qbrain/hamiltonian.hpp"
#include "qbrain/observables.hpp"
#include "qbrain/plasticity.hpp"

namespace qbrain {

/// Invalid configuration; key() names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Numerical failure during integration at time time().
class StepError : public std::runtime_error {
 public:
  StepError(double t, const std::string& message);
  double time() const noexcept { return t_; }

 private:
  double t_;
};

struct InitialCondition {
  enum class Kind { count, fraction };
  Kind kind = Kind::count;
  int count = 0;
  double fraction = 0.0;

  static InitialCondition excitations(int n) { return {Kind::count, n, 0.0}; }
  static InitialCondition excited_fraction(double f) { return {Kind::fraction, 0, f}; }

  friend bool operator==(const InitialCondition&, const InitialCondition&) = default;
};

struct SimulationConfig {
  int N = 2;
  LMGParams lmg;
  PlasticityParams plasticity;
  InitialCondition initial;
  double t_max = 10.0;
  std::optional<double> dt;  ///< nullopt selects resolve_dt's heuristic
  int record_stride = 0;     ///< 0 selects a stride giving at most kDefaultRecordTarget records
  int block_size = 0;        ///< 0 selects floor(N/2)
  bool renormalize = false;
  double norm_tolerance = 1e-6;

  /// Throws ConfigError.
  void validate() const;

  int resolved_block_size() const noexcept { return block_size > 0 ? block_size : N / 2; }
  int initial_excitations() const;
};

inline constexpr long kDefaultRecordTarget = 100000;
inline constexpr double kAutoDtSafety = 0.05;
inline constexpr double kAutoDtFloor = 1e-6;
inline constexpr double kBoundSlack = 1e-6;
/// Relative energy drift allowed when both plasticity channels are frozen.
inline constexpr double kEnergyDriftTolerance = 1e-8;
/// Fraction of each drift tolerance the auto step may spend.
inline constexpr double kDriftBudget = 0.1;

struct TrajectoryRecord {
  double t = 0.0;
  double E = 0.0;
  double r = 0.0;
  double U = 0.0;
  double fidelity = 0.0;
  double S_block = 0.0;
  double S_linear = 0.0;
  double energy = 0.0;
  double norm = 0.0;
};

/// Column names in record order: t,E,r,U,fidelity,S_block,S_linear,energy,norm.
const std::vector<std::string>& trajectory_columns();

struct Trajectory {
  SimulationConfig config;
  double dt = 0.0;  ///< step actually used (t_max / steps)
  long steps = 0;
  int record_stride = 1;
  std::vector<TrajectoryRecord> records;

  /// Throws std::out_of_range for an unknown column.
  std::vector<double> column(std::string_view name) const;
};

struct CoupledState {
  DickeVector psi;
  SynapseState synapse;
  double t = 0.0;
};

struct CoupledRates {
  DickeVector dpsi;
  SynapseRates synapse;
};

/// Everything the right-hand side needs besides the state.
struct DerivativeContext {
  const HamiltonianParts* parts = nullptr;
  LMGParams lmg;
  PlasticityParams plasticity;
  /// Constant subtracted from K. Shifting by a multiple of the identity
  /// only changes the global phase; simulate() uses <psi0|K|psi0> so the
  /// RK4 phase error acts on the spread of the spectrum, not its offset.
  double phase_reference = 0.0;
};

CoupledRates coupled_derivative(const CoupledState& state, const HamiltonianParts& parts, const LMGParams& lmg,
                                const PlasticityParams& plasticity);

struct StepOptions {
  bool renormalize = false;
  double norm_tolerance = 1e-6;
};

/// Reusable RK4 integrator holding its stage buffers.
class Rk4Stepper {
 public:
  Rk4Stepper(DerivativeContext context, StepOptions options);

  /// Advances state by dt (dt < 0 integrates backward). Throws StepError on
  /// norm drift beyond tolerance or r, U outside [-1e-6, 1 + 1e-6].
  void step(CoupledState& state, double dt);

  /// Advances by dt at time t = t0 + index * dt, assigning t exactly.
  void step_to(CoupledState& state, double dt, double t_next);

  const DerivativeContext& context() const noexcept { return ctx_; }

 private:
  void rates(const double* psi, const SynapseState& syn, double* dpsi, SynapseRates& out) const;
  double excitation(const double* psi) const;

  DerivativeContext ctx_;
  StepOptions opts_;
  std::size_t len_;
  std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

CoupledState rk4_step(const CoupledState& state, double dt, const DerivativeContext& context,
                      StepOptions options = {});

/// Rate heuristic for dt = "auto":
///   0.05 / (|g0| (N+2)/4 + |h| N/2 + 1/max(tau_r, 1e-6) + 1/max(tau_f, 1e-6)),
/// frozen channels contribute nothing and the divisor is floored at 1.
double heuristic_dt(const SimulationConfig& config);

/// Largest step whose leading-order RK4 amplitude error over [0, t_max]
/// stays within kDriftBudget of the norm tolerance and, with both channels
/// frozen, of the energy tolerance. One RK4 step multiplies an eigencomponent
/// of the generator with frequency w by |R(i w dt)|^2 = 1 - (w dt)^6/72 + ...,
/// so over t_max the norm drifts by t_max dt^5 <(A)^6>/72 and the energy by
/// t_max dt^5 <A^3 H A^3>/72, where A = g0 r_max (K - kappa) + h M is the
/// integrated generator (kappa: the phase reference). Exact to leading order
/// when h = 0 (the generator then commutes with itself at all times);
/// an estimate otherwise. Returns +inf when nothing constrains the step.
double accuracy_dt(const SimulationConfig& config);

/// The explicit dt, or min(heuristic_dt, accuracy_dt) for "auto".
double resolve_dt(const SimulationConfig& config);

/// Number of fixed steps covering [0, t_max] with step <= dt.
long resolve_steps(const SimulationConfig& config, double dt);

int resolve_record_stride(const SimulationConfig& config, long steps);

/// Integration grid: steps is rounded up to a multiple of stride so records
/// are evenly spaced and the last one lands on t_max; dt = t_max / steps.
struct TimeGrid {
  double dt = 0.0;
  long steps = 0;
  int stride = 1;
};
TimeGrid resolve_grid(const SimulationConfig& config);

/// Throws ConfigError for an invalid config and StepError on numerical failure.
Trajectory simulate(const SimulationConfig& config);

/// Records within [t_lo, t_hi].
std::vector<TrajectoryRecord> records_between(const Trajectory& traj, double t_lo, double t_hi);

}  // namespace qbrain
