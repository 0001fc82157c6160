// SPDX-License-Identifier: Apache-2.0
#include "qbrain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fmt/format.h>

#include "qbrain/kernels.hpp"

namespace qbrain {

StepError::StepError(double t, const std::string& message)
    : std::runtime_error(fmt::format("t = {:.17g}: {}", t, message)), t_(t) {}

void SimulationConfig::validate() const {
  if (N < 1) throw ConfigError("N", "must be >= 1");
  if (!std::isfinite(lmg.g0)) throw ConfigError("g0", "must be finite");
  if (!std::isfinite(lmg.gamma)) throw ConfigError("gamma", "must be finite");
  if (!std::isfinite(lmg.h)) throw ConfigError("h", "must be finite");
  try {
    plasticity.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(what.substr(0, what.find(':')), what.substr(what.find(':') + 2));
  }
  if (initial.kind == InitialCondition::Kind::count) {
    if (initial.count < 0 || initial.count > N)
      throw ConfigError("initial", fmt::format("count {} outside [0, {}]", initial.count, N));
  } else if (!(initial.fraction >= 0.0 && initial.fraction <= 1.0)) {
    throw ConfigError("initial", "fraction must lie in [0, 1]");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max", "must be a positive finite number");
  if (dt && (!(*dt > 0.0) || !std::isfinite(*dt))) throw ConfigError("dt", "must be positive or \"auto\"");
  if (record_stride < 0) throw ConfigError("record_stride", "must be positive or \"auto\"");
  if (block_size != 0 && (block_size < 1 || block_size > N - 1))
    throw ConfigError("block_size", fmt::format("must lie in [1, {}]", N - 1));
  if (block_size == 0 && N < 2) throw ConfigError("N", "block entropies need N >= 2");
  if (!(norm_tolerance > 0.0)) throw ConfigError("norm_tolerance", "must be positive");
}

int SimulationConfig::initial_excitations() const {
  const SpinSector sector(N);
  return initial.kind == InitialCondition::Kind::count ? initial.count
                                                       : excitation_count_for_fraction(sector, initial.fraction);
}

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> names{"t", "E", "r", "U", "fidelity", "S_block", "S_linear", "energy", "norm"};
  return names;
}

std::vector<double> Trajectory::column(std::string_view name) const {
  double TrajectoryRecord::*member = nullptr;
  if (name == "t") member = &TrajectoryRecord::t;
  else if (name == "E") member = &TrajectoryRecord::E;
  else if (name == "r") member = &TrajectoryRecord::r;
  else if (name == "U") member = &TrajectoryRecord::U;
  else if (name == "fidelity") member = &TrajectoryRecord::fidelity;
  else if (name == "S_block") member = &TrajectoryRecord::S_block;
  else if (name == "S_linear") member = &TrajectoryRecord::S_linear;
  else if (name == "energy") member = &TrajectoryRecord::energy;
  else if (name == "norm") member = &TrajectoryRecord::norm;
  else throw std::out_of_range(fmt::format("unknown trajectory column '{}'", name));
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& rec : records) out.push_back(rec.*member);
  return out;
}

CoupledRates coupled_derivative(const CoupledState& state, const HamiltonianParts& parts, const LMGParams& lmg,
                                const PlasticityParams& plasticity) {
  const double g = effective_coupling(lmg.g0, state.synapse.r);
  CoupledRates out{DickeVector(state.psi.sector()), {}};
  kernels::active().banded_rhs(parts.view(), g, lmg.h, 0.0, state.psi.raw(), out.dpsi.raw());
  out.synapse = plasticity_derivatives(state.synapse, excitation_fraction(state.psi), plasticity);
  return out;
}

Rk4Stepper::Rk4Stepper(DerivativeContext context, StepOptions options)
    : ctx_(context),
      opts_(options),
      len_(2 * context.parts->dim()),
      k1_(len_),
      k2_(len_),
      k3_(len_),
      k4_(len_),
      stage_(len_) {}

double Rk4Stepper::excitation(const double* psi) const {
  double sum_sq = 0.0;
  double weighted = 0.0;
  kernels::active().moments(psi, ctx_.parts->m_duplicated(), len_, &sum_sq, &weighted);
  return 0.5 + weighted / ctx_.parts->sector().qubits();
}

void Rk4Stepper::rates(const double* psi, const SynapseState& syn, double* dpsi, SynapseRates& out) const {
  const double g = effective_coupling(ctx_.lmg.g0, syn.r);
  kernels::active().banded_rhs(ctx_.parts->view(), g, ctx_.lmg.h, -g * ctx_.phase_reference, psi, dpsi);
  out = plasticity_derivatives(syn, excitation(psi), ctx_.plasticity);
}

void Rk4Stepper::step(CoupledState& state, double dt) { step_to(state, dt, state.t + dt); }

void Rk4Stepper::step_to(CoupledState& state, double dt, double t_next) {
  const auto& k = kernels::active();
  double* y = state.psi.raw();
  const SynapseState s0 = state.synapse;
  const double half = 0.5 * dt;

  SynapseRates r1, r2, r3, r4;
  rates(y, s0, k1_.data(), r1);

  k.axpy(half, k1_.data(), y, stage_.data(), len_);
  rates(stage_.data(), {s0.r + half * r1.dr, s0.U + half * r1.dU}, k2_.data(), r2);

  k.axpy(half, k2_.data(), y, stage_.data(), len_);
  rates(stage_.data(), {s0.r + half * r2.dr, s0.U + half * r2.dU}, k3_.data(), r3);

  k.axpy(dt, k3_.data(), y, stage_.data(), len_);
  rates(stage_.data(), {s0.r + dt * r3.dr, s0.U + dt * r3.dU}, k4_.data(), r4);

  k.rk4_combine(y, k1_.data(), k2_.data(), k3_.data(), k4_.data(), dt, y, len_);
  const double w = dt / 6.0;
  state.synapse.r = s0.r + w * (r1.dr + 2.0 * r2.dr + 2.0 * r3.dr + r4.dr);
  state.synapse.U = s0.U + w * (r1.dU + 2.0 * r2.dU + 2.0 * r3.dU + r4.dU);
  state.t = t_next;

  double sum_sq = 0.0;
  double unused = 0.0;
  k.moments(y, ctx_.parts->m_duplicated(), len_, &sum_sq, &unused);
  const double norm = std::sqrt(sum_sq);
  if (opts_.renormalize) {
    if (!(norm > 0.0) || !std::isfinite(norm)) throw StepError(state.t, "state vector collapsed to zero norm");
    for (auto& c : state.psi.amplitudes()) c /= norm;
  } else if (!(std::abs(norm - 1.0) <= opts_.norm_tolerance)) {
    throw StepError(state.t, fmt::format("norm drift {:.3e} exceeds tolerance {:.3e}; reduce dt", norm - 1.0,
                                         opts_.norm_tolerance));
  }
  const auto in_bounds = [](double v) { return v >= -kBoundSlack && v <= 1.0 + kBoundSlack; };
  if (!in_bounds(state.synapse.r))
    throw StepError(state.t, fmt::format("efficacy r = {:.6g} left [0, 1]; reduce dt", state.synapse.r));
  if (!in_bounds(state.synapse.U))
    throw StepError(state.t, fmt::format("release probability U = {:.6g} left [0, 1]; reduce dt", state.synapse.U));
}

CoupledState rk4_step(const CoupledState& state, double dt, const DerivativeContext& context, StepOptions options) {
  CoupledState next = state;
  Rk4Stepper stepper(context, options);
  stepper.step(next, dt);
  return next;
}

double heuristic_dt(const SimulationConfig& config) {
  double rate = std::abs(config.lmg.g0) * (config.N + 2) / 4.0 + std::abs(config.lmg.h) * config.N / 2.0;
  if (config.plasticity.depression_enabled()) rate += 1.0 / std::max(config.plasticity.tau_r, kAutoDtFloor);
  if (config.plasticity.facilitation_enabled()) rate += 1.0 / std::max(config.plasticity.tau_f, kAutoDtFloor);
  return kAutoDtSafety / std::max(rate, 1.0);
}

double accuracy_dt(const SimulationConfig& config) {
  const SpinSector sector(config.N);
  const HamiltonianParts parts = build_parts(sector, config.lmg);
  const DickeVector psi0 = dicke_state(sector, config.initial_excitations());
  const double kappa = energy_expectation(parts, 1.0, 0.0, 1.0, psi0);
  const double r_max = config.plasticity.depression_enabled() ? 1.0 : config.plasticity.r0;
  const double g = config.lmg.g0 * r_max;

  // v = A^3 psi0 with A = g (K - kappa) + h M.
  DickeVector v = psi0;
  for (int i = 0; i < 3; ++i) {
    DickeVector w = apply_hamiltonian(parts, config.lmg.g0, config.lmg.h, r_max, v);
    for (std::size_t n = 0; n < w.dim(); ++n) w[n] -= g * kappa * v[n];
    v = std::move(w);
  }
  const double sixth_moment = v.norm_squared();

  double dt = std::numeric_limits<double>::infinity();
  auto cap = [&](double budget, double rate) {
    if (rate > 0.0) dt = std::min(dt, std::pow(72.0 * budget / (config.t_max * rate), 0.2));
  };
  cap(kDriftBudget * config.norm_tolerance, sixth_moment);
  if (!config.plasticity.depression_enabled() && !config.plasticity.facilitation_enabled()) {
    const double e0 = energy_expectation(parts, config.lmg.g0, config.lmg.h, config.plasticity.r0, psi0);
    const double energy_rate = std::abs(energy_expectation(parts, config.lmg.g0, config.lmg.h, config.plasticity.r0, v));
    cap(kDriftBudget * kEnergyDriftTolerance * std::max(1.0, std::abs(e0)), energy_rate);
  }
  return dt;
}

double resolve_dt(const SimulationConfig& config) {
  if (config.dt) return *config.dt;
  return std::min(heuristic_dt(config), accuracy_dt(config));
}

long resolve_steps(const SimulationConfig& config, double dt) {
  const double ratio = config.t_max / dt;
  return std::max(1L, static_cast<long>(std::ceil(ratio - 1e-9 * ratio)));
}

int resolve_record_stride(const SimulationConfig& config, long steps) {
  if (config.record_stride > 0) return config.record_stride;
  return static_cast<int>(std::max(1L, (steps + kDefaultRecordTarget - 1) / kDefaultRecordTarget));
}

TimeGrid resolve_grid(const SimulationConfig& config) {
  TimeGrid g;
  g.steps = resolve_steps(config, resolve_dt(config));
  g.stride = resolve_record_stride(config, g.steps);
  g.steps = (g.steps + g.stride - 1) / g.stride * g.stride;
  g.dt = config.t_max / static_cast<double>(g.steps);
  return g;
}

namespace {

TrajectoryRecord observe(const CoupledState& state, const DickeVector& psi0, const HamiltonianParts& parts,
                         const BlockWeights& weights, const LMGParams& lmg) {
  TrajectoryRecord rec;
  rec.t = state.t;
  rec.E = excitation_fraction(state.psi);
  rec.r = state.synapse.r;
  rec.U = state.synapse.U;
  rec.fidelity = fidelity(psi0, state.psi);
  const BlockDistribution dist = weights.reduced_spectrum(state.psi);
  rec.S_block = block_entropy(dist);
  rec.S_linear = block_linear_entropy(dist);
  rec.energy = energy_expectation(parts, lmg.g0, lmg.h, state.synapse.r, state.psi);
  rec.norm = state.psi.norm();
  return rec;
}

}  // namespace

Trajectory simulate(const SimulationConfig& config) {
  config.validate();
  const SpinSector sector(config.N);
  const HamiltonianParts parts = build_parts(sector, config.lmg);
  const BlockWeights weights(sector, config.resolved_block_size());
  const DickeVector psi0 = dicke_state(sector, config.initial_excitations());

  Trajectory traj;
  traj.config = config;
  const TimeGrid grid = resolve_grid(config);
  traj.steps = grid.steps;
  traj.dt = grid.dt;
  traj.record_stride = grid.stride;
  traj.records.reserve(static_cast<std::size_t>(traj.steps / traj.record_stride + 2));

  DerivativeContext ctx{&parts, config.lmg, config.plasticity, 0.0};
  ctx.phase_reference = energy_expectation(parts, 1.0, 0.0, 1.0, psi0);
  Rk4Stepper stepper(ctx, StepOptions{config.renormalize, config.norm_tolerance});

  CoupledState state{psi0, initial_synapse(config.plasticity), 0.0};
  traj.records.push_back(observe(state, psi0, parts, weights, config.lmg));
  for (long i = 1; i <= traj.steps; ++i) {
    stepper.step_to(state, traj.dt, static_cast<double>(i) * traj.dt);
    if (i % traj.record_stride == 0)
      traj.records.push_back(observe(state, psi0, parts, weights, config.lmg));
  }
  return traj;
}

std::vector<TrajectoryRecord> records_between(const Trajectory& traj, double t_lo, double t_hi) {
  std::vector<TrajectoryRecord> out;
  for (const auto& rec : traj.records)
    if (rec.t >= t_lo && rec.t <= t_hi) out.push_back(rec);
  return out;
}

}  // namespace qbrain
