// SPDX-License-Identifier: Apache-2.0
#include "qbrain/full_space.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <fmt/format.h>

#include "qbrain/observables.hpp"

namespace qbrain::full {

namespace {

std::size_t space_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

int popcount(std::size_t b) { return std::popcount(b); }

}  // namespace

IntensiveCouplings intensive_couplings(int n_qubits, double g, double gamma, double h) {
  IntensiveCouplings c;
  c.epsilon = -h * n_qubits / 2.0;
  c.gamma_x = -g * (n_qubits - 1) * (1.0 + gamma) / 2.0;
  c.gamma_y = -g * (n_qubits - 1) * (1.0 - gamma) / 2.0;
  return c;
}

double zero_point_offset(double g) { return 0.5 * g; }

void apply_hamiltonian(int n_qubits, const IntensiveCouplings& c, const StateVector& in, StateVector& out) {
  const std::size_t dim = space_dim(n_qubits);
  out.assign(dim, Complex{0.0, 0.0});
  const double field = c.epsilon / n_qubits;
  const double pair_norm = n_qubits > 1 ? 1.0 / (static_cast<double>(n_qubits) * (n_qubits - 1)) : 0.0;
  // sx sx flips both bits; sy sy does too, with phase -1 when the bits agree
  // and +1 when they differ.
  const double agree = (c.gamma_x - c.gamma_y) * pair_norm;
  const double differ = (c.gamma_x + c.gamma_y) * pair_norm;
  for (std::size_t b = 0; b < dim; ++b) {
    const Complex amp = in[b];
    out[b] += field * (2.0 * popcount(b) - n_qubits) * amp;
    for (int i = 0; i < n_qubits; ++i) {
      for (int j = i + 1; j < n_qubits; ++j) {
        const bool bi = (b >> i) & 1U;
        const bool bj = (b >> j) & 1U;
        const std::size_t flipped = b ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
        out[flipped] += (bi == bj ? agree : differ) * amp;
      }
    }
  }
}

std::vector<Complex> dense_hamiltonian(int n_qubits, const IntensiveCouplings& c) {
  const std::size_t dim = space_dim(n_qubits);
  std::vector<Complex> h(dim * dim);
  StateVector e(dim), col;
  for (std::size_t b = 0; b < dim; ++b) {
    std::fill(e.begin(), e.end(), Complex{0.0, 0.0});
    e[b] = 1.0;
    apply_hamiltonian(n_qubits, c, e, col);
    for (std::size_t a = 0; a < dim; ++a) h[a * dim + b] = col[a];
  }
  return h;
}

StateVector dicke_state(int n_qubits, int n_excited) {
  if (n_excited < 0 || n_excited > n_qubits)
    throw std::domain_error(fmt::format("excitation number {} outside [0, {}]", n_excited, n_qubits));
  const std::size_t dim = space_dim(n_qubits);
  StateVector psi(dim, Complex{0.0, 0.0});
  const double amp = std::exp(-0.5 * log_binomial(n_qubits, n_excited));
  for (std::size_t b = 0; b < dim; ++b)
    if (popcount(b) == n_excited) psi[b] = amp;
  return psi;
}

double expectation_jz(int n_qubits, const StateVector& psi) {
  double s = 0.0;
  for (std::size_t b = 0; b < psi.size(); ++b) s += (popcount(b) - 0.5 * n_qubits) * std::norm(psi[b]);
  return s;
}

DickeVector symmetric_projection(int n_qubits, const StateVector& psi) {
  DickeVector out{SpinSector(n_qubits)};
  for (std::size_t b = 0; b < psi.size(); ++b) out[static_cast<std::size_t>(popcount(b))] += psi[b];
  for (int n = 0; n <= n_qubits; ++n) out[static_cast<std::size_t>(n)] *= std::exp(-0.5 * log_binomial(n_qubits, n));
  return out;
}

std::vector<double> reduced_block_spectrum(int n_qubits, const StateVector& psi, int block_size) {
  const std::size_t block_dim = space_dim(block_size);
  const std::size_t rest_dim = space_dim(n_qubits - block_size);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(block_dim), static_cast<Eigen::Index>(block_dim));
  for (std::size_t a = 0; a < block_dim; ++a)
    for (std::size_t a2 = 0; a2 < block_dim; ++a2) {
      Complex s{0.0, 0.0};
      for (std::size_t rest = 0; rest < rest_dim; ++rest) {
        const std::size_t hi = rest << block_size;
        s += psi[hi | a] * std::conj(psi[hi | a2]);
      }
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) = s;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

namespace {

struct FullState {
  StateVector psi;
  SynapseState synapse;
};

struct FullRates {
  StateVector dpsi;
  SynapseRates synapse;
};

class FullRhs {
 public:
  explicit FullRhs(const SimulationConfig& config) : config_(config), scratch_(space_dim(config.N)) {}

  FullRates operator()(const FullState& s) {
    const double g = config_.lmg.g0 * s.synapse.r;
    apply_hamiltonian(config_.N, intensive_couplings(config_.N, g, config_.lmg.gamma, config_.lmg.h), s.psi, scratch_);
    FullRates out{StateVector(scratch_.size()), {}};
    for (std::size_t b = 0; b < scratch_.size(); ++b) out.dpsi[b] = Complex{scratch_[b].imag(), -scratch_[b].real()};
    const double excitation = 0.5 + expectation_jz(config_.N, s.psi) / config_.N;
    out.synapse = plasticity_derivatives(s.synapse, excitation, config_.plasticity);
    return out;
  }

 private:
  const SimulationConfig& config_;
  StateVector scratch_;
};

FullState advance(const FullState& s, const FullRates& k, double h) {
  FullState out{s.psi, {s.synapse.r + h * k.synapse.dr, s.synapse.U + h * k.synapse.dU}};
  for (std::size_t b = 0; b < out.psi.size(); ++b) out.psi[b] += h * k.dpsi[b];
  return out;
}

double state_norm(const StateVector& psi) {
  double s = 0.0;
  for (const auto& c : psi) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

Trajectory full_space_simulate(const SimulationConfig& config) {
  config.validate();
  if (config.N > kMaxQubits)
    throw ConfigError("N", fmt::format("full-space reference is limited to N <= {}", kMaxQubits));
  const int n_qubits = config.N;
  const int block_size = config.resolved_block_size();

  Trajectory traj;
  traj.config = config;
  const TimeGrid grid = resolve_grid(config);
  traj.steps = grid.steps;
  traj.dt = grid.dt;
  traj.record_stride = grid.stride;

  const StateVector psi0 = dicke_state(n_qubits, config.initial_excitations());
  FullState state{psi0, initial_synapse(config.plasticity)};
  FullRhs rhs(config);
  StateVector hpsi;

  auto record = [&](double t) {
    TrajectoryRecord rec;
    rec.t = t;
    rec.E = 0.5 + expectation_jz(n_qubits, state.psi) / n_qubits;
    rec.r = state.synapse.r;
    rec.U = state.synapse.U;
    Complex overlap{0.0, 0.0};
    for (std::size_t b = 0; b < psi0.size(); ++b) overlap += std::conj(psi0[b]) * state.psi[b];
    rec.fidelity = std::norm(overlap);
    rec.norm = state_norm(state.psi);

    const DickeVector projected = symmetric_projection(n_qubits, state.psi);
    const double leak = 1.0 - projected.norm_squared() / (rec.norm * rec.norm);
    if (leak > kSectorLeakTolerance)
      throw StepError(t, fmt::format("state left the symmetric sector (leak {:.3e})", leak));
    // Entropies from the explicit partial trace, independent of the sector
    // Schmidt construction.
    const BlockDistribution dist{block_size, reduced_block_spectrum(n_qubits, state.psi, block_size)};
    rec.S_block = block_entropy(dist);
    rec.S_linear = block_linear_entropy(dist);

    const double g = config.lmg.g0 * state.synapse.r;
    apply_hamiltonian(n_qubits, intensive_couplings(n_qubits, g, config.lmg.gamma, config.lmg.h), state.psi, hpsi);
    Complex e{0.0, 0.0};
    for (std::size_t b = 0; b < hpsi.size(); ++b) e += std::conj(state.psi[b]) * hpsi[b];
    rec.energy = e.real() - zero_point_offset(g) * rec.norm * rec.norm;
    traj.records.push_back(rec);
  };

  record(0.0);
  const double h = traj.dt;
  for (long i = 1; i <= traj.steps; ++i) {
    const FullRates k1 = rhs(state);
    const FullRates k2 = rhs(advance(state, k1, 0.5 * h));
    const FullRates k3 = rhs(advance(state, k2, 0.5 * h));
    const FullRates k4 = rhs(advance(state, k3, h));
    for (std::size_t b = 0; b < state.psi.size(); ++b)
      state.psi[b] += (h / 6.0) * (k1.dpsi[b] + 2.0 * k2.dpsi[b] + 2.0 * k3.dpsi[b] + k4.dpsi[b]);
    state.synapse.r += (h / 6.0) * (k1.synapse.dr + 2.0 * k2.synapse.dr + 2.0 * k3.synapse.dr + k4.synapse.dr);
    state.synapse.U += (h / 6.0) * (k1.synapse.dU + 2.0 * k2.synapse.dU + 2.0 * k3.synapse.dU + k4.synapse.dU);
    const double t = static_cast<double>(i) * h;
    if (config.renormalize) {
      const double nrm = state_norm(state.psi);
      for (auto& c : state.psi) c /= nrm;
    } else if (std::abs(state_norm(state.psi) - 1.0) > config.norm_tolerance) {
      throw StepError(t, "norm drift exceeds tolerance");
    }
    if (i % traj.record_stride == 0) record(t);
  }
  return traj;
}

}  // namespace qbrain::full
