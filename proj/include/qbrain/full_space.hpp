// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force reference in the full 2^N qubit space, built from the
// intensive spin-1/2 Hamiltonian
//
//   H' = (eps/N) sum_i sz_i + sum_{i<j} [gx sx_i sx_j + gy sy_i sy_j] / (N(N-1)),
//
// with eps = -h N/2, gx = -g (N-1)(1+gamma)/2, gy = -g (N-1)(1-gamma)/2 and
// g = g0 r(t). It shares no Hamiltonian or kernel code with the Dicke-sector
// path. Bit i of a basis index is qubit i; bit value 1 is the excited state.

#include <vector>

#include "qbrain/collective_spin.hpp"
#include "qbrain/dynamics.hpp"

namespace qbrain::full {

inline constexpr int kMaxQubits = 12;
inline constexpr double kSectorLeakTolerance = 1e-8;

using StateVector = std::vector<Complex>;

struct IntensiveCouplings {
  double epsilon = 0.0;
  double gamma_x = 0.0;
  double gamma_y = 0.0;
};

/// Inverse of h = -2 eps/N, g = -(gx+gy)/(N-1), gamma = (gx-gy)/(gx+gy).
IntensiveCouplings intensive_couplings(int n_qubits, double g, double gamma, double h);

/// Zero-point offset: H' = H_LMG + g/2 on every state.
double zero_point_offset(double g);

/// out = H' in. O(2^N N^2).
void apply_hamiltonian(int n_qubits, const IntensiveCouplings& c, const StateVector& in, StateVector& out);

/// Dense 2^N x 2^N row-major H' (small N only).
std::vector<Complex> dense_hamiltonian(int n_qubits, const IntensiveCouplings& c);

/// Normalised symmetric Dicke state with n excitations.
StateVector dicke_state(int n_qubits, int n_excited);

/// <Jz> = (1/2) sum_i <sz_i>.
double expectation_jz(int n_qubits, const StateVector& psi);

/// Components along the normalised Dicke states.
DickeVector symmetric_projection(int n_qubits, const StateVector& psi);

/// Eigenvalues (ascending) of the reduced density matrix of qubits 0..L-1.
std::vector<double> reduced_block_spectrum(int n_qubits, const StateVector& psi, int block_size);

/// Same records as simulate(), integrated in the full space with RK4 on the
/// same time grid. Throws ConfigError if N > kMaxQubits and StepError if the
/// state leaves the symmetric sector by more than kSectorLeakTolerance.
Trajectory full_space_simulate(const SimulationConfig& config);

}  // namespace qbrain::full
