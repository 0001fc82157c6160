// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scalar diagnostics recorded along a trajectory.
//
// A Dicke state splits over a block of L qubits and its complement as
//
//   |D_n> = sum_k a(k, n-k) |D_k>_L |D_{n-k}>_{N-L},
//   a(k, l) = sqrt(C(L,k) C(N-L,l) / C(N,k+l)),
//
// so a symmetric state sum_n c_n |D_n> has the (L+1) x (N-L+1) coefficient
// matrix A[k][l] = c_{k+l} a(k, l) and the block's reduced state is A A^+.
// Its diagonal is the hypergeometric occupation
//
//   p_k = sum_n |c_n|^2 C(L,k) C(N-L, n-k) / C(N,n),
//
// which equals the spectrum only when psi is a single Dicke state; the
// entropies recorded along a trajectory use the eigenvalues of A A^+.

#include <vector>

#include "qbrain/collective_spin.hpp"

namespace qbrain {

struct BlockDistribution {
  int block_size = 0;
  std::vector<double> probabilities;  ///< p_k, k = 0..L
};

/// Row-stochastic (N+1) x (L+1) matrix W[n][k] of hypergeometric weights.
class BlockWeights {
 public:
  /// Throws std::invalid_argument unless 1 <= L <= N-1.
  BlockWeights(SpinSector sector, int block_size);

  const SpinSector& sector() const noexcept { return sector_; }
  int block_size() const noexcept { return block_size_; }
  double weight(std::size_t n, std::size_t k) const { return w_[n * cols() + k]; }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(block_size_) + 1; }

  /// Diagonal p_k of the block's reduced state.
  BlockDistribution distribution(const DickeVector& psi) const;
  BlockDistribution distribution_from_populations(const std::vector<double>& populations) const;

  /// Eigenvalues of the block's reduced state, descending; min(L, N-L) + 1
  /// entries (the remaining ones are exactly zero).
  BlockDistribution reduced_spectrum(const DickeVector& psi) const;

 private:
  SpinSector sector_;
  int block_size_;
  std::vector<double> w_;
  std::vector<double> schmidt_;  ///< a(k, l), row-major (L+1) x (N-L+1)
};

/// 1/2 + <Jz>/N.
double excitation_fraction(const DickeVector& psi);

/// |<psi0|psi_t>|^2.
double fidelity(const DickeVector& psi0, const DickeVector& psi_t);

BlockDistribution block_probabilities(const DickeVector& psi, int block_size);

/// Spectrum of the reduced state of the first block_size qubits.
BlockDistribution block_spectrum(const DickeVector& psi, int block_size);

/// -sum p log2 p over the distribution, 0 log 0 = 0. Applied to
/// block_spectrum this is the block's von Neumann entropy in bits.
double block_entropy(const BlockDistribution& dist);

/// 1 - sum_k p_k^2.
double block_linear_entropy(const BlockDistribution& dist);

/// (sum_n |c_n|^2)^2; equals Tr(rho^2) for rho = |psi><psi|.
double purity(const DickeVector& psi);

/// log C(a, b); -inf when b < 0 or b > a.
double log_binomial(int a, int b);

}  // namespace qbrain
