// SPDX-License-Identifier: Apache-2.0
#pragma once

// Collective LMG Hamiltonian in the Dicke basis,
//
//   H(t) = -(g/N) [(1+gamma) Jx^2 + (1-gamma) Jy^2] - h Jz,   g = g0 r(t),
//
// written as H(t) = g0 r(t) K + h M with
//
//   K = -(1/N) [(J^2 - Jz^2) + (gamma/2)(J+^2 + J-^2)],   M = -Jz.
//
// K is real symmetric with bands at offsets {0, +-2}; M is diagonal. Both
// are built once per (sector, gamma) and applied in O(N).

#include <vector>

#include "qbrain/collective_spin.hpp"
#include "qbrain/kernels.hpp"

namespace qbrain {

struct LMGParams {
  double g0 = 1.0;     ///< maximum coupling (inverse time, hbar = 1)
  double gamma = 1.0;  ///< XY anisotropy
  double h = 0.0;      ///< longitudinal field
};

class HamiltonianParts {
 public:
  HamiltonianParts(SpinSector sector, double gamma);

  const SpinSector& sector() const noexcept { return sector_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t dim() const noexcept { return sector_.dim(); }

  double k_diag(std::size_t n) const { return k_diag_[n]; }
  /// K[n, n+2] (== K[n+2, n]); zero for n + 2 > N.
  double k_upper(std::size_t n) const { return n + 2 < dim() ? k_upper_[n] : 0.0; }
  /// M[n] = -(n - N/2).
  double field(std::size_t n) const { return field_[n]; }

  /// K[n, n'] for any pair of indices.
  double k_entry(std::size_t row, std::size_t col) const;

  /// Duplicated-layout view for the SIMD kernels.
  kernels::BandedView view() const noexcept;

  /// m(n) duplicated per complex lane, used for <Jz> reductions.
  const double* m_duplicated() const noexcept { return m_dup_.data(); }

 private:
  SpinSector sector_;
  double gamma_;
  std::vector<double> k_diag_;
  std::vector<double> k_upper_;
  std::vector<double> field_;
  std::vector<double> diag_dup_;
  std::vector<double> upper_dup_;
  std::vector<double> field_dup_;
  std::vector<double> m_dup_;
};

HamiltonianParts build_parts(const SpinSector& sector, const LMGParams& params);

/// (g0 r K + h M) psi. Throws std::invalid_argument on a dimension mismatch.
DickeVector apply_hamiltonian(const HamiltonianParts& parts, double g0, double h, double r, const DickeVector& psi);

/// Re <psi|H|psi>.
double energy_expectation(const HamiltonianParts& parts, double g0, double h, double r, const DickeVector& psi);

/// Row-major dense (N+1)x(N+1) matrix of g0 r K + h M.
std::vector<double> dense_hamiltonian(const HamiltonianParts& parts, double g0, double h, double r);

}  // namespace qbrain
