// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared helpers for the test suite: seeded generators for property tests
// and an independent dense construction of the collective spin operators.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

#include "qbrain/collective_spin.hpp"

namespace qbrain::test {

/// Deterministic generator; every property test draws from its own seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  /// Unit vector with Gaussian components.
  DickeVector state(const SpinSector& sector) {
    DickeVector psi(sector);
    for (std::size_t n = 0; n < psi.dim(); ++n) psi[n] = Complex{normal(), normal()};
    const double nrm = psi.norm();
    for (std::size_t n = 0; n < psi.dim(); ++n) psi[n] /= nrm;
    return psi;
  }

  /// Unit vector supported on indices of one parity.
  DickeVector parity_state(const SpinSector& sector, int parity) {
    DickeVector psi(sector);
    for (std::size_t n = static_cast<std::size_t>(parity); n < psi.dim(); n += 2) psi[n] = Complex{normal(), normal()};
    const double nrm = psi.norm();
    for (std::size_t n = 0; n < psi.dim(); ++n) psi[n] /= nrm;
    return psi;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Jz, J+ and J- for spin j = N/2 built element by element from the
/// textbook matrix elements <m+1|J+|m> = sqrt((j-m)(j+m+1)).
struct SpinMatrices {
  Eigen::MatrixXcd jz, jp, jm, jx, jy;
};

inline SpinMatrices spin_matrices(int n_qubits) {
  const int dim = n_qubits + 1;
  const double j = 0.5 * n_qubits;
  SpinMatrices s;
  s.jz = Eigen::MatrixXcd::Zero(dim, dim);
  s.jp = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    const double m = n - j;
    s.jz(n, n) = m;
    if (n + 1 < dim) s.jp(n + 1, n) = std::sqrt((j - m) * (j + m + 1.0));
  }
  s.jm = s.jp.adjoint();
  s.jx = 0.5 * (s.jp + s.jm);
  s.jy = Complex{0.0, -0.5} * (s.jp - s.jm);
  return s;
}

/// -(g/N)[(1+gamma) Jx^2 + (1-gamma) Jy^2] - h Jz with complex Jy.
inline Eigen::MatrixXcd lmg_from_cartesian(int n_qubits, double g, double gamma, double h) {
  const SpinMatrices s = spin_matrices(n_qubits);
  return -(g / n_qubits) * ((1.0 + gamma) * s.jx * s.jx + (1.0 - gamma) * s.jy * s.jy) - h * s.jz;
}

}  // namespace qbrain::test
