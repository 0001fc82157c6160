// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dicke-basis representation of the maximally symmetric sector j = N/2 of N
// qubits. States are indexed by the excitation number n = 0..N; the
// magnetic quantum number is m = n - j.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qbrain {

using Complex = std::complex<double>;

/// The j = N/2 sector of N qubits. j is kept as the integer 2j so that
/// half-integer values are exact.
class SpinSector {
 public:
  /// Throws std::domain_error if qubits < 1.
  explicit SpinSector(int qubits);

  int qubits() const noexcept { return qubits_; }
  int twice_j() const noexcept { return qubits_; }
  double j() const noexcept { return 0.5 * qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(qubits_) + 1; }

  /// m = n - j for excitation number n.
  double m(std::size_t n) const noexcept { return static_cast<double>(n) - j(); }

  friend bool operator==(const SpinSector&, const SpinSector&) = default;

 private:
  int qubits_;
};

class DickeVector {
 public:
  /// Zero vector.
  explicit DickeVector(SpinSector sector);
  /// Throws std::invalid_argument if amplitudes.size() != sector.dim().
  DickeVector(SpinSector sector, std::vector<Complex> amplitudes);

  const SpinSector& sector() const noexcept { return sector_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }

  const Complex& operator[](std::size_t n) const { return amplitudes_[n]; }
  Complex& operator[](std::size_t n) { return amplitudes_[n]; }

  /// Interleaved (re, im) view used by the SIMD kernels.
  const double* raw() const noexcept { return reinterpret_cast<const double*>(amplitudes_.data()); }
  double* raw() noexcept { return reinterpret_cast<double*>(amplitudes_.data()); }

  double norm_squared() const noexcept;
  double norm() const noexcept;

  /// Probabilities |c_n|^2.
  std::vector<double> populations() const;

 private:
  SpinSector sector_;
  std::vector<Complex> amplitudes_;
};

/// Unit vector with all weight on excitation number n.
DickeVector dicke_state(const SpinSector& sector, int n_excited);

/// Half-up rounding of fraction * N.
int excitation_count_for_fraction(const SpinSector& sector, double fraction);
DickeVector dicke_state_fraction(const SpinSector& sector, double fraction);

std::vector<double> m_values(const SpinSector& sector);

/// sqrt(j(j+1) - m(m+1)), the J+ matrix element <m+1|J+|m>.
double ladder_plus_coeff(double j, double m);
/// sqrt(j(j+1) - m(m-1)), the J- matrix element <m-1|J-|m>.
double ladder_minus_coeff(double j, double m);

/// sum_n conj(a_n) b_n. Throws std::invalid_argument on sector mismatch.
Complex inner_product(const DickeVector& a, const DickeVector& b);

/// <J_z> = sum_n m(n) |c_n|^2.
double expectation_jz(const DickeVector& psi);

/// n -> N - n, i.e. m -> -m.
DickeVector parity_flip(const DickeVector& psi);

}  // namespace qbrain
