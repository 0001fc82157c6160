// SPDX-License-Identifier: Apache-2.0
#include "qbrain/collective_spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbrain {

SpinSector::SpinSector(int qubits) : qubits_(qubits) {
  if (qubits < 1) throw std::domain_error("number of qubits must be >= 1, got " + std::to_string(qubits));
}

DickeVector::DickeVector(SpinSector sector) : sector_(sector), amplitudes_(sector.dim(), Complex{0.0, 0.0}) {}

DickeVector::DickeVector(SpinSector sector, std::vector<Complex> amplitudes)
    : sector_(sector), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != sector_.dim())
    throw std::invalid_argument("Dicke vector needs " + std::to_string(sector_.dim()) + " amplitudes, got " +
                                std::to_string(amplitudes_.size()));
}

double DickeVector::norm_squared() const noexcept {
  double s = 0.0;
  for (const auto& c : amplitudes_) s += std::norm(c);
  return s;
}

double DickeVector::norm() const noexcept { return std::sqrt(norm_squared()); }

std::vector<double> DickeVector::populations() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = std::norm(amplitudes_[n]);
  return p;
}

DickeVector dicke_state(const SpinSector& sector, int n_excited) {
  if (n_excited < 0 || n_excited > sector.qubits())
    throw std::domain_error("excitation number " + std::to_string(n_excited) + " outside valid range [0, " +
                            std::to_string(sector.qubits()) + "]");
  DickeVector psi(sector);
  psi[static_cast<std::size_t>(n_excited)] = 1.0;
  return psi;
}

int excitation_count_for_fraction(const SpinSector& sector, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::domain_error("excitation fraction must lie in [0, 1], got " + std::to_string(fraction));
  return static_cast<int>(std::floor(fraction * sector.qubits() + 0.5));
}

DickeVector dicke_state_fraction(const SpinSector& sector, double fraction) {
  return dicke_state(sector, excitation_count_for_fraction(sector, fraction));
}

std::vector<double> m_values(const SpinSector& sector) {
  std::vector<double> m(sector.dim());
  for (std::size_t n = 0; n < m.size(); ++n) m[n] = sector.m(n);
  return m;
}

namespace {
void check_m(double j, double m) {
  if (!(m >= -j && m <= j))
    throw std::domain_error("magnetic quantum number " + std::to_string(m) + " outside [-j, j] for j = " +
                            std::to_string(j));
}
}  // namespace

double ladder_plus_coeff(double j, double m) {
  check_m(j, m);
  // Exact zero at the top of the ladder; rounding can push the radicand negative.
  const double radicand = j * (j + 1.0) - m * (m + 1.0);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

double ladder_minus_coeff(double j, double m) {
  check_m(j, m);
  const double radicand = j * (j + 1.0) - m * (m - 1.0);
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

Complex inner_product(const DickeVector& a, const DickeVector& b) {
  if (!(a.sector() == b.sector()))
    throw std::invalid_argument("inner product of vectors from different sectors (N = " +
                                std::to_string(a.sector().qubits()) + " vs " + std::to_string(b.sector().qubits()) +
                                ")");
  Complex s{0.0, 0.0};
  for (std::size_t n = 0; n < a.dim(); ++n) s += std::conj(a[n]) * b[n];
  return s;
}

double expectation_jz(const DickeVector& psi) {
  const auto& sector = psi.sector();
  double s = 0.0;
  for (std::size_t n = 0; n < psi.dim(); ++n) s += sector.m(n) * std::norm(psi[n]);
  return s;
}

DickeVector parity_flip(const DickeVector& psi) {
  DickeVector out(psi.sector());
  const std::size_t dim = psi.dim();
  for (std::size_t n = 0; n < dim; ++n) out[dim - 1 - n] = psi[n];
  return out;
}

}  // namespace qbrain
