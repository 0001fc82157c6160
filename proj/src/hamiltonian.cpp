// SPDX-License-Identifier: Apache-2.0
#include "qbrain/hamiltonian.hpp"

#include <stdexcept>
#include <string>

namespace qbrain {

HamiltonianParts::HamiltonianParts(SpinSector sector, double gamma)
    : sector_(sector),
      gamma_(gamma),
      k_diag_(sector.dim()),
      k_upper_(sector.dim(), 0.0),
      field_(sector.dim()),
      diag_dup_(2 * sector.dim()),
      upper_dup_(2 * sector.dim(), 0.0),
      field_dup_(2 * sector.dim()),
      m_dup_(2 * sector.dim()) {
  const double n_qubits = sector.qubits();
  const double j = sector.j();
  const std::size_t dim = sector.dim();
  for (std::size_t n = 0; n < dim; ++n) {
    const double m = sector.m(n);
    k_diag_[n] = -(j * (j + 1.0) - m * m) / n_qubits;
    field_[n] = -m;
    if (n + 2 < dim) {
      // <m+2| J+^2 |m> = c+(m) c+(m+1)
      k_upper_[n] = -(gamma / (2.0 * n_qubits)) * ladder_plus_coeff(j, m) * ladder_plus_coeff(j, m + 1.0);
    }
    for (std::size_t lane = 0; lane < 2; ++lane) {
      diag_dup_[2 * n + lane] = k_diag_[n];
      upper_dup_[2 * n + lane] = k_upper_[n];
      field_dup_[2 * n + lane] = field_[n];
      m_dup_[2 * n + lane] = m;
    }
  }
}

double HamiltonianParts::k_entry(std::size_t row, std::size_t col) const {
  if (row == col) return k_diag_[row];
  if (col == row + 2) return k_upper_[row];
  if (row == col + 2) return k_upper_[col];
  return 0.0;
}

kernels::BandedView HamiltonianParts::view() const noexcept {
  return kernels::BandedView{diag_dup_.data(), upper_dup_.data(), field_dup_.data(), dim()};
}

HamiltonianParts build_parts(const SpinSector& sector, const LMGParams& params) {
  return HamiltonianParts(sector, params.gamma);
}

namespace {
void check_dims(const HamiltonianParts& parts, const DickeVector& psi) {
  if (psi.dim() != parts.dim())
    throw std::invalid_argument("state dimension " + std::to_string(psi.dim()) + " does not match Hamiltonian " +
                                std::to_string(parts.dim()));
}
}  // namespace

DickeVector apply_hamiltonian(const HamiltonianParts& parts, double g0, double h, double r, const DickeVector& psi) {
  check_dims(parts, psi);
  DickeVector out(psi.sector());
  kernels::active().banded_apply(parts.view(), g0 * r, h, 0.0, psi.raw(), out.raw());
  return out;
}

double energy_expectation(const HamiltonianParts& parts, double g0, double h, double r, const DickeVector& psi) {
  const DickeVector hpsi = apply_hamiltonian(parts, g0, h, r, psi);
  return inner_product(psi, hpsi).real();
}

std::vector<double> dense_hamiltonian(const HamiltonianParts& parts, double g0, double h, double r) {
  const std::size_t dim = parts.dim();
  std::vector<double> out(dim * dim, 0.0);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) out[a * dim + b] = g0 * r * parts.k_entry(a, b);
    out[a * dim + a] += h * parts.field(a);
  }
  return out;
}

}  // namespace qbrain
