// SPDX-License-Identifier: Apache-2.0
#include "qbrain/observables.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qbrain/kernels.hpp"

namespace qbrain {

namespace {
constexpr double kNegligible = 1e-300;
constexpr double kClip = 1e-14;
}  // namespace

double log_binomial(int a, int b) {
  if (b < 0 || b > a) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(std::lgammal(a + 1.0L) - std::lgammal(b + 1.0L) - std::lgammal(a - b + 1.0L));
}

BlockWeights::BlockWeights(SpinSector sector, int block_size) : sector_(sector), block_size_(block_size) {
  const int n_qubits = sector.qubits();
  if (block_size < 1 || block_size > n_qubits - 1)
    throw std::invalid_argument("block size " + std::to_string(block_size) + " outside [1, " +
                                std::to_string(n_qubits - 1) + "]");
  const std::size_t rows = sector.dim();
  w_.assign(rows * cols(), 0.0);
  for (int n = 0; n <= n_qubits; ++n) {
    const double log_total = log_binomial(n_qubits, n);
    // Kahan-summed row total; rows are renormalised so rounding in the
    // log-gamma differences cannot leak probability.
    double sum = 0.0;
    double carry = 0.0;
    for (int k = 0; k <= block_size; ++k) {
      const double lw = log_binomial(block_size, k) + log_binomial(n_qubits - block_size, n - k) - log_total;
      double w = std::isfinite(lw) ? std::exp(lw) : 0.0;
      if (w < kNegligible) w = 0.0;
      w_[static_cast<std::size_t>(n) * cols() + static_cast<std::size_t>(k)] = w;
      const double y = w - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    }
    for (std::size_t k = 0; k < cols(); ++k) w_[static_cast<std::size_t>(n) * cols() + k] /= sum;
  }
  const int rest = n_qubits - block_size;
  schmidt_.assign(cols() * static_cast<std::size_t>(rest + 1), 0.0);
  for (int k = 0; k <= block_size; ++k)
    for (int l = 0; l <= rest; ++l)
      schmidt_[static_cast<std::size_t>(k * (rest + 1) + l)] =
          std::exp(0.5 * (log_binomial(block_size, k) + log_binomial(rest, l) - log_binomial(n_qubits, k + l)));
}

namespace {

// Eigenvalues of A A^+ restricted to block rows k = k_first, k_first + step, ...
// and complement columns l with the matching parity.
void gram_spectrum(const DickeVector& psi, const std::vector<double>& schmidt, Eigen::Index rows, Eigen::Index rest,
                   Eigen::Index k_first, Eigen::Index l_first, Eigen::Index step, std::vector<double>& out) {
  const Eigen::Index nk = k_first < rows ? (rows - k_first + step - 1) / step : 0;
  const Eigen::Index nl = l_first < rest ? (rest - l_first + step - 1) / step : 0;
  if (nk == 0 || nl == 0) return;
  Eigen::MatrixXcd a(nk, nl);
  for (Eigen::Index i = 0; i < nk; ++i)
    for (Eigen::Index j = 0; j < nl; ++j) {
      const Eigen::Index k = k_first + i * step;
      const Eigen::Index l = l_first + j * step;
      a(i, j) = psi[static_cast<std::size_t>(k + l)] * schmidt[static_cast<std::size_t>(k * rest + l)];
    }
  // Both reduced states share their nonzero spectrum; diagonalise the smaller.
  const Eigen::MatrixXcd rho = nk <= nl ? Eigen::MatrixXcd(a * a.adjoint()) : Eigen::MatrixXcd(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  out.insert(out.end(), ev.data(), ev.data() + ev.size());
}

}  // namespace

BlockDistribution BlockWeights::reduced_spectrum(const DickeVector& psi) const {
  if (!(psi.sector() == sector_)) throw std::invalid_argument("state sector does not match block weights");
  const auto rows = static_cast<Eigen::Index>(cols());
  const auto rest = static_cast<Eigen::Index>(sector_.qubits() - block_size_ + 1);
  bool even = false;
  bool odd = false;
  for (std::size_t n = 0; n < psi.dim(); ++n)
    if (psi[n] != Complex{0.0, 0.0}) (n % 2 == 0 ? even : odd) = true;

  BlockDistribution dist{block_size_, {}};
  if (even != odd) {
    // Every Hamiltonian term preserves the parity of n, so states grown from
    // a Dicke state keep k + l fixed mod 2 and A A^+ splits into two blocks.
    const Eigen::Index parity = odd ? 1 : 0;
    gram_spectrum(psi, schmidt_, rows, rest, 0, parity, 2, dist.probabilities);
    gram_spectrum(psi, schmidt_, rows, rest, 1, 1 - parity, 2, dist.probabilities);
  } else {
    gram_spectrum(psi, schmidt_, rows, rest, 0, 0, 1, dist.probabilities);
  }
  std::sort(dist.probabilities.begin(), dist.probabilities.end(), std::greater<>());
  for (auto& p : dist.probabilities)
    if (p < 0.0) p = 0.0;
  return dist;
}

BlockDistribution BlockWeights::distribution_from_populations(const std::vector<double>& populations) const {
  if (populations.size() != sector_.dim())
    throw std::invalid_argument("population vector has wrong length");
  BlockDistribution dist{block_size_, std::vector<double>(cols())};
  kernels::active().gemv_t(w_.data(), sector_.dim(), cols(), populations.data(), dist.probabilities.data());
  for (auto& p : dist.probabilities)
    if (p < 0.0 && p >= -kClip) p = 0.0;
  return dist;
}

BlockDistribution BlockWeights::distribution(const DickeVector& psi) const {
  if (!(psi.sector() == sector_)) throw std::invalid_argument("state sector does not match block weights");
  return distribution_from_populations(psi.populations());
}

double excitation_fraction(const DickeVector& psi) {
  return 0.5 + expectation_jz(psi) / psi.sector().qubits();
}

double fidelity(const DickeVector& psi0, const DickeVector& psi_t) { return std::norm(inner_product(psi0, psi_t)); }

BlockDistribution block_probabilities(const DickeVector& psi, int block_size) {
  return BlockWeights(psi.sector(), block_size).distribution(psi);
}

BlockDistribution block_spectrum(const DickeVector& psi, int block_size) {
  return BlockWeights(psi.sector(), block_size).reduced_spectrum(psi);
}

double block_entropy(const BlockDistribution& dist) {
  double s = 0.0;
  for (double p : dist.probabilities)
    if (p > kNegligible) s -= p * std::log2(p);
  return s;
}

double block_linear_entropy(const BlockDistribution& dist) {
  double s = 0.0;
  for (double p : dist.probabilities) s += p * p;
  return 1.0 - s;
}

double purity(const DickeVector& psi) {
  const double n2 = psi.norm_squared();
  return n2 * n2;
}

}  // namespace qbrain
