// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "qbrain/collective_spin.hpp"
#include "support.hpp"

namespace qbrain {
namespace {

TEST(SpinSector, DimensionAndSpin) {
  const SpinSector s(80);
  EXPECT_EQ(s.dim(), 81u);
  EXPECT_EQ(s.twice_j(), 80);
  EXPECT_DOUBLE_EQ(s.j(), 40.0);
  EXPECT_DOUBLE_EQ(SpinSector(1).j(), 0.5);
  EXPECT_THROW(SpinSector(0), std::domain_error);
}

TEST(DickeState, BasisVectors) {
  const auto psi = dicke_state(SpinSector(2), 0);
  EXPECT_EQ(psi[0], Complex(1.0, 0.0));
  EXPECT_EQ(psi[1], Complex(0.0, 0.0));
  EXPECT_EQ(psi[2], Complex(0.0, 0.0));

  const auto half = dicke_state(SpinSector(80), 39);
  for (std::size_t n = 0; n < half.dim(); ++n) EXPECT_EQ(std::abs(half[n]), n == 39 ? 1.0 : 0.0);
}

TEST(DickeState, RejectsOutOfRange) {
  try {
    dicke_state(SpinSector(4), 5);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("[0, 4]"), std::string::npos);
  }
  EXPECT_THROW(dicke_state(SpinSector(4), -1), std::domain_error);
}

TEST(DickeState, FractionRoundsHalfUp) {
  const SpinSector s(40);
  EXPECT_EQ(excitation_count_for_fraction(s, 1.0), 40);
  EXPECT_EQ(excitation_count_for_fraction(s, 0.53), 21);
  EXPECT_EQ(excitation_count_for_fraction(s, 0.8), 32);
  EXPECT_EQ(excitation_count_for_fraction(s, 0.6), 24);
  EXPECT_EQ(excitation_count_for_fraction(s, 0.0), 0);
  // 0.5 * 5 = 2.5 rounds up.
  EXPECT_EQ(excitation_count_for_fraction(SpinSector(5), 0.5), 3);
  EXPECT_THROW(dicke_state_fraction(s, 1.01), std::domain_error);
  EXPECT_THROW(dicke_state_fraction(s, -0.1), std::domain_error);
}

TEST(MValues, IndexOrder) {
  EXPECT_EQ(m_values(SpinSector(2)), (std::vector<double>{-1.0, 0.0, 1.0}));
  EXPECT_EQ(m_values(SpinSector(1)), (std::vector<double>{-0.5, 0.5}));
  EXPECT_DOUBLE_EQ(m_values(SpinSector(4))[3], 1.0);
}

TEST(Ladder, KnownValues) {
  EXPECT_DOUBLE_EQ(ladder_plus_coeff(1.0, -1.0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(ladder_plus_coeff(1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(ladder_plus_coeff(40.0, 0.0), std::sqrt(1640.0));
  EXPECT_DOUBLE_EQ(ladder_minus_coeff(1.0, -1.0), 0.0);
  EXPECT_THROW(ladder_plus_coeff(1.0, 1.5), std::domain_error);
  EXPECT_THROW(ladder_minus_coeff(0.5, -1.0), std::domain_error);
}

TEST(Ladder, MirrorSymmetryProperty) {
  for (int twice_j = 1; twice_j <= 100; ++twice_j) {
    const double j = 0.5 * twice_j;
    for (int k = 0; k <= twice_j; ++k) {
      const double m = -j + k;
      EXPECT_DOUBLE_EQ(ladder_plus_coeff(j, m), ladder_minus_coeff(j, -m)) << "j=" << j << " m=" << m;
    }
  }
}

TEST(InnerProduct, Examples) {
  const SpinSector s(2);
  const auto a = dicke_state(s, 1);
  EXPECT_EQ(inner_product(a, a), Complex(1.0, 0.0));
  EXPECT_EQ(inner_product(a, dicke_state(s, 2)), Complex(0.0, 0.0));
  const double r = 1.0 / std::sqrt(2.0);
  const DickeVector u(s, {r, r, 0.0});
  const DickeVector v(s, {r, -r, 0.0});
  EXPECT_NEAR(std::abs(inner_product(u, v)), 0.0, 1e-16);
  EXPECT_THROW(inner_product(a, dicke_state(SpinSector(3), 1)), std::invalid_argument);
}

TEST(InnerProduct, SelfOverlapIsNormSquaredProperty) {
  test::Gen gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const SpinSector s(gen.integer(1, 60));
    DickeVector psi = gen.state(s);
    const double scale = gen.uniform(0.1, 3.0);
    for (std::size_t n = 0; n < psi.dim(); ++n) psi[n] *= scale;
    const Complex self = inner_product(psi, psi);
    EXPECT_EQ(self.imag(), 0.0);
    EXPECT_GE(self.real(), 0.0);
    EXPECT_NEAR(self.real(), psi.norm_squared(), 1e-12 * self.real());
  }
}

TEST(ExpectationJz, Examples) {
  EXPECT_DOUBLE_EQ(expectation_jz(dicke_state(SpinSector(4), 3)), 1.0);
  EXPECT_DOUBLE_EQ(expectation_jz(dicke_state(SpinSector(10), 5)), 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(expectation_jz(DickeVector(SpinSector(2), {r, 0.0, r})), 0.0, 1e-16);
}

TEST(ExpectationJz, DickeStatesExact) {
  for (int n_qubits = 1; n_qubits <= 100; ++n_qubits)
    for (int n = 0; n <= n_qubits; ++n)
      EXPECT_EQ(expectation_jz(dicke_state(SpinSector(n_qubits), n)), n - 0.5 * n_qubits);
}

TEST(ParityFlip, ReversesIndexAndIsInvolution) {
  test::Gen gen(12);
  const SpinSector s(9);
  const auto psi = gen.state(s);
  const auto flipped = parity_flip(psi);
  for (std::size_t n = 0; n < s.dim(); ++n) EXPECT_EQ(flipped[n], psi[s.dim() - 1 - n]);
  const auto back = parity_flip(flipped);
  for (std::size_t n = 0; n < s.dim(); ++n) EXPECT_EQ(back[n], psi[n]);
  EXPECT_NEAR(expectation_jz(flipped), -expectation_jz(psi), 1e-14);
}

TEST(DickeVector, RejectsWrongLength) {
  EXPECT_THROW(DickeVector(SpinSector(3), std::vector<Complex>(3)), std::invalid_argument);
}

}  // namespace
}  // namespace qbrain
