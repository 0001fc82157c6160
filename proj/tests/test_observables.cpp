// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qbrain/full_space.hpp"
#include "qbrain/observables.hpp"
#include "support.hpp"

namespace qbrain {
namespace {

double entropy_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log2(v);
  return s;
}

TEST(ExcitationFraction, Examples) {
  EXPECT_DOUBLE_EQ(excitation_fraction(dicke_state(SpinSector(10), 0)), 0.0);
  EXPECT_DOUBLE_EQ(excitation_fraction(dicke_state(SpinSector(10), 10)), 1.0);
  EXPECT_DOUBLE_EQ(excitation_fraction(dicke_state(SpinSector(10), 3)), 0.3);
  const double r = 1.0 / std::sqrt(2.0);
  DickeVector cat(SpinSector(6));
  cat[0] = r;
  cat[6] = r;
  EXPECT_NEAR(excitation_fraction(cat), 0.5, 1e-15);
}

TEST(Fidelity, Examples) {
  const SpinSector s(5);
  const auto psi = test::Gen(31).state(s);
  EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-14);
  EXPECT_EQ(fidelity(dicke_state(s, 1), dicke_state(s, 2)), 0.0);
  EXPECT_THROW(fidelity(psi, dicke_state(SpinSector(4), 0)), std::invalid_argument);
}

TEST(BlockProbabilities, Examples) {
  const auto p = block_probabilities(dicke_state(SpinSector(2), 1), 1);
  ASSERT_EQ(p.probabilities.size(), 2u);
  EXPECT_NEAR(p.probabilities[0], 0.5, 1e-15);
  EXPECT_NEAR(p.probabilities[1], 0.5, 1e-15);

  for (int n : {3, 17, 80})
    for (int l = 1; l < n; l += 7) {
      const auto q = block_probabilities(dicke_state(SpinSector(n), 0), l);
      EXPECT_NEAR(q.probabilities[0], 1.0, 1e-14);
      for (std::size_t k = 1; k < q.probabilities.size(); ++k) EXPECT_NEAR(q.probabilities[k], 0.0, 1e-300);
    }
  EXPECT_THROW(block_probabilities(dicke_state(SpinSector(4), 0), 0), std::invalid_argument);
  EXPECT_THROW(block_probabilities(dicke_state(SpinSector(4), 0), 4), std::invalid_argument);
}

// Frozen from an independent summation in long double over the hypergeometric
// formula; exact rationals give 3.2166 to four places.
TEST(BlockProbabilities, HalfExcitedEightyQubits) {
  const int n = 80, l = 40, c = 39;
  std::vector<long double> p(l + 1);
  auto lc = [](int a, int b) { return std::lgamma(a + 1.0L) - std::lgamma(b + 1.0L) - std::lgamma(a - b + 1.0L); };
  for (int k = 0; k <= l; ++k)
    if (c - k >= 0 && c - k <= n - l) p[static_cast<std::size_t>(k)] = std::exp(lc(l, k) + lc(n - l, c - k) - lc(n, c));
  long double oracle = 0.0L;
  for (auto v : p)
    if (v > 0) oracle -= v * std::log2(v);

  const auto dist = block_probabilities(dicke_state(SpinSector(n), c), l);
  const double s = block_entropy(dist);
  EXPECT_NEAR(s, static_cast<double>(oracle), 1e-12);
  EXPECT_NEAR(s, 3.2167, 5e-4);
  EXPECT_GT(s, 3.2);
  EXPECT_LT(s, 3.3);
}

TEST(BlockEntropy, Examples) {
  EXPECT_EQ(block_entropy({2, {1.0, 0.0, 0.0}}), 0.0);
  EXPECT_DOUBLE_EQ(block_entropy({1, {0.5, 0.5}}), 1.0);
  EXPECT_DOUBLE_EQ(block_entropy({3, {0.25, 0.25, 0.25, 0.25}}), 2.0);
  EXPECT_EQ(block_linear_entropy({2, {1.0, 0.0, 0.0}}), 0.0);
  EXPECT_DOUBLE_EQ(block_linear_entropy({1, {0.5, 0.5}}), 0.5);
}

TEST(LogBinomial, Values) {
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-13);
  EXPECT_EQ(log_binomial(5, 6), -INFINITY);
  EXPECT_EQ(log_binomial(5, -1), -INFINITY);
  EXPECT_NEAR(log_binomial(100, 50), std::log(1.0089134454556419e29), 1e-12);
}

TEST(Purity, PureStatesHaveUnitPurity) {
  EXPECT_NEAR(purity(test::Gen(32).state(SpinSector(9))), 1.0, 1e-14);
}

// Oracle: explicit partial trace in the 2^N space of the embedded state.
TEST(BlockSpectrum, MatchesFullPartialTraceProperty) {
  test::Gen gen(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(2, 8);
    const int l = gen.integer(1, n - 1);
    const SpinSector s(n);
    const auto psi = trial % 3 == 0 ? gen.parity_state(s, trial % 2) : gen.state(s);
    full::StateVector embedded(std::size_t{1} << n);
    for (int k = 0; k <= n; ++k) {
      const auto d = full::dicke_state(n, k);
      for (std::size_t i = 0; i < d.size(); ++i) embedded[i] += psi[static_cast<std::size_t>(k)] * d[i];
    }
    auto want = full::reduced_block_spectrum(n, embedded, l);
    std::sort(want.rbegin(), want.rend());
    const auto got = block_spectrum(psi, l);
    ASSERT_LE(got.probabilities.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      const double g = i < got.probabilities.size() ? got.probabilities[i] : 0.0;
      EXPECT_NEAR(g, want[i], 1e-12) << "N=" << n << " L=" << l << " i=" << i;
    }
    EXPECT_NEAR(block_entropy(got), entropy_bits(want), 1e-9);
  }
}

TEST(BlockSpectrum, DickeStatesHaveDiagonalReducedState) {
  for (int n : {2, 9, 40, 80})
    for (int c = 0; c <= n; c += std::max(1, n / 7)) {
      const int l = n / 2;
      auto diag = block_probabilities(dicke_state(SpinSector(n), c), l).probabilities;
      std::sort(diag.rbegin(), diag.rend());
      const auto spec = block_spectrum(dicke_state(SpinSector(n), c), l).probabilities;
      for (std::size_t i = 0; i < spec.size(); ++i) EXPECT_NEAR(spec[i], diag[i], 1e-13);
    }
}

TEST(BlockSpectrum, ComplementHasSameSpectrumProperty) {
  test::Gen gen(34);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.integer(2, 60);
    const int l = gen.integer(1, n - 1);
    const auto psi = gen.state(SpinSector(n));
    const auto a = block_spectrum(psi, l).probabilities;
    const auto b = block_spectrum(psi, n - l).probabilities;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(BlockSpectrum, BoundsProperty) {
  test::Gen gen(35);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = gen.integer(2, 80);
    const int l = gen.integer(1, n - 1);
    const auto dist = block_spectrum(gen.state(SpinSector(n)), l);
    const double total = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (double p : dist.probabilities) EXPECT_GE(p, 0.0);
    const double s = block_entropy(dist);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, std::log2(std::min(l, n - l) + 1.0) + 1e-12);
    const double lin = block_linear_entropy(dist);
    EXPECT_GE(lin, 0.0);
    EXPECT_LE(lin, 1.0 - 1.0 / (std::min(l, n - l) + 1.0) + 1e-12);
  }
}

// A superposition has coherences the diagonal misses: its spectrum is more
// concentrated, so the diagonal entropy is an upper bound.
TEST(BlockSpectrum, DiagonalEntropyIsAnUpperBoundProperty) {
  test::Gen gen(36);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(2, 40);
    const auto psi = gen.state(SpinSector(n));
    EXPECT_LE(block_entropy(block_spectrum(psi, n / 2)), block_entropy(block_probabilities(psi, n / 2)) + 1e-12);
  }
}

TEST(BlockWeights, RowsAreStochastic) {
  const BlockWeights w(SpinSector(30), 11);
  for (std::size_t n = 0; n <= 30; ++n) {
    double row = 0.0;
    for (std::size_t k = 0; k < w.cols(); ++k) row += w.weight(n, k);
    EXPECT_NEAR(row, 1.0, 1e-13);
  }
}

}  // namespace
}  // namespace qbrain
