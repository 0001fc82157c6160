// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <vector>

#include "qbrain/dynamics.hpp"
#include "qbrain/kernels.hpp"
#include "support.hpp"

namespace qbrain::kernels {
namespace {

std::vector<double> random_vec(test::Gen& gen, std::size_t len) {
  std::vector<double> v(len);
  for (auto& x : v) x = gen.normal();
  return v;
}

void expect_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol * std::max(1.0, std::abs(a[i]))) << i;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!isa_supported(Isa::avx2)) GTEST_SKIP() << "AVX2 not available on this host";
    simd = avx2_table();
  }
  const KernelTable& ref = scalar_table();
  const KernelTable* simd = nullptr;
};

TEST_F(KernelEquivalence, BandedOperators) {
  test::Gen gen(51);
  for (int n = 1; n <= 90; ++n) {
    const auto parts = build_parts(SpinSector(n), {1.0, gen.uniform(-1, 1), 0.0});
    const auto op = parts.view();
    const std::size_t len = 2 * op.dim;
    const auto x = random_vec(gen, len);
    const double a = gen.normal(), b = gen.normal(), c = gen.normal();
    std::vector<double> y0(len), y1(len);
    ref.banded_rhs(op, a, b, c, x.data(), y0.data());
    simd->banded_rhs(op, a, b, c, x.data(), y1.data());
    expect_close(y0, y1, 1e-13);
    ref.banded_apply(op, a, b, c, x.data(), y0.data());
    simd->banded_apply(op, a, b, c, x.data(), y1.data());
    expect_close(y0, y1, 1e-13);
  }
}

TEST_F(KernelEquivalence, VectorKernels) {
  test::Gen gen(52);
  for (std::size_t len = 1; len <= 70; ++len) {
    const auto x = random_vec(gen, len), y = random_vec(gen, len), w = random_vec(gen, len);
    const auto k2 = random_vec(gen, len), k3 = random_vec(gen, len), k4 = random_vec(gen, len);
    std::vector<double> o0(len), o1(len);
    ref.axpy(0.37, x.data(), y.data(), o0.data(), len);
    simd->axpy(0.37, x.data(), y.data(), o1.data(), len);
    expect_close(o0, o1, 1e-15);
    ref.rk4_combine(y.data(), x.data(), k2.data(), k3.data(), k4.data(), 0.01, o0.data(), len);
    simd->rk4_combine(y.data(), x.data(), k2.data(), k3.data(), k4.data(), 0.01, o1.data(), len);
    expect_close(o0, o1, 1e-15);
    double s0, s1, m0, m1;
    ref.moments(x.data(), w.data(), len, &s0, &m0);
    simd->moments(x.data(), w.data(), len, &s1, &m1);
    EXPECT_NEAR(s0, s1, 1e-13 * s0);
    EXPECT_NEAR(m0, m1, 1e-12 * std::max(1.0, std::abs(m0)));
  }
}

TEST_F(KernelEquivalence, InPlaceCombine) {
  test::Gen gen(53);
  const std::size_t len = 37;
  const auto k1 = random_vec(gen, len), k2 = random_vec(gen, len), k3 = random_vec(gen, len), k4 = random_vec(gen, len);
  auto y0 = random_vec(gen, len);
  auto y1 = y0;
  ref.rk4_combine(y0.data(), k1.data(), k2.data(), k3.data(), k4.data(), 0.1, y0.data(), len);
  simd->rk4_combine(y1.data(), k1.data(), k2.data(), k3.data(), k4.data(), 0.1, y1.data(), len);
  expect_close(y0, y1, 1e-15);
}

TEST_F(KernelEquivalence, TransposedGemv) {
  test::Gen gen(54);
  for (std::size_t rows = 1; rows <= 40; rows += 3)
    for (std::size_t cols = 1; cols <= 23; cols += 2) {
      const auto m = random_vec(gen, rows * cols);
      const auto v = random_vec(gen, rows);
      std::vector<double> o0(cols), o1(cols);
      ref.gemv_t(m.data(), rows, cols, v.data(), o0.data());
      simd->gemv_t(m.data(), rows, cols, v.data(), o1.data());
      expect_close(o0, o1, 1e-13);
    }
}

// Whole trajectories agree across ISAs.
TEST_F(KernelEquivalence, SimulationAgrees) {
  SimulationConfig c;
  c.N = 41;
  c.lmg = {0.5, 0.8, 0.0};
  c.plasticity.tau_r = 2.0;
  c.plasticity.tau_f = 5.0;
  c.initial = InitialCondition::excitations(41);
  c.t_max = 20.0;
  set_active_isa(Isa::scalar);
  const auto a = simulate(c);
  set_active_isa(Isa::avx2);
  const auto b = simulate(c);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_NEAR(a.records[i].E, b.records[i].E, 1e-11);
    EXPECT_NEAR(a.records[i].r, b.records[i].r, 1e-11);
    EXPECT_NEAR(a.records[i].S_block, b.records[i].S_block, 1e-9);
  }
}

TEST(Dispatch, ParseAndSelect) {
  EXPECT_EQ(parse_isa("scalar"), Isa::scalar);
  EXPECT_EQ(isa_name(Isa::avx2), "avx2");
  EXPECT_THROW(parse_isa("sse9"), std::invalid_argument);
  const Isa before = active_isa();
  set_active_isa(Isa::scalar);
  EXPECT_EQ(active().isa, Isa::scalar);
  if (isa_supported(before)) set_active_isa(before);
  EXPECT_TRUE(isa_supported(Isa::scalar));
}

}  // namespace
}  // namespace qbrain::kernels
