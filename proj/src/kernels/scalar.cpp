// SPDX-License-Identifier: Apache-2.0
#include "banded_common.hpp"

namespace qbrain::kernels {
namespace {

void banded_apply_scalar(const BandedView& op, double a, double b, double c, const double* x, double* out) {
  for (std::size_t n = 0; n < op.dim; ++n) detail::banded_row(op, a, b, c, x, n, out + 2 * n);
}

void banded_rhs_scalar(const BandedView& op, double a, double b, double c, const double* x, double* out) {
  double h[2];
  for (std::size_t n = 0; n < op.dim; ++n) {
    detail::banded_row(op, a, b, c, x, n, h);
    out[2 * n] = h[1];
    out[2 * n + 1] = -h[0];
  }
}

void axpy_scalar(double alpha, const double* x, const double* y, double* out, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = y[i] + alpha * x[i];
}

void rk4_combine_scalar(const double* y, const double* k1, const double* k2, const double* k3, const double* k4,
                        double h, double* out, std::size_t len) {
  const double s = h / 6.0;
  for (std::size_t i = 0; i < len; ++i) out[i] = y[i] + s * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void moments_scalar(const double* x, const double* w, std::size_t len, double* sum_sq, double* weighted) {
  double s = 0.0;
  double ws = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double q = x[i] * x[i];
    s += q;
    ws += w[i] * q;
  }
  *sum_sq = s;
  *weighted = ws;
}

void gemv_t_scalar(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out) {
  for (std::size_t k = 0; k < cols; ++k) out[k] = 0.0;
  for (std::size_t n = 0; n < rows; ++n) {
    const double vn = v[n];
    if (vn == 0.0) continue;
    const double* row = m + n * cols;
    for (std::size_t k = 0; k < cols; ++k) out[k] += vn * row[k];
  }
}

constexpr KernelTable kScalar{Isa::scalar,     banded_rhs_scalar, banded_apply_scalar, axpy_scalar,
                              rk4_combine_scalar, moments_scalar,  gemv_t_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace qbrain::kernels
