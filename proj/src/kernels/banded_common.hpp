// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "qbrain/kernels.hpp"

namespace qbrain::kernels::detail {

// One complex row of (a K + b M + c) x, written to h[0..1].
inline void banded_row(const BandedView& op, double a, double b, double c, const double* x, std::size_t n,
                       double* h) noexcept {
  const std::size_t i = 2 * n;
  const double d = a * op.diag[i] + b * op.field[i] + c;
  double re = d * x[i];
  double im = d * x[i + 1];
  if (n + 2 < op.dim) {
    re += a * op.upper[i] * x[i + 4];
    im += a * op.upper[i] * x[i + 5];
  }
  if (n >= 2) {
    re += a * op.upper[i - 4] * x[i - 4];
    im += a * op.upper[i - 4] * x[i - 3];
  }
  h[0] = re;
  h[1] = im;
}

}  // namespace qbrain::kernels::detail
