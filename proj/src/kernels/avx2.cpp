// SPDX-License-Identifier: Apache-2.0
// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has checked the CPU bits.

#include "banded_common.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace qbrain::kernels {
namespace {

// (re, im) -> (im, -re), i.e. multiplication by -i, for two complex numbers.
inline __m256d mul_minus_i(__m256d h) noexcept {
  const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  return _mm256_xor_pd(_mm256_permute_pd(h, 0b0101), sign);
}

// Rows n, n+1 of (a K + b M + c) x with 2 <= n and n + 3 < dim.
inline __m256d banded_pair(const BandedView& op, __m256d va, __m256d vb, __m256d vc, const double* x,
                           std::size_t n) noexcept {
  const std::size_t i = 2 * n;
  __m256d d = _mm256_fmadd_pd(va, _mm256_loadu_pd(op.diag + i), vc);
  d = _mm256_fmadd_pd(vb, _mm256_loadu_pd(op.field + i), d);
  __m256d h = _mm256_mul_pd(d, _mm256_loadu_pd(x + i));
  const __m256d up = _mm256_mul_pd(va, _mm256_loadu_pd(op.upper + i));
  h = _mm256_fmadd_pd(up, _mm256_loadu_pd(x + i + 4), h);
  const __m256d lo = _mm256_mul_pd(va, _mm256_loadu_pd(op.upper + i - 4));
  h = _mm256_fmadd_pd(lo, _mm256_loadu_pd(x + i - 4), h);
  return h;
}

template <bool MinusI>
void banded_avx2(const BandedView& op, double a, double b, double c, const double* x, double* out) {
  const std::size_t dim = op.dim;
  auto edge = [&](std::size_t n) {
    double h[2];
    detail::banded_row(op, a, b, c, x, n, h);
    if constexpr (MinusI) {
      out[2 * n] = h[1];
      out[2 * n + 1] = -h[0];
    } else {
      out[2 * n] = h[0];
      out[2 * n + 1] = h[1];
    }
  };
  std::size_t n = 0;
  for (; n < dim && n < 2; ++n) edge(n);
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  for (; n + 3 < dim; n += 2) {
    __m256d h = banded_pair(op, va, vb, vc, x, n);
    if constexpr (MinusI) h = mul_minus_i(h);
    _mm256_storeu_pd(out + 2 * n, h);
  }
  for (; n < dim; ++n) edge(n);
}

void axpy_avx2(double alpha, const double* x, const double* y, double* out, std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4)
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < len; ++i) out[i] = y[i] + alpha * x[i];
}

void rk4_combine_avx2(const double* y, const double* k1, const double* k2, const double* k3, const double* k4,
                      double h, double* out, std::size_t len) {
  const double s = h / 6.0;
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(k2 + i), _mm256_loadu_pd(k3 + i));
    acc = _mm256_fmadd_pd(two, acc, _mm256_loadu_pd(k1 + i));
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(k4 + i));
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vs, acc, _mm256_loadu_pd(y + i)));
  }
  for (; i < len; ++i) out[i] = y[i] + s * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void moments_avx2(const double* x, const double* w, std::size_t len, double* sum_sq, double* weighted) {
  __m256d s = _mm256_setzero_pd();
  __m256d ws = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d q = _mm256_mul_pd(v, v);
    s = _mm256_add_pd(s, q);
    ws = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), q, ws);
  }
  double ss = hsum(s);
  double ww = hsum(ws);
  for (; i < len; ++i) {
    const double q = x[i] * x[i];
    ss += q;
    ww += w[i] * q;
  }
  *sum_sq = ss;
  *weighted = ww;
}

void gemv_t_avx2(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out) {
  for (std::size_t k = 0; k < cols; ++k) out[k] = 0.0;
  for (std::size_t n = 0; n < rows; ++n) {
    const double vn = v[n];
    if (vn == 0.0) continue;
    const double* row = m + n * cols;
    const __m256d vv = _mm256_set1_pd(vn);
    std::size_t k = 0;
    for (; k + 4 <= cols; k += 4)
      _mm256_storeu_pd(out + k, _mm256_fmadd_pd(vv, _mm256_loadu_pd(row + k), _mm256_loadu_pd(out + k)));
    for (; k < cols; ++k) out[k] += vn * row[k];
  }
}

constexpr KernelTable kAvx2{Isa::avx2,       banded_avx2<true>, banded_avx2<false>, axpy_avx2,
                            rk4_combine_avx2, moments_avx2,      gemv_t_avx2};

}  // namespace

const KernelTable* avx2_table() noexcept { return &kAvx2; }

}  // namespace qbrain::kernels

#else

namespace qbrain::kernels {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace qbrain::kernels

#endif
