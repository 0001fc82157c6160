// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops of the integrator and the observables.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once at runtime from the CPU
// feature bits and can be overridden (tests pin each ISA in turn and check
// the variants against the reference).
//
// Complex vectors are passed as interleaved (re, im) doubles, which is the
// layout of std::complex<double> arrays. Per-index real coefficients that
// multiply complex entries are stored "duplicated" (c0, c0, c1, c1, ...) so
// both lanes of a complex number see the same factor.

#include <cstddef>
#include <span>
#include <string_view>

namespace qbrain::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Real pentadiagonal operator with bands at offsets {0, +-2} plus a
/// diagonal field term, in duplicated layout (all spans have length 2*dim).
/// `upper[2n]` holds K[n, n+2]; its last four entries must be zero.
struct BandedView {
  const double* diag = nullptr;
  const double* upper = nullptr;
  const double* field = nullptr;
  std::size_t dim = 0;
};

struct KernelTable {
  Isa isa;
  // out = -i (a K + b M + c) x
  void (*banded_rhs)(const BandedView& op, double a, double b, double c, const double* x, double* out);
  // y = (a K + b M + c) x, no -i factor
  void (*banded_apply)(const BandedView& op, double a, double b, double c, const double* x, double* out);
  // out = y + alpha * x
  void (*axpy)(double alpha, const double* x, const double* y, double* out, std::size_t len);
  // out = y + h/6 (k1 + 2 k2 + 2 k3 + k4)
  void (*rk4_combine)(const double* y, const double* k1, const double* k2, const double* k3, const double* k4,
                      double h, double* out, std::size_t len);
  // sum x_i^2 and sum w_i x_i^2
  void (*moments)(const double* x, const double* w, std::size_t len, double* sum_sq, double* weighted);
  // out[k] = sum_n v[n] * m[n * cols + k]
  void (*gemv_t)(const double* m, std::size_t rows, std::size_t cols, const double* v, double* out);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in.
const KernelTable* avx2_table() noexcept;

bool isa_supported(Isa isa) noexcept;

/// Kernels currently in use; initialised to the best supported ISA.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;

/// Throws std::invalid_argument if the ISA is not supported on this host.
void set_active_isa(Isa isa);

/// Parses "scalar", "avx2" or "auto".
Isa parse_isa(std::string_view name);

}  // namespace qbrain::kernels
