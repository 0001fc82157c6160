// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <stdexcept>
#include <string>

#include "qbrain/kernels.hpp"

namespace qbrain::kernels {
namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* best_table() noexcept {
  if (avx2_table() != nullptr && cpu_has_avx2_fma()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{best_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return avx2_table() != nullptr && cpu_has_avx2_fma();
  }
  return false;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

Isa active_isa() noexcept { return active().isa; }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument("ISA '" + std::string(isa_name(isa)) + "' is not available");
  current().store(isa == Isa::avx2 ? avx2_table() : &scalar_table(), std::memory_order_release);
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "auto") return best_table()->isa;
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "' (expected scalar, avx2 or auto)");
}

}  // namespace qbrain::kernels
