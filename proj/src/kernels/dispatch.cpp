#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "polyskel/kernels.hpp"

namespace polyskel::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() noexcept {
  if (const char* env = std::getenv("POLYSKEL_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
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

bool isa_available(Isa isa) noexcept { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("instruction set not available: " + std::string(isa_name(isa)));
  }
  current().store(isa, std::memory_order_relaxed);
}

std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  return active_isa() == Isa::avx2 ? avx2::count_xor_hits(bitmap, base, offsets)
                                   : scalar::count_xor_hits(bitmap, base, offsets);
}

std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  return active_isa() == Isa::avx2 ? avx2::first_xor_hit(bitmap, base, offsets)
                                   : scalar::first_xor_hit(bitmap, base, offsets);
}

void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out) {
  if (active_isa() == Isa::avx2) {
    avx2::select_xor_hits(bitmap, base, offsets, out);
  } else {
    scalar::select_xor_hits(bitmap, base, offsets, out);
  }
}

}  // namespace polyskel::kernels
