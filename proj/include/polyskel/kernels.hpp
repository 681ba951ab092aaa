#pragma once

// Dense-bitmap probe kernels.
//
// Every kernel tests bit (base ^ offset) of a packed bitmap (bit i lives in
// word i >> 5, position i & 31) for each offset in a list. This one primitive
// drives the cube-criterion scans, sphere membership counts and the Q_n^d BFS
// frontier. Callers guarantee base ^ offset < 32 * bitmap.size().
//
// A scalar reference and an AVX2 gather variant are compiled into every
// build; the variant is chosen once at startup from CPUID and can be pinned
// with force_isa() or the POLYSKEL_ISA environment variable (scalar|avx2).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace polyskel::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
/// Pins the dispatch; throws std::invalid_argument if the CPU lacks `isa`.
void force_isa(Isa isa);

using Bitmap = std::span<const std::uint32_t>;

inline bool test_bit(Bitmap bitmap, std::uint32_t i) noexcept {
  return (bitmap[i >> 5] >> (i & 31U)) & 1U;
}

std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
/// Index of the first offset that hits, or offsets.size().
std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
/// Appends base ^ offset for every hit, in offset order.
void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out);

// Direct access to each variant, for equivalence testing.
namespace scalar {
std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out);
}  // namespace scalar

namespace avx2 {
std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets);
void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out);
}  // namespace avx2

}  // namespace polyskel::kernels
