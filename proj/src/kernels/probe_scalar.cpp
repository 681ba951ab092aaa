#include "polyskel/kernels.hpp"

namespace polyskel::kernels::scalar {

std::size_t count_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  std::size_t hits = 0;
  for (auto off : offsets) hits += test_bit(bitmap, base ^ off);
  return hits;
}

std::size_t first_xor_hit(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets) {
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (test_bit(bitmap, base ^ offsets[i])) return i;
  }
  return offsets.size();
}

void select_xor_hits(Bitmap bitmap, std::uint32_t base, std::span<const std::uint32_t> offsets,
                     std::vector<std::uint32_t>& out) {
  for (auto off : offsets) {
    const std::uint32_t v = base ^ off;
    if (test_bit(bitmap, v)) out.push_back(v);
  }
}

}  // namespace polyskel::kernels::scalar
