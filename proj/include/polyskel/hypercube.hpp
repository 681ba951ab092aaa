#pragma once

// Bit-level combinatorics on the Boolean cube {0,1}^n.
//
// Coordinate i (1-based) lives in bit i-1 of the mask. The textual form of a
// vertex lists coordinates left to right, so "011" (n = 3) has coordinates 2
// and 3 set, i.e. mask 0b110. Every enumeration below returns vertices in
// ascending mask order.

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyskel/errors.hpp"

namespace polyskel {

inline constexpr int kMaxDim = 63;

constexpr std::uint64_t low_mask(int n) noexcept {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A point of {0,1}^n.
class Vertex {
 public:
  Vertex(std::uint64_t bits, int dim);

  static Vertex zeros(int dim) { return Vertex(0, dim); }
  /// e_i for a 1-based coordinate i.
  static Vertex unit(int coord, int dim);
  /// Parses the coordinate string form ("10110").
  static Vertex parse(std::string_view coords);

  std::uint64_t bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }
  int weight() const noexcept { return std::popcount(bits_); }
  bool coordinate(int i) const noexcept { return (bits_ >> (i - 1)) & 1U; }

  std::string to_string() const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_;
  int dim_;
};

/// Sorted, strictly increasing list of 1-based coordinates.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<int> indices);

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<int> indices_;
};

void require_same_dim(const Vertex& a, const Vertex& b);

int hamming(const Vertex& x, const Vertex& y);
Vertex xor_vertices(const Vertex& x, const Vertex& y);
inline Vertex operator^(const Vertex& x, const Vertex& y) { return xor_vertices(x, y); }
IndexSet support(const Vertex& x);

/// Points of the smallest subcube containing x and y.
std::vector<Vertex> cube_points(const Vertex& x, const Vertex& y);
std::vector<Vertex> sphere(const Vertex& x, int r);
std::vector<Vertex> ball(const Vertex& x, int r);

/// Keeps the first n-d coordinates.
Vertex project(const Vertex& x, int d);

/// True iff supp(x^y) and supp(x2^y2) are disjoint.
bool avoids(const Vertex& x, const Vertex& y, const Vertex& x2, const Vertex& y2);

/// Partition of [m] x [n] into n classes of m cells each, no two cells of a
/// class sharing a row or a column. Class i (1-based) holds
/// (a, ((a + i - 2) mod n) + 1) for a = 1..m.
std::vector<std::vector<std::pair<int, int>>> grid_partition(int m, int n);

// -- raw-mask helpers used by the hot loops ---------------------------------

/// Binomial coefficient; exact for n <= 64.
std::uint64_t binomial(int n, int k);

/// Scatters the low bits of `bits` onto the set positions of `mask` (pdep).
std::uint64_t deposit_bits(std::uint64_t bits, std::uint64_t mask) noexcept;

/// Next larger integer with the same popcount (Gosper's hack); 0 on overflow
/// past bit 63.
constexpr std::uint64_t next_same_weight(std::uint64_t x) noexcept {
  const std::uint64_t u = x & (~x + 1);
  const std::uint64_t v = x + u;
  if (v == 0) return 0;
  return v + (((v ^ x) / u) >> 2);
}

/// Calls f(mask) for every weight-k submask of `within`, in ascending order of
/// the compressed index (which is ascending mask order).
template <typename F>
void for_each_weight_submask(std::uint64_t within, int k, F&& f) {
  const int width = std::popcount(within);
  if (k < 0 || k > width) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = low_mask(width);
  for (std::uint64_t c = low_mask(k); c != 0 && c <= limit; c = next_same_weight(c)) {
    f(deposit_bits(c, within));
  }
}

/// All weight-k masks inside `within`, ascending.
std::vector<std::uint64_t> weight_submasks(std::uint64_t within, int k);

/// Coordinate-string order: compares coordinate 1 first.
bool coordinate_lex_less(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace polyskel
