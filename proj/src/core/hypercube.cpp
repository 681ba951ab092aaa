#include "polyskel/hypercube.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace polyskel {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("dimension must lie in [1, 63], got " + std::to_string(dim));
  }
}

std::vector<Vertex> to_vertices(const std::vector<std::uint64_t>& masks, int dim) {
  std::vector<Vertex> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(m, dim);
  return out;
}

}  // namespace

Vertex::Vertex(std::uint64_t bits, int dim) : bits_(bits), dim_(dim) {
  check_dim(dim);
  if ((bits & ~low_mask(dim)) != 0) {
    throw std::invalid_argument("vertex has bits set beyond dimension " + std::to_string(dim));
  }
}

Vertex Vertex::unit(int coord, int dim) {
  check_dim(dim);
  if (coord < 1 || coord > dim) throw std::out_of_range("coordinate out of range");
  return Vertex(std::uint64_t{1} << (coord - 1), dim);
}

Vertex Vertex::parse(std::string_view coords) {
  const int dim = static_cast<int>(coords.size());
  check_dim(dim);
  std::uint64_t bits = 0;
  for (int i = 0; i < dim; ++i) {
    if (coords[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (coords[i] != '0') {
      throw std::invalid_argument("vertex string must be over {0,1}");
    }
  }
  return Vertex(bits, dim);
}

std::string Vertex::to_string() const {
  std::string s(static_cast<std::size_t>(dim_), '0');
  for (int i = 0; i < dim_; ++i) {
    if ((bits_ >> i) & 1U) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

IndexSet::IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1 || (i > 0 && indices_[i] <= indices_[i - 1])) {
      throw std::invalid_argument("index set must be strictly increasing and 1-based");
    }
  }
}

void require_same_dim(const Vertex& a, const Vertex& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

int hamming(const Vertex& x, const Vertex& y) {
  require_same_dim(x, y);
  return std::popcount(x.bits() ^ y.bits());
}

Vertex xor_vertices(const Vertex& x, const Vertex& y) {
  require_same_dim(x, y);
  return Vertex(x.bits() ^ y.bits(), x.dim());
}

IndexSet support(const Vertex& x) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(x.weight()));
  for (std::uint64_t b = x.bits(); b != 0; b &= b - 1) idx.push_back(std::countr_zero(b) + 1);
  return IndexSet(std::move(idx));
}

std::vector<Vertex> cube_points(const Vertex& x, const Vertex& y) {
  require_same_dim(x, y);
  const std::uint64_t diff = x.bits() ^ y.bits();
  const std::uint64_t base = x.bits() & ~diff;
  std::vector<Vertex> out;
  out.reserve(std::size_t{1} << std::popcount(diff));
  std::uint64_t sub = 0;
  do {
    out.emplace_back(base | sub, x.dim());
    sub = (sub - diff) & diff;
  } while (sub != 0);
  return out;
}

std::vector<Vertex> sphere(const Vertex& x, int r) {
  if (r < 0 || r > x.dim()) throw std::out_of_range("sphere radius out of range");
  std::vector<std::uint64_t> masks;
  masks.reserve(binomial(x.dim(), r));
  for_each_weight_submask(low_mask(x.dim()), r,
                          [&](std::uint64_t m) { masks.push_back(x.bits() ^ m); });
  std::sort(masks.begin(), masks.end());
  return to_vertices(masks, x.dim());
}

std::vector<Vertex> ball(const Vertex& x, int r) {
  if (r < 0 || r > x.dim()) throw std::out_of_range("ball radius out of range");
  std::vector<std::uint64_t> masks;
  for (int j = 0; j <= r; ++j) {
    for_each_weight_submask(low_mask(x.dim()), j,
                            [&](std::uint64_t m) { masks.push_back(x.bits() ^ m); });
  }
  std::sort(masks.begin(), masks.end());
  return to_vertices(masks, x.dim());
}

Vertex project(const Vertex& x, int d) {
  if (d < 0 || d >= x.dim()) throw std::out_of_range("projection drops too many coordinates");
  const int keep = x.dim() - d;
  return Vertex(x.bits() & low_mask(keep), keep);
}

bool avoids(const Vertex& x, const Vertex& y, const Vertex& x2, const Vertex& y2) {
  require_same_dim(x, y);
  require_same_dim(x2, y2);
  require_same_dim(x, x2);
  return ((x.bits() ^ y.bits()) & (x2.bits() ^ y2.bits())) == 0;
}

std::vector<std::vector<std::pair<int, int>>> grid_partition(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (m > n) throw std::invalid_argument("grid partition needs m <= n");
  std::vector<std::vector<std::pair<int, int>>> classes(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    auto& cls = classes[static_cast<std::size_t>(i - 1)];
    cls.reserve(static_cast<std::size_t>(m));
    for (int a = 1; a <= m; ++a) cls.emplace_back(a, ((a + i - 2) % n) + 1);
  }
  return classes;
}

std::uint64_t binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> t{};
    for (int i = 0; i <= 64; ++i) {
      t[i][0] = 1;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j < i ? t[i - 1][j] : 0);
    }
    return t;
  }();
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 64) throw std::out_of_range("binomial table covers n <= 64");
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

std::uint64_t deposit_bits(std::uint64_t bits, std::uint64_t mask) noexcept {
  std::uint64_t out = 0;
  for (; mask != 0 && bits != 0; mask &= mask - 1, bits >>= 1) {
    if (bits & 1U) out |= mask & (~mask + 1);
  }
  return out;
}

std::vector<std::uint64_t> weight_submasks(std::uint64_t within, int k) {
  std::vector<std::uint64_t> out;
  for_each_weight_submask(within, k, [&](std::uint64_t m) { out.push_back(m); });
  return out;
}

bool coordinate_lex_less(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const std::uint64_t first = diff & (~diff + 1);
  return (a & first) == 0;
}

}  // namespace polyskel
