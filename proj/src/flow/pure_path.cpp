#include "polyskel/pure_path.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyskel {

std::vector<Vertex> PurePath::vertices() const {
  std::vector<Vertex> out;
  out.reserve(masks.size());
  for (auto m : masks) out.emplace_back(m, n);
  return out;
}

std::array<std::uint64_t, 3> split_thirds(std::uint64_t diff) {
  const int w = std::popcount(diff);
  if (w % 3 != 0) throw std::invalid_argument("pure path difference weight must be a multiple of 3");
  const int d = w / 3;
  std::array<std::uint64_t, 3> parts{};
  int seen = 0;
  for (std::uint64_t m = diff; m != 0; m &= m - 1) {
    parts[static_cast<std::size_t>(seen++ / d)] |= m & (~m + 1);
  }
  return parts;
}

PurePath make_pure_path(int n, std::uint64_t x, std::uint64_t y, std::uint64_t t, std::uint64_t u) {
  const std::uint64_t diff = x ^ y;
  const int d = std::popcount(diff) / 3;
  if (d == 0 || std::popcount(diff) != 3 * d) throw std::invalid_argument("pure path endpoints must be 3d apart");
  if (std::popcount(t) != d || std::popcount(u) != d) throw std::invalid_argument("pure path detours must have weight d");
  if ((t & u) != 0 || (t & diff) != 0 || (u & diff) != 0) {
    throw std::invalid_argument("pure path detours must be disjoint from each other and from x ^ y");
  }
  if (((x | y | t | u) & ~low_mask(n)) != 0) throw std::invalid_argument("pure path exceeds the dimension");

  PurePath p;
  p.n = n;
  p.x = x;
  p.y = y;
  p.t = t;
  p.u = u;
  const auto thirds = split_thirds(diff);
  p.f1 = thirds[0];
  p.f2 = thirds[1];
  p.f3 = thirds[2];
  std::uint64_t cur = x;
  p.masks[0] = cur;
  const auto steps = p.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    cur ^= steps[i];
    p.masks[i + 1] = cur;
  }
  return p;
}

std::vector<PurePath> enumerate_pure_paths_masks(std::uint64_t x, std::uint64_t y, const SkeletonGraph& g) {
  if (g.tag().kind != MethodTag::Kind::cube_criterion) {
    throw std::invalid_argument("pure paths live in a cube-criterion graph");
  }
  const auto& vs = g.vertex_set();
  const int n = vs.dim();
  const int d = g.tag().d;
  const std::uint64_t diff = x ^ y;
  if (std::popcount(diff) != 3 * d) throw std::invalid_argument("pure path endpoints must be at distance 3d");

  std::vector<PurePath> out;
  if (5 * d > n) return out;
  const std::uint64_t outside = low_mask(n) & ~diff;
  const auto thirds = split_thirds(diff);
  for_each_weight_submask(outside, d, [&](std::uint64_t t) {
    // Prefix vertices x, x^t are shared by every u: check them once.
    if (!g.has_edge_masks(x, x ^ t)) return;
    for_each_weight_submask(outside & ~t, d, [&](std::uint64_t u) {
      const std::array<std::uint64_t, 7> steps{t, u, thirds[0], thirds[1], thirds[2], t, u};
      std::uint64_t cur = x ^ t;
      for (std::size_t i = 1; i < steps.size(); ++i) {
        if (!g.has_edge_masks(cur, cur ^ steps[i])) return;
        cur ^= steps[i];
      }
      out.push_back(make_pure_path(n, x, y, t, u));
    });
  });
  return out;
}

std::vector<PurePath> enumerate_pure_paths(const Vertex& x, const Vertex& y, const VertexSet& vs,
                                           const SkeletonGraph& g) {
  require_same_dim(x, y);
  if (!(g.vertex_set() == vs)) throw std::invalid_argument("graph is over a different vertex set");
  if (x.dim() != vs.dim()) throw DimensionMismatch(x.dim(), vs.dim());
  if (!vs.contains(x) || !vs.contains(y)) throw std::invalid_argument("pure path endpoints must be members of V");
  return enumerate_pure_paths_masks(x.bits(), y.bits(), g);
}

std::uint64_t count_pure_paths_through_edge(const Vertex& a, const Vertex& b, int d) {
  require_same_dim(a, b);
  const int n = a.dim();
  if (d < 1 || hamming(a, b) != d) throw std::invalid_argument("edge length must equal d");
  if (5 * d > n) throw std::invalid_argument("pure paths need 5d <= n");
  if (n > 20) throw CapExceeded("pure-path count enumeration limited to n <= 20");
  const double dd = static_cast<double>(binomial(n, d));
  if (dd * dd * dd * dd > static_cast<double>(kPurePathCountBudget)) {
    throw CapExceeded("pure-path count enumeration exceeds its budget");
  }

  // Exhaustive over every pure path of Q_n^d: start x, difference x ^ y, detours t, u.
  const std::uint64_t lo = std::min(a.bits(), b.bits());
  const std::uint64_t hi = std::max(a.bits(), b.bits());
  const std::uint64_t all = low_mask(n);
  std::uint64_t count = 0;
  for_each_weight_submask(all, 3 * d, [&](std::uint64_t diff) {
    const auto thirds = split_thirds(diff);
    for_each_weight_submask(all & ~diff, d, [&](std::uint64_t t) {
      for_each_weight_submask(all & ~diff & ~t, d, [&](std::uint64_t u) {
        const std::array<std::uint64_t, 7> steps{t, u, thirds[0], thirds[1], thirds[2], t, u};
        for (std::uint64_t x = 0; x <= all; ++x) {
          std::uint64_t cur = x;
          for (auto s : steps) {
            const std::uint64_t next = cur ^ s;
            if (std::min(cur, next) == lo && std::max(cur, next) == hi) {
              ++count;
              break;
            }
            cur = next;
          }
        }
      });
    });
  });
  return count;
}

}  // namespace polyskel
