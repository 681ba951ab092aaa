#pragma once

// Pure paths: 7-step walks between points at Hamming distance 3d that first
// step out along two detours t and u, cross the difference x ^ y in three
// blocks of d coordinates, and step back along t and u.

#include <array>
#include <cstdint>
#include <vector>

#include "polyskel/hypercube.hpp"
#include "polyskel/skeleton.hpp"

namespace polyskel {

struct PurePath {
  int n = 0;
  std::uint64_t x = 0, y = 0;
  std::uint64_t t = 0, u = 0;
  std::uint64_t f1 = 0, f2 = 0, f3 = 0;
  std::array<std::uint64_t, 8> masks{};

  Vertex vertex(std::size_t i) const { return Vertex(masks.at(i), n); }
  std::vector<Vertex> vertices() const;
  /// Step vectors t, u, f1, f2, f3, t, u.
  std::array<std::uint64_t, 7> steps() const { return {t, u, f1, f2, f3, t, u}; }
};

/// Splits diff (weight 3d) into its lowest, middle and highest d coordinates.
std::array<std::uint64_t, 3> split_thirds(std::uint64_t diff);

/// Builds the path; throws std::invalid_argument unless the weights and the
/// pairwise disjointness of t, u and x ^ y hold.
PurePath make_pure_path(int n, std::uint64_t x, std::uint64_t y, std::uint64_t t, std::uint64_t u);

/// Every pure path from x to y whose vertices lie in V and whose steps are
/// edges of g, which must be a cube-criterion graph G_d(V). Ordered by t,
/// then u. Empty when 5d > n (no room for the detours). Throws unless
/// hamming(x, y) = 3d.
std::vector<PurePath> enumerate_pure_paths(const Vertex& x, const Vertex& y, const VertexSet& vs,
                                           const SkeletonGraph& g);
std::vector<PurePath> enumerate_pure_paths_masks(std::uint64_t x, std::uint64_t y, const SkeletonGraph& g);

inline constexpr std::uint64_t kPurePathCountBudget = 1'000'000'000;

/// Number of pure paths of Q_n^d (V ignored) that traverse the edge {a, b}.
/// Requires hamming(a, b) = d and 5d <= n; throws CapExceeded when
/// binom(n, d)^4 exceeds kPurePathCountBudget.
std::uint64_t count_pure_paths_through_edge(const Vertex& a, const Vertex& b, int d);

}  // namespace polyskel
