#pragma once

// Edge expansion h(G) = min |boundary(U)| / |U| over 1 <= |U| <= |V|/2.

#include <cstdint>
#include <vector>

#include "polyskel/rational.hpp"
#include "polyskel/skeleton.hpp"

namespace polyskel {

struct CheegerResult {
  enum class Method { exact, degree_upper_bound, local_search_upper_bound };

  Rational value;
  std::vector<Vertex> witness;
  Method method = Method::exact;
};

const char* method_name(CheegerResult::Method m) noexcept;

inline constexpr std::size_t kExactCheegerMaxVertices = 26;

/// Exhaustive over all subsets with Gray-code boundary updates. Ties go to the
/// witness with the smallest bitmask over vertex indices. 2 <= |V| <= 26.
CheegerResult exact_cheeger(const SkeletonGraph& g);

/// Minimum degree, witnessed by the first vertex attaining it.
CheegerResult degree_upper_bound(const SkeletonGraph& g);

/// Randomized greedy growth plus single-vertex toggles, 32 restarts. Never
/// below the true value and never above the degree bound.
CheegerResult local_search_upper_bound(const SkeletonGraph& g, std::uint64_t seed);

/// Number of edges with exactly one endpoint among the flagged vertices.
std::uint64_t boundary_size(const SkeletonGraph& g, const std::vector<char>& in_set);

/// |boundary(U)| / |U| recomputed from the graph for a witness U.
Rational cut_quotient(const SkeletonGraph& g, const std::vector<Vertex>& witness);

}  // namespace polyskel
