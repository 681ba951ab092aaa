#pragma once

// Skeleton graphs of 0/1-polytopes conv(V).
//
// Three constructions are provided:
//  * exact: an LP decides whether the midpoint of uv admits weight on any
//    third point of V (edge iff it does not);
//  * G_d(V): pairs at Hamming distance d whose spanned subcube holds no third
//    point of V, always a subgraph of the exact skeleton;
//  * unions of the above.
// Non-edge certificates (full unit sphere, complementary interior pair) and
// the degree statistics used by the experiments live here as well.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyskel/rational.hpp"
#include "polyskel/vertex_set.hpp"

namespace polyskel {

struct MethodTag {
  enum class Kind { exact, cube_criterion, union_of, custom };

  Kind kind = Kind::custom;
  int d = 0;                     // cube_criterion only
  std::vector<MethodTag> parts;  // union_of only

  static MethodTag exact() { return {Kind::exact, 0, {}}; }
  static MethodTag cube_criterion(int d) { return {Kind::cube_criterion, d, {}}; }
  static MethodTag union_of(std::vector<MethodTag> parts) { return {Kind::union_of, 0, std::move(parts)}; }
  static MethodTag custom() { return {Kind::custom, 0, {}}; }

  /// "exact", "gd:3", "union(gd:1,gd:3)", "custom".
  std::string to_string() const;
  static MethodTag parse(const std::string& text);

  friend bool operator==(const MethodTag&, const MethodTag&) = default;
};

using VertexIndex = std::uint32_t;
using IndexEdge = std::pair<VertexIndex, VertexIndex>;

/// Undirected simple graph on the members of a vertex set.
class SkeletonGraph {
 public:
  /// Edges are index pairs into `vertices`; duplicates and orientation are
  /// normalized. Throws on self-loops and out-of-range indices, and for
  /// cube_criterion tags on any edge whose Hamming length differs from d.
  SkeletonGraph(std::shared_ptr<const VertexSet> vertices, std::vector<IndexEdge> edges, MethodTag tag);

  const VertexSet& vertex_set() const noexcept { return *vertices_; }
  std::shared_ptr<const VertexSet> shared_vertex_set() const noexcept { return vertices_; }
  const MethodTag& tag() const noexcept { return tag_; }

  std::size_t num_vertices() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  /// Sorted (i < j) edge list.
  const std::vector<IndexEdge>& edges() const noexcept { return edges_; }
  const std::vector<VertexIndex>& neighbors(VertexIndex i) const { return adjacency_[i]; }
  std::size_t degree(VertexIndex i) const { return adjacency_[i].size(); }

  bool has_edge(VertexIndex i, VertexIndex j) const;
  bool has_edge_masks(std::uint64_t a, std::uint64_t b) const;

 private:
  std::shared_ptr<const VertexSet> vertices_;
  std::vector<IndexEdge> edges_;
  std::vector<std::vector<VertexIndex>> adjacency_;
  MethodTag tag_;
};

/// Union of graphs over the same vertex set.
SkeletonGraph graph_union(const std::vector<const SkeletonGraph*>& graphs);

// -- sampling ----------------------------------------------------------------

VertexSet sample_vertex_set(int n, double p, std::uint64_t seed);

// -- pairwise tests (u, v members of V, u != v) ---------------------------------

bool is_edge_exact(const Vertex& u, const Vertex& v, const VertexSet& vs);
bool cube_criterion_edge(const Vertex& u, const Vertex& v, const VertexSet& vs);
/// Certified non-edge: the whole unit sphere of u lies in V and v is not on it.
bool nonedge_filter_a(const Vertex& u, const Vertex& v, const VertexSet& vs);
/// Certified non-edge: interior s, t of cube(u, v) in V with s ^ t = u ^ v.
/// Returns the first such pair in coordinate-string order (s before t).
std::optional<std::pair<Vertex, Vertex>> nonedge_filter_b(const Vertex& u, const Vertex& v,
                                                          const VertexSet& vs);

// -- graph constructions ------------------------------------------------------

inline constexpr std::size_t kExactSkeletonMaxVertices = 300;

SkeletonGraph build_gd(std::shared_ptr<const VertexSet> vs, int d);
SkeletonGraph build_exact_skeleton(std::shared_ptr<const VertexSet> vs);

// -- statistics ---------------------------------------------------------------

/// Members x with |S_1(x) cap V| >= (1 - alpha) n; 0 < alpha <= 1.
std::vector<Vertex> alpha_full_vertices(const VertexSet& vs, const Rational& alpha);
/// Per-member flag version of alpha_full_vertices.
std::vector<char> alpha_full_flags(const VertexSet& vs, const Rational& alpha);
/// Members u with B_1(u) inside V.
std::vector<Vertex> full_degree_vertices(const VertexSet& vs);
/// Number of Hamming-1 neighbours of `mask` that belong to V.
std::size_t sampled_unit_neighbors(const VertexSet& vs, std::uint64_t mask);

std::map<int, std::size_t> edge_length_histogram(const SkeletonGraph& g);

// -- serialization ------------------------------------------------------------

/// Header "method=<tag> n=<dim> vertices=<|V|> edges=<|E|>", then one
/// "<hex u> <hex v>" line per edge with u < v, sorted.
void write_skeleton(std::ostream& os, const SkeletonGraph& g);

}  // namespace polyskel
