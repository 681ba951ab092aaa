#include <doctest.h>

#include "polyskel/cheeger.hpp"
#include "polyskel/rng.hpp"

using namespace polyskel;

namespace {

SkeletonGraph graph_on(int n, std::size_t count, std::vector<IndexEdge> edges) {
  std::vector<std::uint64_t> masks;
  for (std::size_t i = 0; i < count; ++i) masks.push_back(i);
  auto vs = std::make_shared<const VertexSet>(VertexSet::from_masks(n, masks));
  return SkeletonGraph(vs, std::move(edges), MethodTag::custom());
}

SkeletonGraph random_graph(Rng& rng, std::size_t count, double density) {
  std::vector<IndexEdge> edges;
  for (VertexIndex a = 0; a < count; ++a) {
    for (VertexIndex b = a + 1; b < count; ++b) {
      if (rng.uniform01() < density) edges.emplace_back(a, b);
    }
  }
  return graph_on(5, count, edges);
}

// Direct subset scan without incremental boundary updates.
Rational brute_cheeger(const SkeletonGraph& g) {
  const std::size_t m = g.num_vertices();
  std::optional<Rational> best;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << m); ++s) {
    const auto size = static_cast<std::size_t>(std::popcount(s));
    if (2 * size > m) continue;
    std::int64_t cut = 0;
    for (const auto& [a, b] : g.edges()) cut += (((s >> a) ^ (s >> b)) & 1U) ? 1 : 0;
    const Rational q = make_rational(cut, static_cast<std::int64_t>(size));
    if (!best || q < *best) best = q;
  }
  return *best;
}

}  // namespace

TEST_CASE("exact Cheeger examples") {
  const auto cycle = graph_on(2, 4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}});
  CHECK(exact_cheeger(cycle).value == 1);
  CHECK(exact_cheeger(graph_on(1, 2, {{0, 1}})).value == 1);
  CHECK(exact_cheeger(graph_on(2, 3, {{0, 1}, {1, 2}})).value == 1);
  const auto cube = build_exact_skeleton(std::make_shared<const VertexSet>(VertexSet::full_cube(3)));
  CHECK(exact_cheeger(cube).value == 1);
  CHECK_THROWS(exact_cheeger(graph_on(1, 1, {})));
}

TEST_CASE("exact Cheeger matches a direct subset scan") {
  Rng rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t count = 2 + rng.below(11);
    const auto g = random_graph(rng, count, rng.uniform01());
    const auto exact = exact_cheeger(g);
    CHECK(exact.value == brute_cheeger(g));
    CHECK(cut_quotient(g, exact.witness) == exact.value);
    CHECK(2 * exact.witness.size() <= count);
    CHECK_FALSE(exact.witness.empty());
  }
}

TEST_CASE("exact Cheeger breaks ties by the smallest member bitmask") {
  // In the 4-cycle 0-1-3-2-0 singletons score 2 and adjacent pairs score 1;
  // {0,1} is the adjacent pair with the smallest bitmask.
  const auto cycle = graph_on(2, 4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}});
  const auto r = exact_cheeger(cycle);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0].bits() == 0);
  CHECK(r.witness[1].bits() == 1);
}

TEST_CASE("degree upper bound examples") {
  CHECK(degree_upper_bound(graph_on(2, 4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}})).value == 2);
  CHECK(degree_upper_bound(graph_on(2, 4, {{0, 1}, {0, 2}, {0, 3}})).value == 1);
  CHECK(degree_upper_bound(graph_on(2, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})).value == 3);
}

TEST_CASE("local search examples") {
  const auto cycle = graph_on(2, 4, {{0, 1}, {1, 3}, {3, 2}, {2, 0}});
  CHECK(local_search_upper_bound(cycle, 1).value == 1);
  const auto split = graph_on(3, 6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}});
  CHECK(local_search_upper_bound(split, 1).value == 0);
}

TEST_CASE("bounds are ordered: exact <= local search <= min degree") {
  Rng rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t count = 2 + rng.below(14);
    const auto g = random_graph(rng, count, 0.2 + 0.6 * rng.uniform01());
    const auto exact = exact_cheeger(g).value;
    const auto local = local_search_upper_bound(g, trial);
    CHECK(exact <= local.value);
    CHECK(local.value <= degree_upper_bound(g).value);
    CHECK(cut_quotient(g, local.witness) == local.value);
    CHECK(local_search_upper_bound(g, trial).witness == local.witness);
  }
}

TEST_CASE("boundary size counts crossing edges") {
  const auto path = graph_on(2, 3, {{0, 1}, {1, 2}});
  CHECK(boundary_size(path, {1, 0, 0}) == 1);
  CHECK(boundary_size(path, {0, 1, 0}) == 2);
  CHECK(boundary_size(path, {1, 1, 1}) == 0);
}

TEST_CASE("method names") {
  CHECK(std::string(method_name(CheegerResult::Method::exact)) == "exact");
  CHECK(std::string(method_name(CheegerResult::Method::local_search_upper_bound)) == "local_search_upper_bound");
}
