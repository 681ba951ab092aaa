#include <doctest.h>

#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "polyskel/cheeger.hpp"
#include "polyskel/ledger.hpp"
#include "polyskel/pure_path.hpp"
#include "polyskel/qnd.hpp"
#include "polyskel/reroute.hpp"
#include "polyskel/rng.hpp"

using namespace polyskel;

namespace {

std::shared_ptr<const VertexSet> shared(VertexSet vs) { return std::make_shared<const VertexSet>(std::move(vs)); }

// Plain BFS on all 2^n points, neighbours found by scanning every mask.
std::vector<int> brute_distances(int n, int d) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<int> dist(size, -1);
  std::deque<std::uint64_t> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (std::uint64_t off = 0; off < size; ++off) {
      if (std::popcount(off) != d || dist[x ^ off] >= 0) continue;
      dist[x ^ off] = dist[x] + 1;
      queue.push_back(x ^ off);
    }
  }
  return dist;
}

std::vector<std::pair<int, std::uint64_t>> profile_of(const std::vector<int>& dist) {
  std::map<int, std::uint64_t> layers;
  for (int x : dist) ++layers[x];
  return {layers.begin(), layers.end()};
}

}  // namespace

TEST_CASE("distance profile examples") {
  using P = std::vector<std::pair<int, std::uint64_t>>;
  CHECK(qnd_distance_profile(3, 1) == P{{0, 1}, {1, 3}, {2, 3}, {3, 1}});
  CHECK(qnd_distance_profile(2, 1) == P{{0, 1}, {1, 2}, {2, 1}});
  const auto p43 = qnd_distance_profile(4, 3);
  std::uint64_t reached = 0;
  for (const auto& [dist, count] : p43) reached += count;
  CHECK(reached == 16);
  CHECK_THROWS(qnd_distance_profile(4, 2));
  CHECK_THROWS(qnd_distance_profile(3, 5));
  CHECK_THROWS_AS(qnd_distance_profile(3, 3), DisconnectedGraph);
}

TEST_CASE("distance profiles match plain BFS") {
  for (int n = 1; n <= 11; ++n) {
    for (int d = 1; d < n || (n == 1 && d == 1); d += 2) {
      const auto oracle = profile_of(brute_distances(n, d));
      CHECK(qnd_distance_profile(n, d) == oracle);
      CHECK(qnd_distance_profile_by_weight(n, d) == oracle);
    }
  }
}

TEST_CASE("symmetric flow congestion examples") {
  CHECK(symmetric_flow_congestion(3, 1) == 4);
  CHECK(symmetric_flow_congestion(1, 1) == 1);
  const auto dist = brute_distances(5, 3);
  std::int64_t s = 0;
  for (int x : dist) s += x;
  const Rational c53 = symmetric_flow_congestion(5, 3);
  CHECK(c53 == make_rational(s, 10));
  CHECK(c53 <= 16);
}

TEST_CASE("symmetric congestion stays below nN/D") {
  for (int n = 2; n <= 10; ++n) {
    for (int d = 1; d < n; d += 2) {
      const Rational cap = make_rational(static_cast<std::int64_t>(n) << n, static_cast<std::int64_t>(binomial(n, d)));
      CHECK(symmetric_flow_congestion(n, d) <= cap);
    }
  }
}

TEST_CASE("uniform geodesic flows load every edge equally") {
  for (int n = 2; n <= 6; ++n) {
    const auto ledger = uniform_geodesic_flow_loads(n, 1);
    CHECK(ledger.loads().size() == static_cast<std::size_t>(n) << (n - 1));
    for (const auto& [edge, load] : ledger.loads()) CHECK(load == symmetric_flow_congestion(n, 1));
  }
  const auto l53 = uniform_geodesic_flow_loads(5, 3);
  for (const auto& [edge, load] : l53.loads()) CHECK(load == symmetric_flow_congestion(5, 3));
  CHECK_THROWS_AS(uniform_geodesic_flow_loads(9, 1), CapExceeded);
}

TEST_CASE("backbone paths are shortest and uniformly ordered") {
  Rng rng(5);
  std::map<std::vector<std::uint64_t>, int> square, cube;
  const int draws = 100000;
  const QndMetric m2(2, 1), m3(3, 1);
  for (int i = 0; i < draws; ++i) {
    ++square[sample_backbone_masks(0b00, 0b11, m2, rng)];
    ++cube[sample_backbone_masks(0b000, 0b111, m3, rng)];
  }
  CHECK(square.size() == 2);
  for (const auto& [path, count] : square) CHECK(std::abs(count / double(draws) - 0.5) <= 0.02);
  CHECK(cube.size() == 6);
  for (const auto& [path, count] : cube) {
    CHECK(path.size() == 4);
    CHECK(std::abs(count / double(draws) - 1.0 / 6.0) <= 0.02);
  }
  const auto adjacent = sample_backbone_path(Vertex::parse("00000"), Vertex::parse("11100"), 3, rng);
  CHECK(adjacent.length() == 1);
}

TEST_CASE("backbones for larger d are shortest paths of Q_n^d") {
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const int d = 1 + 2 * static_cast<int>(rng.below(static_cast<std::uint64_t>((n - 1) / 2 + 1)));
    if (d >= n) continue;
    const QndMetric metric(n, d);
    const std::uint64_t x = rng.below(std::uint64_t{1} << n), y = rng.below(std::uint64_t{1} << n);
    const auto path = sample_backbone_masks(x, y, metric, rng);
    CHECK(path.front() == x);
    CHECK(path.back() == y);
    CHECK(path.size() == static_cast<std::size_t>(metric.distance(x, y)) + 1);
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(std::popcount(path[i - 1] ^ path[i]) == d);
  }
}

TEST_CASE("randomized path selection") {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t x = 0; x < 8; ++x) {
    for (std::uint64_t y = x + 1; y < 8; ++y) pairs.emplace_back(x, y);
  }
  int within = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto ledger = select_paths_randomized(3, 1, pairs, t);
    within += ledger.max_load() <= 8 ? 1 : 0;
  }
  CHECK(within >= 19);
  const auto single = select_paths_randomized(6, 1, {{0, 0b111111}}, 1);
  for (const auto& [edge, load] : single.loads()) CHECK(load <= 1);
  CHECK(select_paths_randomized(6, 1, pairs, 3).loads() == select_paths_randomized(6, 1, pairs, 3).loads());
}

TEST_CASE("pure path construction") {
  const auto path = make_pure_path(5, 0b00000, 0b00111, 0b01000, 0b10000);
  CHECK(path.masks.front() == 0);
  CHECK(path.masks.back() == 0b00111);
  CHECK(path.f1 == 0b001);
  CHECK(path.f2 == 0b010);
  CHECK(path.f3 == 0b100);
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::popcount(path.masks[i - 1] ^ path.masks[i]) == 1);
  CHECK_THROWS(make_pure_path(5, 0, 0b111, 0b1, 0b10000));
  CHECK_THROWS(make_pure_path(5, 0, 0b11, 0b1000, 0b10000));
  CHECK(split_thirds(0b111111) == std::array<std::uint64_t, 3>{0b11, 0b1100, 0b110000});
}

TEST_CASE("pure path enumeration examples") {
  const auto full5 = shared(VertexSet::full_cube(5));
  const auto g = build_gd(full5, 1);
  const auto paths = enumerate_pure_paths(Vertex::parse("00000"), Vertex::parse("11100"), *full5, g);
  CHECK(paths.size() == 2);
  for (int n = 5; n <= 8; ++n) {
    const auto full = shared(VertexSet::full_cube(n));
    const auto gn = build_gd(full, 1);
    CHECK(enumerate_pure_paths_masks(0, 0b111, gn).size() == static_cast<std::size_t>((n - 3) * (n - 4)));
  }
  // Only the endpoints sampled: no interior vertex survives.
  const auto bare = shared(VertexSet::from_masks(5, {0b00000, 0b00111}));
  CHECK(enumerate_pure_paths_masks(0, 0b111, build_gd(bare, 1)).empty());
  const auto full9 = shared(VertexSet::full_cube(9));
  CHECK(enumerate_pure_paths_masks(0, 0x1FF, build_gd(full9, 3)).empty());
  CHECK_THROWS(enumerate_pure_paths_masks(0, 0b11, g));
}

TEST_CASE("pure path enumeration matches brute force over detours") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 5 + static_cast<int>(rng.below(4));
    const auto vs = shared(sample_vertex_set(n, 0.5 + 0.4 * rng.uniform01(), rng.next()));
    const auto g = build_gd(vs, 1);
    for (int pair = 0; pair < 10 && vs->size() > 0; ++pair) {
      const std::uint64_t x = vs->mask(rng.below(vs->size()));
      std::uint64_t off = 0;
      while (std::popcount(off) < 3) off |= std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(n));
      if (!vs->contains(x ^ off)) continue;
      std::set<std::pair<std::uint64_t, std::uint64_t>> expect;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const std::uint64_t t = std::uint64_t{1} << i, u = std::uint64_t{1} << j;
          if (i == j || (t & off) || (u & off)) continue;
          const auto p = make_pure_path(n, x, x ^ off, t, u);
          bool ok = true;
          for (std::size_t s = 1; s < 8; ++s) ok = ok && g.has_edge_masks(p.masks[s - 1], p.masks[s]);
          if (ok) expect.insert({t, u});
        }
      }
      std::set<std::pair<std::uint64_t, std::uint64_t>> got;
      for (const auto& p : enumerate_pure_paths_masks(x, x ^ off, g)) got.insert({p.t, p.u});
      CHECK(got == expect);
    }
  }
}

TEST_CASE("pure path counts through an edge") {
  CHECK(count_pure_paths_through_edge(Vertex::parse("00000"), Vertex::parse("00001"), 1) == 56);
  Rng rng(3);
  std::set<std::uint64_t> counts;
  for (int i = 0; i < 5; ++i) {
    const std::uint64_t a = rng.below(64);
    counts.insert(count_pure_paths_through_edge(Vertex(a, 6), Vertex(a ^ (1U << rng.below(6)), 6), 1));
  }
  CHECK(counts.size() == 1);
  // 8 C(n-1,3)(n-4) + 2 C(n-1,2)(n-3)(n-4) at n = 6.
  CHECK(*counts.begin() == 8 * 10 * 2 + 2 * 10 * 3 * 2);
  CHECK_THROWS_AS(count_pure_paths_through_edge(Vertex(0, 4), Vertex(1, 4), 1), std::invalid_argument);
  CHECK_THROWS(count_pure_paths_through_edge(Vertex(0, 6), Vertex(3, 6), 1));
}

TEST_CASE("ledger and expansion bound") {
  CongestionLedger exact(CongestionLedger::Mode::exact_all_pairs, 1);
  exact.add_path(std::vector<std::uint64_t>{0, 1, 3});
  exact.record_attempt(true);
  // |V| = 2 and max load 1: |V|/2 = max load gives bound 1.
  const auto b = expansion_lower_bound(exact, 2);
  CHECK(b.value == 1);
  CHECK(b.certified);
  CHECK(exact.load(1, 0) == 1);

  CongestionLedger partial(CongestionLedger::Mode::exact_all_pairs, 2);
  partial.add_path(std::vector<std::uint64_t>{0, 1});
  partial.record_attempt(true);
  partial.record_attempt(false);
  CHECK_FALSE(expansion_lower_bound(partial, 3).certified);

  CongestionLedger sampled(CongestionLedger::Mode::sampled, 100);
  sampled.add_path(std::vector<std::uint64_t>{0, 1});
  sampled.record_attempt(true);
  sampled.record_attempt(true);
  const auto est = expansion_lower_bound(sampled, 10);
  CHECK_FALSE(est.certified);
  CHECK(est.value == make_rational(10, 2 * 50));

  CHECK_THROWS(expansion_lower_bound(CongestionLedger(CongestionLedger::Mode::exact_all_pairs, 1), 2));
  CHECK_THROWS(exact.merge(sampled));
  CHECK_THROWS(exact.add_load(2, 2, 1));

  std::ostringstream os;
  exact.write_csv(os);
  CHECK(os.str() == "edge_u_hex,edge_v_hex,load_numerator,load_denominator\n0,1,1,1\n1,3,1,1\n");
}

TEST_CASE("loop erasure") {
  CHECK(loop_erase({1, 2, 3, 2, 4}) == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(loop_erase({1, 2, 1}) == std::vector<std::uint64_t>{1});
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> walk{rng.below(6)};
    for (int s = 0; s < 20; ++s) walk.push_back(rng.below(6));
    const auto path = loop_erase(walk);
    CHECK(path.front() == walk.front());
    CHECK(path.back() == walk.back());
    CHECK(std::set<std::uint64_t>(path.begin(), path.end()).size() == path.size());
    std::set<std::pair<std::uint64_t, std::uint64_t>> steps;
    for (std::size_t i = 1; i < walk.size(); ++i) steps.insert({walk[i - 1], walk[i]});
    for (std::size_t i = 1; i < path.size(); ++i) CHECK(steps.count({path[i - 1], path[i]}) == 1);
  }
}

TEST_CASE("reroute configuration is checked before work") {
  RerouteConfig config;
  config.d = 2;
  CHECK_THROWS(config.validate());
  config.d = 1;
  config.alpha = 0;
  CHECK_THROWS(config.validate());
  config.alpha = make_rational(1, 5);
  config.repair_with_g1 = true;
  CHECK_THROWS(config.validate());
  config.repair_with_g1 = false;
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("on the full cube every candidate is alpha-full") {
  RerouteConfig config;
  const auto result = reroute_flow(shared(VertexSet::full_cube(5)), config);
  CHECK(result.ledger.attempted() == 32 * 31 / 2);
  CHECK(result.ledger.routed() == 0);
  CHECK(result.failures.empty_endpoint_candidates == result.ledger.attempted());
}

TEST_CASE("routes of adjacent pairs have at most nine edges") {
  const auto vs = shared(sample_vertex_set(10, 0.6, 21));
  RerouteConfig config;
  const RerouteContext ctx(vs, config);
  int routed = 0;
  for (std::size_t i = 0; i < vs->size() && routed < 40; ++i) {
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t x = vs->mask(i), y = x ^ (std::uint64_t{1} << c);
      if (!vs->contains(y)) continue;
      Rng rng(1, i * 16 + static_cast<std::uint64_t>(c));
      const auto out = route_pair(ctx, x, y, rng);
      if (!out.path) continue;
      ++routed;
      CHECK(out.path->size() <= 10);
      CHECK(out.path->front() == x);
      CHECK(out.path->back() == y);
    }
  }
  CHECK(routed >= 20);
}

TEST_CASE("an isolated endpoint fails with empty candidates") {
  const auto base = sample_vertex_set(8, 0.7, 4);
  const std::uint64_t x = base.mask(0);
  std::vector<std::uint64_t> masks;
  for (auto m : base.masks()) {
    if (std::popcount(m ^ x) != 1) masks.push_back(m);
  }
  const auto vs = shared(VertexSet::from_masks(8, masks));
  RerouteConfig config;
  const RerouteContext ctx(vs, config);
  const std::uint64_t y = vs->mask(vs->size() - 1);
  Rng rng(2);
  const auto out = route_pair(ctx, x, y, rng);
  REQUIRE(out.failure);
  CHECK(*out.failure == RouteFailure::empty_endpoint_candidates);
}

TEST_CASE("rerouted flows use only routable edges and are reproducible") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (int d : {1, 3}) {
      const int n = d == 1 ? 9 : 15;
      const auto vs = shared(sample_vertex_set(n, 0.7, seed));
      RerouteConfig config;
      config.d = d;
      config.mode = CongestionLedger::Mode::sampled;
      config.pair_budget = 150;
      config.seed = seed;
      const auto a = reroute_flow(vs, config);
      CHECK(a.invalid_edges == 0);
      CHECK(a.endpoint_mismatches == 0);
      CHECK(a.ledger.attempted() == 150);
      CHECK(a.ledger.routed() + a.failures.total() == 150);
      const auto b = reroute_flow(vs, config);
      CHECK(a.ledger.loads() == b.ledger.loads());
      const RerouteContext ctx(vs, config);
      for (const auto& [edge, load] : a.ledger.loads()) CHECK(ctx.routable_edge(edge.first, edge.second));
    }
  }
}

TEST_CASE("repair paths give alpha-full endpoints candidates") {
  // Dense samples leave G_3(V) almost empty, so without repair most
  // endpoints have no candidates at all.
  const auto vs = shared(sample_vertex_set(15, 0.85, 12));
  RerouteConfig config;
  config.d = 3;
  config.mode = CongestionLedger::Mode::sampled;
  config.pair_budget = 60;
  config.seed = 12;
  const auto plain = reroute_flow(vs, config);
  config.repair_with_g1 = true;
  const auto repaired = reroute_flow(vs, config);
  CHECK(repaired.invalid_edges == 0);
  CHECK(repaired.endpoint_mismatches == 0);
  CHECK(plain.failures.empty_endpoint_candidates > repaired.failures.empty_endpoint_candidates);
  CHECK(repaired.failures.total() + repaired.ledger.routed() == 60);
}

TEST_CASE("certified flow bounds never exceed the exact Cheeger value") {
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 400 && certified < 5; ++seed) {
    const auto vs = shared(sample_vertex_set(6, 0.4, seed));
    if (vs->size() < 2 || vs->size() > kExactCheegerMaxVertices) continue;
    RerouteConfig config;
    config.seed = seed;
    // A tiny alpha leaves only fully surrounded members alpha-full.
    config.alpha = make_rational(1, 100);
    const auto result = reroute_flow(vs, config);
    if (result.ledger.empty()) continue;
    const auto bound = expansion_lower_bound(result.ledger, vs->size());
    if (!bound.certified) continue;
    ++certified;
    CHECK(bound.value <= exact_cheeger(build_exact_skeleton(vs)).value);
  }
  MESSAGE("certified instances compared: " << certified);
}
