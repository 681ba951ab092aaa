#pragma once

// Rerouting of Q_n^d shortest paths into G_1(V) u G_d(V).
//
// For a pair x, y in V a backbone x = x_0, ..., x_k = y of Q_n^d is drawn and
// every x_i is replaced by a nearby sampled point z_i at distance d. The z_i
// are stitched by pure paths of G_d(V), the endpoints are tied back to x and
// y, and the resulting walk is loop-erased. The support constraints on the
// z_i make consecutive z's exactly 3d apart.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "polyskel/ledger.hpp"
#include "polyskel/qnd.hpp"
#include "polyskel/rational.hpp"
#include "polyskel/skeleton.hpp"

namespace polyskel {

struct RerouteConfig {
  int d = 1;
  /// Ties alpha-full endpoints to their z through a 3-step G_1(V) path. Needs d = 3.
  bool repair_with_g1 = false;
  Rational alpha{1, 5};
  CongestionLedger::Mode mode = CongestionLedger::Mode::exact_all_pairs;
  /// Pairs drawn in sampled mode.
  std::uint64_t pair_budget = 2000;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an even d, alpha outside (0, 1], or a
  /// repair request with d != 3.
  void validate() const;
};

enum class RouteFailure {
  empty_endpoint_candidates,  // N_0 or N_k empty
  empty_inner_candidates,     // some N_i with 0 < i < k empty
  no_pure_path,               // two consecutive z's joined by no pure path
};

const char* failure_name(RouteFailure f) noexcept;

struct FailureReport {
  std::uint64_t empty_endpoint_candidates = 0;
  std::uint64_t empty_inner_candidates = 0;
  std::uint64_t no_pure_path = 0;

  std::uint64_t total() const noexcept { return empty_endpoint_candidates + empty_inner_candidates + no_pure_path; }
  void record(RouteFailure f) noexcept;
};

/// The graphs and per-member flags a routing run needs, built once.
class RerouteContext {
 public:
  RerouteContext(std::shared_ptr<const VertexSet> vs, const RerouteConfig& config);

  const VertexSet& vertex_set() const noexcept { return *vs_; }
  const RerouteConfig& config() const noexcept { return config_; }
  const SkeletonGraph& g1() const noexcept { return g1_; }
  const SkeletonGraph& gd() const noexcept { return gd_; }
  const QndMetric& metric() const noexcept { return metric_; }
  bool alpha_full(std::uint64_t mask) const;
  /// Edge of G_1(V) u G_d(V).
  bool routable_edge(std::uint64_t a, std::uint64_t b) const;

 private:
  std::shared_ptr<const VertexSet> vs_;
  RerouteConfig config_;
  QndMetric metric_;
  SkeletonGraph g1_;
  SkeletonGraph gd_;
  std::vector<char> alpha_full_;
};

struct RoutedPair {
  std::optional<std::vector<std::uint64_t>> path;  // loop-erased, x first, y last
  std::optional<RouteFailure> failure;
};

/// Routes one pair using the given stream.
RoutedPair route_pair(const RerouteContext& ctx, std::uint64_t x, std::uint64_t y, Rng& rng);

/// Chronological loop erasure: on revisiting a vertex, the cycle since its
/// previous visit is cut out.
std::vector<std::uint64_t> loop_erase(const std::vector<std::uint64_t>& walk);

struct RerouteResult {
  CongestionLedger ledger;
  FailureReport failures;
  std::uint64_t invalid_edges = 0;         // traversed edges outside G_1(V) u G_d(V)
  std::uint64_t endpoint_mismatches = 0;   // routed paths not joining the requested pair
  std::uint64_t longest_path = 0;
};

/// Exact mode routes every unordered pair of V (pair i in index order uses
/// stream (seed, i)); sampled mode draws pair_budget uniform pairs of
/// distinct members with replacement.
RerouteResult reroute_flow(std::shared_ptr<const VertexSet> vs, const RerouteConfig& config);
RerouteResult reroute_flow(const RerouteContext& ctx);

}  // namespace polyskel
