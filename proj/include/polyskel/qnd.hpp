#pragma once

// The distance-d graph Q_n^d on {0,1}^n (x ~ y iff their Hamming distance is
// exactly d), its shortest paths and the congestion of symmetric flows on it.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "polyskel/hypercube.hpp"
#include "polyskel/ledger.hpp"
#include "polyskel/rational.hpp"
#include "polyskel/rng.hpp"

namespace polyskel {

/// Shortest-path distance in Q_n^d, which depends only on the Hamming
/// distance of the endpoints. Built by BFS over Hamming-weight classes.
class QndMetric {
 public:
  /// d odd, 1 <= d <= n. Throws DisconnectedGraph if some weight class is
  /// unreachable (d = n > 1).
  QndMetric(int n, int d);

  int n() const noexcept { return n_; }
  int d() const noexcept { return d_; }
  /// Distance between points at Hamming distance h.
  int distance_for_weight(int h) const { return table_.at(static_cast<std::size_t>(h)); }
  int distance(std::uint64_t x, std::uint64_t y) const { return table_[static_cast<std::size_t>(std::popcount(x ^ y))]; }
  int diameter() const noexcept { return diameter_; }

 private:
  int n_;
  int d_;
  int diameter_ = 0;
  std::vector<int> table_;
};

/// (distance, count) pairs of BFS layers from the all-zeros point. Runs a
/// vertex BFS with the probe kernels for n <= 26, and the weight-class
/// metric otherwise. Errors: even d, d outside [1, n], disconnected graph.
std::vector<std::pair<int, std::uint64_t>> qnd_distance_profile(int n, int d);

/// The weight-class profile (the independent route used above n = 26).
std::vector<std::pair<int, std::uint64_t>> qnd_distance_profile_by_weight(int n, int d);

/// S / D with S the distance sum from one point and D = binom(n, d): the
/// per-edge load of every automorphism-invariant shortest-path flow.
Rational symmetric_flow_congestion(int n, int d);

/// Exact per-edge loads of the flow splitting each unordered pair uniformly
/// over all its shortest paths, accumulated over all pairs. n <= 8.
CongestionLedger uniform_geodesic_flow_loads(int n, int d);

struct QndPath {
  int n = 0;
  int d = 0;
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// Masks of a random shortest x-y path in Q_n^d. For d = 1 the differing
/// coordinates are flipped in a uniformly random order; for larger d each
/// step is uniform among the neighbours strictly closer to y.
std::vector<std::uint64_t> sample_backbone_masks(std::uint64_t x, std::uint64_t y, const QndMetric& metric, Rng& rng);

QndPath sample_backbone_path(const Vertex& x, const Vertex& y, int d, Rng& rng);

/// One backbone per pair; pair i draws from the stream (seed, i). Loads are
/// path counts.
CongestionLedger select_paths_randomized(int n, int d,
                                         const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                                         std::uint64_t seed);

}  // namespace polyskel
