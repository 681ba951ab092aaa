#include "polyskel/qnd.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "polyskel/kernels.hpp"
#include "polyskel/vertex_set.hpp"

namespace polyskel {

namespace {

void check_qnd_params(int n, int d) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("dimension must lie in [1, 63]");
  if (d < 1 || d > n) throw std::invalid_argument("Q_n^d needs 1 <= d <= n");
  if (d % 2 == 0) throw std::invalid_argument("Q_n^d is disconnected for even d");
}

std::vector<std::uint32_t> weight_offsets(int n, int d) {
  std::vector<std::uint32_t> out;
  out.reserve(binomial(n, d));
  for_each_weight_submask(low_mask(n), d, [&](std::uint64_t m) { out.push_back(static_cast<std::uint32_t>(m)); });
  return out;
}

// Random k-subset of the set bits of `pool`.
std::uint64_t random_submask(std::uint64_t pool, int k, Rng& rng) {
  std::vector<int> bits;
  for (std::uint64_t m = pool; m != 0; m &= m - 1) bits.push_back(std::countr_zero(m));
  std::uint64_t out = 0;
  for (int i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(bits.size() - static_cast<std::size_t>(i));
    std::swap(bits[static_cast<std::size_t>(i)], bits[j]);
    out |= std::uint64_t{1} << bits[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace

QndMetric::QndMetric(int n, int d) : n_(n), d_(d) {
  check_qnd_params(n, d);
  table_.assign(static_cast<std::size_t>(n) + 1, -1);
  table_[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int h = queue.front();
    queue.pop_front();
    // Flip j of the h differing coordinates and d - j of the agreeing ones.
    for (int j = std::max(0, d - (n - h)); j <= std::min(h, d); ++j) {
      const int next = h - j + (d - j);
      if (table_[static_cast<std::size_t>(next)] < 0) {
        table_[static_cast<std::size_t>(next)] = table_[static_cast<std::size_t>(h)] + 1;
        queue.push_back(next);
      }
    }
  }
  std::uint64_t unreached = 0;
  for (int h = 0; h <= n; ++h) {
    if (table_[static_cast<std::size_t>(h)] < 0) unreached += binomial(n, h);
    diameter_ = std::max(diameter_, table_[static_cast<std::size_t>(h)]);
  }
  if (unreached > 0) throw DisconnectedGraph("Q_" + std::to_string(n) + "^" + std::to_string(d) + " is disconnected", unreached);
}

std::vector<std::pair<int, std::uint64_t>> qnd_distance_profile_by_weight(int n, int d) {
  const QndMetric metric(n, d);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(metric.diameter()) + 1, 0);
  for (int h = 0; h <= n; ++h) counts[static_cast<std::size_t>(metric.distance_for_weight(h))] += binomial(n, h);
  std::vector<std::pair<int, std::uint64_t>> out;
  for (std::size_t r = 0; r < counts.size(); ++r) out.emplace_back(static_cast<int>(r), counts[r]);
  return out;
}

std::vector<std::pair<int, std::uint64_t>> qnd_distance_profile(int n, int d) {
  check_qnd_params(n, d);
  if (n > kDenseBitmapMaxDim) return qnd_distance_profile_by_weight(n, d);

  const std::uint64_t total = std::uint64_t{1} << n;
  // Bit set = not yet visited.
  std::vector<std::uint32_t> unvisited(static_cast<std::size_t>((total + 31) / 32), ~std::uint32_t{0});
  if (total % 32 != 0) unvisited.back() = static_cast<std::uint32_t>(low_mask(static_cast<int>(total % 32)));
  unvisited[0] &= ~std::uint32_t{1};

  const auto offsets = weight_offsets(n, d);
  std::vector<std::pair<int, std::uint64_t>> out{{0, 1}};
  std::vector<std::uint32_t> frontier{0};
  std::vector<std::uint32_t> next;
  std::uint64_t reached = 1;
  for (int layer = 1; !frontier.empty(); ++layer) {
    next.clear();
    for (auto v : frontier) {
      const std::size_t before = next.size();
      kernels::select_xor_hits(unvisited, v, offsets, next);
      for (std::size_t i = before; i < next.size(); ++i) unvisited[next[i] >> 5] &= ~(std::uint32_t{1} << (next[i] & 31U));
    }
    if (!next.empty()) {
      out.emplace_back(layer, next.size());
      reached += next.size();
    }
    std::swap(frontier, next);
  }
  if (reached != total) {
    throw DisconnectedGraph("Q_" + std::to_string(n) + "^" + std::to_string(d) + " is disconnected", total - reached);
  }
  return out;
}

Rational symmetric_flow_congestion(int n, int d) {
  std::uint64_t sum = 0;
  for (const auto& [dist, count] : qnd_distance_profile(n, d)) sum += static_cast<std::uint64_t>(dist) * count;
  return make_ratio(sum, binomial(n, d));
}

CongestionLedger uniform_geodesic_flow_loads(int n, int d) {
  check_qnd_params(n, d);
  if (n > 8) throw CapExceeded("all-pairs geodesic accumulation limited to n <= 8");
  const std::uint64_t total = std::uint64_t{1} << n;
  const QndMetric metric(n, d);
  const auto offsets = weight_offsets(n, d);

  // Geodesic counts from 0; translation invariance gives every other source.
  std::vector<int> dist(total, -1);
  std::vector<std::uint64_t> sigma(total, 0);
  dist[0] = 0;
  sigma[0] = 1;
  std::deque<std::uint64_t> queue{0};
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (auto o : offsets) {
      const std::uint64_t b = a ^ o;
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        queue.push_back(b);
      }
      if (dist[b] == dist[a] + 1) sigma[b] += sigma[a];
    }
  }

  CongestionLedger ledger(CongestionLedger::Mode::exact_all_pairs, total * (total - 1) / 2);
  for (std::uint64_t x = 0; x < total; ++x) {
    for (std::uint64_t y = x + 1; y < total; ++y) {
      const int k = dist[x ^ y];
      const Rational share(1UL, sigma[x ^ y]);
      for (std::uint64_t a = 0; a < total; ++a) {
        const int da = dist[x ^ a];
        if (da + dist[a ^ y] != k) continue;
        for (auto o : offsets) {
          const std::uint64_t b = a ^ o;
          if (dist[x ^ b] != da + 1 || dist[b ^ y] != k - da - 1) continue;
          ledger.add_load(a, b, share * Rational(sigma[x ^ a] * sigma[b ^ y]));
        }
      }
      ledger.record_attempt(true);
    }
  }
  (void)metric;
  return ledger;
}

std::vector<std::uint64_t> sample_backbone_masks(std::uint64_t x, std::uint64_t y, const QndMetric& metric, Rng& rng) {
  const int n = metric.n();
  const int d = metric.d();
  const std::uint64_t all = low_mask(n);
  if (((x | y) & ~all) != 0) throw std::invalid_argument("backbone endpoint exceeds the dimension");
  std::vector<std::uint64_t> path{x};

  if (d == 1) {
    std::vector<int> coords;
    for (std::uint64_t m = x ^ y; m != 0; m &= m - 1) coords.push_back(std::countr_zero(m));
    rng.shuffle(std::span<int>(coords));
    std::uint64_t cur = x;
    for (int c : coords) {
      cur ^= std::uint64_t{1} << c;
      path.push_back(cur);
    }
    return path;
  }

  std::uint64_t cur = x;
  while (cur != y) {
    const std::uint64_t diff = cur ^ y;
    const int h = std::popcount(diff);
    const int want = metric.distance_for_weight(h) - 1;
    // Neighbours one step closer, grouped by how many differing coordinates they fix.
    std::vector<std::pair<int, unsigned __int128>> classes;
    unsigned __int128 total = 0;
    for (int j = std::max(0, d - (n - h)); j <= std::min(h, d); ++j) {
      if (metric.distance_for_weight(h - j + (d - j)) != want) continue;
      const unsigned __int128 w = static_cast<unsigned __int128>(binomial(h, j)) * binomial(n - h, d - j);
      classes.emplace_back(j, w);
      total += w;
    }
    if (classes.empty()) throw std::logic_error("no distance-decreasing step in a connected Q_n^d");
    if (total > ~std::uint64_t{0}) throw CapExceeded("backbone step count exceeds 64 bits");
    std::uint64_t r = rng.below(static_cast<std::uint64_t>(total));
    int j = classes.back().first;
    for (const auto& [cj, w] : classes) {
      if (r < w) {
        j = cj;
        break;
      }
      r -= static_cast<std::uint64_t>(w);
    }
    cur ^= random_submask(diff, j, rng) | random_submask(all & ~diff, d - j, rng);
    path.push_back(cur);
  }
  return path;
}

QndPath sample_backbone_path(const Vertex& x, const Vertex& y, int d, Rng& rng) {
  require_same_dim(x, y);
  const QndMetric metric(x.dim(), d);
  QndPath out{x.dim(), d, {}};
  for (auto m : sample_backbone_masks(x.bits(), y.bits(), metric, rng)) out.vertices.emplace_back(m, x.dim());
  return out;
}

CongestionLedger select_paths_randomized(int n, int d,
                                         const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                                         std::uint64_t seed) {
  const QndMetric metric(n, d);
  CongestionLedger ledger(CongestionLedger::Mode::exact_all_pairs, pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Rng rng(seed, i);
    const auto path = sample_backbone_masks(pairs[i].first, pairs[i].second, metric, rng);
    ledger.add_path(path);
    ledger.record_attempt(true);
  }
  return ledger;
}

}  // namespace polyskel
