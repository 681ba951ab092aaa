#include "polyskel/reroute.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "common/parallel.hpp"
#include "polyskel/pure_path.hpp"

namespace polyskel {

void RerouteConfig::validate() const {
  if (d < 1 || d % 2 == 0) throw std::invalid_argument("rerouting needs an odd d >= 1");
  if (sgn(alpha) <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (repair_with_g1 && d != 3) throw std::invalid_argument("G_1 repair paths are defined for d = 3 only");
}

const char* failure_name(RouteFailure f) noexcept {
  switch (f) {
    case RouteFailure::empty_endpoint_candidates:
      return "empty_endpoint_candidates";
    case RouteFailure::empty_inner_candidates:
      return "empty_inner_candidates";
    case RouteFailure::no_pure_path:
      return "no_pure_path";
  }
  return "unknown";
}

void FailureReport::record(RouteFailure f) noexcept {
  switch (f) {
    case RouteFailure::empty_endpoint_candidates:
      ++empty_endpoint_candidates;
      break;
    case RouteFailure::empty_inner_candidates:
      ++empty_inner_candidates;
      break;
    case RouteFailure::no_pure_path:
      ++no_pure_path;
      break;
  }
}

namespace {

std::shared_ptr<const VertexSet> checked(std::shared_ptr<const VertexSet> vs, const RerouteConfig& config) {
  if (!vs || vs->empty()) throw std::invalid_argument("rerouting needs a nonempty vertex set");
  config.validate();
  if (config.d > vs->dim()) throw std::invalid_argument("rerouting needs d <= n");
  return vs;
}

}  // namespace

RerouteContext::RerouteContext(std::shared_ptr<const VertexSet> vs, const RerouteConfig& config)
    : vs_(checked(std::move(vs), config)),
      config_(config),
      metric_(vs_->dim(), config.d),
      g1_(build_gd(vs_, 1)),
      gd_(config.d == 1 ? g1_ : build_gd(vs_, config.d)),
      alpha_full_(alpha_full_flags(*vs_, config.alpha)) {}

bool RerouteContext::alpha_full(std::uint64_t mask) const {
  const auto i = vs_->index_of(mask);
  return i && alpha_full_[*i] != 0;
}

bool RerouteContext::routable_edge(std::uint64_t a, std::uint64_t b) const {
  const int len = std::popcount(a ^ b);
  return (len == 1 && g1_.has_edge_masks(a, b)) || (len == config_.d && gd_.has_edge_masks(a, b));
}

std::vector<std::uint64_t> loop_erase(const std::vector<std::uint64_t>& walk) {
  std::vector<std::uint64_t> out;
  std::unordered_map<std::uint64_t, std::size_t> position;
  for (auto v : walk) {
    auto it = position.find(v);
    if (it == position.end()) {
      position.emplace(v, out.size());
      out.push_back(v);
      continue;
    }
    for (std::size_t j = it->second + 1; j < out.size(); ++j) position.erase(out[j]);
    out.resize(it->second + 1);
  }
  return out;
}

namespace {

// Length-3 path from `from` to `to` (3 apart) inside G_1(V), or nothing.
// Each step back picks the smallest-mask predecessor.
std::optional<std::array<std::uint64_t, 4>> g1_three_step_path(const RerouteContext& ctx, std::uint64_t from,
                                                               std::uint64_t to) {
  const std::uint64_t diff = from ^ to;
  const auto& g1 = ctx.g1();
  std::vector<std::uint64_t> first, second;
  for (std::uint64_t m = diff; m != 0; m &= m - 1) {
    const std::uint64_t w = from ^ (m & (~m + 1));
    if (g1.has_edge_masks(from, w)) first.push_back(w);
  }
  for (std::uint64_t m = diff; m != 0; m &= m - 1) {
    const std::uint64_t bit = m & (~m + 1);
    for (auto w : first) {
      if ((w ^ from) == bit) continue;
      const std::uint64_t s = w ^ bit;
      if (g1.has_edge_masks(w, s) && g1.has_edge_masks(s, to)) second.push_back(s);
    }
  }
  if (second.empty()) return std::nullopt;
  const std::uint64_t mid2 = *std::min_element(second.begin(), second.end());
  std::uint64_t mid1 = ~std::uint64_t{0};
  for (auto w : first) {
    if (std::popcount(w ^ mid2) == 1 && g1.has_edge_masks(w, mid2)) mid1 = std::min(mid1, w);
  }
  return std::array<std::uint64_t, 4>{from, mid1, mid2, to};
}

struct Endpoint {
  std::uint64_t z = 0;
  std::vector<std::uint64_t> tie;  // from the backbone endpoint to z
};

// Candidate z in V at distance d from `centre`, not alpha-full, with
// z ^ centre disjoint from `forbidden`, in ascending mask order.
template <typename Accept>
std::vector<std::uint64_t> candidates(const RerouteContext& ctx, std::uint64_t centre, std::uint64_t forbidden,
                                      Accept&& accept) {
  const auto& vs = ctx.vertex_set();
  std::vector<std::uint64_t> out;
  for_each_weight_submask(low_mask(vs.dim()) & ~forbidden, ctx.config().d, [&](std::uint64_t off) {
    const std::uint64_t z = centre ^ off;
    if (vs.contains(z) && !ctx.alpha_full(z) && accept(z)) out.push_back(z);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Endpoint> choose_endpoint(const RerouteContext& ctx, std::uint64_t centre, std::uint64_t forbidden,
                                        Rng& rng) {
  if (ctx.config().repair_with_g1 && ctx.alpha_full(centre)) {
    std::vector<std::array<std::uint64_t, 4>> ties;
    const auto zs = candidates(ctx, centre, forbidden, [&](std::uint64_t z) {
      auto path = g1_three_step_path(ctx, centre, z);
      if (path) ties.push_back(*path);
      return path.has_value();
    });
    if (zs.empty()) return std::nullopt;
    // ties were collected in offset order; look the drawn z up.
    const std::uint64_t z = zs[rng.below(zs.size())];
    for (const auto& t : ties) {
      if (t[3] == z) return Endpoint{z, {t.begin(), t.end()}};
    }
    throw std::logic_error("repair path lost");
  }
  const auto zs = candidates(ctx, centre, forbidden, [&](std::uint64_t z) { return ctx.gd().has_edge_masks(centre, z); });
  if (zs.empty()) return std::nullopt;
  const std::uint64_t z = zs[rng.below(zs.size())];
  return Endpoint{z, {centre, z}};
}

}  // namespace

RoutedPair route_pair(const RerouteContext& ctx, std::uint64_t x, std::uint64_t y, Rng& rng) {
  const auto backbone = sample_backbone_masks(x, y, ctx.metric(), rng);
  const std::size_t k = backbone.size() - 1;
  RoutedPair result;
  if (k == 0) {
    result.path = std::vector<std::uint64_t>{x};
    return result;
  }

  std::vector<std::uint64_t> z(k + 1);
  const auto first = choose_endpoint(ctx, backbone[0], backbone[0] ^ backbone[1], rng);
  if (!first) {
    result.failure = RouteFailure::empty_endpoint_candidates;
    return result;
  }
  z[0] = first->z;
  // With a single backbone edge z_k must also avoid x_0 z_0, or z_0 and z_1
  // could fall short of distance 3d.
  std::uint64_t last_forbidden = backbone[k - 1] ^ backbone[k];
  if (k == 1) last_forbidden |= backbone[0] ^ z[0];
  const auto last = choose_endpoint(ctx, backbone[k], last_forbidden, rng);
  if (!last) {
    result.failure = RouteFailure::empty_endpoint_candidates;
    return result;
  }
  z[k] = last->z;

  for (std::size_t i = 1; i < k; ++i) {
    std::uint64_t forbidden = (backbone[i - 1] ^ backbone[i]) | (backbone[i] ^ backbone[i + 1]) | (backbone[i - 1] ^ z[i - 1]);
    if (i == k - 1) forbidden |= backbone[k] ^ z[k];
    const auto zs = candidates(ctx, backbone[i], forbidden, [](std::uint64_t) { return true; });
    if (zs.empty()) {
      result.failure = RouteFailure::empty_inner_candidates;
      return result;
    }
    z[i] = zs[rng.below(zs.size())];
  }

  std::vector<std::uint64_t> walk(first->tie.begin(), first->tie.end());
  for (std::size_t i = 1; i <= k; ++i) {
    const auto paths = enumerate_pure_paths_masks(z[i - 1], z[i], ctx.gd());
    if (paths.empty()) {
      result.failure = RouteFailure::no_pure_path;
      return result;
    }
    const auto& chosen = rng.pick(paths);
    walk.insert(walk.end(), chosen.masks.begin() + 1, chosen.masks.end());
  }
  walk.insert(walk.end(), last->tie.rbegin() + 1, last->tie.rend());
  result.path = loop_erase(walk);
  return result;
}

RerouteResult reroute_flow(std::shared_ptr<const VertexSet> vs, const RerouteConfig& config) {
  const RerouteContext ctx(std::move(vs), config);
  return reroute_flow(ctx);
}

RerouteResult reroute_flow(const RerouteContext& ctx) {
  const auto& vs = ctx.vertex_set();
  const auto& config = ctx.config();
  const std::uint64_t m = vs.size();
  const std::uint64_t total_pairs = m * (m - 1) / 2;

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  if (config.mode == CongestionLedger::Mode::exact_all_pairs) {
    pairs.reserve(total_pairs);
    for (std::uint64_t i = 0; i < m; ++i) {
      for (std::uint64_t j = i + 1; j < m; ++j) pairs.emplace_back(vs.mask(i), vs.mask(j));
    }
  } else if (m >= 2) {
    Rng draw(config.seed, ~std::uint64_t{0});
    pairs.reserve(config.pair_budget);
    for (std::uint64_t p = 0; p < config.pair_budget; ++p) {
      const std::uint64_t i = draw.below(m);
      std::uint64_t j = draw.below(m - 1);
      if (j >= i) ++j;
      pairs.emplace_back(vs.mask(i), vs.mask(j));
    }
  }

  const unsigned workers = detail::worker_count(pairs.size() / 64);
  std::vector<RerouteResult> partial(workers);
  for (auto& r : partial) r.ledger = CongestionLedger(config.mode, total_pairs);
  detail::parallel_slices(pairs.size(), workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    auto& out = partial[w];
    for (std::size_t p = lo; p < hi; ++p) {
      Rng rng(config.seed, p);
      const auto [x, y] = pairs[p];
      auto routed = route_pair(ctx, x, y, rng);
      out.ledger.record_attempt(routed.path.has_value());
      if (!routed.path) {
        out.failures.record(*routed.failure);
        continue;
      }
      const auto& path = *routed.path;
      if (path.front() != x || path.back() != y) ++out.endpoint_mismatches;
      for (std::size_t i = 1; i < path.size(); ++i) {
        if (!ctx.routable_edge(path[i - 1], path[i])) ++out.invalid_edges;
      }
      out.longest_path = std::max<std::uint64_t>(out.longest_path, path.size() - 1);
      out.ledger.add_path(path);
    }
  });

  RerouteResult result;
  result.ledger = CongestionLedger(config.mode, total_pairs);
  for (const auto& r : partial) {
    result.ledger.merge(r.ledger);
    result.failures.empty_endpoint_candidates += r.failures.empty_endpoint_candidates;
    result.failures.empty_inner_candidates += r.failures.empty_inner_candidates;
    result.failures.no_pure_path += r.failures.no_pure_path;
    result.invalid_edges += r.invalid_edges;
    result.endpoint_mismatches += r.endpoint_mismatches;
    result.longest_path = std::max(result.longest_path, r.longest_path);
  }
  return result;
}

}  // namespace polyskel
