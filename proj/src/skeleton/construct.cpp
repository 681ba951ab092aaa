#include <stdexcept>

#include "common/parallel.hpp"
#include "polyskel/kernels.hpp"
#include "polyskel/simplex.hpp"
#include "polyskel/skeleton.hpp"

namespace polyskel {

namespace {

void require_member_pair(const Vertex& u, const Vertex& v, const VertexSet& vs) {
  require_same_dim(u, v);
  if (u.dim() != vs.dim()) throw DimensionMismatch(u.dim(), vs.dim());
  if (u == v) throw std::invalid_argument("pair endpoints coincide");
  if (!vs.contains(u) || !vs.contains(v)) throw std::invalid_argument("pair endpoint is not a member of V");
}

// Masks strictly inside the subcube spanned by diff: nonempty proper submasks.
std::vector<std::uint32_t> interior_offsets(std::uint64_t diff) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t s = (diff - 1) & diff; s != 0; s = (s - 1) & diff) out.push_back(static_cast<std::uint32_t>(s));
  return out;
}

bool cube_is_empty_inside(std::uint64_t x, std::uint64_t diff, const VertexSet& vs) {
  if (vs.has_bitmap()) {
    const auto offsets = interior_offsets(diff);
    return kernels::first_xor_hit(vs.bitmap(), static_cast<std::uint32_t>(x), offsets) == offsets.size();
  }
  for (std::uint64_t s = (diff - 1) & diff; s != 0; s = (s - 1) & diff) {
    if (vs.contains(x ^ s)) return false;
  }
  return true;
}

bool exact_edge_masks(std::uint64_t u, std::uint64_t v, const VertexSet& vs) {
  const int n = vs.dim();
  const std::size_t m = vs.size();
  LpProblem lp;
  lp.objective.assign(m, Rational(0));
  for (std::size_t w = 0; w < m; ++w) {
    if (vs.mask(w) != u && vs.mask(w) != v) lp.objective[w] = 1;
  }
  const Rational half(1, 2);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> row(m);
    for (std::size_t w = 0; w < m; ++w) row[w] = static_cast<int>((vs.mask(w) >> i) & 1U);
    const int target = static_cast<int>(((u >> i) & 1U) + ((v >> i) & 1U));
    lp.add_row(std::move(row), RowSense::equal, Rational(target) * half);
  }
  lp.add_row(std::vector<Rational>(m, Rational(1)), RowSense::equal, Rational(1));
  const LpOutcome out = simplex_solve(lp);
  if (out.status != LpStatus::optimal) throw std::logic_error("adjacency LP at a member midpoint must be feasible and bounded");
  return sgn(out.value) == 0;
}

}  // namespace

VertexSet sample_vertex_set(int n, double p, std::uint64_t seed) { return VertexSet::sample(n, p, seed); }

bool is_edge_exact(const Vertex& u, const Vertex& v, const VertexSet& vs) {
  require_member_pair(u, v, vs);
  return exact_edge_masks(u.bits(), v.bits(), vs);
}

bool cube_criterion_edge(const Vertex& u, const Vertex& v, const VertexSet& vs) {
  require_member_pair(u, v, vs);
  for (const auto& z : cube_points(u, v)) {
    if (z != u && z != v && vs.contains(z)) return false;
  }
  return true;
}

bool nonedge_filter_a(const Vertex& u, const Vertex& v, const VertexSet& vs) {
  require_member_pair(u, v, vs);
  if (hamming(u, v) == 1) return false;
  return sampled_unit_neighbors(vs, u.bits()) == static_cast<std::size_t>(vs.dim());
}

std::optional<std::pair<Vertex, Vertex>> nonedge_filter_b(const Vertex& u, const Vertex& v, const VertexSet& vs) {
  require_member_pair(u, v, vs);
  const std::uint64_t diff = u.bits() ^ v.bits();
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (std::uint64_t a = (diff - 1) & diff; a != 0; a = (a - 1) & diff) {
    const std::uint64_t s = u.bits() ^ a;
    const std::uint64_t t = u.bits() ^ (diff ^ a);
    if (!coordinate_lex_less(s, t) || !vs.contains(s) || !vs.contains(t)) continue;
    if (!best || coordinate_lex_less(s, best->first)) best = {s, t};
  }
  if (!best) return std::nullopt;
  return std::pair{Vertex(best->first, vs.dim()), Vertex(best->second, vs.dim())};
}

SkeletonGraph build_gd(std::shared_ptr<const VertexSet> vs, int d) {
  if (!vs) throw std::invalid_argument("build_gd: null vertex set");
  const int n = vs->dim();
  if (d < 1 || d > n) throw std::invalid_argument("build_gd: d must lie in [1, n]");

  const std::size_t m = vs->size();
  const bool by_offsets = vs->has_bitmap() && binomial(n, d) <= m;
  std::vector<std::uint32_t> offsets;
  if (by_offsets) {
    for_each_weight_submask(low_mask(n), d, [&](std::uint64_t off) { offsets.push_back(static_cast<std::uint32_t>(off)); });
  }

  const unsigned workers = detail::worker_count(m / 64);
  std::vector<std::vector<IndexEdge>> found(workers);
  detail::parallel_slices(m, workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    std::vector<std::uint32_t> hits;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t x = vs->mask(i);
      auto consider = [&](std::uint64_t y) {
        if (y <= x || !cube_is_empty_inside(x, x ^ y, *vs)) return;
        found[w].emplace_back(static_cast<VertexIndex>(i), static_cast<VertexIndex>(*vs->index_of(y)));
      };
      if (by_offsets) {
        hits.clear();
        kernels::select_xor_hits(vs->bitmap(), static_cast<std::uint32_t>(x), offsets, hits);
        for (auto y : hits) consider(y);
      } else {
        for (std::size_t j = i + 1; j < m; ++j) {
          if (std::popcount(x ^ vs->mask(j)) == d) consider(vs->mask(j));
        }
      }
    }
  });

  std::vector<IndexEdge> edges;
  for (auto& part : found) edges.insert(edges.end(), part.begin(), part.end());
  return SkeletonGraph(std::move(vs), std::move(edges), MethodTag::cube_criterion(d));
}

SkeletonGraph build_exact_skeleton(std::shared_ptr<const VertexSet> vs) {
  if (!vs) throw std::invalid_argument("build_exact_skeleton: null vertex set");
  const std::size_t m = vs->size();
  if (m > kExactSkeletonMaxVertices) {
    throw CapExceeded("exact skeleton limited to " + std::to_string(kExactSkeletonMaxVertices) + " vertices, got " +
                      std::to_string(m));
  }
  const unsigned workers = detail::worker_count(m / 8);
  std::vector<std::vector<IndexEdge>> found(workers);
  detail::parallel_slices(m, workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (exact_edge_masks(vs->mask(i), vs->mask(j), *vs)) {
          found[w].emplace_back(static_cast<VertexIndex>(i), static_cast<VertexIndex>(j));
        }
      }
    }
  });
  std::vector<IndexEdge> edges;
  for (auto& part : found) edges.insert(edges.end(), part.begin(), part.end());
  return SkeletonGraph(std::move(vs), std::move(edges), MethodTag::exact());
}

std::size_t sampled_unit_neighbors(const VertexSet& vs, std::uint64_t mask) {
  const int n = vs.dim();
  if (vs.has_bitmap()) {
    std::uint32_t units[32];
    for (int i = 0; i < n; ++i) units[i] = std::uint32_t{1} << i;
    return kernels::count_xor_hits(vs.bitmap(), static_cast<std::uint32_t>(mask),
                                   std::span<const std::uint32_t>(units, static_cast<std::size_t>(n)));
  }
  std::size_t count = 0;
  for (int i = 0; i < n; ++i) count += vs.contains(mask ^ (std::uint64_t{1} << i)) ? 1 : 0;
  return count;
}

std::vector<char> alpha_full_flags(const VertexSet& vs, const Rational& alpha) {
  if (sgn(alpha) <= 0 || alpha > 1) throw std::invalid_argument("alpha must lie in (0, 1]");
  const Rational threshold = (Rational(1) - alpha) * vs.dim();
  std::vector<char> flags(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    flags[i] = Rational(static_cast<long>(sampled_unit_neighbors(vs, vs.mask(i)))) >= threshold ? 1 : 0;
  }
  return flags;
}

std::vector<Vertex> alpha_full_vertices(const VertexSet& vs, const Rational& alpha) {
  const auto flags = alpha_full_flags(vs, alpha);
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) out.push_back(vs.vertex(i));
  }
  return out;
}

std::vector<Vertex> full_degree_vertices(const VertexSet& vs) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (sampled_unit_neighbors(vs, vs.mask(i)) == static_cast<std::size_t>(vs.dim())) out.push_back(vs.vertex(i));
  }
  return out;
}

}  // namespace polyskel
