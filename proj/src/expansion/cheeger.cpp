#include "polyskel/cheeger.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "common/parallel.hpp"
#include "polyskel/rng.hpp"

namespace polyskel {

const char* method_name(CheegerResult::Method m) noexcept {
  switch (m) {
    case CheegerResult::Method::exact:
      return "exact";
    case CheegerResult::Method::degree_upper_bound:
      return "degree_upper_bound";
    case CheegerResult::Method::local_search_upper_bound:
      return "local_search_upper_bound";
  }
  return "unknown";
}

namespace {

Rational quotient(std::uint64_t boundary, std::uint64_t size) {
  Rational q(static_cast<unsigned long>(boundary), static_cast<unsigned long>(size));
  q.canonicalize();
  return q;
}

void require_two_vertices(const SkeletonGraph& g) {
  if (g.num_vertices() < 2) throw std::invalid_argument("edge expansion needs at least two vertices");
}

// A cut candidate compared by boundary/size, then by member bitmask.
struct Cut {
  std::uint64_t boundary = 1;
  std::uint64_t size = 0;  // 0 = none yet
  std::uint64_t members = 0;

  bool better_than(const Cut& o) const {
    if (o.size == 0) return size != 0;
    const auto lhs = static_cast<unsigned __int128>(boundary) * o.size;
    const auto rhs = static_cast<unsigned __int128>(o.boundary) * size;
    return lhs < rhs || (lhs == rhs && members < o.members);
  }
};

std::vector<Vertex> members_of(const SkeletonGraph& g, const std::vector<char>& in_set) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < in_set.size(); ++i) {
    if (in_set[i]) out.push_back(g.vertex_set().vertex(i));
  }
  return out;
}

}  // namespace

std::uint64_t boundary_size(const SkeletonGraph& g, const std::vector<char>& in_set) {
  if (in_set.size() != g.num_vertices()) throw std::invalid_argument("membership flags do not match the graph");
  std::uint64_t count = 0;
  for (const auto& [a, b] : g.edges()) count += in_set[a] != in_set[b] ? 1 : 0;
  return count;
}

Rational cut_quotient(const SkeletonGraph& g, const std::vector<Vertex>& witness) {
  if (witness.empty()) throw std::invalid_argument("empty cut witness");
  std::vector<char> in_set(g.num_vertices(), 0);
  for (const auto& v : witness) {
    const auto i = g.vertex_set().index_of(v.bits());
    if (!i || v.dim() != g.vertex_set().dim()) throw std::invalid_argument("witness vertex outside the graph");
    in_set[*i] = 1;
  }
  return quotient(boundary_size(g, in_set), witness.size());
}

CheegerResult exact_cheeger(const SkeletonGraph& g) {
  require_two_vertices(g);
  const std::size_t m = g.num_vertices();
  if (m > kExactCheegerMaxVertices) {
    throw CapExceeded("exact Cheeger constant limited to " + std::to_string(kExactCheegerMaxVertices) + " vertices");
  }
  std::vector<std::uint32_t> adj(m, 0);
  std::vector<std::uint32_t> deg(m, 0);
  for (std::size_t v = 0; v < m; ++v) {
    for (auto w : g.neighbors(static_cast<VertexIndex>(v))) adj[v] |= std::uint32_t{1} << w;
    deg[v] = static_cast<std::uint32_t>(g.degree(static_cast<VertexIndex>(v)));
  }
  const std::uint32_t everyone = static_cast<std::uint32_t>(low_mask(static_cast<int>(m)));
  const std::uint64_t half = m / 2;

  // Subsets S of the first m - 1 vertices; each S also stands for its
  // complement, which holds the last vertex.
  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  const unsigned workers = detail::worker_count(count >> 16);
  std::vector<Cut> best(workers);
  detail::parallel_slices(count, workers, [&](unsigned w, std::size_t lo, std::size_t hi) {
    Cut local;
    auto consider = [&](std::uint32_t s, std::uint64_t boundary) {
      const std::uint64_t size = static_cast<std::uint64_t>(std::popcount(s));
      if (size >= 1 && size <= half) {
        const Cut c{boundary, size, s};
        if (c.better_than(local)) local = c;
      }
      if (m - size <= half) {
        const Cut c{boundary, m - size, everyone ^ s};
        if (c.better_than(local)) local = c;
      }
    };
    auto gray = [](std::uint64_t i) { return static_cast<std::uint32_t>(i ^ (i >> 1)); };
    std::uint32_t s = gray(lo);
    std::uint64_t boundary = 0;
    for (std::size_t v = 0; v < m; ++v) {
      if ((s >> v) & 1U) boundary += static_cast<std::uint64_t>(std::popcount(adj[v] & ~s));
    }
    consider(s, boundary);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
      const int v = std::countr_zero(i);
      const std::uint32_t bit = std::uint32_t{1} << v;
      // Neighbours of v inside S (v itself is never its own neighbour).
      const auto inside = static_cast<std::int64_t>(std::popcount(adj[static_cast<std::size_t>(v)] & s));
      const std::int64_t delta = static_cast<std::int64_t>(deg[static_cast<std::size_t>(v)]) - 2 * inside;
      if (s & bit) {
        boundary = static_cast<std::uint64_t>(static_cast<std::int64_t>(boundary) - delta);
      } else {
        boundary = static_cast<std::uint64_t>(static_cast<std::int64_t>(boundary) + delta);
      }
      s ^= bit;
      consider(s, boundary);
    }
    best[w] = local;
  });

  Cut winner;
  for (const auto& c : best) {
    if (c.better_than(winner)) winner = c;
  }
  CheegerResult out;
  out.method = CheegerResult::Method::exact;
  out.value = quotient(winner.boundary, winner.size);
  out.value.canonicalize();
  std::vector<char> in_set(m, 0);
  for (std::size_t v = 0; v < m; ++v) in_set[v] = (winner.members >> v) & 1U;
  out.witness = members_of(g, in_set);
  return out;
}

CheegerResult degree_upper_bound(const SkeletonGraph& g) {
  require_two_vertices(g);
  std::size_t arg = 0;
  for (std::size_t v = 1; v < g.num_vertices(); ++v) {
    if (g.degree(static_cast<VertexIndex>(v)) < g.degree(static_cast<VertexIndex>(arg))) arg = v;
  }
  CheegerResult out;
  out.method = CheegerResult::Method::degree_upper_bound;
  out.value = Rational(static_cast<unsigned long>(g.degree(static_cast<VertexIndex>(arg))));
  out.witness = {g.vertex_set().vertex(arg)};
  return out;
}

namespace {

// Incrementally maintained cut: membership, per-vertex inside-neighbour
// counts, boundary and size.
class CutState {
 public:
  explicit CutState(const SkeletonGraph& g) : g_(g), in_(g.num_vertices(), 0), inside_(g.num_vertices(), 0) {}

  std::uint64_t boundary() const { return boundary_; }
  std::uint64_t size() const { return size_; }
  bool contains(std::size_t v) const { return in_[v] != 0; }
  const std::vector<char>& flags() const { return in_; }

  /// Boundary after toggling v.
  std::uint64_t boundary_if_toggled(std::size_t v) const {
    const auto deg = static_cast<std::int64_t>(g_.degree(static_cast<VertexIndex>(v)));
    const auto delta = deg - 2 * static_cast<std::int64_t>(inside_[v]);
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(boundary_) + (in_[v] ? -delta : delta));
  }

  void toggle(std::size_t v) {
    boundary_ = boundary_if_toggled(v);
    const bool adding = !in_[v];
    in_[v] = adding ? 1 : 0;
    size_ = adding ? size_ + 1 : size_ - 1;
    for (auto w : g_.neighbors(static_cast<VertexIndex>(v))) inside_[w] += adding ? 1 : -1;
  }

  void clear() {
    for (std::size_t v = 0; v < in_.size(); ++v) {
      if (in_[v]) toggle(v);
    }
  }

 private:
  const SkeletonGraph& g_;
  std::vector<char> in_;
  std::vector<std::int64_t> inside_;
  std::uint64_t boundary_ = 0;
  std::uint64_t size_ = 0;
};

bool quotient_less(std::uint64_t b1, std::uint64_t s1, std::uint64_t b2, std::uint64_t s2) {
  return static_cast<unsigned __int128>(b1) * s2 < static_cast<unsigned __int128>(b2) * s1;
}

std::vector<std::size_t> smallest_component(const SkeletonGraph& g) {
  const std::size_t m = g.num_vertices();
  std::vector<int> label(m, -1);
  std::vector<std::size_t> best;
  for (std::size_t s = 0; s < m; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> comp{s};
    label[s] = static_cast<int>(s);
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto w : g.neighbors(static_cast<VertexIndex>(comp[head]))) {
        if (label[w] < 0) {
          label[w] = static_cast<int>(s);
          comp.push_back(w);
        }
      }
    }
    if (best.empty() || comp.size() < best.size()) best = std::move(comp);
  }
  return best;
}

}  // namespace

CheegerResult local_search_upper_bound(const SkeletonGraph& g, std::uint64_t seed) {
  require_two_vertices(g);
  const std::size_t m = g.num_vertices();
  const std::uint64_t half = m / 2;
  constexpr int kRestarts = 32;

  const CheegerResult by_degree = degree_upper_bound(g);
  std::vector<char> best_flags(m, 0);
  best_flags[*g.vertex_set().index_of(by_degree.witness.front().bits())] = 1;
  std::uint64_t best_b = g.degree(static_cast<VertexIndex>(*g.vertex_set().index_of(by_degree.witness.front().bits())));
  std::uint64_t best_s = 1;

  auto offer = [&](const CutState& st) {
    if (st.size() >= 1 && st.size() <= half && quotient_less(st.boundary(), st.size(), best_b, best_s)) {
      best_b = st.boundary();
      best_s = st.size();
      best_flags = st.flags();
    }
  };

  CutState st(g);
  const auto component = smallest_component(g);
  if (component.size() <= half) {
    for (auto v : component) st.toggle(v);
    offer(st);
    st.clear();
  }

  for (int r = 0; r < kRestarts; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    st.clear();
    st.toggle(static_cast<std::size_t>(rng.below(m)));
    offer(st);
    std::vector<char> run_flags = st.flags();
    std::uint64_t run_b = st.boundary();
    std::uint64_t run_s = st.size();
    // Greedy growth: add the outside vertex giving the smallest next boundary.
    while (st.size() < half) {
      std::size_t pick = m;
      std::uint64_t pick_b = 0;
      std::uint64_t ties = 0;
      for (std::size_t v = 0; v < m; ++v) {
        if (st.contains(v)) continue;
        const std::uint64_t b = st.boundary_if_toggled(v);
        if (pick == m || b < pick_b) {
          pick = v;
          pick_b = b;
          ties = 1;
        } else if (b == pick_b && rng.below(++ties) == 0) {
          pick = v;  // reservoir choice among equal candidates
        }
      }
      if (pick == m) break;
      st.toggle(pick);
      offer(st);
      if (quotient_less(st.boundary(), st.size(), run_b, run_s)) {
        run_flags = st.flags();
        run_b = st.boundary();
        run_s = st.size();
      }
    }
    // Hill descent from the best prefix of this run.
    st.clear();
    for (std::size_t v = 0; v < m; ++v) {
      if (run_flags[v]) st.toggle(v);
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t v = 0; v < m; ++v) {
        const std::uint64_t size = st.contains(v) ? st.size() - 1 : st.size() + 1;
        if (size < 1 || size > half) continue;
        if (quotient_less(st.boundary_if_toggled(v), size, st.boundary(), st.size())) {
          st.toggle(v);
          offer(st);
          improved = true;
        }
      }
    }
  }

  CheegerResult out;
  out.method = CheegerResult::Method::local_search_upper_bound;
  out.value = quotient(best_b, best_s);
  out.value.canonicalize();
  out.witness = members_of(g, best_flags);
  return out;
}

}  // namespace polyskel
