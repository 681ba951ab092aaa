#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "polyskel/skeleton.hpp"

namespace polyskel {

std::string MethodTag::to_string() const {
  switch (kind) {
    case Kind::exact:
      return "exact";
    case Kind::cube_criterion:
      return "gd:" + std::to_string(d);
    case Kind::custom:
      return "custom";
    case Kind::union_of: {
      std::string s = "union(";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) s += ',';
        s += parts[i].to_string();
      }
      return s + ")";
    }
  }
  return "custom";
}

namespace {

MethodTag parse_tag(const std::string& text, std::size_t& pos) {
  auto starts = [&](const char* word) { return text.compare(pos, std::char_traits<char>::length(word), word) == 0; };
  if (starts("exact")) {
    pos += 5;
    return MethodTag::exact();
  }
  if (starts("custom")) {
    pos += 6;
    return MethodTag::custom();
  }
  if (starts("gd:")) {
    pos += 3;
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    if (end == pos) throw std::invalid_argument("method tag: missing d in '" + text + "'");
    const int d = std::stoi(text.substr(pos, end - pos));
    pos = end;
    return MethodTag::cube_criterion(d);
  }
  if (starts("union(")) {
    pos += 6;
    std::vector<MethodTag> parts;
    for (;;) {
      parts.push_back(parse_tag(text, pos));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw std::invalid_argument("method tag: unterminated union in '" + text + "'");
    }
    return MethodTag::union_of(std::move(parts));
  }
  throw std::invalid_argument("method tag: cannot parse '" + text + "'");
}

}  // namespace

MethodTag MethodTag::parse(const std::string& text) {
  std::size_t pos = 0;
  MethodTag tag = parse_tag(text, pos);
  if (pos != text.size()) throw std::invalid_argument("method tag: trailing text in '" + text + "'");
  return tag;
}

SkeletonGraph::SkeletonGraph(std::shared_ptr<const VertexSet> vertices, std::vector<IndexEdge> edges, MethodTag tag)
    : vertices_(std::move(vertices)), tag_(std::move(tag)) {
  if (!vertices_) throw std::invalid_argument("skeleton graph needs a vertex set");
  const std::size_t m = vertices_->size();
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("skeleton graph: self-loop");
    if (a >= m || b >= m) throw std::out_of_range("skeleton graph: edge endpoint outside the vertex set");
    if (a > b) std::swap(a, b);
    if (tag_.kind == MethodTag::Kind::cube_criterion &&
        std::popcount(vertices_->mask(a) ^ vertices_->mask(b)) != tag_.d) {
      throw std::invalid_argument("skeleton graph: edge length differs from the cube-criterion distance");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adjacency_.assign(m, {});
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool SkeletonGraph::has_edge(VertexIndex i, VertexIndex j) const {
  if (i >= adjacency_.size() || j >= adjacency_.size()) return false;
  const auto& list = adjacency_[i];
  return std::binary_search(list.begin(), list.end(), j);
}

bool SkeletonGraph::has_edge_masks(std::uint64_t a, std::uint64_t b) const {
  const auto i = vertices_->index_of(a);
  const auto j = vertices_->index_of(b);
  return i && j && has_edge(static_cast<VertexIndex>(*i), static_cast<VertexIndex>(*j));
}

SkeletonGraph graph_union(const std::vector<const SkeletonGraph*>& graphs) {
  if (graphs.empty()) throw std::invalid_argument("union of no graphs");
  const auto& base = graphs.front()->vertex_set();
  std::vector<IndexEdge> edges;
  std::vector<MethodTag> parts;
  for (const auto* g : graphs) {
    if (!(g->vertex_set() == base)) throw std::invalid_argument("union of graphs over different vertex sets");
    edges.insert(edges.end(), g->edges().begin(), g->edges().end());
    parts.push_back(g->tag());
  }
  return SkeletonGraph(graphs.front()->shared_vertex_set(), std::move(edges), MethodTag::union_of(std::move(parts)));
}

std::map<int, std::size_t> edge_length_histogram(const SkeletonGraph& g) {
  std::map<int, std::size_t> hist;
  const auto& vs = g.vertex_set();
  for (const auto& [a, b] : g.edges()) ++hist[std::popcount(vs.mask(a) ^ vs.mask(b))];
  return hist;
}

}  // namespace polyskel
