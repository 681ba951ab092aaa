#include <charconv>
#include <ostream>

#include "polyskel/skeleton.hpp"

namespace polyskel {

namespace {

void write_hex(std::ostream& os, std::uint64_t v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof buf, v, 16);
  os.write(buf, res.ptr - buf);
}

}  // namespace

void write_skeleton(std::ostream& os, const SkeletonGraph& g) {
  const auto& vs = g.vertex_set();
  os << "method=" << g.tag().to_string() << " n=" << vs.dim() << " vertices=" << vs.size()
     << " edges=" << g.num_edges() << '\n';
  // Masks are sorted, so index order is mask order and edges() is already sorted.
  for (const auto& [a, b] : g.edges()) {
    write_hex(os, vs.mask(a));
    os << ' ';
    write_hex(os, vs.mask(b));
    os << '\n';
  }
}

}  // namespace polyskel
