#include "polyskel/vertex_set.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "polyskel/rng.hpp"

namespace polyskel {

VertexSet::VertexSet(int n, std::vector<std::uint64_t> masks, std::optional<SampledProvenance> prov)
    : n_(n), masks_(std::move(masks)), provenance_(prov) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("vertex set dimension must lie in [1, 63]");
  std::sort(masks_.begin(), masks_.end());
  masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
  for (auto m : masks_) {
    if ((m & ~low_mask(n)) != 0) throw std::invalid_argument("vertex mask exceeds set dimension");
  }
  if (n <= kDenseBitmapMaxDim) {
    bitmap_.assign((std::size_t{1} << n) / 32 + 1, 0);
    for (auto m : masks_) bitmap_[m >> 5] |= std::uint32_t{1} << (m & 31U);
  }
}

VertexSet VertexSet::from_vertices(int n, std::span<const Vertex> members) {
  std::vector<std::uint64_t> masks;
  masks.reserve(members.size());
  for (const auto& v : members) {
    if (v.dim() != n) throw DimensionMismatch(v.dim(), n);
    masks.push_back(v.bits());
  }
  return VertexSet(n, std::move(masks), std::nullopt);
}

VertexSet VertexSet::from_masks(int n, std::vector<std::uint64_t> masks) {
  return VertexSet(n, std::move(masks), std::nullopt);
}

VertexSet VertexSet::full_cube(int n) {
  if (n < 1 || n > kSampleMaxDim) throw std::invalid_argument("full cube limited to n <= 20");
  std::vector<std::uint64_t> masks(std::size_t{1} << n);
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = i;
  return VertexSet(n, std::move(masks), std::nullopt);
}

double unit_deviate(std::uint64_t seed, std::uint64_t mask) noexcept {
  const std::uint64_t h = splitmix64(splitmix64(seed) ^ mask);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

VertexSet VertexSet::sample(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sampling probability must lie in [0, 1]");
  if (n < 1 || n > kSampleMaxDim) throw std::invalid_argument("sampling enumerates {0,1}^n, needs 1 <= n <= 20");
  std::vector<std::uint64_t> masks;
  const std::uint64_t total = std::uint64_t{1} << n;
  masks.reserve(static_cast<std::size_t>(static_cast<double>(total) * p) + 16);
  for (std::uint64_t m = 0; m < total; ++m) {
    if (unit_deviate(seed, m) < p) masks.push_back(m);
  }
  return VertexSet(n, std::move(masks), SampledProvenance{p, seed});
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(masks_.size());
  for (auto m : masks_) out.emplace_back(m, n_);
  return out;
}

bool VertexSet::contains(std::uint64_t mask) const noexcept {
  if ((mask & ~low_mask(n_)) != 0) return false;
  if (!bitmap_.empty()) return (bitmap_[mask >> 5] >> (mask & 31U)) & 1U;
  return std::binary_search(masks_.begin(), masks_.end(), mask);
}

bool VertexSet::contains(const Vertex& v) const noexcept { return v.dim() == n_ && contains(v.bits()); }

std::optional<std::size_t> VertexSet::index_of(std::uint64_t mask) const noexcept {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  if (it == masks_.end() || *it != mask) return std::nullopt;
  return static_cast<std::size_t>(it - masks_.begin());
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string header_value(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) throw std::runtime_error("vertex set header: expected " + key + "=");
  return token.substr(key.size() + 1);
}

}  // namespace

void write_vertex_set(std::ostream& os, const VertexSet& vs) {
  os << "n=" << vs.dim();
  if (vs.provenance()) {
    os << " p=" << format_double(vs.provenance()->p) << " seed=" << vs.provenance()->seed;
  } else {
    os << " p=explicit seed=explicit";
  }
  os << '\n';
  char buf[32];
  for (auto m : vs.masks()) {
    auto res = std::to_chars(buf, buf + sizeof buf, m, 16);
    os.write(buf, res.ptr - buf);
    os << '\n';
  }
}

VertexSet read_vertex_set(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("vertex set: missing header");
  std::istringstream header(line);
  std::string tn, tp, ts;
  header >> tn >> tp >> ts;
  const int n = std::stoi(header_value(tn, "n"));
  const std::string p_text = header_value(tp, "p");
  const std::string seed_text = header_value(ts, "seed");

  std::vector<std::uint64_t> masks;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::uint64_t m = 0;
    auto res = std::from_chars(line.data(), line.data() + line.size(), m, 16);
    if (res.ec != std::errc{} || res.ptr != line.data() + line.size()) {
      throw std::runtime_error("vertex set: bad hex mask '" + line + "'");
    }
    masks.push_back(m);
  }
  if (p_text == "explicit") return VertexSet::from_masks(n, std::move(masks));

  // Sampled files are regenerated from their header and checked against the body.
  double p = 0.0;
  std::uint64_t seed = 0;
  std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
  std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
  VertexSet regenerated = VertexSet::sample(n, p, seed);
  VertexSet listed = VertexSet::from_masks(n, std::move(masks));
  if (!std::equal(regenerated.masks().begin(), regenerated.masks().end(), listed.masks().begin(),
                  listed.masks().end())) {
    throw std::runtime_error("vertex set: body does not match the sampling header");
  }
  return regenerated;
}

}  // namespace polyskel
