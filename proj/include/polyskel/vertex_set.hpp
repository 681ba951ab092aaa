#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "polyskel/hypercube.hpp"

namespace polyskel {

/// Sampling metadata of a random vertex set.
struct SampledProvenance {
  double p = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const SampledProvenance&, const SampledProvenance&) = default;
};

/// Dimensions up to this keep a dense membership bitmap (8 MiB at the cap).
inline constexpr int kDenseBitmapMaxDim = 26;
/// Upper limit for enumeration-based sampling.
inline constexpr int kSampleMaxDim = 20;

/// A subset V of {0,1}^n, sorted ascending by mask, without duplicates.
class VertexSet {
 public:
  /// Sorts and deduplicates; every member must have dimension n.
  static VertexSet from_vertices(int n, std::span<const Vertex> members);
  static VertexSet from_masks(int n, std::vector<std::uint64_t> masks);
  static VertexSet full_cube(int n);

  /// Every point of {0,1}^n is kept independently iff its deviate
  /// unit_deviate(seed, mask) is below p. 1 <= n <= 20, 0 <= p <= 1.
  static VertexSet sample(int n, double p, std::uint64_t seed);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return masks_.size(); }
  bool empty() const noexcept { return masks_.empty(); }

  std::span<const std::uint64_t> masks() const noexcept { return masks_; }
  std::uint64_t mask(std::size_t i) const noexcept { return masks_[i]; }
  Vertex vertex(std::size_t i) const { return Vertex(masks_[i], n_); }
  std::vector<Vertex> vertices() const;

  bool contains(std::uint64_t mask) const noexcept;
  bool contains(const Vertex& v) const noexcept;
  std::optional<std::size_t> index_of(std::uint64_t mask) const noexcept;

  bool has_bitmap() const noexcept { return !bitmap_.empty(); }
  std::span<const std::uint32_t> bitmap() const noexcept { return bitmap_; }

  const std::optional<SampledProvenance>& provenance() const noexcept { return provenance_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.masks_ == b.masks_ && a.provenance_ == b.provenance_;
  }

 private:
  VertexSet(int n, std::vector<std::uint64_t> masks, std::optional<SampledProvenance> prov);

  int n_ = 1;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint32_t> bitmap_;
  std::optional<SampledProvenance> provenance_;
};

/// Deterministic deviate in [0,1) keyed by (seed, mask): SplitMix64 finalizer
/// applied twice, top 53 bits scaled by 2^-53.
double unit_deviate(std::uint64_t seed, std::uint64_t mask) noexcept;

/// Text format: a header line "n=<dim> p=<prob> seed=<seed>" (p and seed are
/// "explicit" for non-sampled sets) followed by one lowercase hex mask per line.
void write_vertex_set(std::ostream& os, const VertexSet& vs);
VertexSet read_vertex_set(std::istream& is);

}  // namespace polyskel
