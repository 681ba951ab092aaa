#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>

#include "polyskel/rational.hpp"

namespace polyskel {

/// Per-edge flow loads of an all-pairs routing, keyed by (smaller mask, larger mask).
class CongestionLedger {
 public:
  enum class Mode { exact_all_pairs, sampled };
  using Edge = std::pair<std::uint64_t, std::uint64_t>;

  CongestionLedger() = default;
  /// total_pairs is the number of pairs an A-flow must serve (|V| choose 2);
  /// in sampled mode the routed pairs stand in for all of them.
  CongestionLedger(Mode mode, std::uint64_t total_pairs) : mode_(mode), total_pairs_(total_pairs) {}

  Mode mode() const noexcept { return mode_; }
  std::uint64_t total_pairs() const noexcept { return total_pairs_; }
  std::uint64_t routed() const noexcept { return routed_; }
  std::uint64_t attempted() const noexcept { return attempted_; }

  void add_load(std::uint64_t a, std::uint64_t b, const Rational& weight);
  /// Adds `weight` on every consecutive edge of a vertex sequence.
  void add_path(std::span<const std::uint64_t> walk, const Rational& weight = Rational(1));
  void record_attempt(bool routed);

  /// Per-edge addition plus counter sums; modes must agree.
  void merge(const CongestionLedger& other);

  const std::map<Edge, Rational>& loads() const noexcept { return loads_; }
  Rational load(std::uint64_t a, std::uint64_t b) const;
  bool empty() const noexcept { return loads_.empty(); }
  Rational max_load() const;

  /// Columns edge_u_hex, edge_v_hex, load_numerator, load_denominator.
  void write_csv(std::ostream& os) const;

 private:
  Mode mode_ = Mode::exact_all_pairs;
  std::uint64_t total_pairs_ = 0;
  std::uint64_t routed_ = 0;
  std::uint64_t attempted_ = 0;
  std::map<Edge, Rational> loads_;
};

const char* mode_name(CongestionLedger::Mode mode) noexcept;

struct ExpansionBound {
  Rational value;
  bool certified = false;
};

/// |V| / (2 max load). Certified only for an exact all-pairs ledger whose
/// every pair was routed; a sampled ledger first rescales its max load by
/// total_pairs / routed. Throws std::invalid_argument on an empty ledger.
ExpansionBound expansion_lower_bound(const CongestionLedger& ledger, std::size_t vertex_count);

}  // namespace polyskel
