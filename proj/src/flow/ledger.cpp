#include "polyskel/ledger.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace polyskel {

void CongestionLedger::add_load(std::uint64_t a, std::uint64_t b, const Rational& weight) {
  if (sgn(weight) < 0) throw std::invalid_argument("negative flow weight");
  if (a == b) throw std::invalid_argument("ledger edge with equal endpoints");
  if (a > b) std::swap(a, b);
  loads_[{a, b}] += weight;
}

void CongestionLedger::add_path(std::span<const std::uint64_t> walk, const Rational& weight) {
  for (std::size_t i = 1; i < walk.size(); ++i) add_load(walk[i - 1], walk[i], weight);
}

void CongestionLedger::record_attempt(bool routed) {
  ++attempted_;
  if (routed) ++routed_;
}

void CongestionLedger::merge(const CongestionLedger& other) {
  if (other.mode_ != mode_) throw std::invalid_argument("merging ledgers of different modes");
  for (const auto& [edge, load] : other.loads_) loads_[edge] += load;
  routed_ += other.routed_;
  attempted_ += other.attempted_;
}

Rational CongestionLedger::load(std::uint64_t a, std::uint64_t b) const {
  if (a > b) std::swap(a, b);
  auto it = loads_.find({a, b});
  return it == loads_.end() ? Rational(0) : it->second;
}

Rational CongestionLedger::max_load() const {
  Rational best(0);
  for (const auto& [edge, load] : loads_) best = std::max(best, load);
  return best;
}

void CongestionLedger::write_csv(std::ostream& os) const {
  os << "edge_u_hex,edge_v_hex,load_numerator,load_denominator\n";
  os << std::hex;
  for (const auto& [edge, load] : loads_) {
    os << edge.first << ',' << edge.second << ',' << std::dec << load.get_num() << ',' << load.get_den() << std::hex
       << '\n';
  }
  os << std::dec;
}

const char* mode_name(CongestionLedger::Mode mode) noexcept {
  return mode == CongestionLedger::Mode::exact_all_pairs ? "exact_all_pairs" : "sampled";
}

ExpansionBound expansion_lower_bound(const CongestionLedger& ledger, std::size_t vertex_count) {
  if (ledger.empty()) throw std::invalid_argument("expansion bound of an empty ledger");
  Rational peak = ledger.max_load();
  ExpansionBound out;
  if (ledger.mode() == CongestionLedger::Mode::sampled) {
    if (ledger.routed() == 0) throw std::invalid_argument("sampled ledger routed no pairs");
    peak *= make_ratio(ledger.total_pairs(), ledger.routed());
  } else {
    out.certified = ledger.attempted() == ledger.total_pairs() && ledger.routed() == ledger.attempted();
  }
  out.value = Rational(static_cast<unsigned long>(vertex_count)) / (2 * peak);
  return out;
}

}  // namespace polyskel
