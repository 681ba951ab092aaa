#include <algorithm>
#include <cstdio>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "polyskel/lab.hpp"
#include "polyskel/vertex_set.hpp"

namespace polyskel::lab {

namespace {

std::string csv_cell(const nlohmann::ordered_json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

void write_records(std::ostream& os, const std::vector<Record>& rows, Format format) {
  if (format == Format::json) {
    if (rows.size() == 1) {
      os << rows.front().dump(2) << '\n';
    } else {
      os << Record(rows).dump(2) << '\n';
    }
    return;
  }
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, value] : rows.front().items()) {
      os << (first ? "" : ",") << (row.contains(key) ? csv_cell(row.at(key)) : std::string());
      first = false;
    }
    os << '\n';
  }
}

std::vector<Rational> default_alpha_sweep() {
  return {Rational(1, 10), Rational(1, 5), Rational(3, 10), Rational(1, 2)};
}

int select_d(int n, double p, double c0) {
  if (n < 2) throw std::invalid_argument("d-selection needs n >= 2");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("d-selection needs 0 < p < 1");
  const double raw = 0.5 * std::log2(std::log(static_cast<double>(n))) + c0 * std::log2(1.0 / p);
  int d = static_cast<int>(std::floor(raw));
  if (d % 2 == 0) --d;
  return std::max(d, 1);
}

Rational edge_probability(const Rational& p, int d) {
  if (d < 1 || d > 16) throw std::invalid_argument("edge probability needs 1 <= d <= 16");
  const unsigned exponent = (1U << d) - 2;
  return p * pow(Rational(1) - p, exponent);
}

std::string rational_text(const Rational& q) { return to_string(q); }

std::string alpha_key(const Rational& alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", to_double(alpha));
  return std::string("alpha_full_") + buf;
}

void add_parameter_fields(Record& r, int n, const std::optional<Rational>& p, int d) {
  const std::uint64_t big_n = std::uint64_t{1} << n;
  const std::uint64_t big_d = binomial(n, d);
  r["N"] = big_n;
  r["D"] = big_d;
  if (p) {
    const Rational q = edge_probability(*p, d);
    r["q"] = rational_text(q);
    r["q_decimal"] = to_double(q);
  } else {
    r["q"] = "";
    r["q_decimal"] = "";
  }
  r["nN_over_D"] = rational_text(make_ratio(static_cast<std::uint64_t>(n) * big_n, big_d));
}

void add_graph_fields(Record& r, const SkeletonGraph& g, const std::vector<Rational>& alphas) {
  const auto& vs = g.vertex_set();
  r["vertices"] = vs.size();
  r["edges"] = g.num_edges();
  std::size_t lo = 0, hi = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const std::size_t deg = g.degree(static_cast<VertexIndex>(v));
    lo = v == 0 ? deg : std::min(lo, deg);
    hi = std::max(hi, deg);
  }
  r["min_degree"] = lo;
  r["max_degree"] = hi;
  if (vs.empty()) {
    r["mean_degree"] = "";
  } else {
    Rational mean(static_cast<unsigned long>(2 * g.num_edges()), static_cast<unsigned long>(vs.size()));
    mean.canonicalize();
    r["mean_degree"] = rational_text(mean);
  }
  std::string hist;
  for (const auto& [len, count] : edge_length_histogram(g)) {
    if (!hist.empty()) hist += ';';
    hist += std::to_string(len) + ":" + std::to_string(count);
  }
  r["edge_lengths"] = hist;
  r["full_degree_count"] = full_degree_vertices(vs).size();
  for (const auto& a : alphas) r[alpha_key(a)] = alpha_full_vertices(vs, a).size();
}

void add_flow_fields(Record& r, const RerouteResult& result, std::size_t vertex_count) {
  const auto& ledger = result.ledger;
  r["mode"] = mode_name(ledger.mode());
  r["pairs_total"] = ledger.total_pairs();
  r["pairs_attempted"] = ledger.attempted();
  r["pairs_routed"] = ledger.routed();
  r["failures_empty_endpoint"] = result.failures.empty_endpoint_candidates;
  r["failures_empty_inner"] = result.failures.empty_inner_candidates;
  r["failures_no_pure_path"] = result.failures.no_pure_path;
  r["invalid_edges"] = result.invalid_edges;
  r["endpoint_mismatches"] = result.endpoint_mismatches;
  r["longest_path"] = result.longest_path;
  r["loaded_edges"] = ledger.loads().size();
  if (ledger.empty()) {
    r["max_load"] = "";
    r["bound"] = "";
    r["bound_decimal"] = "";
    r["bound_kind"] = "none";
    return;
  }
  r["max_load"] = rational_text(ledger.max_load());
  const auto bound = expansion_lower_bound(ledger, vertex_count);
  r["bound"] = rational_text(bound.value);
  r["bound_decimal"] = to_double(bound.value);
  r["bound_kind"] = bound.certified ? "certified" : "estimate";
}

std::vector<Record> run_trend(const TrendParams& params) {
  const Rational p_exact = parse_rational(params.p);
  const double p = to_double(p_exact);
  const auto alphas = default_alpha_sweep();
  std::vector<Record> rows;
  std::vector<Record> medians;
  for (int n : params.ns) {
    std::vector<Rational> bounds;
    for (std::uint64_t s = 0; s < params.seeds; ++s) {
      const std::uint64_t seed = params.seed + s;
      auto vs = std::make_shared<const VertexSet>(VertexSet::sample(n, p, seed));
      Record row;
      row["schema"] = kSchemaVersion;
      row["row"] = "seed";
      row["n"] = n;
      row["p"] = params.p;
      row["seed"] = seed;
      row["d"] = params.d;
      row["d_selected"] = p > 0.0 && p < 1.0 && n >= 2 ? std::to_string(select_d(n, p, params.c0)) : "";
      row["c0"] = params.c0;
      add_parameter_fields(row, n, p_exact, params.d);
      row["vertices"] = vs->size();
      const auto full = full_degree_vertices(*vs).size();
      row["full_degree_count"] = full;
      // A full-degree vertex has skeleton degree exactly n, which caps h(G).
      row["degree_upper_bound"] = full > 0 ? std::to_string(n) : "";
      for (const auto& a : alphas) row[alpha_key(a)] = alpha_full_vertices(*vs, a).size();
      if (vs->size() >= 2) {
        RerouteConfig config;
        config.d = params.d;
        config.alpha = params.alpha;
        config.mode = CongestionLedger::Mode::sampled;
        config.pair_budget = params.pairs;
        config.seed = seed;
        const auto result = reroute_flow(vs, config);
        add_flow_fields(row, result, vs->size());
        if (!result.ledger.empty()) bounds.push_back(expansion_lower_bound(result.ledger, vs->size()).value);
      }
      rows.push_back(std::move(row));
    }
    Record med;
    med["schema"] = kSchemaVersion;
    med["row"] = "median";
    med["n"] = n;
    med["p"] = params.p;
    if (!bounds.empty()) {
      std::sort(bounds.begin(), bounds.end());
      const std::size_t k = bounds.size();
      const Rational m = k % 2 == 1 ? bounds[k / 2] : (bounds[k / 2 - 1] + bounds[k / 2]) / 2;
      med["bound"] = rational_text(m);
      med["bound_decimal"] = to_double(m);
      med["bound_kind"] = "estimate";
    }
    medians.push_back(std::move(med));
  }
  rows.insert(rows.end(), medians.begin(), medians.end());
  return rows;
}

}  // namespace polyskel::lab
