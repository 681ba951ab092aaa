#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "polyskel/lab.hpp"
#include "polyskel/pure_path.hpp"
#include "polyskel/qnd.hpp"
#include "polyskel/rng.hpp"

namespace polyskel::lab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Random weight-k mask below bit n.
std::uint64_t random_weight_mask(int n, int k, Rng& rng) {
  std::uint64_t out = 0;
  while (std::popcount(out) < k) out |= std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(n));
  return out;
}

std::shared_ptr<const VertexSet> sample_shared(int n, const std::string& p, std::uint64_t seed) {
  return std::make_shared<const VertexSet>(VertexSet::sample(n, to_double(parse_rational(p)), seed));
}

}  // namespace

Record SuiteReport::to_record() const {
  Record r;
  r["schema"] = kSchemaVersion;
  r["lemma"] = lemma;
  r["trials"] = trials;
  r["violations"] = violations;
  r["status"] = passed ? "pass" : "fail";
  for (const auto& [k, v] : details) r[k] = v;
  return r;
}

SoundnessInstance soundness_instance(std::uint64_t index, std::uint64_t seed) {
  static const char* const probabilities[] = {"0.3", "0.5", "0.8"};
  return {3 + static_cast<int>(index % 4), probabilities[(index / 4) % 3], stream_seed(seed, index)};
}

SuiteReport verify_path_selection(int n, std::uint64_t trials, std::uint64_t seed) {
  SuiteReport rep;
  rep.lemma = "2.3";
  const Rational c = symmetric_flow_congestion(n, 1);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t x = 0; x < total; ++x) {
    for (std::uint64_t y = x + 1; y < total; ++y) pairs.emplace_back(x, y);
  }
  std::uint64_t misses = 0;
  Rational worst(0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto ledger = select_paths_randomized(n, 1, pairs, stream_seed(seed, t));
    const Rational peak = ledger.max_load();
    worst = std::max(worst, peak);
    if (peak > 2 * c) ++misses;
  }
  rep.trials = trials;
  // Success rule: at least 19 of every 20 trials stay within 2C.
  rep.passed = 20 * (trials - misses) >= 19 * trials;
  rep.violations = rep.passed ? 0 : 1;
  rep.note("n", std::to_string(n));
  rep.note("congestion_C", rational_text(c));
  rep.note("trials_over_2C", std::to_string(misses));
  rep.note("worst_max_load", rational_text(worst));
  return rep;
}

SuiteReport verify_grid_partition(int max_n) {
  SuiteReport rep;
  rep.lemma = "2.4-partition";
  for (int n = 1; n <= max_n; ++n) {
    for (int m = 1; m <= n; ++m) {
      ++rep.trials;
      const auto classes = grid_partition(m, n);
      bool ok = classes.size() == static_cast<std::size_t>(n);
      std::set<std::pair<int, int>> seen;
      for (const auto& cls : classes) {
        std::set<int> rows, cols;
        ok = ok && cls.size() == static_cast<std::size_t>(m);
        for (const auto& [r, c] : cls) {
          ok = ok && r >= 1 && r <= m && c >= 1 && c <= n;
          rows.insert(r);
          cols.insert(c);
          ok = ok && seen.insert({r, c}).second;
        }
        ok = ok && rows.size() == cls.size() && cols.size() == cls.size();
      }
      ok = ok && seen.size() == static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
      if (!ok) ++rep.violations;
    }
  }
  rep.passed = rep.violations == 0;
  rep.note("max_n", std::to_string(max_n));
  return rep;
}

SuiteReport verify_criteria(const std::string& which, std::uint64_t instances, std::uint64_t seed) {
  if (which != "2.6" && which != "2.7" && which != "both") throw std::invalid_argument("unknown criteria suite " + which);
  SuiteReport rep;
  rep.lemma = which == "both" ? "2.6+2.7" : which;
  std::uint64_t cube_violations = 0, filter_violations = 0, degree_violations = 0;
  std::uint64_t exact_edges = 0, gd_edges = 0, cert_a = 0, cert_b = 0, full_vertices = 0;
  for (std::uint64_t i = 0; i < instances; ++i) {
    const auto inst = soundness_instance(i, seed);
    const auto vs = sample_shared(inst.n, inst.p, inst.seed);
    ++rep.trials;
    if (vs->size() < 2) continue;
    const auto exact = build_exact_skeleton(vs);
    exact_edges += exact.num_edges();
    if (which != "2.7") {
      for (int d = 1; d <= inst.n; ++d) {
        const auto gd = build_gd(vs, d);
        gd_edges += gd.num_edges();
        for (const auto& [a, b] : gd.edges()) {
          if (!exact.has_edge(a, b)) ++cube_violations;
        }
      }
    }
    if (which != "2.6") {
      const auto members = vs->vertices();
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          const bool fa = nonedge_filter_a(members[a], members[b], *vs) || nonedge_filter_a(members[b], members[a], *vs);
          const bool fb = nonedge_filter_b(members[a], members[b], *vs).has_value();
          cert_a += fa ? 1 : 0;
          cert_b += fb ? 1 : 0;
          if ((fa || fb) && exact.has_edge(static_cast<VertexIndex>(a), static_cast<VertexIndex>(b))) ++filter_violations;
        }
      }
      // Full-degree members: degree n in G_1 and filter (a) against everything farther.
      const auto g1 = build_gd(vs, 1);
      for (const auto& u : full_degree_vertices(*vs)) {
        ++full_vertices;
        const auto ui = static_cast<VertexIndex>(*vs->index_of(u.bits()));
        if (g1.degree(ui) != static_cast<std::size_t>(inst.n)) ++degree_violations;
        for (const auto& v : members) {
          if (hamming(u, v) >= 2 && !nonedge_filter_a(u, v, *vs)) ++degree_violations;
        }
      }
    }
  }
  rep.violations = cube_violations + filter_violations + degree_violations;
  rep.passed = rep.violations == 0;
  rep.note("exact_edges", std::to_string(exact_edges));
  if (which != "2.7") {
    rep.note("cube_criterion_edges", std::to_string(gd_edges));
    rep.note("cube_criterion_violations", std::to_string(cube_violations));
  }
  if (which != "2.6") {
    rep.note("filter_a_certificates", std::to_string(cert_a));
    rep.note("filter_b_certificates", std::to_string(cert_b));
    rep.note("filter_violations", std::to_string(filter_violations));
    rep.note("full_degree_vertices", std::to_string(full_vertices));
    rep.note("certified_degree_violations", std::to_string(degree_violations));
  }
  return rep;
}

SuiteReport verify_projection(std::uint64_t instances, std::uint64_t seed) {
  SuiteReport rep;
  rep.lemma = "2.9";
  static const char* const probabilities[] = {"0.3", "0.5", "0.8"};
  std::uint64_t nontrivial = 0;
  for (std::uint64_t i = 0; i < instances; ++i) {
    const int n = 3 + static_cast<int>(i % 4);
    const int d = 1 + static_cast<int>((i / 4) % 2);
    const std::uint64_t s = stream_seed(seed, i);
    const auto vs = sample_shared(n, probabilities[(i / 8) % 3], s);
    ++rep.trials;
    if (vs->empty()) continue;
    const std::uint64_t keep = low_mask(n - d);
    std::vector<std::uint64_t> projected;
    for (auto m : vs->masks()) projected.push_back(m & keep);
    const auto ws = std::make_shared<const VertexSet>(VertexSet::from_masks(n - d, projected));

    const auto g = build_exact_skeleton(vs);
    const auto h = build_exact_skeleton(ws);
    Rng rng(s, 1);
    std::vector<char> in_a(vs->size(), 0);
    std::vector<char> in_b(ws->size(), 0);
    for (std::size_t v = 0; v < vs->size(); ++v) {
      if (rng.below(2) == 1) {
        in_a[v] = 1;
        in_b[*ws->index_of(vs->mask(v) & keep)] = 1;
      }
    }
    const auto cut_g = boundary_size(g, in_a);
    const auto cut_h = boundary_size(h, in_b);
    if (cut_h > 0) ++nontrivial;
    if (cut_g < cut_h) ++rep.violations;
  }
  rep.passed = rep.violations == 0;
  rep.note("nonzero_projected_cuts", std::to_string(nontrivial));
  return rep;
}

SuiteReport verify_symmetric_flow(int max_n, int uniform_max_n) {
  SuiteReport rep;
  rep.lemma = "3.1";
  std::uint64_t profile_mismatch = 0, bound_violations = 0, long_paths = 0, uniform_violations = 0;
  for (int n = 2; n <= max_n; ++n) {
    for (int d = 1; d < n; d += 2) {
      ++rep.trials;
      if (qnd_distance_profile(n, d) != qnd_distance_profile_by_weight(n, d)) ++profile_mismatch;
      const Rational c = symmetric_flow_congestion(n, d);
      const Rational cap = make_ratio(static_cast<std::uint64_t>(n) << n, binomial(n, d));
      if (c > cap) ++bound_violations;
      if (QndMetric(n, d).diameter() > n) ++long_paths;
    }
  }
  for (int n = 2; n <= uniform_max_n; ++n) {
    ++rep.trials;
    const Rational c = symmetric_flow_congestion(n, 1);
    const auto ledger = uniform_geodesic_flow_loads(n, 1);
    const std::size_t expected_edges = static_cast<std::size_t>(n) << (n - 1);
    bool uniform = ledger.loads().size() == expected_edges;
    for (const auto& [edge, load] : ledger.loads()) uniform = uniform && load == c;
    if (!uniform) ++uniform_violations;
  }
  const Rational c31 = symmetric_flow_congestion(3, 1);
  ++rep.trials;
  const bool anchor_ok = c31 == 4;
  rep.violations = profile_mismatch + bound_violations + long_paths + uniform_violations + (anchor_ok ? 0 : 1);
  rep.passed = rep.violations == 0;
  rep.note("profile_mismatches", std::to_string(profile_mismatch));
  rep.note("bound_violations", std::to_string(bound_violations));
  rep.note("diameter_over_n", std::to_string(long_paths));
  rep.note("nonuniform_loads", std::to_string(uniform_violations));
  rep.note("C_3_1", rational_text(c31));
  return rep;
}

SuiteReport verify_edge_counts(const std::vector<int>& ns, std::uint64_t edges_per_n, std::uint64_t seed) {
  SuiteReport rep;
  rep.lemma = "3.3";
  std::vector<double> log_d, log_count;
  for (int n : ns) {
    Rng rng(seed, static_cast<std::uint64_t>(n));
    std::set<std::uint64_t> counts;
    std::uint64_t count = 0;
    for (std::uint64_t e = 0; e < edges_per_n; ++e) {
      ++rep.trials;
      const std::uint64_t a = rng.below(std::uint64_t{1} << n);
      const std::uint64_t b = a ^ (std::uint64_t{1} << rng.below(static_cast<std::uint64_t>(n)));
      count = count_pure_paths_through_edge(Vertex(a, n), Vertex(b, n), 1);
      counts.insert(count);
    }
    const std::uint64_t dd = binomial(n, 1);
    const double cap = 14.0 * 27.0 * std::pow(static_cast<double>(dd), 4);
    const std::uint64_t closed = 8 * binomial(n - 1, 3) * static_cast<std::uint64_t>(n - 4) +
                                 2 * binomial(n - 1, 2) * static_cast<std::uint64_t>((n - 3) * (n - 4));
    if (counts.size() != 1) ++rep.violations;
    if (static_cast<double>(count) > cap) ++rep.violations;
    if (count != closed) ++rep.violations;
    rep.note("count_n" + std::to_string(n), std::to_string(count));
    log_d.push_back(std::log(static_cast<double>(dd)));
    log_count.push_back(std::log(static_cast<double>(count)));
  }
  if (log_d.size() >= 2) {
    const double k = static_cast<double>(log_d.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_d.size(); ++i) {
      sx += log_d[i];
      sy += log_count[i];
      sxx += log_d[i] * log_d[i];
      sxy += log_d[i] * log_count[i];
    }
    rep.note("growth_exponent_vs_D", fmt((k * sxy - sx * sy) / (k * sxx - sx * sx)));
  }
  rep.passed = rep.violations == 0;
  return rep;
}

SuiteReport verify_pure_path_statistics(int n, const std::string& p_text, std::uint64_t pairs, std::uint64_t seed) {
  SuiteReport rep;
  rep.lemma = "3.4-empirical";
  const double p = to_double(parse_rational(p_text));
  std::uint64_t structural = 0;

  auto check_paths = [&](const std::vector<PurePath>& paths) {
    for (const auto& path : paths) {
      bool ok = (path.t & path.u) == 0 && ((path.t | path.u) & (path.x ^ path.y)) == 0;
      for (std::size_t i = 1; i < 8; ++i) ok = ok && std::popcount(path.masks[i - 1] ^ path.masks[i]) == 1;
      const auto thirds = split_thirds(path.x ^ path.y);
      ok = ok && thirds[0] == path.f1 && thirds[1] == path.f2 && thirds[2] == path.f3;
      ok = ok && path.masks[0] == path.x && path.masks[7] == path.y;
      if (!ok) ++structural;
    }
  };

  // Full cube at n = 6: every distance-3 pair has exactly (n-3)(n-4) paths.
  {
    const int m = 6;
    const auto full = std::make_shared<const VertexSet>(VertexSet::full_cube(m));
    const auto g1 = build_gd(full, 1);
    std::uint64_t wrong = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
      for_each_weight_submask(low_mask(m), 3, [&](std::uint64_t off) {
        const auto paths = enumerate_pure_paths_masks(x, x ^ off, g1);
        check_paths(paths);
        if (paths.size() != static_cast<std::size_t>((m - 3) * (m - 4))) ++wrong;
      });
    }
    rep.violations += wrong;
    rep.note("full_cube_n6_mismatches", std::to_string(wrong));
  }
  // Twenty sampled sets at n = 6: mean over every distance-3 member pair.
  {
    const int m = 6;
    double total = 0;
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto vs = sample_shared(m, p_text, stream_seed(seed, 1000 + s));
      const auto g1 = build_gd(vs, 1);
      for (auto x : vs->masks()) {
        for_each_weight_submask(low_mask(m), 3, [&](std::uint64_t off) {
          if (!vs->contains(x ^ off)) return;
          const auto paths = enumerate_pure_paths_masks(x, x ^ off, g1);
          check_paths(paths);
          total += static_cast<double>(paths.size());
          ++count;
        });
      }
    }
    const double expected = 6.0 * std::pow(p, 6);
    const double mean = count ? total / static_cast<double>(count) : 0.0;
    const bool ok = count > 0 && std::fabs(mean - expected) <= 0.2 * expected;
    if (!ok) ++rep.violations;
    rep.note("n6_sampled_pairs", std::to_string(count));
    rep.note("n6_sampled_mean", fmt(mean));
    rep.note("n6_expected", fmt(expected));
  }
  // The main sample: random distance-3 member pairs at dimension n.
  {
    const auto vs = sample_shared(n, p_text, seed);
    const auto g1 = build_gd(vs, 1);
    Rng rng(seed, 0);
    double total = 0;
    std::uint64_t drawn = 0;
    for (std::uint64_t attempts = 0; drawn < pairs && attempts < 1000 * pairs && vs->size() > 0; ++attempts) {
      const std::uint64_t x = vs->mask(rng.below(vs->size()));
      const std::uint64_t y = x ^ random_weight_mask(n, 3, rng);
      if (!vs->contains(y)) continue;
      const auto paths = enumerate_pure_paths_masks(x, y, g1);
      check_paths(paths);
      total += static_cast<double>(paths.size());
      ++drawn;
    }
    rep.trials = drawn;
    const double expected = static_cast<double>((n - 3) * (n - 4)) * std::pow(p, 6);
    const double mean = drawn ? total / static_cast<double>(drawn) : 0.0;
    const bool ok = drawn == pairs && std::fabs(mean - expected) <= 0.2 * expected;
    if (!ok) ++rep.violations;
    rep.note("n", std::to_string(n));
    rep.note("p", p_text);
    rep.note("sample_mean_Y", fmt(mean));
    rep.note("expected_Y", fmt(expected));
    rep.note("relative_error", fmt(expected > 0 ? std::fabs(mean - expected) / expected : 0.0));
  }
  rep.violations += structural;
  rep.note("structural_violations", std::to_string(structural));
  rep.passed = rep.violations == 0;
  return rep;
}

std::vector<std::string> lemma_ids() { return {"2.3", "2.4-partition", "2.6", "2.7", "2.9", "3.1", "3.3", "3.4-empirical"}; }

SuiteReport run_verify(const std::string& lemma, const VerifyParams& params) {
  if (lemma == "2.3") return verify_path_selection(params.n.value_or(6), params.trials.value_or(20), params.seed);
  if (lemma == "2.4-partition") return verify_grid_partition(params.n.value_or(50));
  if (lemma == "2.6" || lemma == "2.7") return verify_criteria(lemma, params.trials.value_or(200), params.seed);
  if (lemma == "2.9") return verify_projection(params.trials.value_or(50), params.seed);
  if (lemma == "3.1") return verify_symmetric_flow(params.n.value_or(10), 6);
  if (lemma == "3.3") return verify_edge_counts({5, 6, 7}, params.trials.value_or(5), params.seed);
  if (lemma == "3.4-empirical") {
    return verify_pure_path_statistics(params.n.value_or(16), params.p.value_or("0.7"), params.pairs.value_or(100),
                                       params.seed);
  }
  throw std::invalid_argument("unknown lemma id '" + lemma + "'");
}

}  // namespace polyskel::lab
