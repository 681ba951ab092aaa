// Acceptance harness: one PASS/FAIL line per criterion, thresholds fixed below.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyskel/cheeger.hpp"
#include "polyskel/lab.hpp"
#include "polyskel/ledger.hpp"
#include "polyskel/pure_path.hpp"
#include "polyskel/reroute.hpp"
#include "polyskel/skeleton.hpp"

namespace {

using namespace polyskel;
using lab::SuiteReport;

// Pinned thresholds.
constexpr int kCheegerMaxN = 4;
constexpr std::uint64_t kSoundnessInstances = 200;
constexpr std::size_t kFlowSoundnessMaxVertices = 16;
constexpr std::uint64_t kFlowSoundnessRandomSets = 50;
constexpr int kSymmetricFlowMaxN = 10;
constexpr int kUniformLoadMaxN = 6;
constexpr int kPathSelectionN = 6;
constexpr std::uint64_t kPathSelectionTrials = 20;
constexpr int kPureCountMinN = 5, kPureCountMaxN = 8;
constexpr int kPureSampleN = 16;
constexpr const char* kPureSampleP = "0.7";
constexpr std::uint64_t kPureSamplePairs = 100;
constexpr std::uint64_t kEdgeCountProbes = 5;
constexpr int kRerouteN = 12;
constexpr const char* kRerouteP = "0.7";
constexpr std::uint64_t kRerouteSeeds = 5;
constexpr std::uint64_t kReroutePairs = 2000;
constexpr double kRoutedFraction = 0.95;
constexpr std::uint64_t kProjectionInstances = 50;
constexpr int kDetectorN = 12;
constexpr double kDetectorP = 0.8;
constexpr std::uint64_t kDetectorSeeds = 10;
constexpr std::uint64_t kDetectorMinHits = 9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string details(const SuiteReport& rep) {
  std::string out = "trials=" + std::to_string(rep.trials) + " violations=" + std::to_string(rep.violations);
  for (const auto& [k, v] : rep.details) out += " " + k + "=" + v;
  return out;
}

Outcome from_suite(const SuiteReport& rep) { return {rep.passed, details(rep)}; }

Outcome harper_anchor(std::uint64_t) {
  std::string detail;
  bool pass = true;
  for (int n = 2; n <= kCheegerMaxN; ++n) {
    auto vs = std::make_shared<const VertexSet>(VertexSet::full_cube(n));
    const auto h = exact_cheeger(build_exact_skeleton(vs)).value;
    pass = pass && h == 1;
    detail += "h(Q" + std::to_string(n) + ")=" + to_string(h) + " ";
  }
  return {pass, detail};
}

Outcome criterion_soundness(std::uint64_t seed) {
  return from_suite(lab::verify_criteria("both", kSoundnessInstances, seed));
}

// Compares the certified flow bound with h(G) on one set; returns false on a violation.
struct FlowSoundness {
  std::uint64_t sets = 0, certified = 0, violations = 0, routed = 0, attempted = 0;

  void check(std::shared_ptr<const VertexSet> vs, std::uint64_t seed) {
    if (vs->size() < 2) return;
    ++sets;
    RerouteConfig config;
    config.seed = seed;
    const auto result = reroute_flow(vs, config);
    routed += result.ledger.routed();
    attempted += result.ledger.attempted();
    if (result.ledger.empty()) return;
    const auto bound = expansion_lower_bound(result.ledger, vs->size());
    if (!bound.certified) return;
    ++certified;
    if (bound.value > exact_cheeger(build_exact_skeleton(vs)).value) ++violations;
  }
};

Outcome flow_soundness(std::uint64_t seed) {
  FlowSoundness fs;
  const int n = 4;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << (1 << n)); ++subset) {
    std::vector<std::uint64_t> masks;
    for (std::uint64_t m = subset; m != 0; m &= m - 1) masks.push_back(static_cast<std::uint64_t>(std::countr_zero(m)));
    fs.check(std::make_shared<const VertexSet>(VertexSet::from_masks(n, std::move(masks))), seed ^ subset);
  }
  std::uint64_t drawn = 0;
  for (std::uint64_t i = 0; drawn < kFlowSoundnessRandomSets; ++i) {
    const int dim = 5 + static_cast<int>(i % 2);
    auto vs = std::make_shared<const VertexSet>(VertexSet::sample(dim, dim == 5 ? 0.4 : 0.2, seed * 1000 + i));
    if (vs->size() < 2 || vs->size() > kFlowSoundnessMaxVertices) continue;
    ++drawn;
    fs.check(vs, seed + i);
  }
  std::string detail = "sets=" + std::to_string(fs.sets) + " certified=" + std::to_string(fs.certified) +
                       " violations=" + std::to_string(fs.violations) + " pairs_routed=" + std::to_string(fs.routed) +
                       "/" + std::to_string(fs.attempted);
  if (fs.certified == 0) detail += " (no instance certified; comparison vacuous)";
  return {fs.violations == 0, detail};
}

Outcome symmetric_flow(std::uint64_t) {
  return from_suite(lab::verify_symmetric_flow(kSymmetricFlowMaxN, kUniformLoadMaxN));
}

Outcome path_selection(std::uint64_t seed) {
  return from_suite(lab::verify_path_selection(kPathSelectionN, kPathSelectionTrials, seed));
}

Outcome pure_paths(std::uint64_t seed) {
  std::uint64_t pairs = 0, mismatches = 0;
  for (int n = kPureCountMinN; n <= kPureCountMaxN; ++n) {
    auto vs = std::make_shared<const VertexSet>(VertexSet::full_cube(n));
    const auto g1 = build_gd(vs, 1);
    const auto expected = static_cast<std::size_t>((n - 3) * (n - 4));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      for_each_weight_submask(low_mask(n), 3, [&](std::uint64_t diff) {
        ++pairs;
        if (enumerate_pure_paths_masks(x, x ^ diff, g1).size() != expected) ++mismatches;
      });
    }
  }
  const auto sampled = lab::verify_pure_path_statistics(kPureSampleN, kPureSampleP, kPureSamplePairs, seed);
  return {mismatches == 0 && sampled.passed, "full_cube_pairs=" + std::to_string(pairs) +
                                                 " count_mismatches=" + std::to_string(mismatches) + " sampled: " +
                                                 details(sampled)};
}

Outcome edge_counts(std::uint64_t seed) { return from_suite(lab::verify_edge_counts({5, 6, 7}, kEdgeCountProbes, seed)); }

Outcome rerouting(std::uint64_t seed) {
  lab::TrendParams params;
  params.ns = {8, 10, kRerouteN};
  params.p = kRerouteP;
  params.d = 1;
  params.seeds = kRerouteSeeds;
  params.seed = seed;
  params.pairs = kReroutePairs;
  const auto rows = lab::run_trend(params);

  std::uint64_t routed = 0, attempted = 0, invalid = 0, nonpositive = 0;
  std::vector<double> medians;
  bool medians_complete = true;
  for (const auto& row : rows) {
    if (row["row"] == "median") {
      if (row.contains("bound_decimal")) {
        medians.push_back(row["bound_decimal"].get<double>());
      } else {
        medians_complete = false;
      }
      continue;
    }
    if (row["n"].get<int>() != kRerouteN) continue;
    routed += row.value("pairs_routed", std::uint64_t{0});
    attempted += row.value("pairs_attempted", std::uint64_t{0});
    invalid += row.value("invalid_edges", std::uint64_t{0});
    if (!row.contains("bound_decimal") || !row["bound_decimal"].is_number() || row["bound_decimal"].get<double>() <= 0) {
      ++nonpositive;
    }
  }
  const double fraction = attempted == 0 ? 0.0 : static_cast<double>(routed) / static_cast<double>(attempted);
  const bool trend = medians_complete && std::is_sorted(medians.begin(), medians.end());
  std::ostringstream detail;
  detail << "routed=" << routed << "/" << attempted << " (" << fraction << ", need >= " << kRoutedFraction << ")"
         << " invalid_edges=" << invalid << " nonpositive_estimates=" << nonpositive << " medians(n=8,10,12)=";
  for (double m : medians) detail << m << ",";
  detail << (trend ? " nondecreasing" : " not nondecreasing");
  return {fraction >= kRoutedFraction && invalid == 0 && nonpositive == 0 && trend, detail.str()};
}

Outcome projection(std::uint64_t seed) { return from_suite(lab::verify_projection(kProjectionInstances, seed)); }

Outcome full_degree_detector(std::uint64_t seed) {
  std::uint64_t hits = 0, vertices = 0, wrong_degree = 0;
  for (std::uint64_t s = 0; s < kDetectorSeeds; ++s) {
    auto vs = std::make_shared<const VertexSet>(VertexSet::sample(kDetectorN, kDetectorP, seed + s));
    const auto full = full_degree_vertices(*vs);
    if (!full.empty()) ++hits;
    const auto g1 = build_gd(vs, 1);
    for (const auto& u : full) {
      ++vertices;
      // Certified neighbours come from the cube criterion, certified non-neighbours from filter (a).
      std::size_t certified_degree = g1.degree(static_cast<VertexIndex>(*vs->index_of(u.bits())));
      for (std::size_t i = 0; i < vs->size(); ++i) {
        const auto v = vs->vertex(i);
        if (hamming(u, v) >= 2 && !nonedge_filter_a(u, v, *vs)) ++certified_degree;
      }
      if (certified_degree != static_cast<std::size_t>(kDetectorN)) ++wrong_degree;
    }
  }
  return {hits >= kDetectorMinHits && wrong_degree == 0,
          "seeds_with_full_degree=" + std::to_string(hits) + "/" + std::to_string(kDetectorSeeds) +
              " full_degree_vertices=" + std::to_string(vertices) + " degree_mismatches=" + std::to_string(wrong_degree)};
}

Outcome determinism(std::uint64_t seed) {
  const std::string s = std::to_string(seed);
  const std::vector<std::vector<std::string>> commands = {
      {"sample", "--n", "10", "--p", "0.5", "--seed", s},
      {"skeleton", "--n", "6", "--p", "0.5", "--seed", s, "--method", "exact"},
      {"flowbound", "--n", "10", "--p", "0.7", "--seed", s, "--mode", "sampled", "--pairs", "300"},
      {"flowbound", "--n", "6", "--p", "0.6", "--seed", s, "--format", "json"},
      {"verify", "--lemma", "2.6", "--seed", s, "--trials", "20", "--format", "json"},
      {"verify", "--lemma", "3.4-empirical", "--seed", s, "--n", "12", "--pairs", "50"},
      {"trend", "--ns", "8,10", "--trials", "2", "--seed", s, "--pairs", "200"},
      {"dselect", "--n", "100", "--p", "0.3"},
  };
  std::uint64_t differing = 0, errors = 0;
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int c1 = lab::run(args, out1, err1);
    const int c2 = lab::run(args, out2, err2);
    if (c1 != c2 || out1.str() != out2.str()) ++differing;
    if (c1 == lab::kUsageError || c1 == lab::kCapError || out1.str().empty()) ++errors;
  }
  return {differing == 0 && errors == 0, "commands=" + std::to_string(commands.size()) +
                                             " differing=" + std::to_string(differing) +
                                             " errored=" + std::to_string(errors)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(std::uint64_t)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the polytope skeleton lab"};
  std::vector<int> selected;
  std::uint64_t seed = 1;
  app.add_option("--criterion,-c", selected, "Criteria to run (default: all)")->check(CLI::Range(1, 11));
  app.add_option("--seed", seed, "Base seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "exact expansion of the full cube is 1", harper_anchor},
      {2, "cube criterion and non-edge filters agree with the exact skeleton", criterion_soundness},
      {3, "certified flow bounds never exceed the exact expansion", flow_soundness},
      {4, "symmetric flow congestion, bound and uniform loads", symmetric_flow},
      {5, "randomized path selection within twice the congestion", path_selection},
      {6, "pure-path counts on the full cube and sampled means", pure_paths},
      {7, "per-edge pure-path counts are uniform and bounded", edge_counts},
      {8, "sampled rerouting coverage and trend", rerouting},
      {9, "projection never increases the cut", projection},
      {10, "full-degree detector with certified degree n", full_degree_detector},
      {11, "byte-identical reruns", determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(seed);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("criterion %d: %s  %s  [%s] (%.1fs)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
