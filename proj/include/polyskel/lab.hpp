#pragma once

// Experiment driver: reports, property suites and the polylab CLI.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyskel/cheeger.hpp"
#include "polyskel/rational.hpp"
#include "polyskel/reroute.hpp"
#include "polyskel/skeleton.hpp"

namespace polyskel::lab {

/// Flat record; CSV writes its keys as the header row, JSON writes it as is.
using Record = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { csv, json };

void write_records(std::ostream& os, const std::vector<Record>& rows, Format format);

/// The alpha values swept when none is given.
std::vector<Rational> default_alpha_sweep();

/// floor(log2(ln n) / 2 + c0 log2(1/p)), lowered to the next odd value and
/// clamped at 1.
int select_d(int n, double p, double c0);

/// p (1 - p)^(2^d - 2), exact.
Rational edge_probability(const Rational& p, int d);

/// Appends N, D, q and nN/D for (n, p, d).
void add_parameter_fields(Record& r, int n, const std::optional<Rational>& p, int d);

/// Degree statistics, histogram, full-degree and alpha-full counts of g.
void add_graph_fields(Record& r, const SkeletonGraph& g, const std::vector<Rational>& alphas);

/// Ledger summary and the derived expansion bound.
void add_flow_fields(Record& r, const RerouteResult& result, std::size_t vertex_count);

std::string rational_text(const Rational& q);
std::string alpha_key(const Rational& alpha);

// -- verification suites -------------------------------------------------------

struct SuiteReport {
  std::string lemma;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  bool passed = false;
  /// Extra counters and measured values, in emission order.
  std::vector<std::pair<std::string, std::string>> details;

  void note(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
  Record to_record() const;
};

struct VerifyParams {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> trials;
  std::optional<int> n;
  std::optional<std::string> p;
  std::optional<std::uint64_t> pairs;
};

std::vector<std::string> lemma_ids();
/// Throws std::invalid_argument for an unknown id.
SuiteReport run_verify(const std::string& lemma, const VerifyParams& params);

// Individual suites, parameterized for the acceptance harness.
SuiteReport verify_path_selection(int n, std::uint64_t trials, std::uint64_t seed);
SuiteReport verify_grid_partition(int max_n);
/// Cube-criterion soundness (which = "2.6") or filter soundness ("2.7") over
/// seeded instances with n in 3..6 and p in {0.3, 0.5, 0.8}.
SuiteReport verify_criteria(const std::string& which, std::uint64_t instances, std::uint64_t seed);
SuiteReport verify_projection(std::uint64_t instances, std::uint64_t seed);
SuiteReport verify_symmetric_flow(int max_n, int uniform_max_n);
SuiteReport verify_edge_counts(const std::vector<int>& ns, std::uint64_t edges_per_n, std::uint64_t seed);
SuiteReport verify_pure_path_statistics(int n, const std::string& p, std::uint64_t pairs, std::uint64_t seed);

/// Instance generator shared by the soundness suites and the acceptance run.
struct SoundnessInstance {
  int n;
  std::string p;
  std::uint64_t seed;
};
SoundnessInstance soundness_instance(std::uint64_t index, std::uint64_t seed);

// -- trend ---------------------------------------------------------------------

struct TrendParams {
  std::vector<int> ns{8, 10, 12};
  std::string p = "0.7";
  int d = 1;
  std::uint64_t seeds = 5;
  std::uint64_t seed = 1;
  std::uint64_t pairs = 2000;
  double c0 = 0.5;
  Rational alpha{1, 5};
};

/// One row per (n, seed) followed by one median row per n.
std::vector<Record> run_trend(const TrendParams& params);

// -- CLI -------------------------------------------------------------------------

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsageError = 2, kCapError = 3 };

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyskel::lab
