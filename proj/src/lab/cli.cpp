#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "polyskel/errors.hpp"
#include "polyskel/lab.hpp"

namespace polyskel::lab {

namespace {

struct SourceOptions {
  std::string input;
  std::optional<int> n;
  std::optional<std::string> p;
  std::optional<std::uint64_t> seed;
};

void add_source_options(CLI::App* cmd, SourceOptions& src) {
  cmd->add_option("--input", src.input, "Vertex-set file written by 'sample'");
  cmd->add_option("--n", src.n, "Dimension when sampling in place")->check(CLI::Range(1, 20));
  cmd->add_option("--p", src.p, "Sampling probability, decimal or a/b");
}

double probability(const std::string& text) {
  const Rational p = parse_rational(text);
  if (p < 0 || p > 1) throw std::invalid_argument("--p must lie in [0, 1]");
  return to_double(p);
}

std::shared_ptr<const VertexSet> load_source(const SourceOptions& src, std::uint64_t seed) {
  if (!src.input.empty()) {
    if (src.n || src.p) throw std::invalid_argument("--input excludes --n and --p");
    std::ifstream in(src.input);
    if (!in) throw std::invalid_argument("cannot open " + src.input);
    return std::make_shared<const VertexSet>(read_vertex_set(in));
  }
  if (!src.n || !src.p) throw std::invalid_argument("give --input, or --n and --p with --seed");
  return std::make_shared<const VertexSet>(sample_vertex_set(*src.n, probability(*src.p), seed));
}

void emit(const std::vector<Record>& rows, const std::string& format, const std::string& path, std::ostream& out) {
  const Format f = format == "json" ? Format::json : Format::csv;
  if (path.empty()) {
    write_records(out, rows, f);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write " + path);
  write_records(file, rows, f);
}

void write_file(const std::string& path, const auto& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot write " + path);
  writer(file);
}

std::optional<Rational> source_probability(const VertexSet& vs) {
  if (!vs.provenance()) return std::nullopt;
  std::ostringstream text;
  text << vs.provenance()->p;
  return parse_rational(text.str());
}

Record base_record(const std::string& command, const VertexSet& vs) {
  Record r;
  r["schema"] = kSchemaVersion;
  r["command"] = command;
  r["n"] = vs.dim();
  if (vs.provenance()) {
    std::ostringstream text;
    text << vs.provenance()->p;
    r["p"] = text.str();
    r["seed"] = vs.provenance()->seed;
  } else {
    r["p"] = "explicit";
    r["seed"] = "explicit";
  }
  return r;
}

const char* const kSkeletonColumns =
    "CSV columns: schema,command,n,p,seed,method,d,N,D,q,q_decimal,nN_over_D,vertices,edges,"
    "min_degree,max_degree,mean_degree,edge_lengths,full_degree_count,alpha_full_<alpha>...";
const char* const kFlowColumns =
    "CSV columns: schema,command,n,p,seed,d,alpha,repair,N,D,q,q_decimal,nN_over_D,vertices,edges,"
    "min_degree,max_degree,mean_degree,edge_lengths,full_degree_count,alpha_full_<alpha>,mode,"
    "pairs_total,pairs_attempted,pairs_routed,failures_empty_endpoint,failures_empty_inner,"
    "failures_no_pure_path,invalid_edges,endpoint_mismatches,longest_path,loaded_edges,max_load,"
    "bound,bound_decimal,bound_kind,exact_cheeger,exact_cheeger_decimal,degree_upper_bound";
const char* const kVerifyColumns = "CSV columns: schema,lemma,trials,violations,status, then suite counters";
const char* const kTrendColumns =
    "CSV columns: schema,row,n,p,seed,d,d_selected,c0,N,D,q,q_decimal,nN_over_D,vertices,"
    "full_degree_count,degree_upper_bound,alpha_full_<alpha>...,mode,pairs_*,failures_*,invalid_edges,"
    "endpoint_mismatches,longest_path,loaded_edges,max_load,bound,bound_decimal,bound_kind. "
    "Median rows (row=median) follow, one per n.";
const char* const kSelectColumns = "CSV columns: schema,n,p,c0,d_selected";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Polytope skeleton expansion lab", "polylab");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string format = "csv";
  std::string out_path;
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  };

  // sample
  auto* sample = app.add_subcommand("sample", "Sample V from {0,1}^n and write it as a vertex-set file");
  int sample_n = 0;
  std::string sample_p;
  std::uint64_t sample_seed = 0;
  sample->add_option("--n", sample_n, "Dimension")->required()->check(CLI::Range(1, 20));
  sample->add_option("--p", sample_p, "Sampling probability")->required();
  sample->add_option("--seed", sample_seed, "Seed")->required();
  sample->add_option("--out", out_path, "Output file (default stdout)");
  sample->footer("Output: header 'n=<n> p=<p> seed=<seed>' then one lowercase hex mask per line.");

  // skeleton
  auto* skel = app.add_subcommand("skeleton", "Build the exact skeleton or G_d(V) and report statistics");
  SourceOptions skel_src;
  std::uint64_t skel_seed = 0;
  std::string method = "gd";
  int skel_d = 1;
  std::vector<std::string> skel_alphas;
  std::string graph_path;
  add_source_options(skel, skel_src);
  skel->add_option("--seed", skel_seed, "Seed when sampling in place");
  skel->add_option("--method", method, "Edge rule")->check(CLI::IsMember({"exact", "gd"}));
  skel->add_option("--d", skel_d, "Cube-criterion edge length for --method gd")->check(CLI::PositiveNumber);
  skel->add_option("--alpha", skel_alphas, "Alpha values for alpha-full counts (default sweep 0.1,0.2,0.3,0.5)")
      ->delimiter(',');
  skel->add_option("--graph", graph_path, "Write the edge list to this file");
  skel->add_option("--out", out_path, "Write the report to this file (default stdout)");
  add_format(skel);
  skel->footer(kSkeletonColumns);

  // flowbound
  auto* flow = app.add_subcommand("flowbound", "Route a flow through G_1(V) u G_d(V) and bound h(G)");
  SourceOptions flow_src;
  std::uint64_t flow_seed = 0;
  int flow_d = 1;
  std::string flow_alpha = "0.2";
  std::string flow_mode = "exact";
  std::uint64_t flow_pairs = 2000;
  bool repair = false;
  std::string ledger_path;
  add_source_options(flow, flow_src);
  flow->add_option("--seed", flow_seed, "Seed for sampling and routing")->required();
  flow->add_option("--d", flow_d, "Odd backbone step length");
  flow->add_option("--alpha", flow_alpha, "Alpha for the alpha-full rule");
  flow->add_option("--mode", flow_mode, "Pair coverage")->check(CLI::IsMember({"exact", "sampled"}));
  flow->add_option("--pairs", flow_pairs, "Pairs drawn in sampled mode")->check(CLI::PositiveNumber);
  flow->add_flag("--repair", repair, "Tie alpha-full endpoints through G_1 paths (d = 3)");
  flow->add_option("--ledger", ledger_path, "Write per-edge loads as CSV");
  flow->add_option("--out", out_path, "Write the report to this file (default stdout)");
  add_format(flow);
  flow->footer(std::string(kFlowColumns) +
               "\nLedger CSV columns: edge_u_hex,edge_v_hex,load_numerator,load_denominator");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a property suite; exit 1 on any violation");
  std::string lemma;
  VerifyParams vparams;
  std::string lemma_help = "Suite id:";
  for (const auto& id : lemma_ids()) lemma_help += " " + id;
  verify->add_option("--lemma", lemma, lemma_help)->required();
  verify->add_option("--seed", vparams.seed, "Seed")->required();
  verify->add_option("--trials", vparams.trials, "Trials or instances");
  verify->add_option("--n", vparams.n, "Dimension (suite-specific)");
  verify->add_option("--p", vparams.p, "Sampling probability (3.4-empirical)");
  verify->add_option("--pairs", vparams.pairs, "Sampled pairs (3.4-empirical)");
  verify->add_option("--out", out_path, "Write the report to this file (default stdout)");
  add_format(verify);
  verify->footer(kVerifyColumns);

  // trend
  auto* trend = app.add_subcommand("trend", "Per-seed bounds and medians over a range of n");
  TrendParams tparams;
  std::string trend_alpha = "0.2";
  trend->add_option("--ns", tparams.ns, "Dimensions, comma separated")->delimiter(',');
  trend->add_option("--p", tparams.p, "Sampling probability");
  trend->add_option("--d", tparams.d, "Odd backbone step length");
  trend->add_option("--trials", tparams.seeds, "Seeds per n (>= 5 for medians)")->check(CLI::PositiveNumber);
  trend->add_option("--seed", tparams.seed, "First seed; seed + s is used for the s-th run")->required();
  trend->add_option("--pairs", tparams.pairs, "Sampled pairs per run")->check(CLI::PositiveNumber);
  trend->add_option("--c0", tparams.c0, "Constant of the d-selection rule (recorded)");
  trend->add_option("--alpha", trend_alpha, "Alpha for the alpha-full rule");
  trend->add_option("--out", out_path, "Write the report to this file (default stdout)");
  add_format(trend);
  trend->footer(kTrendColumns);

  // dselect
  auto* dsel = app.add_subcommand("dselect", "Preview the odd step length chosen for (n, p)");
  int dsel_n = 0;
  std::string dsel_p;
  double dsel_c0 = 0.5;
  dsel->add_option("--n", dsel_n, "Dimension")->required()->check(CLI::Range(2, 1 << 30));
  dsel->add_option("--p", dsel_p, "Sampling probability in (0, 1)")->required();
  dsel->add_option("--c0", dsel_c0, "Constant of the d-selection rule");
  add_format(dsel);
  dsel->footer(kSelectColumns);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (sample->parsed()) {
      const auto vs = sample_vertex_set(sample_n, probability(sample_p), sample_seed);
      if (out_path.empty()) {
        write_vertex_set(out, vs);
      } else {
        write_file(out_path, [&](std::ostream& os) { write_vertex_set(os, vs); });
      }
      return kOk;
    }

    if (skel->parsed()) {
      if (skel_src.input.empty() && skel->count("--seed") == 0) throw std::invalid_argument("--seed is required");
      const auto vs = load_source(skel_src, skel_seed);
      std::vector<Rational> alphas;
      for (const auto& a : skel_alphas) alphas.push_back(parse_rational(a));
      if (alphas.empty()) alphas = default_alpha_sweep();
      const SkeletonGraph g = method == "exact" ? build_exact_skeleton(vs) : build_gd(vs, skel_d);
      Record r = base_record("skeleton", *vs);
      r["method"] = g.tag().to_string();
      r["d"] = method == "exact" ? std::string() : std::to_string(skel_d);
      if (method == "gd" && skel_d <= vs->dim()) add_parameter_fields(r, vs->dim(), source_probability(*vs), skel_d);
      add_graph_fields(r, g, alphas);
      if (!graph_path.empty()) write_file(graph_path, [&](std::ostream& os) { write_skeleton(os, g); });
      emit({r}, format, out_path, out);
      return kOk;
    }

    if (flow->parsed()) {
      RerouteConfig config;
      config.d = flow_d;
      config.alpha = parse_rational(flow_alpha);
      config.mode = flow_mode == "exact" ? CongestionLedger::Mode::exact_all_pairs : CongestionLedger::Mode::sampled;
      config.pair_budget = flow_pairs;
      config.repair_with_g1 = repair;
      config.seed = flow_seed;
      config.validate();  // even d and bad alpha fail here, before any sampling
      const auto vs = load_source(flow_src, flow_seed);
      if (config.mode == CongestionLedger::Mode::exact_all_pairs && vs->size() > 200) {
        throw CapExceeded("exact mode routes all pairs and is capped at 200 vertices");
      }
      if (flow_d > vs->dim()) throw std::invalid_argument("--d exceeds the dimension");
      const RerouteContext ctx(vs, config);
      const auto result = reroute_flow(ctx);
      const SkeletonGraph routable =
          flow_d == 1 ? ctx.g1() : graph_union({&ctx.g1(), &ctx.gd()});

      Record r = base_record("flowbound", *vs);
      r["d"] = flow_d;
      r["alpha"] = rational_text(config.alpha);
      r["repair"] = repair;
      add_parameter_fields(r, vs->dim(), source_probability(*vs), flow_d);
      add_graph_fields(r, routable, {config.alpha});
      add_flow_fields(r, result, vs->size());
      if (vs->size() >= 2 && vs->size() <= kExactCheegerMaxVertices) {
        const auto h = exact_cheeger(build_exact_skeleton(vs));
        r["exact_cheeger"] = rational_text(h.value);
        r["exact_cheeger_decimal"] = to_double(h.value);
      } else {
        r["exact_cheeger"] = "";
        r["exact_cheeger_decimal"] = "";
      }
      if (const auto full = full_degree_vertices(*vs); !full.empty()) {
        r["degree_upper_bound"] = vs->dim();
      } else {
        r["degree_upper_bound"] = "";
      }
      if (!ledger_path.empty()) write_file(ledger_path, [&](std::ostream& os) { result.ledger.write_csv(os); });
      emit({r}, format, out_path, out);
      return kOk;
    }

    if (verify->parsed()) {
      const auto ids = lemma_ids();
      if (std::find(ids.begin(), ids.end(), lemma) == ids.end()) {
        throw std::invalid_argument("unknown lemma id '" + lemma + "'");
      }
      const auto report = run_verify(lemma, vparams);
      emit({report.to_record()}, format, out_path, out);
      return report.passed ? kOk : kVerificationFailed;
    }

    if (trend->parsed()) {
      tparams.alpha = parse_rational(trend_alpha);
      if (tparams.d < 1 || tparams.d % 2 == 0) throw std::invalid_argument("--d must be odd and positive");
      probability(tparams.p);
      for (int n : tparams.ns) {
        if (n < tparams.d || n > 20) throw std::invalid_argument("--ns entries must lie in [d, 20]");
      }
      emit(run_trend(tparams), format, out_path, out);
      return kOk;
    }

    if (dsel->parsed()) {
      Record r;
      r["schema"] = kSchemaVersion;
      r["n"] = dsel_n;
      r["p"] = dsel_p;
      r["c0"] = dsel_c0;
      r["d_selected"] = select_d(dsel_n, probability(dsel_p), dsel_c0);
      emit({r}, format, out_path, out);
      return kOk;
    }
  } catch (const CapExceeded& e) {
    err << "polylab: " << e.what() << '\n';
    return kCapError;
  } catch (const std::exception& e) {
    err << "polylab: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace polyskel::lab
