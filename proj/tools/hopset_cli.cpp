// Command-line driver: graph generation, covers, hopset builds, distance
// queries, end-to-end verification, and size/round benchmarks.
//
// Every run is deterministic in (inputs, seed); reruns produce byte-identical
// files.  Exit status is nonzero iff a requested check fails.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hopset/experiment.hpp"
#include "hopset/graph.hpp"
#include "hopset/hopset_builder.hpp"
#include "hopset/ldd.hpp"
#include "hopset/mssp.hpp"
#include "hopset/oracles.hpp"
#include "hopset/sim.hpp"

namespace {

using namespace hopset;

struct GraphArgs {
  std::string kind = "erdos-renyi";
  NodeId n = 64;
  std::uint64_t seed = 1;
  std::string input;  // edge-list file; overrides generation
  std::string weights = "log-uniform";
  bool largest_component = false;
};

void add_graph_options(CLI::App* sub, GraphArgs& g) {
  sub->add_option("--n", g.n, "number of nodes");
  sub->add_option("--kind", g.kind,
                  "graph kind: erdos-renyi | grid | path | random-geometric "
                  "| blob-chain");
  sub->add_option("--seed", g.seed, "random seed");
  sub->add_option("--input", g.input, "read an edge-list file instead");
  sub->add_option("--weights", g.weights, "unit | uniform | log-uniform");
  sub->add_flag("--largest-component", g.largest_component,
                "keep only the largest connected component");
}

WeightedGraph make_graph(const GraphArgs& a) {
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw std::runtime_error("cannot open " + a.input);
    return WeightedGraph::read_edge_list(in);
  }
  GenParams p;
  p.largest_component = a.largest_component;
  if (a.weights == "unit") p.weights = WeightStyle::kUnit;
  else if (a.weights == "uniform") p.weights = WeightStyle::kUniform;
  else if (a.weights == "log-uniform") p.weights = WeightStyle::kLogUniform;
  else throw std::runtime_error("unknown weight style: " + a.weights);
  return generate_graph(graph_kind_from_string(a.kind), a.n, p, a.seed);
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_scale_stats_csv(std::ostream& out, const BuildResult& r) {
  out << "kappa,R,W,ell,clusters,small_clusters,big_clusters,big_centers,"
         "max_beta_prime,edges_added,rounds,cover_violations\n";
  for (const ScaleStats& s : r.scales)
    out << s.kappa << ',' << s.R << ',' << s.W << ',' << s.ell << ','
        << s.clusters << ',' << s.small_clusters << ',' << s.big_clusters
        << ',' << s.big_centers << ',' << s.max_beta_prime << ','
        << s.edges_added << ',' << s.rounds << ',' << s.cover_violations
        << '\n';
}

int cmd_gen(const GraphArgs& ga, const std::string& out_path) {
  const WeightedGraph g = make_graph(ga);
  if (out_path.empty() || out_path == "-") {
    g.write_edge_list(std::cout);
  } else {
    auto out = open_out(out_path);
    g.write_edge_list(out);
  }
  return 0;
}

int cmd_cover(const GraphArgs& ga, std::int64_t W, std::int64_t ell, int reps,
              const std::string& out_dir) {
  const WeightedGraph g = make_graph(ga);
  SimConfig sc;
  sc.seed = ga.seed;
  Simulator sim(sc, g.num_nodes());
  const int r = reps > 0 ? reps : default_reps(g.num_nodes());
  const Cover cover =
      limited_pairwise_cover(g, W, ell, Rational{1, 2}, r, sim, "cover");
  const auto violations = validate_cover(cover, g.num_nodes());

  std::filesystem::create_directories(out_dir);
  {
    auto out = open_out(std::filesystem::path(out_dir) / "cover.txt");
    write_cover(out, cover);
  }
  {
    auto out = open_out(std::filesystem::path(out_dir) / "rounds.csv");
    sim.ledger().write_summary_csv(out);
  }
  std::cout << "clusters " << cover.clusters.size() << " rounds "
            << cover.rounds << " violations " << violations.size() << '\n';
  for (const std::string& v : violations) std::cout << "  " << v << '\n';
  return violations.empty() ? 0 : 1;
}

int cmd_build(const GraphArgs& ga, HopsetConfig cfg, const std::string& out_dir,
              const std::string& format, bool traffic) {
  const WeightedGraph g = make_graph(ga);
  cfg.log_traffic = traffic;
  const BuildResult r = build_hopset(g, cfg, ga.seed);

  std::filesystem::create_directories(out_dir);
  {
    auto out = open_out(std::filesystem::path(out_dir) / "hopset.txt");
    write_hopset_dump(out, r.hopset);
  }
  if (format == "jsonl") {
    auto out = open_out(std::filesystem::path(out_dir) / "scales.jsonl");
    write_scale_stats_jsonl(out, r);
  } else {
    auto out = open_out(std::filesystem::path(out_dir) / "scales.csv");
    write_scale_stats_csv(out, r);
  }
  {
    auto out = open_out(std::filesystem::path(out_dir) / "rounds.csv");
    r.ledger.write_summary_csv(out);
  }
  if (traffic) {
    auto out = open_out(std::filesystem::path(out_dir) / "traffic.csv");
    r.ledger.write_traffic_csv(out);
  }
  const SizeReport sz = size_report(r.hopset, cfg.k);
  std::cout << "hopset edges " << r.hopset.edges.size() << " size_ratio "
            << sz.ratio << " rounds " << r.total_rounds << " words "
            << r.total_words << " eps_prime " << r.eps_prime << " violations "
            << r.violations << '\n';
  return r.violations == 0 ? 0 : 1;
}

int cmd_query(const GraphArgs& ga, HopsetConfig cfg,
              std::vector<NodeId> sources, int num_sources,
              const std::string& out_path, double max_ratio) {
  const WeightedGraph g = make_graph(ga);
  const NodeId n = g.num_nodes();
  const BuildResult r = build_hopset(g, cfg, ga.seed);
  const auto exact = all_pairs_dijkstra(g);
  const int beta = measure_hopbound(g, r.hopset.edges, cfg.eps, &exact);
  if (beta == kNoHops) {
    std::cerr << "hopset reaches no finite hop bound\n";
    return 1;
  }

  if (sources.empty()) {
    Rng rng(ga.seed ^ 0x9e3779b97f4a7c15ULL);
    std::set<NodeId> picked;
    const int want = std::min<std::int64_t>(
        num_sources > 0 ? num_sources : 4, n);
    while (static_cast<int>(picked.size()) < want)
      picked.insert(static_cast<NodeId>(rng.uniform_u64(0, n - 1)));
    sources.assign(picked.begin(), picked.end());
  }

  SimConfig sc;
  sc.seed = ga.seed;
  Simulator sim(sc, n);
  MsspConfig mc;
  const QueryResult q =
      mssp_query(g, r.hopset.edges, sources, beta, mc, &sim);

  std::ostringstream csv;
  csv << "source,node,estimate,oracle,ratio\n";
  bool ok = true;
  for (std::size_t i = 0; i < q.sources.size(); ++i) {
    const NodeId s = q.sources[i];
    for (NodeId v = 0; v < n; ++v) {
      if (exact[s][v] >= kInf) continue;
      const Weight est = q.estimate[i][v];
      const double ratio =
          exact[s][v] == 0
              ? 1.0
              : static_cast<double>(est) / static_cast<double>(exact[s][v]);
      csv << s << ',' << v << ',' << est << ',' << exact[s][v] << ',' << ratio
          << '\n';
      if (est < exact[s][v] || !within_stretch(est, exact[s][v], cfg.eps))
        ok = false;
      if (max_ratio > 0 && ratio > max_ratio) ok = false;
    }
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    auto out = open_out(out_path);
    out << csv.str();
  }
  std::cerr << "sources " << q.sources.size() << " beta " << beta
            << " query rounds " << q.rounds << (ok ? " ok" : " STRETCH FAIL")
            << '\n';
  return ok ? 0 : 1;
}

int cmd_verify(const GraphArgs& ga, HopsetConfig cfg, int trials,
               const std::vector<std::string>& check_names,
               const std::string& format, const std::string& out_path) {
  ExperimentSpec spec;
  spec.kind = graph_kind_from_string(ga.kind);
  spec.n = ga.n;
  spec.gen.largest_component = ga.largest_component;
  spec.hopset = cfg;
  spec.seed = ga.seed;
  spec.trials = trials;
  if (!check_names.empty()) {
    spec.checks.clear();
    for (const std::string& name : check_names)
      spec.checks.push_back(check_from_string(name));
  }
  const ExperimentReport rep = run_experiment(spec);
  if (format == "json") {
    const std::string body = report_to_json(rep);
    if (out_path.empty() || out_path == "-") {
      std::cout << body << '\n';
    } else {
      auto out = open_out(out_path);
      out << body << '\n';
    }
  } else {
    write_report_text(std::cout, rep);
  }
  return rep.pass ? 0 : 1;
}

int cmd_bench(const GraphArgs& ga, HopsetConfig cfg,
              std::vector<NodeId> sizes, int trials,
              const std::string& out_path) {
  if (sizes.empty()) sizes = {64, 128, 256};
  std::ostringstream csv;
  csv << "n,kind,seeds,mean_graph_edges,mean_hopset_edges,mean_size_ratio,"
         "mean_beta,mean_rounds\n";
  for (NodeId n : sizes) {
    double ge = 0, he = 0, sr = 0, mb = 0, rr = 0;
    for (int t = 0; t < trials; ++t) {
      GraphArgs a = ga;
      a.n = n;
      a.seed = ga.seed + static_cast<std::uint64_t>(t);
      const WeightedGraph g = make_graph(a);
      const BuildResult r = build_hopset(g, cfg, a.seed);
      const int beta = measure_hopbound(g, r.hopset.edges, cfg.eps);
      ge += static_cast<double>(g.num_edges());
      he += static_cast<double>(r.hopset.edges.size());
      sr += size_report(r.hopset, cfg.k).ratio;
      mb += beta;
      rr += static_cast<double>(r.total_rounds);
    }
    const double d = trials;
    csv << n << ',' << ga.kind << ',' << trials << ',' << ge / d << ','
        << he / d << ',' << sr / d << ',' << mb / d << ',' << rr / d << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
  } else {
    auto out = open_out(out_path);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse hopset construction under a bandwidth-audited "
               "synchronous round model"};
  app.require_subcommand(1);

  GraphArgs ga;
  HopsetConfig cfg;
  std::string mode = "tz";
  std::string out_path;
  std::string out_dir = ".";
  std::string format = "csv";
  int trials = 1;
  std::vector<std::string> checks;
  std::vector<NodeId> sources;
  std::vector<NodeId> sizes;
  int num_sources = 4;
  double max_ratio = 0;
  std::int64_t cover_W = 16, cover_ell = 15;
  int cover_reps = 0;
  bool traffic = false;

  auto add_hopset_options = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "stretch budget (1+eps)");
    sub->add_option("--k", cfg.k, "local hierarchy depth (>= 2)");
    sub->add_option("--mode", mode, "local shortcut mode: clique | tz");
    sub->add_option("--beta-cap", cfg.beta_cap,
                    "exploration cap; hop searches use 2*cap+1 hops");
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a graph edge list");
  add_graph_options(gen, ga);
  gen->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* cover =
      app.add_subcommand("cover", "run one hop-limited pairwise cover");
  add_graph_options(cover, ga);
  cover->add_option("--W", cover_W, "distance scale of the cover");
  cover->add_option("--ell", cover_ell, "hop limit");
  cover->add_option("--reps", cover_reps, "repetitions (0 = 3 ln n)");
  cover->add_option("--out", out_dir, "output directory");

  CLI::App* build = app.add_subcommand("build", "build a hopset");
  add_graph_options(build, ga);
  add_hopset_options(build);
  build->add_option("--out", out_dir, "output directory");
  build->add_option("--format", format, "scale stats format: csv | jsonl");
  build->add_flag("--traffic", traffic, "dump per-round traffic rows");

  CLI::App* query =
      app.add_subcommand("query", "multi-source distance estimates");
  add_graph_options(query, ga);
  add_hopset_options(query);
  query->add_option("--sources", sources, "explicit source ids")
      ->delimiter(',');
  query->add_option("--num-sources", num_sources, "random source count");
  query->add_option("--out", out_path, "CSV output file (default stdout)");
  query->add_option("--max-ratio", max_ratio,
                    "fail if any estimate/oracle ratio exceeds this");

  CLI::App* verify =
      app.add_subcommand("verify", "build and run correctness checks");
  add_graph_options(verify, ga);
  add_hopset_options(verify);
  verify->add_option("--seeds", trials, "number of independent seeds");
  verify->add_option("--checks", checks,
                     "checks: stretch size hopbound cover padding rounds "
                     "determinism")
      ->delimiter(',');
  verify->add_option("--format", format, "report format: text | json");
  verify->add_option("--out", out_path, "report file (default stdout)");

  CLI::App* bench =
      app.add_subcommand("bench", "size/rounds table over node counts");
  add_graph_options(bench, ga);
  add_hopset_options(bench);
  bench->add_option("--sizes", sizes, "node counts (default 64 128 256)")
      ->delimiter(',');
  bench->add_option("--seeds", trials, "seeds per node count");
  bench->add_option("--out", out_path, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.local_mode = local_mode_from_string(mode);
    if (gen->parsed()) return cmd_gen(ga, out_path);
    if (cover->parsed())
      return cmd_cover(ga, cover_W, cover_ell, cover_reps, out_dir);
    if (build->parsed()) return cmd_build(ga, cfg, out_dir, format, traffic);
    if (query->parsed())
      return cmd_query(ga, cfg, sources, num_sources, out_path, max_ratio);
    if (verify->parsed())
      return cmd_verify(ga, cfg, trials, checks, format, out_path);
    if (bench->parsed()) return cmd_bench(ga, cfg, sizes, trials, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
