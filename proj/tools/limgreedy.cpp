// limgreedy: command-line front end.
//
//   gen         write a random or structured information DAG
//   run         one greedy pass over a graph; trace CSV on stdout
//   bounds      clique/coloring bounds for a graph
//   verify      randomized invariant suites
//   experiment  correlation / ba-sweep / ws-sweep protocols from a config file
//
// Exit codes: 0 ok, 1 verify found violations, 2 invalid input, 3 size guard.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "limgreedy/limgreedy.hpp"

using namespace limgreedy;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitGuard = 3;

InfoDag load_graph(const std::string& path) {
  if (path == "-") return read_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open graph file " + path);
  return read_graph(in);
}

// Writes to `path`, or stdout for "-".
template <class F>
void with_output(const std::string& path, F write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot write " + path);
  write(out);
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw invalid_input("block sizes: expected comma-separated positive integers, got '" + s + "'");
    out.push_back(std::stoul(tok));
  }
  return out;
}

struct GenArgs {
  std::string family;
  std::size_t n = 20;
  double p = 0.5;
  std::size_t k = 2;
  double beta = 0.25;
  std::size_t m = 4;
  std::string blocks = "3,3";
  std::uint64_t seed = 1;
  std::string out = "-";
};

InfoDag generate(const GenArgs& a) {
  if (a.family == "er") return gen_er_dag(a.n, a.p, a.seed);
  if (a.family == "ba") return gen_ba_dag(a.n, a.seed);
  if (a.family == "ws") return gen_ws_dag(a.n, a.k, a.beta, a.seed);
  if (a.family == "cliques") return gen_interconnected_cliques(parse_sizes(a.blocks)).dag;
  if (a.family == "gap") return gen_bipartite_gap(a.m);
  if (a.family == "complete") return gen_complete_dag(a.n);
  if (a.family == "empty") return gen_empty(a.n);
  throw invalid_input("unknown family '" + a.family + "'");
}

struct RunArgs {
  std::string graph;
  std::string disks;
  std::size_t grid = 100;
  std::size_t universal = 0;
  bool adversarial = false;
  std::string tie = "lowest";
  std::uint64_t tie_seed = 1;
  std::size_t rounds = 0;
  bool optimum = false;
  std::string out = "-";
};

Instance build_instance(const RunArgs& a, const InfoDag& g) {
  const int picked = int(!a.disks.empty()) + int(a.universal > 0) + int(a.adversarial);
  if (picked != 1) throw invalid_input("run: choose exactly one of --disks, --universal, --adversarial");
  if (!a.disks.empty()) {
    std::ifstream in(a.disks);
    if (!in) throw invalid_input("cannot open disk file " + a.disks);
    return make_coverage(read_disks(in), CoverageGrid{a.grid});
  }
  if (a.universal > 0) return make_universal(g.size(), a.universal);
  return make_adversarial(g, chromatic_number(g).coloring);
}

TieBreak build_tiebreak(const RunArgs& a) {
  if (a.tie == "lowest") return TieBreak::lowest_index();
  if (a.tie == "highest") return TieBreak::highest_index();
  if (a.tie == "random") return TieBreak::seeded_random(a.tie_seed);
  if (a.tie == "adversarial") {
    if (!a.adversarial) throw invalid_input("run: --tie adversarial needs --adversarial");
    return prefer_adversarial_a();
  }
  throw invalid_input("unknown tie-break '" + a.tie + "'");
}

int do_run(const RunArgs& a) {
  const auto g = load_graph(a.graph);
  const auto inst = build_instance(a, g);
  const auto tb = build_tiebreak(a);
  Solution sol;
  if (a.rounds > 0) sol = run_synchronous(inst, g, tb, a.rounds).back();
  else sol = run_sequential(inst, g, tb);
  with_output(a.out, [&](std::ostream& o) { write_trace_csv(o, sol, inst.oracle().ground()); });
  std::cerr << "value " << format_number(sol.value);
  if (a.optimum) {
    const auto opt = brute_force_opt(inst);
    std::cerr << " optimum " << format_number(opt.value) << " ratio "
              << format_number(nearly_equal(opt.value, 0.0, inst.oracle().integral()) ? 1.0 : sol.value / opt.value);
  }
  std::cerr << '\n';
  return 0;
}

int do_bounds(const std::string& graph, const std::string& csv) {
  const auto r = compute_bounds(load_graph(graph));
  print_report(std::cout, r);
  if (!csv.empty())
    with_output(csv, [&](std::ostream& o) {
      CsvWriter w(o, bounds_csv_header());
      w.row(bounds_csv_row(r));
    });
  return 0;
}

int do_verify(std::vector<std::string> suites, std::uint64_t seed, std::size_t count) {
  if (suites.empty()) suites = suite_names();
  int rc = 0;
  for (const auto& name : suites) {
    const auto r = run_suite(name, seed, count);
    std::printf("%-16s checked %-6zu violations %-4zu %s\n", r.name.c_str(), r.checked, r.violations,
                r.passed() ? "PASS" : "FAIL");
    if (!r.passed()) {
      if (!r.first_failure.empty()) std::printf("  first failure: %s\n", r.first_failure.c_str());
      rc = kExitViolations;
    }
  }
  return rc;
}

int do_experiment(const std::string& config_path, const std::vector<std::string>& overrides) {
  std::ifstream in(config_path);
  if (!in) throw invalid_input("cannot open config file " + config_path);
  auto c = parse_config(in);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw invalid_input("override '" + kv + "': expected key=value");
    const auto key = kv.substr(0, eq);
    if (key == "experiment") throw invalid_input("override: experiment is fixed by the config file");
    apply_setting(c, key, kv.substr(eq + 1));
  }
  for (const auto& p : run_experiment(c)) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed greedy under limited information: graphs, bounds, experiments"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write an information DAG (edge-list format)");
  g->add_option("family", gen.family, "er | ba | ws | cliques | gap | complete | empty")->required();
  g->add_option("-n,--agents", gen.n, "Number of vertices");
  g->add_option("-p,--prob", gen.p, "Edge probability (er)");
  g->add_option("-k,--neighbors", gen.k, "Lattice neighbors per side (ws)");
  g->add_option("-b,--beta", gen.beta, "Rewiring probability (ws)");
  g->add_option("-m", gen.m, "Gap family size (gap)");
  g->add_option("--blocks", gen.blocks, "Comma-separated block sizes (cliques)");
  g->add_option("-s,--seed", gen.seed, "Seed");
  g->add_option("-o,--out", gen.out, "Output file, '-' for stdout");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run the distributed greedy and print its trace");
  r->add_option("-g,--graph", run.graph, "Graph file, '-' for stdin")->required();
  r->add_option("--disks", run.disks, "Disk file for a coverage objective");
  r->add_option("--grid", run.grid, "Coverage grid resolution");
  r->add_option("--universal", run.universal, "Use |S| over m shared elements");
  r->add_flag("--adversarial", run.adversarial, "Use the coloring-based adversarial objective");
  r->add_option("--tie", run.tie, "lowest | highest | random | adversarial");
  r->add_option("--tie-seed", run.tie_seed, "Seed for --tie random");
  r->add_option("--rounds", run.rounds, "Synchronous rounds (0 = sequential)");
  r->add_flag("--optimum", run.optimum, "Also brute-force the optimum");
  r->add_option("-o,--out", run.out, "Trace CSV file, '-' for stdout");

  std::string bounds_graph, bounds_csv;
  auto* b = app.add_subcommand("bounds", "Report performance bounds for a graph");
  b->add_option("graph", bounds_graph, "Graph file, '-' for stdin")->required();
  b->add_option("--csv", bounds_csv, "Also write a CSV row here");

  std::vector<std::string> suites;
  std::uint64_t verify_seed = 1;
  std::size_t verify_count = 0;
  auto* v = app.add_subcommand("verify", "Run invariant suites over seeded random instances");
  v->add_option("suites", suites, "Suite names (default: all)");
  v->add_option("-s,--seed", verify_seed, "Master seed");
  v->add_option("-c,--count", verify_count, "Cases per suite (0 = suite default)");
  v->add_flag_callback("--list", [] {
    for (const auto& s : suite_names()) std::cout << s << '\n';
    throw CLI::Success();
  }, "List suite names");

  std::string config;
  std::vector<std::string> overrides;
  auto* e = app.add_subcommand("experiment", "Run an experiment protocol from a key=value config");
  e->add_option("config", config, "Config file")->required();
  e->add_option("overrides", overrides, "key=value settings applied after the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& s) {
    return app.exit(s);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitInvalid;
  }

  try {
    if (*g) {
      const auto dag = generate(gen);
      with_output(gen.out, [&](std::ostream& o) { write_graph(o, dag); });
      return 0;
    }
    if (*r) return do_run(run);
    if (*b) return do_bounds(bounds_graph, bounds_csv);
    if (*v) return do_verify(suites, verify_seed, verify_count);
    if (*e) return do_experiment(config, overrides);
  } catch (const size_guard_exceeded& ex) {
    std::cerr << "limgreedy: " << ex.what() << '\n';
    return kExitGuard;
  } catch (const std::exception& ex) {
    std::cerr << "limgreedy: " << ex.what() << '\n';
    return kExitInvalid;
  }
  return 0;
}
