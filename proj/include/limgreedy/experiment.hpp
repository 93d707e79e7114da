#pragma once

// Batch experiments over random information graphs, written as CSV shaped for
// plotting:
//
//   correlation  one shared disk-coverage instance, many Erdos-Renyi DAGs with
//                p ~ U[0,1]; greedy coverage vs. the greedy-coloring bound,
//                summarized by Spearman's rank correlation.
//   ba-sweep     bounds on preferential-attachment DAGs as n grows.
//   ws-sweep     bounds on small-world DAGs as the lattice degree K grows.
//
// All randomness derives from master_seed, so re-running a config file
// reproduces every output byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "limgreedy/bounds.hpp"
#include "limgreedy/core.hpp"
#include "limgreedy/csv.hpp"
#include "limgreedy/errors.hpp"
#include "limgreedy/graph_gen.hpp"
#include "limgreedy/greedy.hpp"
#include "limgreedy/objectives.hpp"
#include "limgreedy/rng.hpp"

namespace limgreedy {

// ---------------------------------------------------------------------------
// Spearman rank correlation
// ---------------------------------------------------------------------------

// 1-based ranks; tied values share the average of their positions.
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> idx(xs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

// Pearson correlation of the average ranks. Undefined (and rejected) for
// sequences shorter than two or with all-equal values.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw invalid_input("spearman: sequences differ in length");
  if (xs.size() < 2) throw invalid_input("spearman: need at least two observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw invalid_input("spearman: correlation undefined for a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

enum class ExperimentKind { correlation, ba_sweep, ws_sweep };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::correlation:
      return "correlation";
    case ExperimentKind::ba_sweep:
      return "ba-sweep";
    case ExperimentKind::ws_sweep:
      return "ws-sweep";
  }
  return "?";
}

inline ExperimentKind parse_experiment_kind(const std::string& s) {
  if (s == "correlation") return ExperimentKind::correlation;
  if (s == "ba-sweep") return ExperimentKind::ba_sweep;
  if (s == "ws-sweep") return ExperimentKind::ws_sweep;
  throw invalid_input("unknown experiment '" + s + "' (expected correlation, ba-sweep or ws-sweep)");
}

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::correlation;
  std::size_t n_agents = 50;
  std::size_t disks_per_agent = 3;
  double disk_radius = 0.07;
  std::size_t grid_resolution = 100;
  std::size_t n_graphs = 100;
  // Swept parameter: n for ba-sweep, K for ws-sweep.
  std::size_t sweep_min = 5;
  std::size_t sweep_max = 40;
  std::size_t sweep_step = 5;
  std::size_t trials_per_point = 20;
  double beta = 0.25;
  std::uint64_t master_seed = 1;
  std::string output_dir = ".";
  // Also compute the exact optimum when the assignment count fits the guard.
  bool brute_force = false;
  std::uint64_t brute_force_guard = kDefaultBruteForceGuard;
};

inline ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  if (kind == ExperimentKind::ws_sweep) {
    c.n_agents = 25;
    c.sweep_min = 1;
    c.sweep_max = 12;
    c.sweep_step = 1;
  }
  return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T>
T parse_value(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) throw invalid_input("config: bad value '" + v + "' for " + key);
  if constexpr (std::is_unsigned_v<T>) {
    if (v.find('-') != std::string::npos) throw invalid_input("config: " + key + " must be nonnegative");
  }
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw invalid_input("config: bad boolean '" + v + "' for " + key);
}

}  // namespace detail

inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_value;
  if (key == "experiment") c.experiment = parse_experiment_kind(value);
  else if (key == "n_agents") c.n_agents = parse_value<std::size_t>(key, value);
  else if (key == "disks_per_agent") c.disks_per_agent = parse_value<std::size_t>(key, value);
  else if (key == "disk_radius") c.disk_radius = parse_value<double>(key, value);
  else if (key == "grid_resolution") c.grid_resolution = parse_value<std::size_t>(key, value);
  else if (key == "n_graphs") c.n_graphs = parse_value<std::size_t>(key, value);
  else if (key == "sweep_min") c.sweep_min = parse_value<std::size_t>(key, value);
  else if (key == "sweep_max") c.sweep_max = parse_value<std::size_t>(key, value);
  else if (key == "sweep_step") c.sweep_step = parse_value<std::size_t>(key, value);
  else if (key == "trials_per_point") c.trials_per_point = parse_value<std::size_t>(key, value);
  else if (key == "beta") c.beta = parse_value<double>(key, value);
  else if (key == "master_seed") c.master_seed = parse_value<std::uint64_t>(key, value);
  else if (key == "output_dir") c.output_dir = value;
  else if (key == "brute_force") c.brute_force = detail::parse_bool(key, value);
  else if (key == "brute_force_guard") c.brute_force_guard = parse_value<std::uint64_t>(key, value);
  else throw invalid_input("config: unknown key '" + key + "'");
}

// key=value lines; '#' starts a comment. The experiment key selects the
// defaults the remaining keys override, wherever it appears in the file.
inline ExperimentConfig parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> settings;
  std::string line;
  std::size_t lineno = 0;
  std::optional<ExperimentKind> kind;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw invalid_input("config line " + std::to_string(lineno) + ": expected key=value");
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    if (key == "experiment") kind = parse_experiment_kind(value);
    else settings.emplace_back(std::move(key), std::move(value));
  }
  if (!kind) throw invalid_input("config: missing 'experiment' key");
  auto c = default_config(*kind);
  for (const auto& [k, v] : settings) apply_setting(c, k, v);
  return c;
}

inline void validate(const ExperimentConfig& c) {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw invalid_input(std::string("config: ") + name + " must be positive");
  };
  positive(c.n_agents, "n_agents");
  positive(c.disks_per_agent, "disks_per_agent");
  positive(c.grid_resolution, "grid_resolution");
  positive(c.n_graphs, "n_graphs");
  positive(c.trials_per_point, "trials_per_point");
  positive(c.sweep_step, "sweep_step");
  if (!(c.disk_radius > 0.0 && c.disk_radius < 1.0)) throw invalid_input("config: disk_radius must lie in (0, 1)");
  if (!(c.beta >= 0.0 && c.beta <= 1.0)) throw invalid_input("config: beta must lie in [0, 1]");
  if (c.sweep_min > c.sweep_max) throw invalid_input("config: sweep_min exceeds sweep_max");
  if (c.experiment == ExperimentKind::ba_sweep && c.sweep_min < kBaSeedSize)
    throw invalid_input("config: ba-sweep needs n >= 5");
  if (c.experiment == ExperimentKind::ws_sweep && (c.sweep_min < 1 || c.sweep_max > (c.n_agents - 1) / 2))
    throw invalid_input("config: ws-sweep needs 1 <= K <= (n_agents-1)/2");
}

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

struct TrialRecord {
  std::size_t graph_id = 0;
  std::size_t param = 0;     // n (ba-sweep) or K (ws-sweep); agent count otherwise
  double p = 0.0;            // edge probability (correlation only)
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  std::optional<double> greedy_value;
  std::optional<double> optimum;
  std::optional<double> ratio;  // greedy / optimum
  std::optional<std::size_t> omega;
  std::optional<int> chi;
  int greedy_colors = 0;
  std::optional<Ratio> lower_clique;
  std::optional<Ratio> upper_chromatic;
  Ratio upper_alg1;
};

struct MeanSd {
  double mean = std::nan("");
  double sd = std::nan("");
};

// Sample standard deviation; 0 for a single observation.
inline MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  if (xs.empty()) return out;
  double s = 0;
  for (double x : xs) s += x;
  out.mean = s / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
  return out;
}

struct SweepPoint {
  std::size_t param = 0;
  std::size_t trials = 0;
  std::size_t completed = 0;  // trials where every exact solver finished
  MeanSd lower;
  MeanSd upper_chi;
  MeanSd upper_alg1;
  MeanSd ratio_chi;   // upper_chi / lower
  MeanSd ratio_alg1;  // upper_alg1 / lower
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<TrialRecord> trials;
};

struct CorrelationResult {
  std::vector<TrialRecord> trials;
  double spearman_rho = 0.0;
};

namespace detail {

// Fills omega/chi-based fields; guard or budget failures leave them empty.
inline void fill_bounds(TrialRecord& rec, const InfoDag& g) {
  const auto greedy = greedy_topological_coloring(g);
  rec.greedy_colors = greedy.max_color;
  rec.upper_alg1 = Ratio(greedy.max_color, static_cast<std::int64_t>(g.size()));
  try {
    rec.omega = clique_number(g).size;
    rec.lower_clique = lower_bound_clique(g.size(), *rec.omega);
  } catch (const size_guard_exceeded&) {
  }
  try {
    rec.chi = chromatic_number(g).chromatic;
    rec.upper_chromatic = Ratio(*rec.chi, static_cast<std::int64_t>(g.size()));
  } catch (const size_guard_exceeded&) {
  }
}

template <class MakeGraph>
SweepResult run_sweep(const ExperimentConfig& c, MakeGraph make_graph) {
  validate(c);
  SweepResult out;
  for (std::size_t x = c.sweep_min; x <= c.sweep_max; x += c.sweep_step) {
    SweepPoint pt;
    pt.param = x;
    pt.trials = c.trials_per_point;
    std::vector<double> lower, uchi, ualg, rchi, ralg;
    const auto point_seed = derive_seed(c.master_seed, x);
    for (std::size_t t = 0; t < c.trials_per_point; ++t) {
      TrialRecord rec;
      rec.graph_id = t;
      rec.param = x;
      rec.seed = derive_seed(point_seed, t);
      const InfoDag g = make_graph(x, rec.seed);
      rec.edges = g.edge_count();
      fill_bounds(rec, g);
      ualg.push_back(rec.upper_alg1.value());
      if (rec.lower_clique) {
        lower.push_back(rec.lower_clique->value());
        ralg.push_back((rec.upper_alg1 / *rec.lower_clique).value());
      }
      if (rec.upper_chromatic) uchi.push_back(rec.upper_chromatic->value());
      if (rec.lower_clique && rec.upper_chromatic) {
        rchi.push_back((*rec.upper_chromatic / *rec.lower_clique).value());
        ++pt.completed;
      }
      out.trials.push_back(std::move(rec));
    }
    pt.lower = mean_sd(lower);
    pt.upper_chi = mean_sd(uchi);
    pt.upper_alg1 = mean_sd(ualg);
    pt.ratio_chi = mean_sd(rchi);
    pt.ratio_alg1 = mean_sd(ralg);
    out.points.push_back(pt);
    if (x > c.sweep_max - c.sweep_step) break;  // no wraparound near SIZE_MAX
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Protocols
// ---------------------------------------------------------------------------

// Stream 0 of the master seed draws the disks; stream g+1 draws graph g's
// edge probability and then its graph seed.
inline CorrelationResult run_correlation_experiment(const ExperimentConfig& c) {
  validate(c);
  Rng disk_rng(derive_seed(c.master_seed, 0));
  const auto disks = random_disks(disk_rng, c.n_agents, c.disks_per_agent, c.disk_radius);
  const auto inst = make_coverage(disks, CoverageGrid{c.grid_resolution});

  CorrelationResult out;
  std::vector<double> values, bounds;
  for (std::size_t gi = 0; gi < c.n_graphs; ++gi) {
    Rng r(derive_seed(c.master_seed, gi + 1));
    TrialRecord rec;
    rec.graph_id = gi;
    rec.param = c.n_agents;
    rec.p = r.uniform01();
    rec.seed = r.next_u64();
    const auto g = gen_er_dag(c.n_agents, rec.p, rec.seed);
    rec.edges = g.edge_count();
    const auto sol = run_sequential(inst, g);
    rec.greedy_value = sol.value;
    detail::fill_bounds(rec, g);
    if (c.brute_force && assignment_count(inst) <= c.brute_force_guard) {
      rec.optimum = brute_force_opt(inst, c.brute_force_guard).value;
      rec.ratio = *rec.optimum > 0 ? sol.value / *rec.optimum : 1.0;
    }
    values.push_back(sol.value);
    bounds.push_back(rec.upper_alg1.value());
    out.trials.push_back(std::move(rec));
  }
  out.spearman_rho = spearman(values, bounds);
  return out;
}

inline SweepResult run_ba_sweep(const ExperimentConfig& c) {
  return detail::run_sweep(c, [](std::size_t n, std::uint64_t seed) { return gen_ba_dag(n, seed); });
}

inline SweepResult run_ws_sweep(const ExperimentConfig& c) {
  return detail::run_sweep(
      c, [&c](std::size_t k, std::uint64_t seed) { return gen_ws_dag(c.n_agents, k, c.beta, seed); });
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

namespace detail {
inline std::string opt_ratio(const std::optional<Ratio>& r) { return r ? format_number(r->value()) : std::string{}; }
template <class T>
std::string opt_int(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string{};
}
}  // namespace detail

inline void write_correlation_csv(std::ostream& out, const CorrelationResult& r) {
  CsvWriter csv(out, {"graph_id", "seed", "p", "edges", "greedy_value", "optimum", "ratio", "omega", "chi",
                      "greedy_colors", "lower_clique", "upper_chi", "upper_alg1"});
  for (const auto& t : r.trials)
    csv.row({std::to_string(t.graph_id), std::to_string(t.seed), format_number(t.p), std::to_string(t.edges),
             format_optional(t.greedy_value), format_optional(t.optimum), format_optional(t.ratio),
             detail::opt_int(t.omega), detail::opt_int(t.chi), std::to_string(t.greedy_colors),
             detail::opt_ratio(t.lower_clique), detail::opt_ratio(t.upper_chromatic),
             format_number(t.upper_alg1.value())});
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& r, const std::string& param_name) {
  CsvWriter csv(out, {param_name, "trials", "completed", "lower_mean", "lower_sd", "upper_chi_mean", "upper_chi_sd",
                      "upper_alg1_mean", "upper_alg1_sd", "ratio_chi_mean", "ratio_chi_sd", "ratio_alg1_mean",
                      "ratio_alg1_sd"});
  for (const auto& p : r.points)
    csv.row({std::to_string(p.param), std::to_string(p.trials), std::to_string(p.completed),
             format_number(p.lower.mean), format_number(p.lower.sd), format_number(p.upper_chi.mean),
             format_number(p.upper_chi.sd), format_number(p.upper_alg1.mean), format_number(p.upper_alg1.sd),
             format_number(p.ratio_chi.mean), format_number(p.ratio_chi.sd), format_number(p.ratio_alg1.mean),
             format_number(p.ratio_alg1.sd)});
}

inline void write_sweep_trials_csv(std::ostream& out, const SweepResult& r, const std::string& param_name) {
  CsvWriter csv(out, {param_name, "trial", "seed", "edges", "omega", "chi", "greedy_colors", "lower_clique",
                      "upper_chi", "upper_alg1"});
  for (const auto& t : r.trials)
    csv.row({std::to_string(t.param), std::to_string(t.graph_id), std::to_string(t.seed), std::to_string(t.edges),
             detail::opt_int(t.omega), detail::opt_int(t.chi), std::to_string(t.greedy_colors),
             detail::opt_ratio(t.lower_clique), detail::opt_ratio(t.upper_chromatic),
             format_number(t.upper_alg1.value())});
}

// Runs the configured protocol and writes its CSV files into output_dir.
// Returns the paths written.
inline std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& c) {
  validate(c);
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::string& name) {
    written.push_back(dir / name);
    std::ofstream f(written.back(), std::ios::binary);
    if (!f) throw invalid_input("cannot write " + written.back().string());
    return f;
  };
  switch (c.experiment) {
    case ExperimentKind::correlation: {
      const auto r = run_correlation_experiment(c);
      auto f = open("correlation.csv");
      write_correlation_csv(f, r);
      auto s = open("correlation_summary.csv");
      CsvWriter csv(s, {"n_agents", "n_graphs", "spearman"});
      csv.row({std::to_string(c.n_agents), std::to_string(c.n_graphs), format_number(r.spearman_rho)});
      break;
    }
    case ExperimentKind::ba_sweep: {
      const auto r = run_ba_sweep(c);
      auto f = open("ba_sweep.csv");
      write_sweep_csv(f, r, "n");
      auto t = open("ba_trials.csv");
      write_sweep_trials_csv(t, r, "n");
      break;
    }
    case ExperimentKind::ws_sweep: {
      const auto r = run_ws_sweep(c);
      auto f = open("ws_sweep.csv");
      write_sweep_csv(f, r, "K");
      auto t = open("ws_trials.csv");
      write_sweep_trials_csv(t, r, "K");
      break;
    }
  }
  return written;
}

}  // namespace limgreedy
