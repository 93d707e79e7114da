#pragma once

// Closed-form performance bounds of the distributed greedy as functions of
// the information graph:
//
//   lower, any DAG          1 / (n - omega + 2)
//   lower, empty graph      1 / n
//   lower, complete DAG     1 / 2
//   lower, kappa cliques    1 / (2 kappa)
//   upper, adversarial      chi / n
//   upper, universal        (colors of the topological greedy coloring) / n
//
// Lower bounds hold for every monotone normalized submodular objective; the
// upper bounds are each attained by one specific objective.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "limgreedy/core.hpp"
#include "limgreedy/csv.hpp"
#include "limgreedy/errors.hpp"
#include "limgreedy/graph_gen.hpp"
#include "limgreedy/greedy.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/objectives.hpp"
#include "limgreedy/ratio.hpp"

namespace limgreedy {

namespace detail {
inline std::int64_t as_i64(std::size_t x) { return static_cast<std::int64_t>(x); }
inline void require_vertices(const InfoDag& g, const char* what) {
  if (g.size() == 0) throw invalid_input(std::string(what) + ": graph has no vertices");
}
}  // namespace detail

inline Ratio lower_bound_clique(std::size_t n, std::size_t omega) {
  if (omega > n || (n > 0 && omega == 0)) throw invalid_input("lower_bound_clique: clique number out of range");
  return {1, detail::as_i64(n - omega + 2)};
}

inline Ratio lower_bound_clique(const InfoDag& g, std::size_t guard = kCliqueGuard) {
  detail::require_vertices(g, "lower_bound_clique");
  return lower_bound_clique(g.size(), clique_number(g, guard).size);
}

// Recognizes the interconnected-cliques topology by exact pattern match along
// the stored topological order (which is unique for this topology). Blocks
// are grown greedily, so the smallest kappa is reported. Vertex ids in the
// returned partition are topological positions.
inline std::optional<CliquePartition> detect_interconnected_cliques(const InfoDag& g) {
  const auto n = g.size();
  if (n == 0) return std::nullopt;
  const auto& order = g.topo_order();
  auto in_positions = [&](std::size_t k) {
    std::vector<std::size_t> p;
    for (Vertex u : g.in_neighbors(order[k])) p.push_back(g.position(u));
    std::sort(p.begin(), p.end());
    return p;
  };
  std::vector<std::size_t> sizes{1};
  std::size_t start = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const auto p = in_positions(k);
    bool extends = true;
    for (std::size_t q = start; q < k && extends; ++q) extends = std::binary_search(p.begin(), p.end(), q);
    if (extends) {
      ++sizes.back();
    } else {
      sizes.push_back(1);
      start = k;
    }
  }
  CliquePartition part(sizes);
  const auto blocks = part.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t k = blocks[b].first; k <= blocks[b].second; ++k) {
      std::vector<std::size_t> expected;
      if (b > 0) expected.push_back(blocks[b - 1].second);
      for (std::size_t q = blocks[b].first; q < k; ++q) expected.push_back(q);
      if (in_positions(k) != expected) return std::nullopt;
    }
  }
  return part;
}

struct SpecialBound {
  std::string label;  // "empty", "complete" or "cliques"
  Ratio value;
};

inline std::optional<SpecialBound> lower_bound_special(const InfoDag& g) {
  const auto n = g.size();
  if (n == 0) return std::nullopt;
  if (g.edge_count() == 0) return SpecialBound{"empty", Ratio(1, detail::as_i64(n))};
  if (g.edge_count() == n * (n - 1) / 2) return SpecialBound{"complete", Ratio(1, 2)};
  if (auto part = detect_interconnected_cliques(g); part && part->block_count() > 1)
    return SpecialBound{"cliques", Ratio(1, 2 * detail::as_i64(part->block_count()))};
  return std::nullopt;
}

inline Ratio upper_bound_chromatic(const InfoDag& g, std::size_t guard = kChromaticGuard) {
  detail::require_vertices(g, "upper_bound_chromatic");
  return {chromatic_number(g, guard).chromatic, detail::as_i64(g.size())};
}

// Linear time: topological greedy coloring, largest color over n.
inline Ratio upper_bound_alg1(const InfoDag& g) {
  detail::require_vertices(g, "upper_bound_alg1");
  return {greedy_topological_coloring(g).max_color, detail::as_i64(g.size())};
}

// ---------------------------------------------------------------------------
// Witness for the chromatic upper bound
// ---------------------------------------------------------------------------

struct ChromaticWitness {
  Solution greedy;                // evolution that prefers a_i whenever it ties
  std::optional<double> optimum;  // brute force, when within guard
};

inline TieBreak prefer_adversarial_a() {
  return TieBreak::adversarial([](std::size_t agent, std::span<const Element> argmax) {
    const Element a = adversarial_a(agent);
    return std::binary_search(argmax.begin(), argmax.end(), a) ? a : argmax.front();
  });
}

inline ChromaticWitness realize_chromatic_bound(const InfoDag& g, const Coloring& coloring,
                                                std::uint64_t guard = kDefaultBruteForceGuard) {
  const auto inst = make_adversarial(g, coloring);
  ChromaticWitness w;
  w.greedy = run_sequential(inst, g, prefer_adversarial_a());
  if (assignment_count(inst) <= guard) w.optimum = brute_force_opt(inst, guard).value;
  return w;
}

// ---------------------------------------------------------------------------
// Necessary conditions for the universal function to reach value k
// ---------------------------------------------------------------------------

struct DegreeConditions {
  bool high_indegree_vertex = false;  // some in-degree >= k-1
  bool graded_indegrees = false;      // for each l in 1..k, >= l vertices with in-degree >= k-l
  bool enough_edges = false;          // |E| >= k(k-1)/2
  bool all() const { return high_indegree_vertex && graded_indegrees && enough_edges; }
};

inline DegreeConditions check_degree_conditions(const InfoDag& g, std::size_t k) {
  DegreeConditions out;
  std::vector<std::size_t> indeg(g.size());
  for (Vertex v = 0; v < g.size(); ++v) indeg[v] = g.in_neighbors(v).size();
  auto at_least = [&](std::size_t d) {
    return static_cast<std::size_t>(std::count_if(indeg.begin(), indeg.end(), [d](std::size_t x) { return x >= d; }));
  };
  out.high_indegree_vertex = k == 0 || at_least(k - 1) >= 1;
  out.graded_indegrees = true;
  for (std::size_t l = 1; l <= k; ++l)
    if (at_least(k - l) < l) out.graded_indegrees = false;
  out.enough_edges = g.edge_count() >= k * (k > 0 ? k - 1 : 0) / 2;
  return out;
}

// ---------------------------------------------------------------------------
// Interconnected cliques inequality
// ---------------------------------------------------------------------------

struct CliqueBlocksCheck {
  std::size_t kappa = 0;
  double greedy_value = 0.0;
  double optimum = 0.0;
  double bonus = 0.0;  // sum of f({x*_{m_i}}) over the cut agents
  double lhs = 0.0;    // 2 kappa f(greedy)
  double rhs = 0.0;    // f(x*) + bonus (bonus omitted in the weak form)
  bool holds = false;
};

namespace detail {

inline CliqueBlocksCheck clique_blocks_check(const Instance& inst, const CliquePartition& part, bool linked) {
  if (part.agent_count() != inst.agent_count())
    throw invalid_input("check_clique_blocks: partition does not match the agent count");
  const auto topo = gen_interconnected_cliques(part.block_sizes(), linked);
  const auto greedy = run_sequential(inst, topo.dag);
  const auto opt = brute_force_opt(inst);
  CliqueBlocksCheck c;
  c.kappa = part.block_count();
  c.greedy_value = greedy.value;
  c.optimum = opt.value;
  if (linked)
    for (Vertex m : part.cut_points()) c.bonus += evaluate(inst.oracle(), ElementSet{opt.assignment[m]});
  c.lhs = 2.0 * static_cast<double>(c.kappa) * c.greedy_value;
  c.rhs = c.optimum + c.bonus;
  c.holds = !definitely_greater(c.rhs, c.lhs, inst.oracle().integral());
  return c;
}

}  // namespace detail

// 2 kappa f(greedy) >= f(x*) + sum_i f(x*_{m_i}) on the linked topology.
inline CliqueBlocksCheck check_clique_blocks(const Instance& inst, const CliquePartition& part) {
  return detail::clique_blocks_check(inst, part, true);
}

// Blocks without any inter-block edge: 2 kappa f(greedy) >= f(x*).
inline CliqueBlocksCheck check_clique_blocks_unlinked(const Instance& inst, const CliquePartition& part) {
  return detail::clique_blocks_check(inst, part, false);
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

struct BoundReport {
  std::size_t n = 0;
  std::size_t edges = 0;
  std::size_t omega = 0;
  int chi = 0;
  int greedy_colors = 0;
  Ratio lower_clique;
  std::optional<SpecialBound> lower_special;
  Ratio upper_chromatic;
  Ratio upper_alg1;
  BoundCertificate clique_certificate;
  BoundCertificate coloring_certificate;
  BoundCertificate greedy_certificate;

  // Largest lower bound available for this graph.
  Ratio best_lower() const {
    return lower_special ? std::max(lower_clique, lower_special->value) : lower_clique;
  }
};

inline BoundReport compute_bounds(const InfoDag& g, std::size_t clique_guard = kCliqueGuard,
                                  std::size_t chromatic_guard = kChromaticGuard,
                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  detail::require_vertices(g, "compute_bounds");
  BoundReport r;
  r.n = g.size();
  r.edges = g.edge_count();
  const auto clique = clique_number(g, clique_guard, node_budget);
  r.omega = clique.size;
  r.clique_certificate = clique.certificate;
  const auto chrom = chromatic_number(g, chromatic_guard, node_budget);
  r.chi = chrom.chromatic;
  r.coloring_certificate = chrom.certificate;
  const auto greedy = greedy_topological_coloring(g);
  r.greedy_colors = greedy.max_color;
  r.greedy_certificate.kind = BoundCertificate::Kind::greedy_coloring;
  r.greedy_certificate.coloring = greedy.coloring;
  r.lower_clique = lower_bound_clique(r.n, r.omega);
  r.lower_special = lower_bound_special(g);
  r.upper_chromatic = Ratio(r.chi, detail::as_i64(r.n));
  r.upper_alg1 = Ratio(r.greedy_colors, detail::as_i64(r.n));
  return r;
}

inline void print_report(std::ostream& out, const BoundReport& r) {
  auto line = [&](const std::string& label, const std::string& value, const std::string& approx = {}) {
    out << std::left << std::setw(22) << label << std::setw(10) << value;
    if (!approx.empty()) out << approx;
    out << '\n';
  };
  auto join = [](const auto& xs) {
    std::ostringstream s;
    for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? " " : "") << xs[i];
    return s.str();
  };
  line("vertices", std::to_string(r.n));
  line("edges", std::to_string(r.edges));
  line("clique number", std::to_string(r.omega), "clique: " + join(r.clique_certificate.clique));
  line("chromatic number", std::to_string(r.chi));
  line("greedy colors", std::to_string(r.greedy_colors));
  line("lower (clique)", r.lower_clique.str(), format_number(r.lower_clique.value()));
  if (r.lower_special)
    line("lower (" + r.lower_special->label + ")", r.lower_special->value.str(),
         format_number(r.lower_special->value.value()));
  line("upper (chromatic)", r.upper_chromatic.str(), format_number(r.upper_chromatic.value()));
  line("upper (greedy col.)", r.upper_alg1.str(), format_number(r.upper_alg1.value()));
}

inline const std::vector<std::string>& bounds_csv_header() {
  static const std::vector<std::string> h{"n",           "edges",         "omega",    "chi",       "greedy_colors",
                                          "lower_clique", "lower_special", "upper_chi", "upper_alg1"};
  return h;
}

inline std::vector<std::string> bounds_csv_row(const BoundReport& r) {
  return {std::to_string(r.n),
          std::to_string(r.edges),
          std::to_string(r.omega),
          std::to_string(r.chi),
          std::to_string(r.greedy_colors),
          format_number(r.lower_clique.value()),
          r.lower_special ? format_number(r.lower_special->value.value()) : std::string{},
          format_number(r.upper_chromatic.value()),
          format_number(r.upper_alg1.value())};
}

}  // namespace limgreedy
