#pragma once

// Randomized checks of the proved inequalities and structural identities
// against exhaustive ground truth. Each suite draws its cases from a seed and
// reports how many cases it checked and how many violated the claim.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "limgreedy/bounds.hpp"
#include "limgreedy/core.hpp"
#include "limgreedy/graph_gen.hpp"
#include "limgreedy/greedy.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/objectives.hpp"
#include "limgreedy/rng.hpp"

namespace limgreedy {

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::string first_failure;

  bool passed() const { return checked > 0 && violations == 0; }

  void fail(const std::string& why) {
    if (violations++ == 0) first_failure = why;
  }
};

namespace detail {

// Prefix values f(x_0..x_{k-1}) of an assignment, for k = 0..n.
inline std::vector<double> prefix_values(const SubmodularOracle& f, const Assignment& a) {
  std::vector<double> out{f.value(ElementSet{})};
  ElementSet s;
  for (Element x : a) {
    if (auto pos = std::lower_bound(s.begin(), s.end(), x); pos == s.end() || *pos != x) s.insert(pos, x);
    out.push_back(f.value(s));
  }
  return out;
}

inline std::string describe(std::size_t case_id, const std::string& what) {
  std::ostringstream s;
  s << "case " << case_id << ": " << what;
  return s.str();
}

// Instances shared by the complete-DAG suites: n <= 6 agents, |X_i| <= 3.
inline Instance complete_dag_case(std::uint64_t seed, std::size_t i) {
  Rng rng(derive_seed(seed, i));
  RandomCoverageParams p;
  p.n_agents = static_cast<std::size_t>(rng.between(1, 6));
  p.max_set_size = 3;
  return random_weighted_coverage(rng, p);
}

}  // namespace detail

// Complete DAG: 2 f(greedy) >= f(optimum).
inline SuiteResult verify_half_ratio(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"half-ratio"};
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = detail::complete_dag_case(seed, i);
    const auto g = gen_complete_dag(inst.agent_count());
    const auto greedy = run_sequential(inst, g);
    const auto opt = brute_force_opt(inst);
    ++r.checked;
    if (definitely_greater(opt.value, 2.0 * greedy.value, true))
      r.fail(detail::describe(i, "greedy " + format_number(greedy.value) + " < half of " + format_number(opt.value)));
  }
  return r;
}

// Complete DAG, every prefix k: f(x_1..x_k) >= f(x*_1..x*_k) - f(x_1..x_{k-1}).
inline SuiteResult verify_prefix(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"prefix"};
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = detail::complete_dag_case(seed, i);
    const auto g = gen_complete_dag(inst.agent_count());
    const auto greedy = detail::prefix_values(inst.oracle(), run_sequential(inst, g).assignment);
    const auto star = detail::prefix_values(inst.oracle(), brute_force_opt(inst).assignment);
    for (std::size_t k = 1; k < greedy.size(); ++k) {
      ++r.checked;
      if (definitely_greater(star[k] - greedy[k - 1], greedy[k], true))
        r.fail(detail::describe(i, "prefix " + std::to_string(k) + " violates the inequality"));
    }
  }
  return r;
}

// Random DAGs on 8 vertices, p cycling through 0.2, 0.5, 0.8:
// (n - omega + 2) f(greedy) >= f(optimum).
inline SuiteResult verify_clique_bound(std::size_t count, std::uint64_t seed, std::size_t n = 8) {
  SuiteResult r{"clique-bound"};
  constexpr double ps[] = {0.2, 0.5, 0.8};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto g = gen_er_dag(n, ps[i % 3], rng.next_u64());
    RandomCoverageParams p;
    p.n_agents = n;
    p.max_set_size = 3;
    const auto inst = random_weighted_coverage(rng, p);
    const auto omega = clique_number(g).size;
    const auto greedy = run_sequential(inst, g);
    const auto opt = brute_force_opt(inst);
    ++r.checked;
    const double factor = static_cast<double>(n - omega + 2);
    if (definitely_greater(opt.value, factor * greedy.value, true))
      r.fail(detail::describe(i, "ratio below 1/" + format_number(factor)));
  }
  return r;
}

// Every block-size vector with kappa <= max_blocks and blocks of size
// <= max_block, `per_shape` instances each. Checks the inequality with the
// cut-agent bonus on linked blocks and the plain 1/(2 kappa) form on isolated
// blocks.
inline SuiteResult verify_clique_blocks(std::size_t per_shape, std::uint64_t seed, std::size_t max_blocks = 3,
                                         std::size_t max_block = 3) {
  SuiteResult r{"clique-blocks"};
  std::vector<std::vector<std::size_t>> shapes;
  std::function<void(std::vector<std::size_t>&)> grow = [&](std::vector<std::size_t>& cur) {
    if (!cur.empty()) shapes.push_back(cur);
    if (cur.size() == max_blocks) return;
    for (std::size_t s = 1; s <= max_block; ++s) {
      cur.push_back(s);
      grow(cur);
      cur.pop_back();
    }
  };
  std::vector<std::size_t> cur;
  grow(cur);
  std::size_t case_id = 0;
  for (const auto& shape : shapes) {
    const CliquePartition part(shape);
    for (std::size_t t = 0; t < per_shape; ++t, ++case_id) {
      Rng rng(derive_seed(seed, case_id));
      RandomCoverageParams p;
      p.n_agents = part.agent_count();
      p.max_set_size = 3;
      const auto inst = random_weighted_coverage(rng, p);
      const auto linked = check_clique_blocks(inst, part);
      const auto isolated = check_clique_blocks_unlinked(inst, part);
      r.checked += 2;
      if (!linked.holds) r.fail(detail::describe(case_id, "linked cliques: " + format_number(linked.lhs) + " < " + format_number(linked.rhs)));
      if (!isolated.holds) r.fail(detail::describe(case_id, "isolated cliques: " + format_number(isolated.lhs) + " < " + format_number(isolated.rhs)));
    }
  }
  return r;
}

// Adversarial instance from an optimal coloring: the greedy evolution that
// prefers a_i reaches exactly chi, the optimum is exactly n.
inline SuiteResult verify_chromatic_tight(std::size_t count, std::uint64_t seed, std::size_t max_n = 10) {
  SuiteResult r{"chromatic-tight"};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    const auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
    const auto chrom = chromatic_number(g);
    const auto w = realize_chromatic_bound(g, chrom.coloring);
    ++r.checked;
    if (w.greedy.value != static_cast<double>(chrom.chromatic))
      r.fail(detail::describe(i, "greedy value " + format_number(w.greedy.value) + " != chi " + std::to_string(chrom.chromatic)));
    else if (!w.optimum || *w.optimum != static_cast<double>(n))
      r.fail(detail::describe(i, "optimum differs from n"));
  }
  return r;
}

// n synchronous rounds reproduce the sequential assignment.
inline SuiteResult verify_synchronous(std::size_t count, std::uint64_t seed, std::size_t max_n = 7) {
  SuiteResult r{"synchronous"};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    RandomCoverageParams p;
    p.n_agents = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    p.max_set_size = 3;
    p.universe = 6;  // small universe forces overlaps and ties
    const auto inst = random_weighted_coverage(rng, p);
    const auto g = gen_er_dag(p.n_agents, rng.uniform01(), rng.next_u64());
    const auto seq = run_sequential(inst, g);
    const auto sync = run_synchronous(inst, g, TieBreak::lowest_index(), p.n_agents);
    ++r.checked;
    if (sync.back().assignment != seq.assignment) r.fail(detail::describe(i, "assignments differ"));
  }
  return r;
}

// Greedy on an intersecting instance and on its disjoint reduction reach the
// same value. Even cases use the universal function, odd cases random
// weighted coverage over a shared ground set.
inline SuiteResult verify_reduction(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"reduction"};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto n = static_cast<std::size_t>(rng.between(1, 6));
    const auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
    Instance inst = (i % 2 == 0)
                        ? make_universal(n, n + static_cast<std::size_t>(rng.below(3)))
                        : [&] {
                            RandomCoverageParams p;
                            p.n_agents = n;
                            p.max_set_size = 3;
                            return random_intersecting_coverage(rng, p, 4);
                          }();
    const auto red = reduce_to_disjoint(inst);
    const auto a = run_sequential(inst, g);
    const auto b = run_sequential(red.reduced, g);
    ++r.checked;
    if (a.value != b.value) r.fail(detail::describe(i, "values " + format_number(a.value) + " vs " + format_number(b.value)));
  }
  return r;
}

// omega <= chi <= greedy colors, certificates verify, the universal function
// realizes exactly the greedy-coloring bound, and the structural necessary
// conditions hold for k = greedy colors.
inline SuiteResult verify_coloring(std::size_t count, std::uint64_t seed, std::size_t max_n = 20) {
  SuiteResult r{"coloring"};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(max_n)));
    const auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
    const auto rep = compute_bounds(g);
    ++r.checked;
    if (!(rep.omega <= static_cast<std::size_t>(rep.chi) && rep.chi <= rep.greedy_colors &&
          rep.greedy_colors <= static_cast<int>(n)))
      r.fail(detail::describe(i, "omega <= chi <= greedy <= n violated"));
    if (!rep.clique_certificate.verify(g) || rep.clique_certificate.clique.size() != rep.omega ||
        !rep.coloring_certificate.verify(g) || rep.coloring_certificate.coloring.colors_used() != rep.chi ||
        !rep.greedy_certificate.verify(g))
      r.fail(detail::describe(i, "certificate does not verify"));
    if (!check_degree_conditions(g, static_cast<std::size_t>(rep.greedy_colors)).all())
      r.fail(detail::describe(i, "necessary degree conditions fail"));
    const auto uni = run_sequential(make_universal(n, n), g);
    if (uni.value != static_cast<double>(rep.greedy_colors))
      r.fail(detail::describe(i, "universal greedy value differs from greedy colors"));
  }
  return r;
}

// Sum of marginals along random orderings equals the set value.
inline SuiteResult verify_telescoping(std::size_t count, std::uint64_t seed) {
  SuiteResult r{"telescoping"};
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const auto n = static_cast<std::size_t>(rng.between(1, 6));
    auto inst = [&]() -> Instance {
      switch (i % 4) {
        case 0: {
          RandomCoverageParams p;
          p.n_agents = n;
          return random_weighted_coverage(rng, p);
        }
        case 1:
          return make_coverage(random_disks(rng, n, 2, 0.05 + 0.3 * rng.uniform01()), CoverageGrid{50});
        case 2:
          return make_universal(n, n + 2);
        default: {
          const auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
          return make_adversarial(g, greedy_topological_coloring(g).coloring);
        }
      }
    }();
    const auto& f = inst.oracle();
    const auto m = f.ground().size();
    std::vector<Element> seq;
    const auto len = static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(m + 2)));
    for (std::size_t k = 0; k < len; ++k) seq.push_back(static_cast<Element>(rng.below(m)));
    const double t = telescoping_value(f, seq);
    const double v = evaluate(f, seq);
    ++r.checked;
    const bool ok = f.integral() ? t == v : std::fabs(t - v) <= 1e-12;
    if (!ok) r.fail(detail::describe(i, "telescoped " + format_number(t) + " vs direct " + format_number(v)));
  }
  return r;
}

inline std::vector<std::string> suite_names() {
  return {"telescoping", "half-ratio", "prefix", "clique-bound", "clique-blocks", "chromatic-tight", "synchronous", "reduction", "coloring"};
}

// Runs a suite by name with its default case count, or `count` when nonzero.
inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t count = 0) {
  auto pick = [count](std::size_t d) { return count ? count : d; };
  if (name == "telescoping") return verify_telescoping(pick(100), seed);
  if (name == "half-ratio") return verify_half_ratio(pick(200), seed);
  if (name == "prefix") return verify_prefix(pick(200), seed);
  if (name == "clique-bound") return verify_clique_bound(pick(100), seed);
  if (name == "clique-blocks") return verify_clique_blocks(pick(20), seed);
  if (name == "chromatic-tight") return verify_chromatic_tight(pick(20), seed);
  if (name == "synchronous") return verify_synchronous(pick(50), seed);
  if (name == "reduction") return verify_reduction(pick(50), seed);
  if (name == "coloring") return verify_coloring(pick(100), seed);
  throw invalid_input("unknown suite '" + name + "'");
}

}  // namespace limgreedy
