#pragma once

// Distributed greedy over an information DAG. Each agent, in topological
// order, picks the strategy with the largest marginal reward given only the
// choices of its in-neighbors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "limgreedy/core.hpp"
#include "limgreedy/csv.hpp"
#include "limgreedy/errors.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/rng.hpp"

namespace limgreedy {

enum class TieBreakPolicy { lowest_index, highest_index, seeded_random, adversarial };

// How an agent resolves several maximizers. The adversarial policy delegates
// to a caller-supplied function, which must return a member of the argmax.
class TieBreak {
 public:
  using Chooser = std::function<Element(std::size_t agent, std::span<const Element> argmax)>;

  static TieBreak lowest_index() { return TieBreak(TieBreakPolicy::lowest_index); }
  static TieBreak highest_index() { return TieBreak(TieBreakPolicy::highest_index); }

  // Agent i draws from its own stream derive_seed(seed, i), so the result
  // does not depend on the processing order.
  static TieBreak seeded_random(std::uint64_t seed) {
    TieBreak t(TieBreakPolicy::seeded_random);
    t.seed_ = seed;
    return t;
  }

  static TieBreak adversarial(Chooser chooser) {
    if (!chooser) throw invalid_input("adversarial tie-break needs a chooser");
    TieBreak t(TieBreakPolicy::adversarial);
    t.chooser_ = std::move(chooser);
    return t;
  }

  TieBreakPolicy policy() const { return policy_; }

  // `argmax` is sorted by element index and nonempty.
  Element choose(std::size_t agent, std::span<const Element> argmax) const {
    switch (policy_) {
      case TieBreakPolicy::lowest_index:
        return argmax.front();
      case TieBreakPolicy::highest_index:
        return argmax.back();
      case TieBreakPolicy::seeded_random: {
        Rng rng(derive_seed(seed_, agent));
        return argmax[static_cast<std::size_t>(rng.below(argmax.size()))];
      }
      case TieBreakPolicy::adversarial: {
        const Element e = chooser_(agent, argmax);
        if (!std::binary_search(argmax.begin(), argmax.end(), e))
          throw invalid_input("tie-break chooser returned an element outside the argmax set");
        return e;
      }
    }
    return argmax.front();
  }

 private:
  explicit TieBreak(TieBreakPolicy p) : policy_(p) {}
  TieBreakPolicy policy_;
  std::uint64_t seed_ = 0;
  Chooser chooser_;
};

struct TraceStep {
  std::size_t agent = 0;
  ElementSet observed;          // X_in(i): unique choices of in-neighbors
  std::vector<Element> argmax;  // maximizers of the local marginal
  Element chosen = 0;
  double local_marginal = 0.0;   // gain given what the agent observed
  double global_marginal = 0.0;  // gain given every earlier choice
};

struct Solution {
  Assignment assignment;
  std::vector<TraceStep> trace;  // in processing order
  double value = 0.0;
};

namespace detail {

struct LocalChoice {
  std::vector<Element> argmax;
  Element chosen = 0;
  double gain = 0.0;
};

inline LocalChoice greedy_choice(const Instance& inst, std::size_t agent, const ElementSet& observed,
                                 const TieBreak& tb) {
  const auto& f = inst.oracle();
  const double base = f.value(observed);
  const bool exact = f.integral();
  LocalChoice out;
  std::vector<double> gains;
  const auto& options = inst.strategy_set(agent);
  gains.reserve(options.size());
  ElementSet with;
  for (Element x : options) {
    auto pos = std::lower_bound(observed.begin(), observed.end(), x);
    if (pos != observed.end() && *pos == x) {
      gains.push_back(0.0);
      continue;
    }
    with = observed;
    with.insert(with.begin() + (pos - observed.begin()), x);
    gains.push_back(f.value(with) - base);
  }
  double best = gains.front();
  for (double g : gains)
    if (definitely_greater(g, best, exact)) best = g;
  for (std::size_t k = 0; k < options.size(); ++k)
    if (nearly_equal(gains[k], best, exact)) out.argmax.push_back(options[k]);
  out.chosen = tb.choose(agent, out.argmax);
  out.gain = gains[static_cast<std::size_t>(
      std::lower_bound(options.begin(), options.end(), out.chosen) - options.begin())];
  return out;
}

inline ElementSet observed_set(const InfoDag& g, std::size_t agent, const Assignment& choices) {
  ElementSet s;
  for (Vertex j : g.in_neighbors(agent)) s.push_back(choices[j]);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline void check_sizes(const Instance& inst, const InfoDag& g) {
  if (g.size() != inst.agent_count())
    throw invalid_input("graph has " + std::to_string(g.size()) + " vertices but instance has " +
                        std::to_string(inst.agent_count()) + " agents");
}

// Fills global marginals along `order` and the total value of `choices`.
inline void account_globally(const Instance& inst, std::span<const Vertex> order, Solution& sol) {
  const auto& f = inst.oracle();
  ElementSet so_far;
  double value = f.value(so_far);
  std::size_t step = 0;
  for (Vertex i : order) {
    const Element x = sol.assignment[i];
    auto pos = std::lower_bound(so_far.begin(), so_far.end(), x);
    double gain = 0.0;
    if (pos == so_far.end() || *pos != x) {
      so_far.insert(pos, x);
      const double next = f.value(so_far);
      gain = next - value;
      value = next;
    }
    sol.trace[step++].global_marginal = gain;
  }
  sol.value = value;
}

}  // namespace detail

// Runs the greedy with agents processed in `order`, which must be a
// topological order of `g`.
inline Solution run_sequential(const Instance& inst, const InfoDag& g, std::span<const Vertex> order,
                               const TieBreak& tb = TieBreak::lowest_index()) {
  detail::check_sizes(inst, g);
  if (!g.is_topological_order(order)) throw invalid_input("run_sequential: order is not topological");
  Solution sol;
  sol.assignment.assign(inst.agent_count(), 0);
  for (Vertex i : order) {
    auto observed = detail::observed_set(g, i, sol.assignment);
    auto choice = detail::greedy_choice(inst, i, observed, tb);
    sol.assignment[i] = choice.chosen;
    TraceStep step;
    step.agent = i;
    step.observed = std::move(observed);
    step.argmax = std::move(choice.argmax);
    step.chosen = choice.chosen;
    step.local_marginal = choice.gain;
    sol.trace.push_back(std::move(step));
  }
  detail::account_globally(inst, order, sol);
  return sol;
}

inline Solution run_sequential(const Instance& inst, const InfoDag& g,
                               const TieBreak& tb = TieBreak::lowest_index()) {
  return run_sequential(inst, g, g.topo_order(), tb);
}

// Synchronous variant: at round t every agent best-responds to its
// in-neighbors' choices from round t-1. Round 0 choices are greedy against
// the empty set. Returns the solutions after rounds 1..rounds.
inline std::vector<Solution> run_synchronous(const Instance& inst, const InfoDag& g, const TieBreak& tb,
                                             std::size_t rounds) {
  detail::check_sizes(inst, g);
  if (rounds < 1) throw invalid_input("run_synchronous: rounds must be >= 1");
  const auto n = inst.agent_count();
  Assignment prev(n);
  for (std::size_t i = 0; i < n; ++i) prev[i] = detail::greedy_choice(inst, i, {}, tb).chosen;

  std::vector<Solution> out;
  out.reserve(rounds);
  for (std::size_t t = 1; t <= rounds; ++t) {
    Solution sol;
    sol.assignment.assign(n, 0);
    for (Vertex i : g.topo_order()) {
      auto observed = detail::observed_set(g, i, prev);
      auto choice = detail::greedy_choice(inst, i, observed, tb);
      sol.assignment[i] = choice.chosen;
      TraceStep step;
      step.agent = i;
      step.observed = std::move(observed);
      step.argmax = std::move(choice.argmax);
      step.chosen = choice.chosen;
      step.local_marginal = choice.gain;
      sol.trace.push_back(std::move(step));
    }
    detail::account_globally(inst, g.topo_order(), sol);
    prev = sol.assignment;
    out.push_back(std::move(sol));
  }
  return out;
}

// f(greedy) / f(optimum), with 0/0 defined as 1.
inline double approximation_ratio(const Solution& sol, const Instance& inst,
                                  std::uint64_t guard = kDefaultBruteForceGuard) {
  const auto opt = brute_force_opt(inst, guard);
  if (nearly_equal(opt.value, 0.0, inst.oracle().integral())) return 1.0;
  return sol.value / opt.value;
}

// Columns: agent,chosen,local_marginal,global_marginal,argmax_size
inline void write_trace_csv(std::ostream& out, const Solution& sol, const GroundSet& ground) {
  CsvWriter csv(out, {"agent", "chosen", "local_marginal", "global_marginal", "argmax_size"});
  for (const auto& s : sol.trace)
    csv.row({std::to_string(s.agent), ground.name(s.chosen), format_number(s.local_marginal),
             format_number(s.global_marginal), std::to_string(s.argmax.size())});
}

}  // namespace limgreedy
