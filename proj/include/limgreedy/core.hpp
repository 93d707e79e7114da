#pragma once

// Set-function oracles over a finite ground set, the partition-matroid
// instance built on top of them, and the exhaustive routines (property
// checkers, brute-force optimum) used as test oracles everywhere else.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limgreedy/errors.hpp"

namespace limgreedy {

using Element = std::size_t;

// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

// One chosen element per agent.
using Assignment = std::vector<Element>;

inline constexpr double kTolerance = 1e-9;

inline bool nearly_equal(double a, double b, bool integral) {
  return integral ? a == b : std::fabs(a - b) <= kTolerance;
}

// a > b beyond the comparison tolerance.
inline bool definitely_greater(double a, double b, bool integral) {
  return integral ? a > b : a > b + kTolerance;
}

class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (Element e = 0; e < names_.size(); ++e) {
      if (!index_.emplace(names_[e], e).second)
        throw invalid_input("duplicate ground-set element '" + names_[e] + "'");
    }
  }

  // Elements named <prefix>1 .. <prefix>n.
  static GroundSet numbered(std::size_t n, std::string_view prefix = "e") {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
    return GroundSet(std::move(names));
  }

  std::size_t size() const { return names_.size(); }
  bool contains(Element e) const { return e < names_.size(); }
  const std::string& name(Element e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }

  Element find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw invalid_input("unknown element '" + std::string(name) + "'");
    return it->second;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
};

// Black-box valuation f: 2^ground -> R>=0. The wrapped function is only ever
// called with a sorted, duplicate-free set of valid elements.
//
// Copies share state, including the query counter. Queries may be issued
// concurrently.
class SubmodularOracle {
 public:
  using ValueFn = std::function<double(std::span<const Element>)>;

  SubmodularOracle(GroundSet ground, ValueFn fn, bool integral = false)
      : state_(std::make_shared<State>(std::move(ground), std::move(fn), integral)) {
    if (!state_->fn) throw invalid_input("oracle: empty value function");
  }

  const GroundSet& ground() const { return state_->ground; }

  // True when every value is an integer; comparisons are then exact.
  bool integral() const { return state_->integral; }

  double value(std::span<const Element> sorted_set) const {
    state_->queries.fetch_add(1, std::memory_order_relaxed);
    if (state_->cache) {
      ElementSet key(sorted_set.begin(), sorted_set.end());
      {
        std::lock_guard lock(state_->cache->mutex);
        if (auto it = state_->cache->values.find(key); it != state_->cache->values.end())
          return it->second;
      }
      const double v = state_->fn(sorted_set);
      std::lock_guard lock(state_->cache->mutex);
      state_->cache->values.emplace(std::move(key), v);
      return v;
    }
    return state_->fn(sorted_set);
  }

  std::uint64_t query_count() const { return state_->queries.load(std::memory_order_relaxed); }

  // Same function behind a pure memo cache; the new oracle has its own counter.
  SubmodularOracle memoized() const {
    SubmodularOracle out(state_->ground, state_->fn, state_->integral);
    out.state_->cache = std::make_unique<Cache>();
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<ElementSet, double> values;
  };
  struct State {
    State(GroundSet g, ValueFn f, bool i) : ground(std::move(g)), fn(std::move(f)), integral(i) {}
    GroundSet ground;
    ValueFn fn;
    bool integral;
    std::unique_ptr<Cache> cache;
    mutable std::atomic<std::uint64_t> queries{0};
  };
  std::shared_ptr<State> state_;
};

// Validates membership and returns the deduplicated, sorted set.
inline ElementSet make_set(const GroundSet& ground, std::span<const Element> elements) {
  ElementSet s(elements.begin(), elements.end());
  for (Element e : s) {
    if (!ground.contains(e))
      throw invalid_input("element index " + std::to_string(e) + " outside ground set of size " +
                          std::to_string(ground.size()));
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline double evaluate(const SubmodularOracle& f, std::span<const Element> elements) {
  const auto s = make_set(f.ground(), elements);
  return f.value(s);
}

inline double marginal(const SubmodularOracle& f, Element x, std::span<const Element> base) {
  const auto s = make_set(f.ground(), base);
  if (!f.ground().contains(x)) throw invalid_input("marginal: unknown element " + std::to_string(x));
  if (std::binary_search(s.begin(), s.end(), x)) return 0.0;
  auto with = s;
  with.insert(std::lower_bound(with.begin(), with.end(), x), x);
  return f.value(with) - f.value(s);
}

// Sum of marginals of each element given its predecessors in the sequence.
inline double telescoping_value(const SubmodularOracle& f, std::span<const Element> sequence) {
  double total = 0.0;
  ElementSet prefix;
  double prefix_value = 0.0;
  bool have_prefix_value = false;
  for (Element x : sequence) {
    if (!f.ground().contains(x))
      throw invalid_input("telescoping_value: unknown element " + std::to_string(x));
    auto pos = std::lower_bound(prefix.begin(), prefix.end(), x);
    if (pos != prefix.end() && *pos == x) continue;  // marginal of a repeat is 0
    if (!have_prefix_value) {
      prefix_value = f.value(prefix);
      have_prefix_value = true;
    }
    prefix.insert(pos, x);
    const double next = f.value(prefix);
    total += next - prefix_value;
    prefix_value = next;
  }
  return total;
}

class Instance {
 public:
  Instance(SubmodularOracle oracle, std::vector<std::vector<Element>> strategy_sets)
      : oracle_(std::move(oracle)) {
    if (strategy_sets.empty()) throw invalid_input("instance needs at least one agent");
    sets_.reserve(strategy_sets.size());
    for (std::size_t i = 0; i < strategy_sets.size(); ++i) {
      if (strategy_sets[i].empty())
        throw invalid_input("agent " + std::to_string(i) + " has an empty strategy set");
      sets_.push_back(make_set(oracle_.ground(), strategy_sets[i]));
    }
    std::vector<int> hits(oracle_.ground().size(), 0);
    for (const auto& s : sets_)
      for (Element e : s) ++hits[e];
    disjoint_ = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  }

  const SubmodularOracle& oracle() const { return oracle_; }
  std::size_t agent_count() const { return sets_.size(); }
  const std::vector<ElementSet>& strategy_sets() const { return sets_; }
  const ElementSet& strategy_set(std::size_t agent) const { return sets_.at(agent); }

  // Strategy sets are pairwise disjoint and cover the ground set.
  bool disjoint() const { return disjoint_; }

 private:
  SubmodularOracle oracle_;
  std::vector<ElementSet> sets_;
  bool disjoint_ = false;
};

inline void validate_assignment(const Instance& inst, const Assignment& a) {
  if (a.size() != inst.agent_count())
    throw invalid_input("assignment has " + std::to_string(a.size()) + " choices for " +
                        std::to_string(inst.agent_count()) + " agents");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& s = inst.strategy_set(i);
    if (!std::binary_search(s.begin(), s.end(), a[i]))
      throw invalid_input("agent " + std::to_string(i) + " chose an element outside its strategy set");
  }
}

// Value of the set of unique chosen elements.
inline double evaluate(const Instance& inst, const Assignment& a) {
  validate_assignment(inst, a);
  return evaluate(inst.oracle(), a);
}

// ---------------------------------------------------------------------------
// Exhaustive property checks
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultPropertyGuard = 14;

struct PropertyWitness {
  ElementSet a;
  ElementSet b;
  std::optional<Element> x;  // absent for monotonicity/normalization witnesses
};

struct PropertyCheck {
  bool holds = true;
  std::optional<PropertyWitness> witness;
  explicit operator bool() const { return holds; }
};

namespace detail {

inline ElementSet mask_to_set(std::uint64_t mask) {
  ElementSet s;
  for (Element e = 0; mask != 0; ++e, mask >>= 1)
    if (mask & 1U) s.push_back(e);
  return s;
}

// Values of every subset, indexed by bitmask.
inline std::vector<double> all_subset_values(const SubmodularOracle& f, std::size_t guard,
                                             std::string_view what) {
  const auto n = f.ground().size();
  if (n > guard)
    throw size_guard_exceeded(std::string(what) + ": ground set of size " + std::to_string(n) +
                              " exceeds guard " + std::to_string(guard));
  if (n >= 63) throw size_guard_exceeded(std::string(what) + ": ground set too large to enumerate");
  std::vector<double> values(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < values.size(); ++m) values[m] = f.value(mask_to_set(m));
  return values;
}

}  // namespace detail

// Diminishing returns for all A subset-of B, x not in B. Checking B = A + {y}
// for every A, y, x is equivalent and yields a witness of that shape.
inline PropertyCheck check_submodular(const SubmodularOracle& f,
                                      std::size_t guard = kDefaultPropertyGuard) {
  const auto values = detail::all_subset_values(f, guard, "check_submodular");
  const auto n = f.ground().size();
  const bool exact = f.integral();
  for (std::uint64_t a = 0; a < values.size(); ++a) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::uint64_t ybit = std::uint64_t{1} << y;
      if (a & ybit) continue;
      const std::uint64_t b = a | ybit;
      for (std::size_t x = 0; x < n; ++x) {
        const std::uint64_t xbit = std::uint64_t{1} << x;
        if (b & xbit) continue;
        const double gain_a = values[a | xbit] - values[a];
        const double gain_b = values[b | xbit] - values[b];
        if (definitely_greater(gain_b, gain_a, exact))
          return {false, PropertyWitness{detail::mask_to_set(a), detail::mask_to_set(b), x}};
      }
    }
  }
  return {};
}

// f(A) <= f(A + {x}) for all A, x.
inline PropertyCheck check_monotone(const SubmodularOracle& f,
                                    std::size_t guard = kDefaultPropertyGuard) {
  const auto values = detail::all_subset_values(f, guard, "check_monotone");
  const auto n = f.ground().size();
  for (std::uint64_t a = 0; a < values.size(); ++a) {
    for (std::size_t x = 0; x < n; ++x) {
      const std::uint64_t b = a | (std::uint64_t{1} << x);
      if (b == a) continue;
      if (definitely_greater(values[a], values[b], f.integral()))
        return {false, PropertyWitness{detail::mask_to_set(a), detail::mask_to_set(b), std::nullopt}};
    }
  }
  return {};
}

inline PropertyCheck check_normalized(const SubmodularOracle& f) {
  if (nearly_equal(f.value(ElementSet{}), 0.0, f.integral())) return {};
  return {false, PropertyWitness{}};
}

// ---------------------------------------------------------------------------
// Brute-force optimum
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultBruteForceGuard = 1'000'000;

struct OptimalAssignment {
  Assignment assignment;
  double value = 0.0;
};

inline std::uint64_t assignment_count(const Instance& inst) {
  std::uint64_t total = 1;
  for (const auto& s : inst.strategy_sets()) {
    if (total > ~std::uint64_t{0} / s.size()) return ~std::uint64_t{0};
    total *= s.size();
  }
  return total;
}

// Exact maximizer over all assignments. Among maximizers, the one whose
// element-index sequence is lexicographically smallest is returned.
inline OptimalAssignment brute_force_opt(const Instance& inst,
                                         std::uint64_t guard = kDefaultBruteForceGuard) {
  const auto total = assignment_count(inst);
  if (total > guard)
    throw size_guard_exceeded("brute_force_opt: " + std::to_string(total) +
                              " assignments exceed guard " + std::to_string(guard));
  const auto& sets = inst.strategy_sets();
  const auto n = sets.size();
  const bool exact = inst.oracle().integral();
  std::vector<std::size_t> digit(n, 0);
  Assignment current(n);
  OptimalAssignment best;
  bool first = true;
  ElementSet scratch;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) current[i] = sets[i][digit[i]];
    scratch.assign(current.begin(), current.end());
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    const double v = inst.oracle().value(scratch);
    if (first || definitely_greater(v, best.value, exact)) {
      best = {current, v};
      first = false;
    }
    // Odometer with the last agent varying fastest gives lexicographic order.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < sets[i].size()) break;
      digit[i] = 0;
      if (i == 0) return best;
    }
  }
}

}  // namespace limgreedy
