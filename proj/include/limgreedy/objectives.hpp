#pragma once

// Concrete submodular objectives: grid-discretized disk coverage, the
// coloring-driven adversarial function, the universal (count-distinct)
// function, weighted set coverage, and the reduction of an instance with
// intersecting strategy sets to one with disjoint sets.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "limgreedy/core.hpp"
#include "limgreedy/errors.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/rng.hpp"

namespace limgreedy {

struct Disk {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

// g x g sample points at the cell centers ((i + 0.5)/g, (j + 0.5)/g) of the
// unit square.
struct CoverageGrid {
  std::size_t resolution = 100;
};

namespace detail {

class PointMask {
 public:
  explicit PointMask(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void merge(const PointMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

// Ground elements are (agent, disk) pairs, named "a<i>d<k>" (1-based). The
// value of a set is the fraction of grid points covered by the union of its
// disks.
inline Instance make_coverage(const std::vector<std::vector<Disk>>& disk_sets,
                              const CoverageGrid& grid = {}) {
  if (disk_sets.empty()) throw invalid_input("coverage: no agents");
  if (grid.resolution < 1) throw invalid_input("coverage: grid resolution must be >= 1");
  const auto g = grid.resolution;
  const auto points = g * g;
  std::vector<std::string> names;
  std::vector<std::vector<Element>> sets(disk_sets.size());
  auto masks = std::make_shared<std::vector<detail::PointMask>>();
  for (std::size_t a = 0; a < disk_sets.size(); ++a) {
    if (disk_sets[a].empty()) throw invalid_input("coverage: agent " + std::to_string(a) + " has no disks");
    for (std::size_t k = 0; k < disk_sets[a].size(); ++k) {
      const auto& d = disk_sets[a][k];
      if (!(d.radius > 0.0) || !std::isfinite(d.radius) || !std::isfinite(d.cx) || !std::isfinite(d.cy))
        throw invalid_input("coverage: disk needs finite center and positive radius");
      detail::PointMask m(points);
      const double r2 = d.radius * d.radius;
      for (std::size_t i = 0; i < g; ++i) {
        const double dx = (static_cast<double>(i) + 0.5) / static_cast<double>(g) - d.cx;
        for (std::size_t j = 0; j < g; ++j) {
          const double dy = (static_cast<double>(j) + 0.5) / static_cast<double>(g) - d.cy;
          if (dx * dx + dy * dy <= r2) m.set(i * g + j);
        }
      }
      sets[a].push_back(names.size());
      names.push_back("a" + std::to_string(a + 1) + "d" + std::to_string(k + 1));
      masks->push_back(std::move(m));
    }
  }
  auto fn = [masks, points](std::span<const Element> s) {
    if (s.empty()) return 0.0;
    detail::PointMask u = (*masks)[s[0]];
    for (std::size_t k = 1; k < s.size(); ++k) u.merge((*masks)[s[k]]);
    return static_cast<double>(u.count()) / static_cast<double>(points);
  };
  return Instance(SubmodularOracle(GroundSet(std::move(names)), fn, false), std::move(sets));
}

// Element ids of the adversarial instance: a_i = 2i, b_i = 2i + 1.
constexpr Element adversarial_a(std::size_t agent) { return 2 * agent; }
constexpr Element adversarial_b(std::size_t agent) { return 2 * agent + 1; }

// X_i = {a_i, b_i}. Each b_i always adds 1; a_i adds 1 unless some a_j of the
// same color is already present. In closed form, f(S) = #b's in S plus the
// number of distinct colors among the a's in S, which is order independent.
inline Instance make_adversarial(const InfoDag& g, const Coloring& coloring) {
  if (!coloring.is_proper(g)) throw invalid_input("adversarial: coloring is not proper for the graph");
  const auto n = g.size();
  if (n == 0) throw invalid_input("adversarial: empty graph");
  std::vector<std::string> names;
  std::vector<std::vector<Element>> sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("a" + std::to_string(i + 1));
    names.push_back("b" + std::to_string(i + 1));
    sets[i] = {adversarial_a(i), adversarial_b(i)};
  }
  auto colors = std::make_shared<std::vector<int>>(coloring.color);
  const auto k = static_cast<std::size_t>(coloring.colors_used());
  auto fn = [colors, k](std::span<const Element> s) {
    std::vector<char> seen(k + 1, 0);
    double v = 0.0;
    for (Element e : s) {
      if (e % 2 == 1) {
        v += 1.0;
      } else if (auto c = static_cast<std::size_t>((*colors)[e / 2]); !seen[c]) {
        seen[c] = 1;
        v += 1.0;
      }
    }
    return v;
  };
  return Instance(SubmodularOracle(GroundSet(std::move(names)), fn, true), std::move(sets));
}

// Ground {e_1..e_m}, every agent may pick any element, f(S) = |S|.
inline Instance make_universal(std::size_t n_agents, std::size_t m) {
  if (n_agents == 0) throw invalid_input("universal: need at least one agent");
  if (m < n_agents) throw invalid_input("universal: m must be >= number of agents");
  std::vector<Element> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = i;
  auto fn = [](std::span<const Element> s) { return static_cast<double>(s.size()); };
  return Instance(SubmodularOracle(GroundSet::numbered(m), fn, true),
                  std::vector<std::vector<Element>>(n_agents, all));
}

// f(S) = total weight of items covered by the elements of S. Integer valued,
// normalized, monotone and submodular for nonnegative weights.
inline Instance make_weighted_coverage(std::vector<std::int64_t> item_weights,
                                       std::vector<std::vector<std::size_t>> covers,
                                       std::vector<std::vector<Element>> strategy_sets) {
  for (auto w : item_weights)
    if (w < 0) throw invalid_input("weighted coverage: negative item weight");
  for (const auto& c : covers)
    for (auto item : c)
      if (item >= item_weights.size()) throw invalid_input("weighted coverage: unknown item");
  auto weights = std::make_shared<std::vector<std::int64_t>>(std::move(item_weights));
  auto cov = std::make_shared<std::vector<std::vector<std::size_t>>>(std::move(covers));
  auto fn = [weights, cov](std::span<const Element> s) {
    std::vector<char> hit(weights->size(), 0);
    std::int64_t total = 0;
    for (Element e : s)
      for (auto item : (*cov)[e])
        if (!hit[item]) {
          hit[item] = 1;
          total += (*weights)[item];
        }
    return static_cast<double>(total);
  };
  const auto n_elements = cov->size();
  return Instance(SubmodularOracle(GroundSet::numbered(n_elements, "x"), fn, true),
                  std::move(strategy_sets));
}

struct RandomCoverageParams {
  std::size_t n_agents = 4;
  std::size_t max_set_size = 3;
  std::size_t universe = 8;
  std::int64_t max_weight = 10;
  double cover_probability = 0.35;
};

namespace detail {

inline std::vector<std::vector<std::size_t>> random_covers(Rng& rng, std::size_t n_elements,
                                                           const RandomCoverageParams& p) {
  std::vector<std::vector<std::size_t>> covers(n_elements);
  for (auto& c : covers) {
    for (std::size_t item = 0; item < p.universe; ++item)
      if (rng.bernoulli(p.cover_probability)) c.push_back(item);
    if (c.empty()) c.push_back(static_cast<std::size_t>(rng.below(p.universe)));
  }
  return covers;
}

inline std::vector<std::int64_t> random_weights(Rng& rng, const RandomCoverageParams& p) {
  std::vector<std::int64_t> w(p.universe);
  for (auto& x : w) x = rng.between(1, p.max_weight);
  return w;
}

}  // namespace detail

// Disjoint instance: agent i owns 1..max_set_size fresh elements, each
// covering a random subset of the item universe.
inline Instance random_weighted_coverage(Rng& rng, const RandomCoverageParams& p) {
  if (p.n_agents == 0 || p.max_set_size == 0 || p.universe == 0 || p.max_weight < 1)
    throw invalid_input("random coverage: parameters must be positive");
  std::vector<std::vector<Element>> sets(p.n_agents);
  Element next = 0;
  for (auto& s : sets) {
    const auto k = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(p.max_set_size)));
    for (std::size_t j = 0; j < k; ++j) s.push_back(next++);
  }
  auto weights = detail::random_weights(rng, p);
  auto covers = detail::random_covers(rng, next, p);
  return make_weighted_coverage(std::move(weights), std::move(covers), std::move(sets));
}

// Intersecting instance: strategy sets are random nonempty subsets of a shared
// ground set of `ground_size` elements.
inline Instance random_intersecting_coverage(Rng& rng, const RandomCoverageParams& p,
                                             std::size_t ground_size) {
  if (ground_size == 0) throw invalid_input("random coverage: empty ground set");
  std::vector<std::vector<Element>> sets(p.n_agents);
  for (auto& s : sets) {
    const auto k = static_cast<std::size_t>(
        rng.between(1, static_cast<std::int64_t>(std::min(p.max_set_size, ground_size))));
    auto perm = rng.permutation(ground_size);
    s.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  }
  auto weights = detail::random_weights(rng, p);
  auto covers = detail::random_covers(rng, ground_size, p);
  return make_weighted_coverage(std::move(weights), std::move(covers), std::move(sets));
}

// ---------------------------------------------------------------------------
// Intersecting -> disjoint reduction
// ---------------------------------------------------------------------------

struct DisjointReduction {
  Instance reduced;
  // back_map[e'] is the original element that reduced element e' copies.
  std::vector<Element> back_map;
};

// Each agent gets private copies of its strategies, named "<name>@<agent>"
// (agent 1-based), ordered by agent and then by original element index. The
// reduced oracle evaluates the original on the set of originals. Disjoint
// inputs are returned unchanged with an identity map.
inline DisjointReduction reduce_to_disjoint(const Instance& inst) {
  const auto& f = inst.oracle();
  if (inst.disjoint()) {
    std::vector<Element> id(f.ground().size());
    for (Element e = 0; e < id.size(); ++e) id[e] = e;
    return {inst, std::move(id)};
  }
  std::vector<std::string> names;
  auto back = std::make_shared<std::vector<Element>>();
  std::vector<std::vector<Element>> sets(inst.agent_count());
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    for (Element x : inst.strategy_set(i)) {
      sets[i].push_back(back->size());
      back->push_back(x);
      names.push_back(f.ground().name(x) + "@" + std::to_string(i + 1));
    }
  }
  auto fn = [f, back](std::span<const Element> s) {
    ElementSet image;
    image.reserve(s.size());
    for (Element e : s) image.push_back((*back)[e]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return f.value(image);
  };
  Instance reduced(SubmodularOracle(GroundSet(std::move(names)), fn, f.integral()), std::move(sets));
  return {std::move(reduced), *back};
}

// ---------------------------------------------------------------------------
// Disk files: first line "n k", then n*k lines "cx cy r", agent-major.
// ---------------------------------------------------------------------------

inline std::vector<std::vector<Disk>> read_disks(std::istream& in) {
  std::size_t n = 0;
  std::size_t k = 0;
  if (!(in >> n >> k) || n == 0 || k == 0) throw invalid_input("disk file: bad header, expected 'n k'");
  std::vector<std::vector<Disk>> out(n);
  for (auto& agent : out) {
    agent.resize(k);
    for (auto& d : agent) {
      if (!(in >> d.cx >> d.cy >> d.radius)) throw invalid_input("disk file: truncated disk list");
      if (!(d.radius > 0.0)) throw invalid_input("disk file: radius must be positive");
    }
  }
  return out;
}

inline void write_disks(std::ostream& out, const std::vector<std::vector<Disk>>& disks) {
  const auto k = disks.empty() ? 0 : disks.front().size();
  out << disks.size() << ' ' << k << '\n';
  std::ostringstream line;
  line.precision(17);
  for (const auto& agent : disks) {
    if (agent.size() != k) throw invalid_input("disk file: agents must have equal disk counts");
    for (const auto& d : agent) {
      line.str("");
      line << d.cx << ' ' << d.cy << ' ' << d.radius << '\n';
      out << line.str();
    }
  }
}

// Centers uniform in the unit square.
inline std::vector<std::vector<Disk>> random_disks(Rng& rng, std::size_t n_agents,
                                                   std::size_t per_agent, double radius) {
  std::vector<std::vector<Disk>> out(n_agents, std::vector<Disk>(per_agent));
  for (auto& agent : out)
    for (auto& d : agent) {
      d.cx = rng.uniform01();
      d.cy = rng.uniform01();
      d.radius = radius;
    }
  return out;
}

}  // namespace limgreedy
