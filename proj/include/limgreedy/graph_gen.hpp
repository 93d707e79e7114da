#pragma once

// Seeded generators for the graph families studied: Erdos-Renyi,
// Barabasi-Albert and Watts-Strogatz DAGs, interconnected cliques, the
// bipartite family separating the two upper bounds, and the complete and
// empty DAGs.
//
// Random families are turned into DAGs the same way: draw a uniformly random
// vertex order and keep only edges pointing forward in it. That order is
// stored as the DAG's topological order.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "limgreedy/errors.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/rng.hpp"

namespace limgreedy {

inline InfoDag gen_empty(std::size_t n) { return InfoDag(n, {}); }

inline InfoDag gen_complete_dag(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return InfoDag(n, std::move(edges));
}

namespace detail {

// Keeps each undirected edge oriented from the earlier to the later vertex of
// a random order drawn from `rng`.
inline InfoDag orient_by_random_order(std::size_t n, const std::vector<Edge>& undirected, Rng& rng) {
  auto order = rng.permutation(n);
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  for (auto [u, v] : undirected) edges.push_back(pos[u] < pos[v] ? Edge{u, v} : Edge{v, u});
  return InfoDag(n, std::move(edges), std::move(order));
}

}  // namespace detail

// Directed G(n, p): every ordered pair (i, j), i != j, is drawn with
// probability p, then edges pointing backwards in a random order are dropped.
// The order is drawn first; pairs are drawn row-major.
inline InfoDag gen_er_dag(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_input("gen_er_dag: p must lie in [0, 1]");
  Rng rng(seed);
  auto order = rng.permutation(n);
  std::vector<std::size_t> pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = k;
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) {
      if (i == j) continue;
      if (rng.bernoulli(p) && pos[i] < pos[j]) edges.emplace_back(i, j);
    }
  return InfoDag(n, std::move(edges), std::move(order));
}

inline constexpr std::size_t kBaSeedSize = 5;
inline constexpr std::size_t kBaAttachments = 5;

// Preferential attachment grown from a complete graph on five vertices. Each
// new vertex picks five distinct targets one at a time, each with probability
// proportional to current degree among those not yet picked; degrees are
// updated after all five links are added.
inline InfoDag gen_ba_dag(std::size_t n, std::uint64_t seed) {
  if (n < kBaSeedSize) throw invalid_input("gen_ba_dag: n must be >= 5");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::uint64_t> degree(n, 0);
  for (Vertex u = 0; u < kBaSeedSize; ++u)
    for (Vertex v = u + 1; v < kBaSeedSize; ++v) {
      edges.emplace_back(u, v);
      ++degree[u];
      ++degree[v];
    }
  std::vector<char> picked(n, 0);
  for (Vertex v = kBaSeedSize; v < n; ++v) {
    std::vector<Vertex> targets;
    std::uint64_t total = std::accumulate(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(v),
                                          std::uint64_t{0});
    for (std::size_t k = 0; k < kBaAttachments; ++k) {
      std::uint64_t r = rng.below(total);
      Vertex t = 0;
      for (;; ++t) {
        if (picked[t]) continue;
        if (r < degree[t]) break;
        r -= degree[t];
      }
      picked[t] = 1;
      total -= degree[t];
      targets.push_back(t);
    }
    for (Vertex t : targets) {
      picked[t] = 0;
      edges.emplace_back(t, v);
      ++degree[t];
      ++degree[v];
    }
  }
  return detail::orient_by_random_order(n, edges, rng);
}

// Ring lattice with each vertex joined to K neighbors per side, then each
// lattice edge (i, i+j mod n), scanned for j = 1..K and i = 0..n-1, has its
// far endpoint moved with probability beta to a uniformly chosen vertex that
// is neither i nor already adjacent to i. Edges with no such vertex stay.
inline InfoDag gen_ws_dag(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
  if (n < 3 || k < 1 || k > (n - 1) / 2)
    throw invalid_input("gen_ws_dag: need n >= 3 and 1 <= K <= (n-1)/2");
  if (!(beta >= 0.0 && beta <= 1.0)) throw invalid_input("gen_ws_dag: beta must lie in [0, 1]");
  Rng rng(seed);
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t j = 1; j <= k; ++j)
    for (Vertex i = 0; i < n; ++i) {
      const Vertex w = (i + j) % n;
      edges.emplace_back(i, w);
      adj[i][w] = adj[w][i] = 1;
    }
  std::vector<Vertex> candidates;
  for (auto& e : edges) {
    if (!rng.bernoulli(beta)) continue;
    const Vertex i = e.first;
    candidates.clear();
    for (Vertex w = 0; w < n; ++w)
      if (w != i && !adj[i][w]) candidates.push_back(w);
    if (candidates.empty()) continue;
    const Vertex w = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    adj[i][e.second] = adj[e.second][i] = 0;
    adj[i][w] = adj[w][i] = 1;
    e.second = w;
  }
  return detail::orient_by_random_order(n, edges, rng);
}

// kappa consecutive blocks of agents; cut point m_i is the last agent of
// block i (0-based vertex id), for i < kappa.
class CliquePartition {
 public:
  CliquePartition() = default;
  explicit CliquePartition(std::vector<std::size_t> block_sizes) : sizes_(std::move(block_sizes)) {
    if (sizes_.empty()) throw invalid_input("clique partition: no blocks");
    for (auto s : sizes_)
      if (s == 0) throw invalid_input("clique partition: empty block");
  }

  std::size_t block_count() const { return sizes_.size(); }
  const std::vector<std::size_t>& block_sizes() const { return sizes_; }
  std::size_t agent_count() const { return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0}); }

  std::vector<Vertex> cut_points() const {
    std::vector<Vertex> cuts;
    std::size_t end = 0;
    for (std::size_t b = 0; b + 1 < sizes_.size(); ++b) {
      end += sizes_[b];
      cuts.push_back(end - 1);
    }
    return cuts;
  }

  // [first, last] vertex of each block.
  std::vector<std::pair<Vertex, Vertex>> blocks() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    std::size_t start = 0;
    for (auto s : sizes_) {
      out.emplace_back(start, start + s - 1);
      start += s;
    }
    return out;
  }

 private:
  std::vector<std::size_t> sizes_;
};

struct InterconnectedCliques {
  InfoDag dag;
  CliquePartition partition;
};

// Complete DAG inside each block; the last agent of block i also feeds every
// agent of block i+1. With `link_blocks` false the blocks are isolated.
inline InterconnectedCliques gen_interconnected_cliques(const std::vector<std::size_t>& block_sizes,
                                                        bool link_blocks = true) {
  CliquePartition part(block_sizes);
  std::vector<Edge> edges;
  const auto blocks = part.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [first, last] = blocks[b];
    for (Vertex v = first; v <= last; ++v) {
      if (b > 0 && link_blocks) edges.emplace_back(blocks[b - 1].second, v);
      for (Vertex u = first; u < v; ++u) edges.emplace_back(u, v);
    }
  }
  return {InfoDag(part.agent_count(), std::move(edges)), std::move(part)};
}

// Vertex ids of the bipartite gap family (1-based i): u_i = 2(i-1), w_i = 2(i-1)+1.
constexpr Vertex gap_u(std::size_t i) { return 2 * (i - 1); }
constexpr Vertex gap_w(std::size_t i) { return 2 * (i - 1) + 1; }

// Edges (u_i, w_j) and (w_i, u_j) for i < j, plus (u_m, w_m); topological
// order u_1, w_1, ..., u_m, w_m. Chromatic number 2, while the topological
// greedy coloring needs m + 1 colors.
inline InfoDag gen_bipartite_gap(std::size_t m) {
  if (m < 1) throw invalid_input("gen_bipartite_gap: m must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      edges.emplace_back(gap_u(i), gap_w(j));
      edges.emplace_back(gap_w(i), gap_u(j));
    }
  edges.emplace_back(gap_u(m), gap_w(m));
  std::vector<Vertex> order(2 * m);
  std::iota(order.begin(), order.end(), Vertex{0});
  return InfoDag(2 * m, std::move(edges), std::move(order));
}

}  // namespace limgreedy
