#pragma once

// Directed acyclic information graph. An edge (j, i) means agent i observes
// agent j's choice before making its own.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "limgreedy/errors.hpp"

namespace limgreedy {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

class InfoDag {
 public:
  InfoDag() = default;

  // Validates the edge list and stores a topological order. When `order` is
  // given it must be a valid topological order and is kept as is; otherwise
  // Kahn's algorithm picks the smallest available vertex at each step.
  InfoDag(std::size_t n, std::vector<Edge> edges,
          std::optional<std::vector<Vertex>> order = std::nullopt)
      : n_(n), edges_(std::move(edges)), in_(n), out_(n) {
    for (const auto& [u, v] : edges_) {
      if (u >= n_ || v >= n_)
        throw invalid_graph("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references a vertex outside [0," + std::to_string(n_) + ")");
      if (u == v) throw invalid_graph("self-loop at vertex " + std::to_string(u));
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    for (Vertex v = 0; v < n_; ++v) {
      std::sort(in_[v].begin(), in_[v].end());
      std::sort(out_[v].begin(), out_[v].end());
      if (std::adjacent_find(out_[v].begin(), out_[v].end()) != out_[v].end())
        throw invalid_graph("duplicate edge out of vertex " + std::to_string(v));
    }
    order_ = order ? std::move(*order) : kahn_order();
    position_.assign(n_, n_);
    if (order_.size() != n_) throw invalid_graph("topological order has wrong length");
    for (std::size_t k = 0; k < n_; ++k) {
      if (order_[k] >= n_ || position_[order_[k]] != n_)
        throw invalid_graph("topological order is not a permutation");
      position_[order_[k]] = k;
    }
    for (const auto& [u, v] : edges_) {
      if (position_[u] >= position_[v])
        throw invalid_graph("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") points backwards in the topological order");
    }
  }

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& topo_order() const { return order_; }
  std::size_t position(Vertex v) const { return position_.at(v); }

  std::span<const Vertex> in_neighbors(Vertex v) const { return in_.at(v); }
  std::span<const Vertex> out_neighbors(Vertex v) const { return out_.at(v); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& o = out_.at(u);
    return std::binary_search(o.begin(), o.end(), v);
  }

  // Adjacent in the underlying undirected graph.
  bool adjacent(Vertex u, Vertex v) const { return has_edge(u, v) || has_edge(v, u); }

  // Length of the longest path ending at each vertex; sources have depth 0.
  std::vector<std::size_t> depths() const {
    std::vector<std::size_t> d(n_, 0);
    for (Vertex v : order_)
      for (Vertex u : in_[v]) d[v] = std::max(d[v], d[u] + 1);
    return d;
  }

  // Checks that `order` is a permutation with every edge pointing forward.
  bool is_topological_order(std::span<const Vertex> order) const {
    if (order.size() != n_) return false;
    std::vector<std::size_t> pos(n_, n_);
    for (std::size_t k = 0; k < n_; ++k) {
      if (order[k] >= n_ || pos[order[k]] != n_) return false;
      pos[order[k]] = k;
    }
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const Edge& e) { return pos[e.first] < pos[e.second]; });
  }

 private:
  std::vector<Vertex> kahn_order() const {
    std::vector<std::size_t> indeg(n_);
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < n_; ++v) {
      indeg[v] = in_[v].size();
      if (indeg[v] == 0) ready.push(v);
    }
    std::vector<Vertex> order;
    order.reserve(n_);
    while (!ready.empty()) {
      const Vertex v = ready.top();
      ready.pop();
      order.push_back(v);
      for (Vertex w : out_[v])
        if (--indeg[w] == 0) ready.push(w);
    }
    if (order.size() != n_) throw invalid_graph("graph contains a directed cycle");
    return order;
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> in_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<Vertex> order_;
  std::vector<std::size_t> position_;
};

inline InfoDag new_dag(std::size_t n, std::vector<Edge> edges) { return InfoDag(n, std::move(edges)); }

// ---------------------------------------------------------------------------
// Graph file format: first line "n", then one "u v" edge per line (0-indexed).
// '#' starts a comment. The writer emits edges in topological order.
// ---------------------------------------------------------------------------

inline InfoDag read_graph(std::istream& in) {
  std::string line;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    if (!(ls >> a)) continue;  // blank line
    long long b = 0;
    const bool two = static_cast<bool>(ls >> b);
    std::string rest;
    if (ls >> rest || a < 0 || (two && b < 0))
      throw invalid_input("graph file line " + std::to_string(lineno) + ": malformed");
    if (!n) {
      if (two) throw invalid_input("graph file: first line must hold only the vertex count");
      n = static_cast<std::size_t>(a);
    } else {
      if (!two) throw invalid_input("graph file line " + std::to_string(lineno) + ": expected 'u v'");
      edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
  }
  if (!n) throw invalid_input("graph file: missing vertex count");
  return InfoDag(*n, std::move(edges));
}

inline void write_graph(std::ostream& out, const InfoDag& g) {
  auto edges = g.edges();
  std::sort(edges.begin(), edges.end(), [&](const Edge& a, const Edge& b) {
    return std::pair(g.position(a.first), g.position(a.second)) <
           std::pair(g.position(b.first), g.position(b.second));
  });
  out << g.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

// ---------------------------------------------------------------------------
// Colorings and cliques of the underlying undirected graph
// ---------------------------------------------------------------------------

// Colors are 1-based; color[v] is the color of vertex v.
struct Coloring {
  std::vector<int> color;

  int colors_used() const {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end());
  }

  bool is_proper(const InfoDag& g) const {
    if (color.size() != g.size()) return false;
    if (std::any_of(color.begin(), color.end(), [](int c) { return c < 1; })) return false;
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge& e) { return color[e.first] != color[e.second]; });
  }
};

inline bool is_clique(const InfoDag& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.size()) return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j] || !g.adjacent(vertices[i], vertices[j])) return false;
  }
  return true;
}

struct BoundCertificate {
  enum class Kind { clique, coloring, greedy_coloring };
  Kind kind = Kind::clique;
  std::vector<Vertex> clique;
  Coloring coloring;

  bool verify(const InfoDag& g) const {
    return kind == Kind::clique ? is_clique(g, clique) : coloring.is_proper(g);
  }
};

struct GreedyColoring {
  Coloring coloring;
  int max_color = 0;
  // In-neighbor reads plus flag-array cells scanned; at most 2|E| + |V|.
  std::uint64_t operations = 0;
};

// Visits vertices in topological order and gives each the smallest positive
// color not used by any in-neighbor. For each vertex a flag array of length
// |N(v)|+1 is filled in one pass over the in-neighbors and scanned for the
// first gap, so the whole run is O(|V| + |E|).
inline GreedyColoring greedy_topological_coloring(const InfoDag& g) {
  GreedyColoring out;
  out.coloring.color.assign(g.size(), 1);
  std::vector<char> seen;
  for (Vertex v : g.topo_order()) {
    const auto in = g.in_neighbors(v);
    seen.assign(in.size() + 1, 0);
    for (Vertex u : in) {
      const auto c = static_cast<std::size_t>(out.coloring.color[u]);
      if (c <= in.size()) seen[c - 1] = 1;
      ++out.operations;
    }
    std::size_t k = 0;
    while (seen[k]) ++k;
    out.operations += k + 1;
    out.coloring.color[v] = static_cast<int>(k + 1);
    out.max_color = std::max(out.max_color, out.coloring.color[v]);
  }
  return out;
}

inline constexpr std::size_t kCliqueGuard = 64;
inline constexpr std::size_t kChromaticGuard = 40;
inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

struct CliqueResult {
  std::size_t size = 0;
  BoundCertificate certificate;
};

struct ChromaticResult {
  int chromatic = 0;
  Coloring coloring;
  BoundCertificate certificate;
};

namespace detail {

inline std::vector<std::uint64_t> undirected_masks(const InfoDag& g) {
  std::vector<std::uint64_t> adj(g.size(), 0);
  for (const auto& [u, v] : g.edges()) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  return adj;
}

inline int lowest_bit(std::uint64_t x) { return __builtin_ctzll(x); }
inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

// Branch and bound for maximum clique with greedy-coloring bounds.
class MaxCliqueSearch {
 public:
  MaxCliqueSearch(std::vector<std::uint64_t> adj, std::uint64_t budget)
      : adj_(std::move(adj)), budget_(budget) {}

  std::vector<Vertex> run() {
    std::uint64_t all = adj_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << adj_.size()) - 1;
    if (adj_.empty()) return {};
    std::vector<Vertex> current;
    expand(all, current);
    return best_;
  }

 private:
  void expand(std::uint64_t candidates, std::vector<Vertex>& current) {
    if (++nodes_ > budget_) throw size_guard_exceeded("clique_number: node budget exhausted");
    // Greedy sequential coloring of the candidates; color classes give bounds.
    std::vector<std::pair<Vertex, int>> ordered;
    std::uint64_t uncolored = candidates;
    int color = 0;
    while (uncolored) {
      ++color;
      std::uint64_t q = uncolored;
      while (q) {
        const int v = lowest_bit(q);
        q &= ~(std::uint64_t{1} << v);
        q &= ~adj_[static_cast<std::size_t>(v)];
        uncolored &= ~(std::uint64_t{1} << v);
        ordered.emplace_back(static_cast<Vertex>(v), color);
      }
    }
    for (auto it = ordered.rbegin(); it != ordered.rend(); ++it) {
      const auto [v, c] = *it;
      if (current.size() + static_cast<std::size_t>(c) <= best_.size()) return;
      current.push_back(v);
      const std::uint64_t next = candidates & adj_[v];
      if (next == 0) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(next, current);
      }
      current.pop_back();
      candidates &= ~(std::uint64_t{1} << v);
    }
  }

  std::vector<std::uint64_t> adj_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> best_;
};

// DSATUR branch and bound (Brelaz) seeded with a maximum clique as the lower
// bound and a DSATUR heuristic coloring as the incumbent.
class ChromaticSearch {
 public:
  ChromaticSearch(std::vector<std::uint64_t> adj, std::vector<Vertex> clique, std::uint64_t budget)
      : adj_(std::move(adj)), clique_(std::move(clique)), budget_(budget), n_(adj_.size()) {}

  std::vector<int> run() {
    if (n_ == 0) return {};
    lower_ = static_cast<int>(clique_.size());
    best_ = heuristic();
    best_count_ = *std::max_element(best_.begin(), best_.end());
    if (best_count_ == lower_) return best_;

    std::vector<int> color(n_, 0);
    std::vector<std::uint64_t> sat(n_, 0);  // bit c-1 set when color c appears among neighbors
    int used = 0;
    for (Vertex v : clique_) assign(v, ++used, color, sat);
    search(color, sat, used, n_ - clique_.size());
    return best_;
  }

 private:
  void assign(Vertex v, int c, std::vector<int>& color, std::vector<std::uint64_t>& sat) const {
    color[v] = c;
    std::uint64_t nb = adj_[v];
    while (nb) {
      const int w = lowest_bit(nb);
      nb &= nb - 1;
      sat[static_cast<std::size_t>(w)] |= std::uint64_t{1} << (c - 1);
    }
  }

  Vertex pick(const std::vector<int>& color, const std::vector<std::uint64_t>& sat) const {
    Vertex best = n_;
    int best_sat = -1;
    int best_deg = -1;
    for (Vertex v = 0; v < n_; ++v) {
      if (color[v] != 0) continue;
      const int s = popcount(sat[v]);
      int deg = 0;
      std::uint64_t nb = adj_[v];
      while (nb) {
        const int w = lowest_bit(nb);
        nb &= nb - 1;
        if (color[static_cast<std::size_t>(w)] == 0) ++deg;
      }
      if (s > best_sat || (s == best_sat && deg > best_deg)) {
        best = v;
        best_sat = s;
        best_deg = deg;
      }
    }
    return best;
  }

  std::vector<int> heuristic() const {
    std::vector<int> color(n_, 0);
    std::vector<std::uint64_t> sat(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
      const Vertex v = pick(color, sat);
      int c = 1;
      while (sat[v] & (std::uint64_t{1} << (c - 1))) ++c;
      assign(v, c, color, sat);
    }
    return color;
  }

  void search(std::vector<int>& color, std::vector<std::uint64_t>& sat, int used,
              std::size_t remaining) {
    if (++nodes_ > budget_) throw size_guard_exceeded("chromatic_number: node budget exhausted");
    if (remaining == 0) {
      if (used < best_count_) {
        best_ = color;
        best_count_ = used;
      }
      return;
    }
    const Vertex v = pick(color, sat);
    const int limit = std::min(used + 1, best_count_ - 1);
    for (int c = 1; c <= limit; ++c) {
      if (sat[v] & (std::uint64_t{1} << (c - 1))) continue;
      auto saved = sat;
      assign(v, c, color, sat);
      search(color, sat, std::max(used, c), remaining - 1);
      sat = std::move(saved);
      color[v] = 0;
      if (best_count_ == lower_) return;
    }
  }

  std::vector<std::uint64_t> adj_;
  std::vector<Vertex> clique_;
  std::uint64_t budget_;
  std::size_t n_;
  std::uint64_t nodes_ = 0;
  int lower_ = 0;
  std::vector<int> best_;
  int best_count_ = 0;
};

}  // namespace detail

// Exact clique number of the underlying undirected graph. An empty graph on
// n >= 1 vertices has clique number 1.
inline CliqueResult clique_number(const InfoDag& g, std::size_t guard = kCliqueGuard,
                                  std::uint64_t node_budget = kDefaultNodeBudget) {
  if (g.size() > guard || g.size() > 64)
    throw size_guard_exceeded("clique_number: " + std::to_string(g.size()) +
                              " vertices exceed guard " + std::to_string(std::min<std::size_t>(guard, 64)));
  CliqueResult out;
  out.certificate.kind = BoundCertificate::Kind::clique;
  out.certificate.clique = detail::MaxCliqueSearch(detail::undirected_masks(g), node_budget).run();
  std::sort(out.certificate.clique.begin(), out.certificate.clique.end());
  out.size = out.certificate.clique.size();
  return out;
}

// Exact chromatic number with an optimal proper coloring.
inline ChromaticResult chromatic_number(const InfoDag& g, std::size_t guard = kChromaticGuard,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
  if (g.size() > guard || g.size() > 64)
    throw size_guard_exceeded("chromatic_number: " + std::to_string(g.size()) +
                              " vertices exceed guard " + std::to_string(std::min<std::size_t>(guard, 64)));
  const auto clique = clique_number(g, 64, node_budget);
  ChromaticResult out;
  out.coloring.color =
      detail::ChromaticSearch(detail::undirected_masks(g), clique.certificate.clique, node_budget).run();
  out.chromatic = out.coloring.colors_used();
  out.certificate.kind = BoundCertificate::Kind::coloring;
  out.certificate.coloring = out.coloring;
  return out;
}

}  // namespace limgreedy
