#pragma once

// Independent reference computations used by the tests. These deliberately
// avoid the library's own code paths.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

struct Circle {
  double cx, cy, r;
};

// Number of cell-center grid points of a g x g grid inside the union.
inline std::size_t grid_points_covered(const std::vector<Circle>& circles, std::size_t g) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const double px = (static_cast<double>(i) + 0.5) / static_cast<double>(g);
      const double py = (static_cast<double>(j) + 0.5) / static_cast<double>(g);
      for (const auto& c : circles) {
        const double dx = px - c.cx, dy = py - c.cy;
        if (dx * dx + dy * dy <= c.r * c.r) {
          ++count;
          break;
        }
      }
    }
  return count;
}

// Calls visit on every assignment (one pick per set), recursive enumeration.
inline void for_each_assignment(const std::vector<std::vector<std::size_t>>& sets,
                                const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sets.size()) {
      visit(cur);
      return;
    }
    for (auto x : sets[i]) {
      cur.push_back(x);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Undirected adjacency from an edge list.
inline std::vector<std::vector<bool>> adjacency(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = true;
  return a;
}

// Largest clique by subset enumeration; n <= 20.
inline std::size_t max_clique_by_subsets(const std::vector<std::vector<bool>>& a) {
  const auto n = a.size();
  std::size_t best = n ? 1 : 0;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(m));
    if (k <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      if (m >> i & 1)
        for (std::size_t j = i + 1; j < n && ok; ++j)
          if ((m >> j & 1) && !a[i][j]) ok = false;
    if (ok) best = k;
  }
  return best;
}

// Smallest k admitting a proper coloring, by plain backtracking; small n.
inline int chromatic_by_backtracking(const std::vector<std::vector<bool>>& a) {
  const auto n = a.size();
  if (n == 0) return 0;
  std::vector<int> col(n, 0);
  for (int k = 1;; ++k) {
    std::function<bool(std::size_t)> rec = [&](std::size_t v) {
      if (v == n) return true;
      for (int c = 1; c <= k; ++c) {
        bool ok = true;
        for (std::size_t u = 0; u < v && ok; ++u)
          if (a[u][v] && col[u] == c) ok = false;
        if (!ok) continue;
        col[v] = c;
        if (rec(v + 1)) return true;
      }
      col[v] = 0;
      return false;
    };
    if (rec(0)) return k;
  }
}

}  // namespace oracle
