#include <gtest/gtest.h>

#include <sstream>

#include "limgreedy/graph_gen.hpp"
#include "limgreedy/info_dag.hpp"
#include "oracles.hpp"

using namespace limgreedy;

namespace {

std::vector<Vertex> as_vec(std::span<const Vertex> s) { return {s.begin(), s.end()}; }

InfoDag complete_minus_edge(std::size_t n, Vertex u, Vertex v) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (!(a == u && b == v)) edges.emplace_back(a, b);
  return new_dag(n, edges);
}

}  // namespace

TEST(NewDag, CompleteOnThree) {
  auto g = new_dag(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(g.topo_order(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(g.edge_count(), 3u);
}

TEST(NewDag, RejectsCycle) {
  EXPECT_THROW(new_dag(2, {{0, 1}, {1, 0}}), invalid_graph);
  EXPECT_THROW(new_dag(3, {{0, 1}, {1, 2}, {2, 0}}), invalid_graph);
}

TEST(NewDag, RejectsSelfLoopDuplicateAndRange) {
  EXPECT_THROW(new_dag(2, {{1, 1}}), invalid_graph);
  EXPECT_THROW(new_dag(2, {{0, 1}, {0, 1}}), invalid_graph);
  EXPECT_THROW(new_dag(2, {{0, 2}}), invalid_graph);
}

TEST(NewDag, InvalidGraphIsInvalidInput) {
  try {
    new_dag(2, {{0, 1}, {1, 0}});
    FAIL();
  } catch (const invalid_input& e) {
    EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos);
  }
}

TEST(NewDag, KahnPicksSmallestReadyVertex) {
  auto g = new_dag(4, {{3, 0}, {2, 1}});
  EXPECT_EQ(g.topo_order(), (std::vector<Vertex>{2, 1, 3, 0}));
}

TEST(NewDag, GivenOrderIsKeptOrRejected) {
  auto g = gen_bipartite_gap(4);
  EXPECT_EQ(g.topo_order(), (std::vector<Vertex>{gap_u(1), gap_w(1), gap_u(2), gap_w(2), gap_u(3), gap_w(3),
                                                 gap_u(4), gap_w(4)}));
  EXPECT_THROW(InfoDag(2, {{0, 1}}, std::vector<Vertex>{1, 0}), invalid_graph);
  EXPECT_THROW(InfoDag(2, {{0, 1}}, std::vector<Vertex>{0, 0}), invalid_graph);
  EXPECT_THROW(InfoDag(2, {{0, 1}}, std::vector<Vertex>{0}), invalid_graph);
}

TEST(InNeighbors, Examples) {
  auto k4 = gen_complete_dag(4);
  EXPECT_EQ(as_vec(k4.in_neighbors(3)), (std::vector<Vertex>{0, 1, 2}));
  auto e = gen_empty(5);
  for (Vertex v = 0; v < 5; ++v) EXPECT_TRUE(e.in_neighbors(v).empty());
  auto gap = gen_bipartite_gap(4);
  EXPECT_EQ(as_vec(gap.in_neighbors(gap_w(4))), (std::vector<Vertex>{gap_u(1), gap_u(2), gap_u(3), gap_u(4)}));
}

TEST(InNeighbors, MatchEdgeList) {
  auto g = gen_er_dag(15, 0.4, 9);
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<Vertex> expected;
    for (auto [a, b] : g.edges())
      if (b == v) expected.push_back(a);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(as_vec(g.in_neighbors(v)), expected);
  }
}

TEST(Structure, DepthsAndAdjacency) {
  auto g = new_dag(4, {{0, 1}, {1, 2}, {0, 3}});
  EXPECT_EQ(g.depths(), (std::vector<std::size_t>{0, 1, 2, 1}));
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.has_edge(1, 0));
  EXPECT_FALSE(g.adjacent(2, 3));
  EXPECT_TRUE(g.is_topological_order(std::vector<Vertex>{0, 3, 1, 2}));
  EXPECT_FALSE(g.is_topological_order(std::vector<Vertex>{1, 0, 2, 3}));
}

TEST(CliqueNumber, Examples) {
  EXPECT_EQ(clique_number(gen_complete_dag(6)).size, 6u);
  EXPECT_EQ(clique_number(gen_empty(5)).size, 1u);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) edges.emplace_back(u, v);
  auto r = clique_number(new_dag(8, edges));
  EXPECT_EQ(r.size, 5u);
  EXPECT_TRUE(r.certificate.verify(new_dag(8, edges)));
}

TEST(CliqueNumber, GuardRaisesSizeError) {
  EXPECT_THROW(clique_number(gen_empty(65)), size_guard_exceeded);
  EXPECT_THROW(clique_number(gen_empty(10), 9), size_guard_exceeded);
  EXPECT_EQ(clique_number(gen_complete_dag(64)).size, 64u);
}

TEST(ChromaticNumber, Examples) {
  for (std::size_t m = 1; m <= 8; ++m) EXPECT_EQ(chromatic_number(gen_bipartite_gap(m)).chromatic, 2) << m;
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(chromatic_number(gen_complete_dag(n)).chromatic, int(n));
  EXPECT_EQ(chromatic_number(gen_empty(6)).chromatic, 1);
}

TEST(ChromaticNumber, GuardRaisesSizeError) {
  EXPECT_THROW(chromatic_number(gen_empty(41)), size_guard_exceeded);
  EXPECT_EQ(chromatic_number(gen_empty(41), 41).chromatic, 1);
}

TEST(ChromaticNumber, NodeBudgetRaisesSizeError) {
  EXPECT_THROW(chromatic_number(gen_er_dag(40, 0.5, 1), kChromaticGuard, 10), size_guard_exceeded);
}

TEST(GreedyColoring, Examples) {
  auto k4 = greedy_topological_coloring(gen_complete_dag(4));
  EXPECT_EQ(k4.coloring.color, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(k4.max_color, 4);
  auto e = greedy_topological_coloring(gen_empty(5));
  EXPECT_EQ(e.coloring.color, std::vector<int>(5, 1));
  auto gap = greedy_topological_coloring(gen_bipartite_gap(4));
  EXPECT_EQ(gap.coloring.color[gap_w(4)], 5);
  EXPECT_EQ(gap.max_color, 5);
  EXPECT_EQ(gap.coloring.color, (std::vector<int>{1, 1, 2, 2, 3, 3, 4, 5}));
}

TEST(GreedyColoring, SmallestColorAbsentFromInNeighbors) {
  auto g = gen_er_dag(30, 0.3, 2);
  auto r = greedy_topological_coloring(g);
  EXPECT_TRUE(r.coloring.is_proper(g));
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<int> used;
    for (Vertex u : g.in_neighbors(v)) used.push_back(r.coloring.color[u]);
    int c = 1;
    while (std::find(used.begin(), used.end(), c) != used.end()) ++c;
    EXPECT_EQ(r.coloring.color[v], c);
  }
}

TEST(GreedyColoring, OperationCountIsLinear) {
  for (std::size_t n : {100u, 1000u, 5000u}) {
    for (double p : {0.01, 0.04}) {
      auto g = gen_er_dag(n, p, n);
      if (g.edge_count() > 100000) continue;
      auto r = greedy_topological_coloring(g);
      EXPECT_LE(r.operations, 2 * g.edge_count() + g.size());
    }
  }
  auto k = gen_complete_dag(448);  // 100128 edges
  ASSERT_GT(k.edge_count(), 100000u);
  auto r = greedy_topological_coloring(k);
  EXPECT_EQ(r.max_color, 448);
  EXPECT_LE(r.operations, 2 * k.edge_count() + k.size());
}

TEST(Invariant, CliqueChromaticGreedyChain) {
  Rng rng(1234);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(1, 12));
    auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
    auto adj = oracle::adjacency(n, g.edges());
    auto om = clique_number(g);
    auto ch = chromatic_number(g);
    auto gr = greedy_topological_coloring(g);
    EXPECT_EQ(om.size, oracle::max_clique_by_subsets(adj));
    EXPECT_EQ(ch.chromatic, oracle::chromatic_by_backtracking(adj));
    EXPECT_LE(om.size, std::size_t(ch.chromatic));
    EXPECT_LE(ch.chromatic, gr.max_color);
    EXPECT_LE(gr.max_color, int(n));
    EXPECT_TRUE(om.certificate.verify(g));
    EXPECT_TRUE(ch.certificate.verify(g));
    EXPECT_TRUE(ch.coloring.is_proper(g));
  }
}

TEST(Invariant, CompleteMinusOneEdge) {
  for (std::size_t n = 3; n <= 10; ++n) {
    auto g = complete_minus_edge(n, 0, n - 1);
    EXPECT_EQ(clique_number(g).size, n - 1);
    EXPECT_EQ(chromatic_number(g).chromatic, int(n - 1));
  }
}

TEST(Certificates, RejectBadWitnesses) {
  auto g = new_dag(3, {{0, 1}});
  BoundCertificate c;
  c.clique = {0, 2};
  EXPECT_FALSE(c.verify(g));
  c.clique = {0, 1};
  EXPECT_TRUE(c.verify(g));
  c.kind = BoundCertificate::Kind::coloring;
  c.coloring.color = {1, 1, 2};
  EXPECT_FALSE(c.verify(g));
  c.coloring.color = {1, 2, 0};
  EXPECT_FALSE(c.verify(g));
}

TEST(GraphFile, RoundTripKeepsEdges) {
  auto g = gen_er_dag(12, 0.4, 77);
  std::stringstream s;
  write_graph(s, g);
  auto back = read_graph(s);
  EXPECT_EQ(back.size(), g.size());
  auto a = g.edges(), b = back.edges();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

TEST(GraphFile, WriterFollowsTopologicalOrder) {
  auto g = new_dag(3, {{2, 0}, {1, 0}, {2, 1}});
  std::ostringstream s;
  write_graph(s, g);
  EXPECT_EQ(s.str(), "3\n2 1\n2 0\n1 0\n");
}

TEST(GraphFile, CommentsAndBlankLines) {
  std::istringstream s("# header\n3   # vertices\n\n0 1\n1 2 # chain\n");
  auto g = read_graph(s);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
}

TEST(GraphFile, RejectsMalformed) {
  std::istringstream missing("# nothing\n");
  EXPECT_THROW(read_graph(missing), invalid_input);
  std::istringstream extra("3\n0 1 2\n");
  EXPECT_THROW(read_graph(extra), invalid_input);
  std::istringstream one("3\n0\n");
  EXPECT_THROW(read_graph(one), invalid_input);
  std::istringstream negative("3\n0 -1\n");
  EXPECT_THROW(read_graph(negative), invalid_input);
  std::istringstream cyc("2\n0 1\n1 0\n");
  EXPECT_THROW(read_graph(cyc), invalid_graph);
}
