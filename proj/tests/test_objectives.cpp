#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "limgreedy/core.hpp"
#include "limgreedy/graph_gen.hpp"
#include "limgreedy/greedy.hpp"
#include "limgreedy/objectives.hpp"
#include "oracles.hpp"

using namespace limgreedy;

namespace {

// Marginal-rule definition of the adversarial function, summed along an
// ordering: b_i always adds 1, a_i adds 1 unless an a_j of the same color came
// earlier.
double adversarial_by_marginals(const std::vector<Element>& order, const std::vector<int>& color) {
  double v = 0;
  std::vector<Element> seen;
  for (Element e : order) {
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
    if (e % 2 == 1) {
      v += 1;
    } else {
      bool blocked = false;
      for (Element s : seen)
        if (s % 2 == 0 && color[s / 2] == color[e / 2]) blocked = true;
      if (!blocked) v += 1;
    }
    seen.push_back(e);
  }
  return v;
}

}  // namespace

TEST(Coverage, DiskCoveringSquareGivesOne) {
  auto inst = make_coverage({{{0.5, 0.5, 1.0}}}, CoverageGrid{10});
  EXPECT_EQ(evaluate(inst, Assignment{0}), 1.0);
}

TEST(Coverage, IdenticalDisksDoNotAddArea) {
  auto inst = make_coverage({{{0.3, 0.6, 0.2}}, {{0.3, 0.6, 0.2}}}, CoverageGrid{50});
  EXPECT_EQ(evaluate(inst, Assignment{0, 1}), evaluate(inst.oracle(), std::vector<Element>{0}));
}

TEST(Coverage, SmallCentralDiskMatchesPointCount) {
  auto inst = make_coverage({{{0.5, 0.5, 0.07}}}, CoverageGrid{100});
  const double expected = double(oracle::grid_points_covered({{0.5, 0.5, 0.07}}, 100)) / 10000.0;
  EXPECT_EQ(evaluate(inst, Assignment{0}), expected);
  EXPECT_NEAR(expected, std::numbers::pi * 0.07 * 0.07, 0.002);
}

TEST(Coverage, BoundaryPointsCount) {
  // g = 2 puts points at 0.25 and 0.75; a disk at (0.25, 0.25) of radius 0.5
  // reaches (0.75, 0.25) and (0.25, 0.75) exactly.
  auto inst = make_coverage({{{0.25, 0.25, 0.5}}}, CoverageGrid{2});
  EXPECT_EQ(evaluate(inst, Assignment{0}), 0.75);
}

TEST(Coverage, MatchesReferenceOnRandomFamilies) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    auto disks = random_disks(rng, 3, 2, 0.05 + 0.25 * rng.uniform01());
    auto inst = make_coverage(disks, CoverageGrid{40});
    for (std::uint64_t m = 0; m < 64; ++m) {
      std::vector<oracle::Circle> cs;
      std::vector<Element> s;
      for (Element e = 0; e < 6; ++e)
        if (m >> e & 1) {
          s.push_back(e);
          const auto& d = disks[e / 2][e % 2];
          cs.push_back({d.cx, d.cy, d.radius});
        }
      EXPECT_EQ(evaluate(inst.oracle(), s), double(oracle::grid_points_covered(cs, 40)) / 1600.0);
    }
  }
}

TEST(Coverage, OrderAndDuplicatesDoNotMatter) {
  Rng rng(12);
  auto inst = make_coverage(random_disks(rng, 4, 1, 0.2), CoverageGrid{50});
  std::vector<Element> s{3, 1, 2, 1, 3};
  const double v = evaluate(inst.oracle(), s);
  std::sort(s.begin(), s.end());
  do {
    EXPECT_EQ(evaluate(inst.oracle(), s), v);
    EXPECT_NEAR(telescoping_value(inst.oracle(), s), v, 1e-12);
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST(Coverage, ElementNamesAndSets) {
  auto inst = make_coverage({{{0.1, 0.1, 0.1}, {0.2, 0.2, 0.1}}, {{0.5, 0.5, 0.1}}}, CoverageGrid{10});
  EXPECT_EQ(inst.oracle().ground().name(1), "a1d2");
  EXPECT_EQ(inst.oracle().ground().name(2), "a2d1");
  EXPECT_EQ(inst.strategy_set(1), ElementSet{2});
  EXPECT_TRUE(inst.disjoint());
  EXPECT_FALSE(inst.oracle().integral());
}

TEST(Coverage, RejectsBadInput) {
  EXPECT_THROW(make_coverage({{{0.5, 0.5, 0.1}}, {}}), invalid_input);
  EXPECT_THROW(make_coverage({{{0.5, 0.5, 0.0}}}), invalid_input);
  EXPECT_THROW(make_coverage({{{NAN, 0.5, 0.1}}}), invalid_input);
  EXPECT_THROW(make_coverage({}), invalid_input);
  EXPECT_THROW(make_coverage({{{0.5, 0.5, 0.1}}}, CoverageGrid{0}), invalid_input);
}

TEST(Adversarial, AllBGivesN) {
  auto g = gen_er_dag(7, 0.5, 3);
  auto inst = make_adversarial(g, chromatic_number(g).coloring);
  Assignment a;
  for (std::size_t i = 0; i < 7; ++i) a.push_back(adversarial_b(i));
  EXPECT_EQ(evaluate(inst, a), 7.0);
}

TEST(Adversarial, AllAGivesColorCount) {
  auto g = gen_er_dag(7, 0.5, 3);
  auto chrom = chromatic_number(g);
  auto inst = make_adversarial(g, chrom.coloring);
  Assignment a;
  for (std::size_t i = 0; i < 7; ++i) a.push_back(adversarial_a(i));
  EXPECT_EQ(evaluate(inst, a), double(chrom.chromatic));
}

TEST(Adversarial, SameColorPairCountsOnce) {
  auto g = gen_empty(3);
  Coloring c{{1, 1, 2}};
  auto inst = make_adversarial(g, c);
  EXPECT_EQ(evaluate(inst.oracle(), std::vector<Element>{adversarial_a(0), adversarial_a(1)}), 1.0);
  EXPECT_EQ(evaluate(inst.oracle(), std::vector<Element>{adversarial_a(0), adversarial_a(2)}), 2.0);
  EXPECT_EQ(inst.oracle().ground().name(adversarial_b(2)), "b3");
}

TEST(Adversarial, RejectsImproperColoring) {
  auto g = gen_complete_dag(3);
  EXPECT_THROW(make_adversarial(g, Coloring{{1, 1, 2}}), invalid_input);
  EXPECT_THROW(make_adversarial(g, Coloring{{1, 2}}), invalid_input);
}

TEST(Adversarial, ClosedFormEqualsMarginalRuleEveryOrdering) {
  // Exhaustive over every ordering of every subset for n <= 3.
  for (std::size_t n = 1; n <= 3; ++n) {
    auto g = gen_er_dag(n, 0.5, 40 + n);
    auto col = greedy_topological_coloring(g).coloring;
    auto inst = make_adversarial(g, col);
    for (std::uint64_t m = 0; m < (1u << (2 * n)); ++m) {
      auto s = detail::mask_to_set(m);
      const double closed = evaluate(inst.oracle(), s);
      do {
        EXPECT_EQ(adversarial_by_marginals(s, col.color), closed);
        EXPECT_EQ(telescoping_value(inst.oracle(), s), closed);
      } while (std::next_permutation(s.begin(), s.end()));
    }
  }
}

TEST(Adversarial, ClosedFormEqualsMarginalRuleRandomOrderings) {
  Rng rng(6);
  for (std::size_t n = 4; n <= 6; ++n) {
    auto g = gen_er_dag(n, 0.5, 50 + n);
    auto col = chromatic_number(g).coloring;
    auto inst = make_adversarial(g, col);
    for (std::uint64_t m = 0; m < (1u << (2 * n)); ++m) {
      auto s = detail::mask_to_set(m);
      const double closed = evaluate(inst.oracle(), s);
      for (int k = 0; k < 3; ++k) {
        rng.shuffle(s);
        EXPECT_EQ(adversarial_by_marginals(s, col.color), closed);
      }
    }
  }
}

TEST(Universal, Examples) {
  auto u = make_universal(3, 7);
  EXPECT_EQ(evaluate(u, Assignment{0, 1, 2}), 3.0);
  EXPECT_EQ(evaluate(u, Assignment{0, 0, 0}), 1.0);
  EXPECT_EQ(evaluate(u.oracle(), std::vector<Element>{0, 2, 6}), 3.0);
  EXPECT_THROW(make_universal(3, 2), invalid_input);
  EXPECT_THROW(make_universal(0, 2), invalid_input);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(u.strategy_set(i).size(), 7u);
}

TEST(WeightedCoverage, ValueAndValidation) {
  auto inst = make_weighted_coverage({5, 3, 2}, {{0, 1}, {1, 2}, {2}}, {{0}, {1, 2}});
  EXPECT_EQ(evaluate(inst.oracle(), std::vector<Element>{0}), 8.0);
  EXPECT_EQ(evaluate(inst.oracle(), std::vector<Element>{0, 1}), 10.0);
  EXPECT_EQ(evaluate(inst.oracle(), std::vector<Element>{2}), 2.0);
  EXPECT_TRUE(inst.oracle().integral());
  EXPECT_THROW(make_weighted_coverage({-1}, {{0}}, {{0}}), invalid_input);
  EXPECT_THROW(make_weighted_coverage({1}, {{3}}, {{0}}), invalid_input);
}

TEST(RandomCoverage, DisjointAndBounded) {
  Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    RandomCoverageParams p;
    p.n_agents = static_cast<std::size_t>(rng.between(1, 6));
    auto inst = random_weighted_coverage(rng, p);
    EXPECT_TRUE(inst.disjoint());
    EXPECT_EQ(inst.agent_count(), p.n_agents);
    for (const auto& s : inst.strategy_sets()) {
      EXPECT_GE(s.size(), 1u);
      EXPECT_LE(s.size(), 3u);
    }
  }
}

TEST(Reduction, UniversalTwoByTwo) {
  auto u = make_universal(2, 2);
  auto r = reduce_to_disjoint(u);
  ASSERT_EQ(r.reduced.oracle().ground().size(), 4u);
  EXPECT_TRUE(r.reduced.disjoint());
  const auto& g = r.reduced.oracle().ground();
  const Element e1_1 = g.find("e1@1");
  const Element e1_2 = g.find("e1@2");
  EXPECT_EQ(evaluate(r.reduced.oracle(), std::vector<Element>{e1_1, e1_2}), 1.0);
  EXPECT_EQ(evaluate(r.reduced.oracle(), std::vector<Element>{e1_1, g.find("e2@2")}), 2.0);
}

TEST(Reduction, DisjointInputIsIdentity) {
  Rng rng(4);
  auto inst = random_weighted_coverage(rng, {});
  auto r = reduce_to_disjoint(inst);
  for (Element e = 0; e < r.back_map.size(); ++e) EXPECT_EQ(r.back_map[e], e);
  EXPECT_EQ(r.reduced.strategy_sets(), inst.strategy_sets());
}

TEST(Reduction, BackMapIsPerAgentBijection) {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    RandomCoverageParams p;
    p.n_agents = static_cast<std::size_t>(rng.between(2, 5));
    auto inst = random_intersecting_coverage(rng, p, 4);
    auto r = reduce_to_disjoint(inst);
    EXPECT_TRUE(r.reduced.disjoint());
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      ElementSet image;
      for (Element e : r.reduced.strategy_set(i)) image.push_back(r.back_map[e]);
      std::sort(image.begin(), image.end());
      EXPECT_EQ(image, inst.strategy_set(i));
      EXPECT_EQ(r.reduced.strategy_set(i).size(), inst.strategy_set(i).size());
    }
  }
}

TEST(Reduction, ComposedOracleAndLatticeInequality) {
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    RandomCoverageParams p;
    p.n_agents = 3;
    p.max_set_size = 3;
    auto inst = random_intersecting_coverage(rng, p, 3);
    auto r = reduce_to_disjoint(inst);
    const auto& f = r.reduced.oracle();
    const auto m = f.ground().size();
    ASSERT_LE(m, 9u);
    std::vector<double> v(1u << m);
    for (std::uint64_t a = 0; a < v.size(); ++a) {
      const auto s = detail::mask_to_set(a);
      v[a] = evaluate(f, s);
      std::vector<Element> image;
      for (Element e : s) image.push_back(r.back_map[e]);
      EXPECT_EQ(v[a], evaluate(inst.oracle(), image));
    }
    for (std::uint64_t a = 0; a < v.size(); ++a)
      for (std::uint64_t b = 0; b < v.size(); ++b) EXPECT_GE(v[a] + v[b], v[a | b] + v[a & b]);
    EXPECT_TRUE(check_submodular(f).holds);
    EXPECT_TRUE(check_monotone(f).holds);
    EXPECT_TRUE(check_normalized(f).holds);
  }
}

TEST(Reduction, GreedyValuesAgree) {
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    const auto n = static_cast<std::size_t>(rng.between(1, 6));
    auto g = gen_er_dag(n, rng.uniform01(), rng.next_u64());
    auto inst = make_universal(n, n + static_cast<std::size_t>(rng.below(3)));
    auto r = reduce_to_disjoint(inst);
    EXPECT_EQ(run_sequential(inst, g).value, run_sequential(r.reduced, g).value);
  }
}

TEST(DiskFile, RoundTrip) {
  Rng rng(1);
  auto disks = random_disks(rng, 3, 2, 0.07);
  std::stringstream s;
  write_disks(s, disks);
  auto back = read_disks(s);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(back[a][k].cx, disks[a][k].cx);
      EXPECT_EQ(back[a][k].cy, disks[a][k].cy);
      EXPECT_EQ(back[a][k].radius, 0.07);
    }
}

TEST(DiskFile, RejectsMalformed) {
  std::istringstream bad_header("x y\n");
  EXPECT_THROW(read_disks(bad_header), invalid_input);
  std::istringstream truncated("2 1\n0.1 0.1 0.1\n");
  EXPECT_THROW(read_disks(truncated), invalid_input);
  std::istringstream zero_radius("1 1\n0.1 0.1 0\n");
  EXPECT_THROW(read_disks(zero_radius), invalid_input);
}
