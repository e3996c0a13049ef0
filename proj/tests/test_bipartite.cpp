#include <gtest/gtest.h>

#include "properties.hpp"

using namespace mineq;
using namespace mineq::testing;

namespace {

BipartiteGraph graph(std::size_t l, std::size_t r, const std::vector<Edge>& edges) {
  BipartiteGraph g(l, r);
  for (const auto& e : edges) g.add_edge(e.buyer, e.item);
  return g;
}

using Set = std::vector<std::size_t>;

TEST(Graph, EdgesStaySortedAndUnique) {
  BipartiteGraph g(2, 3);
  EXPECT_TRUE(g.add_edge(0, 2));
  EXPECT_TRUE(g.add_edge(0, 0));
  EXPECT_FALSE(g.add_edge(0, 2));
  EXPECT_EQ(g.neighbors(0), (Set{0, 2}));
  EXPECT_EQ(g.edge_count(), 2U);
  EXPECT_TRUE(g.remove_edge(0, 0));
  EXPECT_FALSE(g.remove_edge(0, 0));
  EXPECT_THROW(g.add_edge(2, 0), IndexError);
  EXPECT_THROW(g.add_edge(0, 3), IndexError);
}

TEST(MaxMatching, Examples) {
  EXPECT_EQ(max_matching(graph(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})).size(), 2U);
  EXPECT_EQ(max_matching(graph(3, 1, {{0, 0}, {1, 0}, {2, 0}})).size(), 1U);
  EXPECT_EQ(max_matching(graph(3, 3, {})).size(), 0U);
  // Needs an augmenting path: 0 first grabs 0, then 1 forces it over.
  const Matching m = max_matching(graph(2, 2, {{0, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(m.size(), 2U);
  EXPECT_EQ(m.left_mate[1], 0U);
  EXPECT_EQ(m.left_mate[0], 1U);
}

TEST(CriticalSet, Examples) {
  const auto star = graph(3, 1, {{0, 0}, {1, 0}, {2, 0}});
  EXPECT_EQ(critical_set(star), (Set{0, 1, 2}));
  EXPECT_EQ(neighborhood(star, critical_set(star)), (Set{0}));
  EXPECT_TRUE(critical_set(graph(2, 2, {{0, 0}, {1, 1}, {0, 1}})).empty());
  // Isolated buyers are deficient on their own; the active variant skips them.
  const auto g = graph(3, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(critical_set(g), (Set{2}));
  EXPECT_TRUE(critical_set_active(g).empty());
}

TEST(CriticalSet, ExampleAlgInitialGraph) {
  const auto d = load_fixture("example_alg");
  const auto g = build_demand_graph(d.instance, DemandState::initial(d.instance));
  EXPECT_EQ(critical_set_active(g.graph), (Set{0, 1, 2, 3, 4}));
  EXPECT_EQ(neighborhood(g.graph, critical_set_active(g.graph)), (Set{0}));
  // Dummies 5..7 have no edges at zero price, so the plain critical set has them.
  EXPECT_EQ(critical_set_bruteforce(g.graph), critical_set(g.graph));
}

TEST(Components, SplitAndOrdered) {
  const auto g = graph(4, 3, {{0, 1}, {1, 1}, {2, 0}, {3, 0}, {3, 2}});
  const auto cs = components(g, {0, 1, 2, 3});
  ASSERT_EQ(cs.size(), 2U);
  EXPECT_EQ(cs[0].buyers, (Set{0, 1}));
  EXPECT_EQ(cs[0].items, (Set{1}));
  EXPECT_EQ(cs[1].buyers, (Set{2, 3}));
  EXPECT_EQ(cs[1].items, (Set{0, 2}));
  EXPECT_EQ(cs[1].edges, (std::vector<Edge>{{2, 0}, {3, 0}, {3, 2}}));
}

TEST(LexMatching, ExampleAlgFinalMarket) {
  const auto d = load_fixture("example_alg");
  const Outcome o = solve(d.instance);
  ASSERT_TRUE(o.has_equilibrium());
  const auto m = lex_matching(o.market, o.must_cover, d.instance.m_items());
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->size(), 3U);
  EXPECT_EQ(m->left_mate[0], 0U);
  for (std::size_t i = 0; i < o.must_cover.size(); ++i)
    if (o.must_cover[i]) EXPECT_NE(m->left_mate[i], kUnmatched);
}

TEST(LexMatching, AbsentWhenImpossible) {
  const auto g = graph(2, 1, {{1, 0}});
  EXPECT_FALSE(lex_matching(g, {1, 0}, 1).has_value());        // must-cover buyer without edges
  EXPECT_FALSE(lex_matching(g, {0, 0}, 2).has_value());        // target above item count
  EXPECT_FALSE(lex_matching(graph(2, 2, {{0, 0}, {1, 0}}), {0, 0}, 2).has_value());
  EXPECT_THROW(lex_matching(g, {0}, 1), ContractError);
}

TEST(LexMatching, MustCoverWinsOverOthers) {
  // Buyer 0 could take item 0, but buyer 1 must be covered and only has item 0.
  const auto g = graph(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  const auto m = lex_matching(g, {0, 1}, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->left_mate[1], 0U);
  EXPECT_EQ(m->left_mate[0], 1U);
  // Trimming to the target drops optional buyers, never must-cover ones.
  const auto t = lex_matching(graph(3, 3, {{0, 0}, {1, 1}, {2, 2}}), {0, 1, 0}, 1);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->pairs(), (std::vector<Edge>{{1, 1}}));
}

TEST(LexMatchingProperty, SizeAndCoverage) {
  Rng r(21);
  for (int k = 0; k < 1000; ++k) {
    const auto l = static_cast<std::size_t>(r.uniform(1, 8));
    const auto rr = static_cast<std::size_t>(r.uniform(1, 6));
    const auto g = random_graph(r, l, rr, 0.35);
    std::vector<char> must(l);
    for (auto& c : must) c = r.coin(0.3) ? 1 : 0;
    const auto target = static_cast<std::size_t>(r.uniform(0, static_cast<long long>(rr)));
    const auto m = lex_matching(g, must, target);
    if (!m) continue;
    EXPECT_EQ(m->size(), target);
    for (std::size_t u = 0; u < l; ++u) {
      if (must[u]) EXPECT_NE(m->left_mate[u], kUnmatched);
      if (m->left_mate[u] != kUnmatched) EXPECT_TRUE(g.has_edge(u, m->left_mate[u]));
    }
  }
}

TEST(CriticalSetProperty, MatchesEnumeration) {
  const auto r = prop_critical_set_bruteforce(101, 1000);
  EXPECT_EQ(r.cases, 1000U);
  EXPECT_TRUE(r.ok()) << r.first;
}

TEST(CriticalSetProperty, AddDeleteInvariance) {
  const auto r = prop_critical_add_delete(102, 1000);
  EXPECT_EQ(r.cases, 1000U);
  EXPECT_TRUE(r.ok()) << r.first;
}

// The intersection of two maximally deficient sets is maximally deficient.
TEST(CriticalSetProperty, IntersectionClosure) {
  Rng r(103);
  for (int k = 0; k < 300; ++k) {
    const auto l = static_cast<std::size_t>(r.uniform(1, 7));
    const auto g = random_graph(r, l, static_cast<std::size_t>(r.uniform(1, 5)), 0.3);
    auto deficiency = [&](std::uint32_t mask) {
      Set a;
      for (std::size_t u = 0; u < l; ++u)
        if (mask >> u & 1U) a.push_back(u);
      return static_cast<long>(a.size()) - static_cast<long>(neighborhood(g, a).size());
    };
    long best = 0;
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t mask = 0; mask < (1U << l); ++mask) {
      const long d = deficiency(mask);
      if (d > best) {
        best = d;
        maximal.clear();
      }
      if (d == best) maximal.push_back(mask);
    }
    for (auto a : maximal)
      for (auto b : maximal) EXPECT_EQ(deficiency(a & b), best);
  }
}

}  // namespace
