#include <gtest/gtest.h>

#include <random>

#include "insp/game.hpp"
#include "insp/generators.hpp"
#include "test_support.hpp"

using namespace insp;

namespace {

const std::vector<std::vector<std::string>> kExample52 = {
    {"A", "I1", "I2"}, {"A", "I2", "I3"}, {"A", "I3", "I4"}, {"A", "I4", "D"},
    {"A", "B", "C"},   {"B", "C", "D"},   {"D", "I3", "I4"}};

}  // namespace

TEST(Simulate, Example52FullyClearedColumn) {
  Graph g = gen::k4_subdivision_fig3();
  auto tr = simulate(g, make_search(g, kExample52, 3));
  const std::vector<std::vector<std::string>> fc = {
      {},
      {"I1"},
      {"I1", "I2"},
      {"I1", "I2", "I3"},
      {"I1", "I2", "I3", "I4"},
      {"A", "I1", "I2", "I3"},
      {"A", "B", "C", "I1", "I2"},
      {"A", "B", "C", "D", "I1", "I2", "I3", "I4"}};
  ASSERT_EQ(tr.fc.size(), fc.size());
  for (std::size_t t = 0; t < fc.size(); ++t) EXPECT_EQ(tr.fc[t], g.set_of(fc[t])) << "row " << t;
}

TEST(Simulate, Example52PreClearedColumn) {
  Graph g = gen::k4_subdivision_fig3();
  auto tr = simulate(g, make_search(g, kExample52, 3));
  const std::vector<std::vector<std::string>> pc = {
      {"A", "I1", "I2"},
      {"A", "I1", "I2", "I3"},
      {"A", "I1", "I2", "I3", "I4"},
      {"A", "D", "I1", "I2", "I3", "I4"},
      {},  // row 5 checked separately below
      {"A", "B", "C", "D", "I1", "I2", "I3"},
      {"A", "B", "C", "D", "I1", "I2", "I3", "I4"}};
  for (std::size_t t = 0; t < pc.size(); ++t) {
    if (t == 4) continue;
    EXPECT_EQ(tr.pc[t], g.set_of(pc[t])) << "row " << t + 1;
  }
  // The printed table lists D in row 5; the recursion gives FC_4 + S_5, which omits D.
  EXPECT_EQ(tr.pc[4], g.set_of({"A", "B", "C", "I1", "I2", "I3", "I4"}));
  EXPECT_TRUE(is_successful(tr));
  EXPECT_FALSE(is_monotonic(tr));
  EXPECT_FALSE(tr.fc[5].contains(g.index("I4")));
  EXPECT_TRUE(tr.fc[4].contains(g.index("I4")));
}

TEST(Simulate, EmptySearchAndEdge) {
  Graph e = make_graph({{"a", "b"}});
  auto tr = simulate(e, Search{});
  EXPECT_EQ(tr.fc.size(), 1u);
  EXPECT_TRUE(tr.fc[0].empty());
  auto one = simulate(e, make_search(e, {{"a", "b"}}));
  EXPECT_TRUE(is_successful(one));
  EXPECT_TRUE(is_monotonic(one));
  EXPECT_TRUE(is_aligned(one, e.index("a"), e.index("b")));
  EXPECT_THROW(make_search(e, {{"a", "z"}}), InputError);
  EXPECT_THROW(make_search(e, {{"a", "b"}}, 1), InputError);
}

TEST(Simulate, GridWindowSearch) {
  // n x m grid in row-major order, windows of m + 1 consecutive vertices
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 4}}) {
    Graph g = gen::grid(n, m);
    std::vector<std::vector<std::string>> steps;
    for (int t = 0; t + m < n * m; ++t) {
      std::vector<std::string> st;
      for (int l = 0; l <= m; ++l) st.push_back("v" + std::to_string(t + l));
      steps.push_back(st);
    }
    auto tr = simulate(g, make_search(g, steps, m + 1));
    EXPECT_TRUE(is_successful(tr)) << n << "x" << m;
    EXPECT_TRUE(is_monotonic(tr)) << n << "x" << m;
  }
}

TEST(Simulate, TraceInvariants) {
  std::mt19937 rng(1);
  for (int it = 0; it < 200; ++it) {
    Graph g = fixtures::random_graph(7, 0.4, rng);
    Search s;
    for (int t = 0; t < 5; ++t) s.steps.push_back(fixtures::random_subset(g, rng, 0.3));
    s.k = static_cast<int>(s.width());
    VertexSet a = fixtures::random_subset(g, rng, 0.3);
    auto tr = simulate(g, s, a);
    EXPECT_EQ(tr.fc[0], a);
    for (std::size_t t = 0; t < tr.pc.size(); ++t) {
      EXPECT_EQ(tr.pc[t], tr.fc[t] | s.steps[t]);
      EXPECT_EQ(tr.fc[t + 1], tr.pc[t] - boundary(g, tr.pc[t]));
      EXPECT_TRUE(tr.fc[t + 1].is_subset_of(tr.pc[t]));
    }
  }
}

TEST(Simulate, DynamicsMonotoneInInitialSet) {
  std::mt19937 rng(2);
  for (int it = 0; it < 500; ++it) {
    Graph g = fixtures::random_graph(7, 0.4, rng);
    Search s;
    for (int t = 0; t < 6; ++t) s.steps.push_back(fixtures::random_subset(g, rng, 0.3));
    VertexSet a = fixtures::random_subset(g, rng, 0.3);
    VertexSet a2 = a | fixtures::random_subset(g, rng, 0.3);
    auto t1 = simulate(g, s, a), t2 = simulate(g, s, a2);
    for (std::size_t t = 0; t < t1.pc.size(); ++t) {
      EXPECT_TRUE(t1.pc[t].is_subset_of(t2.pc[t]));
      EXPECT_TRUE(t1.fc[t + 1].is_subset_of(t2.fc[t + 1]));
    }
  }
}

TEST(Simulate, ResearchingClosedNeighbourhoodKeepsClearedSet) {
  std::mt19937 rng(4);
  for (int it = 0; it < 200; ++it) {
    Graph g = fixtures::random_graph(7, 0.4, rng);
    Search s;
    for (int t = 0; t < 4; ++t) s.steps.push_back(fixtures::random_subset(g, rng, 0.4));
    auto tr = simulate(g, s);
    VertexSet fc = tr.fc.back();
    VertexSet closed = fc;
    fc.for_each([&](int v) {
      for (int w : g.neighbors(v)) closed.insert(w);
    });
    Search longer = s;
    longer.steps.push_back(closed);
    EXPECT_TRUE(fc.is_subset_of(simulate(g, longer).fc.back()));
  }
}

TEST(PushSearch, SpecExamples) {
  Graph g = make_graph({{"a", "b"}, {"b", "c"}});
  Search s = make_search(g, {{"a", "c"}, {"b"}});
  auto same = push_search(s, EquivalenceSpec::singletons(g));
  EXPECT_EQ(same.steps, s.steps);
  auto merged = push_search(s, EquivalenceSpec::from_classes(g, {{"a", "c"}}));
  EXPECT_EQ(merged.steps[0].size(), 1u);
}

TEST(Invariance, SpecExamples) {
  Graph g = make_graph({{"a", "b"}, {"b", "c"}});
  Search s = make_search(g, {{"a"}, {"b"}});
  EXPECT_TRUE(is_invariant(g, s, g.empty_set(), EquivalenceSpec::singletons(g)));
  // touches a but never c, which shares a's class
  EXPECT_FALSE(is_invariant(g, s, g.empty_set(), EquivalenceSpec::from_classes(g, {{"a", "c"}})));
}

TEST(Invariance, QuotientCorrespondence) {
  std::mt19937 rng(9);
  int checked = 0;
  for (int it = 0; it < 500; ++it) {
    Graph g = fixtures::random_graph(7, 0.35, rng);
    std::uniform_int_distribution<int> cls(0, 4);
    std::vector<int> ids;
    for (int v = 0; v < g.order(); ++v) ids.push_back(cls(rng));
    EquivalenceSpec e(ids);
    VertexSet a = fixtures::random_subset(g, rng, 0.3);
    Search s = fixtures::random_invariant_search(g, e, a, 6, rng);
    ASSERT_TRUE(is_invariant(g, s, a, e));
    Graph q = quotient(g, e);
    auto tg = simulate(g, s, a);
    auto tq = simulate(q, push_search(s, e), e.wedge(a));
    for (std::size_t t = 0; t < tg.pc.size(); ++t) {
      EXPECT_EQ(tq.pc[t], e.vee(tg.pc[t]));
      EXPECT_EQ(tq.fc[t + 1], e.wedge(tg.fc[t + 1]));
    }
    ++checked;
  }
  EXPECT_EQ(checked, 500);
}
