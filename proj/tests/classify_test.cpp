#include <gtest/gtest.h>

#include <map>
#include <random>

#include "insp/forbidden.hpp"
#include "insp/generators.hpp"
#include "insp/gsp_build.hpp"
#include "test_support.hpp"

using namespace insp;

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

gen::BipathSpec short_bipath() { return gen::BipathSpec{{{1, 2}, {1, 2}}}; }

std::string edge_string(const Graph& g) {
  std::string s;
  for (const auto& [u, v] : g.edge_labels()) s += u + "-" + v + " ";
  return s;
}

// YES must come with a simple decomposition of the whole graph, NO with a valid
// witness inside it.
void expect_coherent(const Graph& g, const Classification& c) {
  if (c.yes) {
    ASSERT_TRUE(c.tree);
    EXPECT_TRUE(c.tree->simple);
    EXPECT_TRUE(decomposes(g, c.tree));
    EXPECT_FALSE(c.witness);
  } else {
    ASSERT_TRUE(c.witness);
    EXPECT_TRUE(pattern_check(*c.witness, &g));
  }
}

void expect_matches_oracle(const Graph& g, int max_vertices = 12) {
  auto c = classify_topological_3(g);
  expect_coherent(g, c);
  BruteForceConfig cfg;
  cfg.max_vertices = max_vertices;
  auto o = brute_force_forbidden(g, cfg);
  EXPECT_EQ(c.yes, !o.has_value()) << edge_string(g);
}

// Random graphs built from the shapes that drive the classifier's witness
// extraction, with a few random edge deletions and additions on top.
class Mutator {
 public:
  explicit Mutator(std::uint32_t seed) : rng_(seed) {}

  Graph build(int kind) {
    Edges e;
    fresh_ = 0;
    switch (kind) {
      case 0:
        for (int i = 0; i < 3; ++i) bipath(e, "s", "t");
        break;
      case 1:
        doubled(e, "v1", "v2");
        doubled(e, "v3", "v4");
        path(e, "v1", "v3", 1 + pick(2));
        path(e, "v2", "v4", 1 + pick(2));
        break;
      case 2:
        doubled(e, "v1", "c");
        doubled(e, "c", "v3");
        path(e, "v1", "v3", 1 + pick(3));
        break;
      case 3:
        doubled(e, "a", "b");
        doubled(e, "c", "d");
        path(e, "x", "a", 1);
        path(e, "x", "c", 1);
        path(e, "y", "b", 1);
        path(e, "y", "d", 1);
        path(e, "x", "y", 1 + pick(2));
        break;
      case 4:
        doubled(e, "a", "b");
        doubled(e, "c", "d");
        path(e, "a", "h", 1);
        path(e, "b", "h", 2);
        path(e, "c", "k", 1);
        path(e, "d", "k", 2);
        path(e, "h", "k", 1 + pick(2));
        break;
      case 5:
        doubled(e, "a", "b");
        bipath(e, "a", "b");
        break;
      default:
        doubled(e, "a", "b");
        path(e, "a", "b", 2 + pick(3));
        path(e, "b", "z", 2);
    }
    std::set<std::pair<std::string, std::string>> s;
    for (auto [u, v] : e) {
      if (natural_compare(u, v) > 0) std::swap(u, v);
      s.emplace(u, v);
    }
    Edges es(s.begin(), s.end());
    for (int m = 0, muts = pick(3); m < muts; ++m) {
      auto [u, v] = es[static_cast<std::size_t>(pick(static_cast<int>(es.size())))];
      switch (pick(3)) {
        case 0:
          es.erase(es.begin() + pick(static_cast<int>(es.size())));
          break;
        case 1:
          es.emplace_back(u, "m" + std::to_string(m));
          es.emplace_back("m" + std::to_string(m), "p" + std::to_string(m));
          break;
        default: {
          auto w = es[static_cast<std::size_t>(pick(static_cast<int>(es.size())))].second;
          if (w != u && w != v) {
            es.emplace_back(u, "q" + std::to_string(m));
            es.emplace_back("q" + std::to_string(m), w);
          }
        }
      }
    }
    return make_graph(es);
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::string fresh() { return "n" + std::to_string(fresh_++); }

  void path(Edges& e, const std::string& a, const std::string& b, int len) {
    std::string p = a;
    for (int i = 1; i < len; ++i) {
      auto x = fresh();
      e.emplace_back(p, x);
      p = x;
    }
    e.emplace_back(p, b);
  }

  void bipath(Edges& e, const std::string& a, const std::string& b) {
    std::string p = a;
    for (int i = 0; i < 2; ++i) {
      std::string q = i == 1 ? b : fresh();
      path(e, p, q, 1 + pick(2));
      path(e, p, q, 2);
      p = q;
    }
  }

  void doubled(Edges& e, const std::string& a, const std::string& b) {
    bipath(e, a, b);
    bipath(e, a, b);
  }

  std::mt19937 rng_;
  int fresh_ = 0;
};

}  // namespace

TEST(Classify, ExhaustiveAgainstOracle) {
  int yes = 0, no = 0;
  for (int n = 2; n <= 7; ++n)
    for (const Graph& g : fixtures::connected_graphs(n)) {
      auto c = classify_topological_3(g);
      expect_coherent(g, c);
      auto o = brute_force_forbidden(g);
      EXPECT_EQ(c.yes, !o.has_value()) << edge_string(g);
      (c.yes ? yes : no) += 1;
    }
  EXPECT_EQ(yes + no, 1 + 2 + 6 + 21 + 112 + 853);
  EXPECT_GT(yes, 0);
  EXPECT_GT(no, 0);
}

TEST(Classify, SampledEightVertexGraphs) {
  std::mt19937 rng(8);
  for (int it = 0; it < 400; ++it) {
    double p = 0.25 + 0.05 * (it % 6);
    expect_matches_oracle(fixtures::random_connected_graph(8, p, rng));
  }
}

TEST(Classify, K4IsF1) {
  Graph g = gen::complete(4);
  auto c = classify_topological_3(g);
  ASSERT_FALSE(c.yes);
  EXPECT_EQ(c.witness->family, Family::F1);
  EXPECT_TRUE(pattern_check(*c.witness, &g));
}

TEST(Classify, Fig3IsF1) {
  Graph g = gen::k4_subdivision_fig3();
  auto c = classify_topological_3(g);
  ASSERT_FALSE(c.yes);
  EXPECT_EQ(c.witness->family, Family::F1);
}

TEST(Classify, GeneratedRepresentativesGetTheirFamily) {
  auto b = short_bipath();
  for (const auto& spec : {std::array{b, b, b}, std::array{gen::BipathSpec::uniform(3), b, gen::BipathSpec::uniform(4)}}) {
    Graph g = gen::f2(spec);
    auto c = classify_topological_3(g);
    ASSERT_FALSE(c.yes);
    EXPECT_EQ(c.witness->family, Family::F2);
    EXPECT_TRUE(pattern_check(*c.witness, &g));
  }
  for (auto [p1, p2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 3}, {2, 2}}) {
    Graph g = gen::f3({{b, b, b, b}}, p1, p2);
    auto c = classify_topological_3(g);
    ASSERT_FALSE(c.yes);
    EXPECT_EQ(c.witness->family, Family::F3);
    EXPECT_FALSE(c.witness->degenerate);
    EXPECT_TRUE(pattern_check(*c.witness, &g));
  }
  Graph f1 = gen::f1({3, 0, 1, 2, 0, 1});
  auto c = classify_topological_3(f1);
  ASSERT_FALSE(c.yes);
  EXPECT_EQ(c.witness->family, Family::F1);
}

TEST(Classify, TreesAndK23AreYes) {
  for (int n = 2; n <= 9; ++n)
    for (const Graph& t : fixtures::trees(n)) {
      auto c = classify_topological_3(t);
      EXPECT_TRUE(c.yes) << edge_string(t);
      expect_coherent(t, c);
    }
  Graph k23 = make_graph({{"a", "x"}, {"a", "y"}, {"a", "z"}, {"b", "x"}, {"b", "y"}, {"b", "z"}});
  auto c = classify_topological_3(k23);
  EXPECT_TRUE(c.yes);
  expect_coherent(k23, c);
}

TEST(Classify, PathsCyclesAndLadders) {
  for (int n = 2; n <= 12; ++n) EXPECT_TRUE(classify_topological_3(gen::path(n)).yes);
  for (int n = 3; n <= 12; ++n) EXPECT_TRUE(classify_topological_3(gen::cycle(n)).yes);
  for (int m = 2; m <= 6; ++m) {
    Graph g = gen::grid(2, m);
    auto c = classify_topological_3(g);
    expect_coherent(g, c);
  }
  EXPECT_FALSE(classify_topological_3(gen::grid(3, 3)).yes);
}

TEST(Classify, DegenerateDoubleBipathChain) {
  Mutator mut(5);
  int seen = 0;
  for (int it = 0; it < 20; ++it) {
    Graph g = mut.build(2);
    if (!is_connected(g)) continue;
    auto c = classify_topological_3(g);
    expect_coherent(g, c);
    if (!c.yes && c.witness->family == Family::F3 && c.witness->degenerate) ++seen;
  }
  EXPECT_GT(seen, 0);
}

TEST(Classify, MutationStress) {
  Mutator mut(3);
  std::map<std::string, int> verdicts;
  for (int it = 0; it < 280; ++it) {
    Graph g = mut.build(it % 7);
    if (!is_connected(g)) continue;
    auto c = classify_topological_3(g);
    expect_coherent(g, c);
    verdicts[c.yes ? "YES" : family_name(c.witness->family)]++;
    if (g.order() > 22) continue;
    BruteForceConfig cfg;
    cfg.max_vertices = 22;
    auto o = brute_force_forbidden(g, cfg);
    EXPECT_EQ(c.yes, !o.has_value()) << edge_string(g);
  }
  EXPECT_GT(verdicts["YES"], 0);
  EXPECT_GT(verdicts["F2"], 0);
  EXPECT_GT(verdicts["F3"], 0);
}

TEST(Classify, RejectsDegenerateInputs) {
  EXPECT_THROW(classify_topological_3(make_graph({}, {"x"})), InputError);
  EXPECT_THROW(classify_topological_3(make_graph({{"a", "b"}, {"c", "d"}})), InputError);
}
