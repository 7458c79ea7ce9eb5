#include <gtest/gtest.h>

#include <random>

#include "insp/game.hpp"
#include "insp/generators.hpp"
#include "insp/gsp_build.hpp"
#include "insp/solver.hpp"
#include "insp/synth.hpp"
#include "test_support.hpp"

using namespace insp;

namespace {

TerminalSynth synth_of(const Graph& g, const Gsp& t) {
  return {g, g.label(t->a), g.label(t->b), [g, t](const SubdivisionFloor& f) { return synthesize(g, t, f); }};
}

TerminalSynth synth_of(const Graph& g, const std::string& a, const std::string& b) {
  return synth_of(g, gsp_decompose(g, g.index(a), g.index(b)));
}

Gsp leaf(const Graph& g, const std::string& u, const std::string& v) { return gsp_edge(g, g.index(u), g.index(v)); }

// The path a - m - b as a series node.
TerminalSynth path_synth() {
  Graph g = make_graph({{"a", "m"}, {"m", "b"}});
  return synth_of(g, gsp_series(leaf(g, "a", "m"), leaf(g, "m", "b")));
}

// Host vertices lying on the given base graph's vertices and edges.
VertexSet part_of(const AlignedSearchBundle& x, const Graph& base) {
  const Graph& d = x.host.derived();
  VertexSet s = d.empty_set();
  for (const auto& l : base.labels()) s.insert(d.index(l));
  for (const auto& [u, v] : base.edge_labels())
    for (int p : x.host.edge_path(u, v)) s.insert(p);
  return s;
}

StepList canonical(StepList s) {
  for (auto& st : s) {
    std::sort(st.begin(), st.end());
    st.erase(std::unique(st.begin(), st.end()), st.end());
  }
  return s;
}

// Steps [from, to) replayed on the disjoint-union model: invariant under the copy
// relation from the lifted initial set, and pushing back gives the same steps.
void expect_quotient_faithful(const AlignedSearchBundle& x, const std::vector<VertexSet>& parts, std::size_t from,
                              std::size_t to, const VertexSet* host_initial = nullptr) {
  auto m = quotient_model(x.host.derived(), parts);
  StepList seg(x.steps.begin() + static_cast<std::ptrdiff_t>(from), x.steps.begin() + static_cast<std::ptrdiff_t>(to));
  Search lifted = m.lift(seg);
  VertexSet init = host_initial ? m.lift(host_initial->members()) : m.disjoint.empty_set();
  EXPECT_TRUE(is_invariant(m.disjoint, lifted, init, m.relation));
  EXPECT_EQ(m.to_host(push_search(lifted, m.relation)), canonical(seg));
}

void expect_valid_bundle(const AlignedSearchBundle& x, const SubdivisionFloor& floors = {}) {
  auto c = check_bundle(x);
  EXPECT_TRUE(c.successful);
  EXPECT_TRUE(c.aligned);
  EXPECT_LE(c.width, 3u);
  EXPECT_TRUE(floors_met(x.host, floors));
  if (x.host.derived().order() <= 400) {
    auto tr = simulate(x.host.derived(), x.search());
    EXPECT_TRUE(is_successful(tr));
    EXPECT_TRUE(is_aligned(tr, x.first(), x.second()));
  }
}

// The inward sweep cut at its first full clearing is aligned to (other, centre).
bool trimmed_inward_aligned(const Graph& g, const Search& s, const VertexSet& init, int other, int centre) {
  auto steps = to_steps(s);
  auto full = check_steps(g, steps, -1, -1, &init).first_full;
  if (full == 0) return false;
  steps.resize(full);
  auto c = check_steps(g, steps, other, centre, &init);
  return c.successful && c.aligned;
}

std::size_t segment_start(const AlignedSearchBundle& x, const std::string& name) {
  std::size_t t = 0;
  for (const auto& [n, l] : x.segments) {
    if (n == name) return t;
    t += l;
  }
  ADD_FAILURE() << "no segment " << name;
  return t;
}

}  // namespace

TEST(BallOutward, SingleEdgeExample) {
  auto h = subdivide(make_graph({{"v", "w"}}), {{edge_key("v", "w"), 3}});
  auto s = clear_ball_outward(h, "w", "v", 2);
  const Graph& d = h.derived();
  auto p = h.edge_path("w", "v");
  ASSERT_EQ(s.length(), 2u);
  EXPECT_EQ(s.steps[0], d.set_of({d.label(p[0]), d.label(p[1]), d.label(p[2])}));
  EXPECT_EQ(s.steps[1], d.set_of({d.label(p[0]), d.label(p[2]), d.label(p[3])}));
  auto tr = simulate(d, s);
  EXPECT_EQ(tr.fc.back(), d.set_of({d.label(p[0]), d.label(p[1]), d.label(p[2])}));
  EXPECT_TRUE(ball(d, p[0], 2).is_subset_of(tr.fc.back()));
  EXPECT_TRUE(is_aligned(tr, d.index("w"), d.index("v")));
}

TEST(BallOutward, ZeroRadiusIsEmpty) {
  auto h = subdivide(gen::path(3), {});
  EXPECT_EQ(clear_ball_outward(h, "1", "0", 0).length(), 0u);
  EXPECT_EQ(clear_ball_inward(h, "1", "0", 0).length(), 0u);
}

TEST(BallOutward, StarLength) {
  Graph star = make_graph({{"c", "x"}, {"c", "y"}, {"c", "z"}});
  EdgeCounts counts;
  for (const auto& [u, v] : star.edge_labels()) counts[edge_key(u, v)] = 5;
  auto h = subdivide(star, counts);
  auto s = clear_ball_outward(h, "c", "x", 1);
  EXPECT_EQ(s.length(), 7u);
  EXPECT_LE(s.width(), 3u);
  auto tr = simulate(h.derived(), s);
  EXPECT_TRUE(ball(h.derived(), h.derived().index("c"), 1).is_subset_of(tr.fc.back()));
}

TEST(BallOutward, FloorViolationIsAnInputError) {
  auto h = subdivide(make_graph({{"v", "w"}}), {{edge_key("v", "w"), 2}});
  EXPECT_THROW(clear_ball_outward(h, "w", "v", 2), InputError);
  EXPECT_THROW(clear_ball_outward(h, "w", "w", 1), InputError);
  EXPECT_THROW(clear_ball_inward(h, "w", "v", 3), InputError);
}

TEST(BallInward, SingleEdgeMirror) {
  auto h = subdivide(make_graph({{"v", "w"}}), {{edge_key("v", "w"), 2}});
  auto s = clear_ball_inward(h, "v", "w", 2);
  EXPECT_EQ(s.length(), 2u);
  auto init = inward_initial_set(h, "v", 2);
  auto tr = simulate(h.derived(), s, init);
  EXPECT_TRUE(is_successful(tr));
  // The centre is cleared together with everything else one step early, so only
  // the sweep up to the first full clearing is aligned.
  EXPECT_FALSE(is_aligned(tr, h.derived().index("w"), h.derived().index("v")));
  EXPECT_TRUE(trimmed_inward_aligned(h.derived(), s, init, h.derived().index("w"), h.derived().index("v")));
}

TEST(BallInward, LengthFormula) {
  Graph g = make_graph({{"x", "v"}, {"v", "y"}});
  auto h = subdivide(g, {{edge_key("x", "v"), 6}, {edge_key("v", "y"), 7}});
  auto s = clear_ball_inward(h, "v", "x", 3);
  EXPECT_EQ(s.length(), 9u);
  auto tr = simulate(h.derived(), s, inward_initial_set(h, "v", 3));
  EXPECT_TRUE(is_successful(tr));
}

TEST(BallLemmas, RandomHosts) {
  std::mt19937 rng(42);
  int done = 0;
  while (done < 120) {
    Graph base = fixtures::random_connected_graph(3 + static_cast<int>(rng() % 4), 0.5, rng);
    int w = static_cast<int>(rng() % static_cast<unsigned>(base.order()));
    int d = base.degree(w);
    if (d > 3) continue;
    int v = static_cast<int>(rng() % static_cast<unsigned>(base.order()));
    if (v == w) continue;
    long long r = 1 + static_cast<long long>(rng() % 3);
    bool outward = done % 2 == 0;
    long long floor = outward ? (1LL << (d - 1)) * r + 1 : (1LL << (d - 1)) * r;
    EdgeCounts counts;
    for (const auto& [x, y] : base.edge_labels()) {
      bool at = x == base.label(w) || y == base.label(w);
      counts[edge_key(x, y)] = (at ? floor : 0) + static_cast<long long>(rng() % 3);
    }
    auto h = subdivide(base, counts);
    const Graph& g = h.derived();
    int wi = g.index(base.label(w)), vi = g.index(base.label(v));
    if (outward) {
      auto s = clear_ball_outward(h, base.label(w), base.label(v), r);
      EXPECT_EQ(static_cast<long long>(s.length()), ((1LL << d) - 1) * r);
      EXPECT_LE(s.width(), 3u);
      auto tr = simulate(g, s);
      EXPECT_TRUE(ball(g, wi, static_cast<int>(r)).is_subset_of(tr.fc.back()));
      EXPECT_TRUE(is_aligned(tr, wi, vi));
    } else {
      auto s = clear_ball_inward(h, base.label(w), base.label(v), r);
      EXPECT_EQ(static_cast<long long>(s.length()), ((1LL << d) - 1) * r);
      EXPECT_LE(s.width(), 3u);
      auto tr = simulate(g, s, inward_initial_set(h, base.label(w), r));
      EXPECT_TRUE(is_successful(tr));
      EXPECT_TRUE(trimmed_inward_aligned(g, s, inward_initial_set(h, base.label(w), r), vi, wi));
    }
    ++done;
  }
}

TEST(CheckSteps, AgreesWithTheSimulator) {
  std::mt19937 rng(5);
  for (int it = 0; it < 400; ++it) {
    Graph g = fixtures::random_connected_graph(2 + static_cast<int>(rng() % 7), 0.4, rng);
    StepList steps;
    for (int t = 0, len = static_cast<int>(rng() % 12); t < len; ++t) {
      std::vector<int> st;
      for (int j = 0, k = 1 + static_cast<int>(rng() % 3); j < k; ++j)
        st.push_back(static_cast<int>(rng() % static_cast<unsigned>(g.order())));
      steps.push_back(st);
    }
    VertexSet init = fixtures::random_subset(g, rng, it % 3 == 0 ? 0.5 : 0.0);
    int a = static_cast<int>(rng() % static_cast<unsigned>(g.order()));
    int b = static_cast<int>(rng() % static_cast<unsigned>(g.order()));
    auto c = check_steps(g, steps, a, b, &init);
    auto tr = simulate(g, to_search(g, steps), init);
    EXPECT_EQ(c.successful, is_successful(tr));
    EXPECT_EQ(c.cleared, tr.fc.back());
    EXPECT_EQ(c.aligned, is_aligned(tr, a, b));
    std::size_t first = 0;
    for (std::size_t t = 1; t < tr.fc.size() && first == 0; ++t)
      if (tr.fc[t] == g.all()) first = t;
    EXPECT_EQ(c.first_full, first);
  }
}

TEST(Amalgamate, SeriesOfEdges) {
  auto x = amalgamate_series(edge_bundle("a", "c"), edge_bundle("c", "b", 2));
  expect_valid_bundle(x);
  EXPECT_EQ(x.host.base(), make_graph({{"a", "c"}, {"c", "b"}}));
  EXPECT_EQ(x.length(), 4u);
  expect_quotient_faithful(x, {part_of(x, make_graph({{"a", "c"}})), part_of(x, make_graph({{"c", "b"}}))}, 0,
                           x.length());
}

TEST(Amalgamate, SeriesOfCycles) {
  Graph g0 = make_graph({{"a", "x"}, {"x", "c"}, {"a", "c"}});
  Graph g1 = make_graph({{"c", "y"}, {"y", "b"}, {"c", "b"}, {"b", "z"}, {"z", "c"}});
  auto b0 = synthesize(g0, sp_decompose(g0, g0.index("a"), g0.index("c")));
  auto b1 = synthesize(g1, sp_decompose(g1, g1.index("c"), g1.index("b")));
  auto x = amalgamate_series(b0, b1);
  expect_valid_bundle(x);
  expect_quotient_faithful(x, {part_of(x, g0), part_of(x, g1)}, 0, x.length());
  EXPECT_THROW(amalgamate_series(b1, b0), InputError);
}

TEST(Amalgamate, BranchWithPendantCycle) {
  Graph g0 = make_graph({{"a", "m"}, {"m", "b"}});
  Graph g1 = make_graph({{"a", "x"}, {"x", "w"}, {"a", "w"}});
  auto b1 = synthesize(g1, sp_decompose(g1, g1.index("a"), g1.index("w")));
  auto x = amalgamate_branch(path_synth(), b1);
  expect_valid_bundle(x);
  EXPECT_EQ(x.segments.front().first, "Sa");
  expect_quotient_faithful(x, {part_of(x, g0), part_of(x, g1)}, 0, x.length());
  EXPECT_THROW(amalgamate_branch(path_synth(), edge_bundle("m", "q")), InputError);
}

TEST(Amalgamate, SpiderFromTwoBranches) {
  Graph ab = make_graph({{"a", "b"}});
  Graph abx = make_graph({{"a", "b"}, {"a", "x"}});
  TerminalSynth first{abx, "a", "b", [ab](const SubdivisionFloor& f) {
                        auto get = [&](const char* u, const char* v) {
                          auto it = f.find(edge_key(u, v));
                          return it == f.end() ? 0LL : it->second;
                        };
                        return amalgamate_branch(synth_of(ab, "a", "b"), edge_bundle("a", "x", get("a", "x")));
                      }};
  auto x = amalgamate_branch(first, edge_bundle("a", "y"));
  expect_valid_bundle(x);
  EXPECT_EQ(x.host.base(), make_graph({{"a", "b"}, {"a", "x"}, {"a", "y"}}));
}

TEST(Amalgamate, BranchPrimeWithPendantCycleAtB) {
  Graph g0 = make_graph({{"a", "m"}, {"m", "b"}, {"a", "b"}});
  Graph g1 = make_graph({{"c", "y"}, {"y", "b"}, {"c", "b"}});
  auto b1 = synthesize(g1, sp_decompose(g1, g1.index("c"), g1.index("b")));
  auto x = amalgamate_branch_prime(synth_of(g0, "a", "b"), b1);
  expect_valid_bundle(x);
  expect_quotient_faithful(x, {part_of(x, g0), part_of(x, g1)}, 0, x.length());
  auto tail = segment_start(x, "Sb");
  for (std::size_t t = tail; t < x.length(); ++t)
    EXPECT_NE(std::find(x.steps[t].begin(), x.steps[t].end(), x.second()), x.steps[t].end());
}

TEST(Amalgamate, BranchPrimeWithSingleEdge) {
  Graph g0 = make_graph({{"a", "b"}});
  auto x = amalgamate_branch_prime(synth_of(g0, "a", "b"), edge_bundle("c", "b"));
  expect_valid_bundle(x);
}

TEST(Amalgamate, ParallelSmallestCase) {
  Graph g0 = make_graph({{"a", "m"}, {"m", "b"}});
  auto b1 = edge_bundle("a", "c");
  // A subdivided second side, so the tail is not trimmed away.
  auto b2 = edge_bundle("d", "b", 3);
  auto x = amalgamate_parallel(path_synth(), b1, b2);
  expect_valid_bundle(x);
  std::vector<std::string> names;
  for (const auto& [n, l] : x.segments) names.push_back(n);
  EXPECT_EQ(names, (std::vector<std::string>{"Sa", "S1", "Spa", "S0", "Spb", "{d}", "S2", "Sb"}));
  auto at = segment_start(x, "{d}");
  EXPECT_EQ(x.steps[at], std::vector<int>{x.host.derived().index("d")});

  const Graph& d = x.host.derived();
  VertexSet h3 = d.empty_set();
  for (int v : x.host.edge_path("c", "d")) h3.insert(v);
  std::vector<VertexSet> parts{part_of(x, g0), part_of(x, make_graph({{"a", "c"}})),
                               part_of(x, make_graph({{"d", "b"}})), h3};
  expect_quotient_faithful(x, parts, 0, at);
  // Once {d} releases b it is recontaminated through the second side, so the tail
  // runs on G0 and that side as one part.
  VertexSet tail_part = parts[0];
  parts[2].for_each([&](int v) { tail_part.insert(v); });
  StepList prefix(x.steps.begin(), x.steps.begin() + static_cast<std::ptrdiff_t>(at));
  auto cleared = check_steps(d, prefix, -1, -1).cleared;
  expect_quotient_faithful(x, {tail_part, parts[1], h3}, at, x.length(), &cleared);
}

TEST(Amalgamate, ParallelRejectsBadMeets) {
  EXPECT_THROW(amalgamate_parallel(path_synth(), edge_bundle("a", "m"), edge_bundle("d", "b")), InputError);
  EXPECT_THROW(amalgamate_parallel(path_synth(), edge_bundle("a", "c"), edge_bundle("c", "b")), InputError);
}

TEST(SplitAtBridge, PathWithEndTerminals) {
  Graph g = gen::path(4);
  auto t = gsp_series(gsp_series(gsp_edge(g, 0, 1), gsp_edge(g, 1, 2)), gsp_edge(g, 2, 3));
  auto sp = split_at_bridge(t);
  ASSERT_TRUE(sp);
  EXPECT_EQ(g.label(sp->c), "1");
  EXPECT_EQ(g.label(sp->d), "2");
  EXPECT_TRUE(sp->left->is_leaf());
  EXPECT_TRUE(sp->right->is_leaf());
  EXPECT_FALSE(split_at_bridge(gsp_edge(g, 0, 1)));
}

TEST(SplitAtBridge, TwoCyclesJoinedByABridge) {
  Graph g = make_graph({{"a", "p"}, {"p", "c"}, {"a", "c"}, {"c", "d"}, {"d", "q"}, {"q", "b"}, {"d", "b"}});
  auto left = gsp_series(gsp_parallel(gsp_series(leaf(g, "a", "p"), leaf(g, "p", "c")), leaf(g, "a", "c")),
                         leaf(g, "c", "d"));
  auto t = gsp_series(left, gsp_parallel(gsp_series(leaf(g, "d", "q"), leaf(g, "q", "b")), leaf(g, "d", "b")));
  ASSERT_TRUE(t->bridged);
  ASSERT_TRUE(decomposes(g, t));
  auto sp = split_at_bridge(t);
  ASSERT_TRUE(sp);
  EXPECT_EQ(g.label(sp->c), "c");
  EXPECT_EQ(g.label(sp->d), "d");
  EXPECT_TRUE(sp->left->simple);
  EXPECT_TRUE(sp->right->simple);
  EXPECT_EQ(sp->left->vertices.size() + sp->right->vertices.size(), static_cast<std::size_t>(g.order()));
  Graph c = gen::cycle(4);
  EXPECT_THROW(split_at_bridge(gsp_decompose(c, 0, 2)), InputError);
}

TEST(Synthesize, SingleEdge) {
  Graph g = gen::path(2);
  auto x = synthesize(g, gsp_edge(g, 0, 1));
  EXPECT_EQ(x.steps, (StepList{{x.first(), x.second()}}));
  EXPECT_EQ(x.host.derived().order(), 2);
}

TEST(Synthesize, C5AndSmallHostsAgainstTheSolver) {
  for (const Graph& g : {gen::cycle(3), gen::cycle(4), gen::cycle(5), gen::path(5)}) {
    auto x = synthesize(g, classify_topological_3(g).tree);
    expect_valid_bundle(x);
    if (x.host.derived().order() <= 16) {
      SolverConfig cfg;
      EXPECT_TRUE(exists_successful_search(x.host.derived(), 3, cfg));
    }
  }
}

TEST(Synthesize, FloorsAreMet) {
  Graph g = make_graph({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}});
  auto c = classify_topological_3(g);
  SubdivisionFloor f{{edge_key("a", "b"), 7}, {edge_key("c", "d"), 3}};
  auto x = synthesize(g, c.tree, f);
  expect_valid_bundle(x, f);
  EXPECT_GE(x.host.count("a", "b"), 7);
  EXPECT_GE(x.host.count("c", "d"), 3);
}

TEST(Synthesize, RejectsBadInput) {
  Graph g = make_graph({{"s", "p1"}, {"p1", "pm"}, {"s", "p2"}, {"p2", "pm"}, {"pm", "p3"}, {"p3", "t"}, {"pm", "p4"},
                        {"p4", "t"}, {"s", "q1"}, {"q1", "qm"}, {"s", "q2"}, {"q2", "qm"}, {"qm", "q3"}, {"q3", "t"},
                        {"qm", "q4"}, {"q4", "t"}});
  auto leaf = [&](const char* u, const char* v) { return gsp_edge(g, g.index(u), g.index(v)); };
  auto cyc = [&](const char* s, const char* x, const char* m, const char* y) {
    return gsp_parallel(gsp_series(leaf(s, x), leaf(x, m)), gsp_series(leaf(s, y), leaf(y, m)));
  };
  auto bp = [&](const char* tag) {
    std::string t(tag);
    auto n = [&](const char* suffix) { return t + suffix; };
    return gsp_series(cyc("s", n("1").c_str(), n("m").c_str(), n("2").c_str()),
                      cyc(n("m").c_str(), n("3").c_str(), "t", n("4").c_str()));
  };
  auto complex = gsp_parallel(bp("p"), bp("q"));
  ASSERT_FALSE(complex->simple);
  EXPECT_THROW(synthesize(g, complex), InputError);
  Graph other = gen::cycle(4);
  EXPECT_THROW(synthesize(other, classify_topological_3(gen::cycle(5)).tree), InputError);
  EXPECT_THROW(synthesize(gen::path(2), nullptr), InputError);
}

TEST(Synthesize, AllYesGraphsUpToSixVertices) {
  int count = 0;
  for (int n = 2; n <= 6; ++n)
    for (const Graph& g : fixtures::connected_graphs(n)) {
      auto c = classify_topological_3(g);
      if (!c.yes) continue;
      auto x = synthesize(g, c.tree);
      EXPECT_EQ(x.host.base(), g);
      expect_valid_bundle(x);
      ++count;
    }
  EXPECT_EQ(count, 79);
}

TEST(Synthesize, TreesAndCycles) {
  for (int n = 2; n <= 7; ++n)
    for (const Graph& t : fixtures::trees(n)) expect_valid_bundle(synthesize(t, classify_topological_3(t).tree));
  for (int n = 3; n <= 8; ++n) {
    Graph c = gen::cycle(n);
    expect_valid_bundle(synthesize(c, classify_topological_3(c).tree));
  }
}

TEST(GridSearch, SmallGrids) {
  auto s22 = grid_search(2, 2);
  EXPECT_EQ(s22.length(), 2u);
  EXPECT_TRUE(is_successful(simulate(gen::grid(2, 2), s22)));
  for (auto [n, m] : std::vector<std::pair<int, int>>{{3, 4}, {4, 3}, {2, 5}, {4, 4}}) {
    auto s = grid_search(n, m);
    EXPECT_EQ(static_cast<int>(s.width()), std::min(n, m) + 1);
    EXPECT_EQ(static_cast<int>(s.length()), std::min(n, m) * (std::max(n, m) - 1));
    EXPECT_TRUE(is_successful(simulate(gen::grid(n, m), s))) << n << "x" << m;
  }
  EXPECT_FALSE(exists_successful_search(gen::grid(3, 3), 3));
  EXPECT_THROW(grid_search(1, 4), InputError);
}

TEST(Quotient, ModelShape) {
  Graph g = make_graph({{"a", "c"}, {"c", "b"}});
  VertexSet left = g.set_of({"a", "c"}), right = g.set_of({"c", "b"});
  auto m = quotient_model(g, {left, right});
  EXPECT_EQ(m.disjoint.order(), 4);
  EXPECT_EQ(m.relation.class_count(), 3);
  EXPECT_EQ(m.copies[static_cast<std::size_t>(g.index("c"))].size(), 2u);
  EXPECT_THROW(quotient_model(g, {left}), InputError);
}
