#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"

namespace insp {

enum class Family { F1, F2, F3 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
  }
  return "?";
}

inline Family family_from_name(const std::string& s) {
  if (s == "F1") return Family::F1;
  if (s == "F2") return Family::F2;
  if (s == "F3") return Family::F3;
  throw InputError("unknown forbidden family '" + s + "'");
}

using LabelPath = std::vector<std::string>;

// Two edge-disjoint paths with common ends whose shared vertices appear in the same order.
struct BipathWitness {
  LabelPath p1, p2;
};

// A member of one of the forbidden families embedded in some graph.
//   F1: anchors = the four branch vertices; paths = the six branch paths, for the
//       pairs (0,1) (0,2) (0,3) (1,2) (1,3) (2,3) of anchors.
//   F2: anchors = the two common endpoints; bipaths = three bipaths.
//   F3: anchors = v1 v2 v3 v4; bipaths = Ba Bb (ends v1 v2) and Bc Bd (ends v3 v4);
//       paths = P1 (v1 to v3) and P2 (v2 to v4). `degenerate` marks the variant
//       with v2 = v4, where P2 is the single vertex v2.
struct ForbiddenWitness {
  Family family = Family::F1;
  bool degenerate = false;
  std::vector<std::string> anchors;
  std::vector<LabelPath> paths;
  std::vector<BipathWitness> bipaths;

  std::vector<std::pair<std::string, std::string>> edges() const {
    std::set<std::pair<std::string, std::string>> out;
    auto add = [&](const LabelPath& p) {
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        auto a = p[i], b = p[i + 1];
        if (natural_compare(a, b) > 0) std::swap(a, b);
        out.emplace(a, b);
      }
    };
    for (const auto& p : paths) add(p);
    for (const auto& b : bipaths) {
      add(b.p1);
      add(b.p2);
    }
    return {out.begin(), out.end()};
  }

  Graph subgraph() const {
    GraphBuilder b;
    for (const auto& a : anchors) b.add_vertex(a);
    for (const auto& [u, v] : edges()) b.add_edge(u, v);
    return b.build();
  }
};

namespace detail {

inline bool simple_path(const LabelPath& p) {
  if (p.empty()) return false;
  std::set<std::string> seen(p.begin(), p.end());
  return seen.size() == p.size();
}

inline std::set<std::string> vertex_set(const LabelPath& p) { return {p.begin(), p.end()}; }

inline std::set<std::string> vertex_set(const BipathWitness& b) {
  auto s = vertex_set(b.p1);
  s.insert(b.p2.begin(), b.p2.end());
  return s;
}

inline std::set<std::pair<std::string, std::string>> edge_set(const LabelPath& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out.insert(std::minmax(p[i], p[i + 1]));
  return out;
}

template <class A, class B>
std::set<std::string> meet(const A& x, const B& y) {
  std::set<std::string> out;
  for (const auto& v : x)
    if (y.count(v)) out.insert(v);
  return out;
}

inline bool ends_are(const BipathWitness& b, const std::string& s, const std::string& t) {
  auto ok = [&](const LabelPath& p) {
    return p.size() >= 2 && ((p.front() == s && p.back() == t) || (p.front() == t && p.back() == s));
  };
  return ok(b.p1) && ok(b.p2);
}

}  // namespace detail

inline bool is_bipath(const BipathWitness& b) {
  using namespace detail;
  if (!simple_path(b.p1) || !simple_path(b.p2) || b.p1.size() < 2 || b.p2.size() < 2) return false;
  LabelPath q = b.p2;
  if (q.front() != b.p1.front()) std::reverse(q.begin(), q.end());
  if (q.front() != b.p1.front() || q.back() != b.p1.back()) return false;
  auto e1 = edge_set(b.p1), e2 = edge_set(q);
  for (const auto& e : e1)
    if (e2.count(e)) return false;
  auto shared = meet(vertex_set(b.p1), vertex_set(q));
  if (shared.size() < 3) return false;
  LabelPath o1, o2;
  for (const auto& v : b.p1)
    if (shared.count(v)) o1.push_back(v);
  for (const auto& v : q)
    if (shared.count(v)) o2.push_back(v);
  return o1 == o2;
}

// Structural validation of a witness; with a host, also that it is a subgraph.
inline bool pattern_check(const ForbiddenWitness& w, const Graph* host = nullptr) {
  using namespace detail;
  if (host) {
    for (const auto& [u, v] : w.edges())
      if (!host->adjacent(u, v)) return false;
  }
  auto all_distinct = [](std::vector<std::string> xs) {
    std::sort(xs.begin(), xs.end());
    return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
  };
  switch (w.family) {
    case Family::F1: {
      if (w.degenerate || w.anchors.size() != 4 || w.paths.size() != 6 || !w.bipaths.empty()) return false;
      if (!all_distinct(w.anchors)) return false;
      static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
      std::set<std::string> anchors(w.anchors.begin(), w.anchors.end()), used;
      for (int i = 0; i < 6; ++i) {
        const auto& p = w.paths[static_cast<std::size_t>(i)];
        if (!simple_path(p) || p.size() < 2) return false;
        const auto &x = w.anchors[static_cast<std::size_t>(pairs[i][0])], &y = w.anchors[static_cast<std::size_t>(pairs[i][1])];
        if (!((p.front() == x && p.back() == y) || (p.front() == y && p.back() == x))) return false;
        for (std::size_t j = 1; j + 1 < p.size(); ++j) {
          if (anchors.count(p[j]) || !used.insert(p[j]).second) return false;
        }
      }
      return true;
    }
    case Family::F2: {
      if (w.degenerate || w.anchors.size() != 2 || w.bipaths.size() != 3 || !w.paths.empty()) return false;
      const auto &s = w.anchors[0], &t = w.anchors[1];
      if (s == t) return false;
      std::set<std::string> ends{s, t};
      for (const auto& b : w.bipaths)
        if (!is_bipath(b) || !ends_are(b, s, t)) return false;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (meet(vertex_set(w.bipaths[static_cast<std::size_t>(i)]), vertex_set(w.bipaths[static_cast<std::size_t>(j)])) != ends)
            return false;
      return true;
    }
    case Family::F3: {
      if (w.anchors.size() != 4 || w.bipaths.size() != 4 || w.paths.size() != 2) return false;
      const auto &v1 = w.anchors[0], &v2 = w.anchors[1], &v3 = w.anchors[2], &v4 = w.anchors[3];
      if (w.degenerate) {
        if (v2 != v4 || !all_distinct({v1, v2, v3})) return false;
      } else if (!all_distinct(w.anchors)) {
        return false;
      }
      const auto &ba = w.bipaths[0], &bb = w.bipaths[1], &bc = w.bipaths[2], &bd = w.bipaths[3];
      for (const auto& b : w.bipaths)
        if (!is_bipath(b)) return false;
      if (!ends_are(ba, v1, v2) || !ends_are(bb, v1, v2) || !ends_are(bc, v3, v4) || !ends_are(bd, v3, v4)) return false;
      if (meet(vertex_set(ba), vertex_set(bb)) != std::set<std::string>{v1, v2}) return false;
      if (meet(vertex_set(bc), vertex_set(bd)) != std::set<std::string>{v3, v4}) return false;
      auto left = vertex_set(ba), right = vertex_set(bc);
      auto more = vertex_set(bb);
      left.insert(more.begin(), more.end());
      more = vertex_set(bd);
      right.insert(more.begin(), more.end());
      auto cross = meet(left, right);
      if (w.degenerate ? cross != std::set<std::string>{v2} : !cross.empty()) return false;
      auto all = left;
      all.insert(right.begin(), right.end());
      auto connector_ok = [&](const LabelPath& p, const std::string& x, const std::string& y) {
        if (!simple_path(p)) return false;
        if (x == y) return p.size() == 1 && p.front() == x;
        if (!((p.front() == x && p.back() == y) || (p.front() == y && p.back() == x))) return false;
        return meet(vertex_set(p), all) == std::set<std::string>{x, y};
      };
      return connector_ok(w.paths[0], v1, v3) && connector_ok(w.paths[1], v2, v4);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Brute-force oracle. Independent of the decomposition machinery: K4 detection by
// series-parallel reduction, everything else by exhaustive search.

namespace detail {

// Whether the graph on `edges` has a K4 minor (equivalently a K4 subdivision):
// strip vertices of degree <= 1 and suppress degree-2 vertices until stuck.
inline bool has_k4_minor(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].insert(v);
    adj[static_cast<std::size_t>(v)].insert(u);
  }
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  int remaining = n;
  bool progress = true;
  while (progress && remaining > 0) {
    progress = false;
    for (int v = 0; v < n; ++v) {
      auto& nv = adj[static_cast<std::size_t>(v)];
      if (!alive[static_cast<std::size_t>(v)] || nv.size() > 2) continue;
      std::vector<int> nb(nv.begin(), nv.end());
      for (int w : nb) adj[static_cast<std::size_t>(w)].erase(v);
      if (nb.size() == 2) {
        adj[static_cast<std::size_t>(nb[0])].insert(nb[1]);
        adj[static_cast<std::size_t>(nb[1])].insert(nb[0]);
      }
      nv.clear();
      alive[static_cast<std::size_t>(v)] = false;
      --remaining;
      progress = true;
    }
  }
  return remaining > 0;
}

inline LabelPath labels(const Graph& g, const Path& p) {
  LabelPath out;
  for (int v : p) out.push_back(g.label(v));
  return out;
}

// Read the branch vertices and branch paths off an edge-minimal K4 subgraph.
inline ForbiddenWitness k4_from_minimal(const Graph& g, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.order()));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> branch;
  for (int v = 0; v < g.order(); ++v)
    if (adj[static_cast<std::size_t>(v)].size() == 3) branch.push_back(v);
  if (branch.size() != 4) throw std::logic_error("edge-minimal K4 subgraph is not a subdivision");
  ForbiddenWitness w;
  w.family = Family::F1;
  for (int v : branch) w.anchors.push_back(g.label(v));
  std::map<std::pair<int, int>, Path> found;
  for (int s : branch)
    for (int first : adj[static_cast<std::size_t>(s)]) {
      Path p{s, first};
      while (adj[static_cast<std::size_t>(p.back())].size() == 2) {
        const auto& nb = adj[static_cast<std::size_t>(p.back())];
        p.push_back(nb[0] == p[p.size() - 2] ? nb[1] : nb[0]);
      }
      if (s < p.back()) found[{s, p.back()}] = p;
    }
  static const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (auto& pr : pairs) {
    auto it = found.find({branch[static_cast<std::size_t>(pr[0])], branch[static_cast<std::size_t>(pr[1])]});
    if (it == found.end()) throw std::logic_error("K4 subdivision misses a branch path");
    w.paths.push_back(labels(g, it->second));
  }
  return w;
}

struct Bipath {
  Path p1, p2;
  VertexSet vertices;
};

// Exhaustive enumeration of bipaths from s to t whose vertices lie in `allowed`.
// `f` returns true to stop; `steps` counts recursion work against the budget.
class BipathSearch {
 public:
  BipathSearch(const Graph& g, std::size_t& steps, std::size_t budget) : g_(g), steps_(steps), budget_(budget) {}

  template <class F>
  bool run(int s, int t, const VertexSet& allowed, F&& f) {
    if (!allowed.contains(s) || !allowed.contains(t) || s == t) return false;
    s_ = s;
    t_ = t;
    allowed_ = allowed;
    used_ = g_.empty_set();
    used_.insert(s);
    Bipath cur{{s}, {s}, used_};
    return link(s, 0, cur, f);
  }

 private:
  void tick() {
    if (++steps_ > budget_) throw ResourceError("forbidden-pattern search exceeded its step budget");
  }

  // All simple paths extending p through unblocked vertices; the callback sees each
  // one. Paths are not extended past t or `halt`.
  template <class F>
  bool paths_from(Path& p, const VertexSet& blocked, int halt, F&& f) {
    tick();
    if (p.size() >= 2 && f(p)) return true;
    int x = p.back();
    if (p.size() >= 2 && (x == t_ || x == halt)) return false;
    for (int y : g_.neighbors(x)) {
      if (!allowed_.contains(y) || blocked.contains(y)) continue;
      if (std::find(p.begin(), p.end(), y) != p.end()) continue;
      p.push_back(y);
      if (paths_from(p, blocked, halt, f)) return true;
      p.pop_back();
    }
    return false;
  }

  template <class F>
  bool link(int p, int links, Bipath& cur, F&& f) {
    // First primary path from p to some q.
    Path a{p};
    VertexSet blocked = used_;
    blocked.erase(p);
    return paths_from(a, blocked, -1, [&](const Path& pa) {
      int q = pa.back();
      if (q == s_) return false;
      // Second primary path from p to q, internally disjoint from the first.
      VertexSet block2 = used_;
      block2.erase(p);
      for (std::size_t i = 1; i + 1 < pa.size(); ++i) block2.insert(pa[i]);
      Path b{p};
      return paths_from(b, block2, q, [&](const Path& pb) {
        if (pb.back() != q) return false;
        if (pa.size() == 2 && pb.size() == 2) return false;  // same edge twice
        if (pb < pa) return false;                           // each unordered pair once
        Bipath next = cur;
        next.p1.insert(next.p1.end(), pa.begin() + 1, pa.end());
        next.p2.insert(next.p2.end(), pb.begin() + 1, pb.end());
        for (int v : pa) next.vertices.insert(v);
        for (int v : pb) next.vertices.insert(v);
        if (q == t_) return links >= 1 && f(next);
        VertexSet saved = used_;
        used_ = next.vertices;
        bool stop = link(q, links + 1, next, f);
        used_ = saved;
        return stop;
      });
    });
  }

  const Graph& g_;
  std::size_t& steps_;
  std::size_t budget_;
  int s_ = -1, t_ = -1;
  VertexSet allowed_, used_;
};

inline BipathWitness bipath_labels(const Graph& g, const Bipath& b) { return {labels(g, b.p1), labels(g, b.p2)}; }

// `count` bipaths from s to t, pairwise meeting only in {s, t}.
inline bool disjoint_bipaths(const Graph& g, int s, int t, int count, const VertexSet& allowed,
                             std::vector<Bipath>& acc, std::size_t& steps, std::size_t budget,
                             const std::function<bool(const std::vector<Bipath>&)>& done) {
  if (static_cast<int>(acc.size()) == count) return done(acc);
  BipathSearch bs(g, steps, budget);
  return bs.run(s, t, allowed, [&](const Bipath& b) {
    if (!acc.empty() && b.p1 < acc.back().p1) return false;  // canonical order
    VertexSet rest = allowed - b.vertices;
    rest.insert(s);
    rest.insert(t);
    acc.push_back(b);
    bool stop = disjoint_bipaths(g, s, t, count, rest, acc, steps, budget, done);
    acc.pop_back();
    return stop;
  });
}

}  // namespace detail

// Per block: reduce by deleting degree <= 1 vertices and suppressing degree-2 ones.
// A block that does not vanish contains a K4 subdivision, found by deleting edges
// greedily while the reduction still gets stuck.
inline std::optional<ForbiddenWitness> has_k4_subdivision(const Graph& g) {
  auto bd = blocks(g);
  for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
    if (bd.blocks[i].size() < 4) continue;
    auto edges = bd.edges[i];
    if (!detail::has_k4_minor(g.order(), edges)) continue;
    for (std::size_t j = edges.size(); j-- > 0;) {
      auto trial = edges;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(j));
      if (detail::has_k4_minor(g.order(), trial)) edges = std::move(trial);
    }
    return detail::k4_from_minimal(g, edges);
  }
  return std::nullopt;
}

struct BruteForceConfig {
  int max_vertices = 12;
  std::size_t step_budget = 200'000'000;
};

// Exhaustive search for a member of F1, F2 or F3 (including the degenerate F3
// variant) as a subgraph. Returns the first found in that order.
inline std::optional<ForbiddenWitness> brute_force_forbidden(const Graph& g, const BruteForceConfig& cfg = {}) {
  using namespace detail;
  if (g.order() > cfg.max_vertices)
    throw ResourceError("brute-force forbidden search limited to " + std::to_string(cfg.max_vertices) + " vertices");
  if (auto w = has_k4_subdivision(g)) return w;
  std::size_t steps = 0;
  const int n = g.order();

  // F2: three bipaths with common ends.
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (g.degree(s) < 6 || g.degree(t) < 6) continue;
      std::vector<Bipath> acc;
      std::optional<ForbiddenWitness> out;
      disjoint_bipaths(g, s, t, 3, g.all(), acc, steps, cfg.step_budget, [&](const std::vector<Bipath>& bs) {
        ForbiddenWitness w;
        w.family = Family::F2;
        w.anchors = {g.label(s), g.label(t)};
        for (const auto& b : bs) w.bipaths.push_back(bipath_labels(g, b));
        out = w;
        return true;
      });
      if (out) return out;
    }

  // F3: collect every pair of bipaths with common ends, then look for two such
  // pairs joined by connectors.
  struct Double {
    int x, y;
    Bipath b1, b2;
    VertexSet vertices;
  };
  std::vector<Double> doubles;
  std::set<std::pair<std::pair<int, int>, std::vector<int>>> seen;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (g.degree(x) < 4 || g.degree(y) < 4) continue;
      std::vector<Bipath> acc;
      disjoint_bipaths(g, x, y, 2, g.all(), acc, steps, cfg.step_budget, [&](const std::vector<Bipath>& bs) {
        VertexSet vs = bs[0].vertices | bs[1].vertices;
        if (seen.insert({{x, y}, vs.members()}).second) doubles.push_back({x, y, bs[0], bs[1], vs});
        return false;
      });
    }
  auto make = [&](const Double& d, const Double& e, int v1, int v2, int v3, int v4, const Path& p1, const Path& p2,
                  bool degenerate) {
    ForbiddenWitness w;
    w.family = Family::F3;
    w.degenerate = degenerate;
    w.anchors = {g.label(v1), g.label(v2), g.label(v3), g.label(v4)};
    w.bipaths = {bipath_labels(g, d.b1), bipath_labels(g, d.b2), bipath_labels(g, e.b1), bipath_labels(g, e.b2)};
    w.paths = {labels(g, p1), labels(g, p2)};
    return w;
  };
  auto connector = [&](const VertexSet& avoid, int u, int v) {
    VertexSet allowed = g.all() - avoid;
    allowed.insert(u);
    allowed.insert(v);
    return shortest_path(g, u, v, allowed);
  };
  std::optional<ForbiddenWitness> degenerate;
  for (std::size_t i = 0; i < doubles.size(); ++i)
    for (std::size_t j = i + 1; j < doubles.size(); ++j) {
      const auto &d = doubles[i], &e = doubles[j];
      VertexSet both = d.vertices & e.vertices;
      VertexSet avoid = d.vertices | e.vertices;
      if (both.empty()) {
        for (int flip = 0; flip < 2; ++flip) {
          int v3 = flip ? e.y : e.x, v4 = flip ? e.x : e.y;
          auto p1 = connector(avoid, d.x, v3);
          auto p2 = connector(avoid, d.y, v4);
          if (p1 && p2) return make(d, e, d.x, d.y, v3, v4, *p1, *p2, false);
        }
      } else if (!degenerate && both.size() == 1) {
        int c = both.members().front();
        if ((c != d.x && c != d.y) || (c != e.x && c != e.y)) continue;
        int v1 = c == d.x ? d.y : d.x, v3 = c == e.x ? e.y : e.x;
        if (auto p1 = connector(avoid, v1, v3)) degenerate = make(d, e, v1, c, v3, c, *p1, Path{c}, true);
      }
    }
  return degenerate;
}

}  // namespace insp
