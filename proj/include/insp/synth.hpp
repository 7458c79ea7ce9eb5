#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "game.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "gsp_tree.hpp"
#include "subdivision.hpp"

namespace insp {

// Minimum subdivision count per base edge.
using SubdivisionFloor = EdgeCounts;

// Searches as index lists; hosts here are long paths where bitset steps would be
// quadratic.
using StepList = std::vector<std::vector<int>>;

struct SynthConfig {
  std::size_t max_host_vertices = 4'000'000;
};

struct StepCheck {
  bool successful = false;
  bool aligned = false;
  std::size_t width = 0;
  std::size_t length = 0;
  std::size_t first_full = 0;  // first step after which everything is cleared, 0 if none
  VertexSet cleared;           // FC after the last step
};

// Simulates a search step by step, touching only the cleared region's frontier.
// Alignment is checked for (a, b); pass -1 to skip either side.
inline StepCheck check_steps(const Graph& g, const StepList& steps, int a, int b,
                             const VertexSet* initial = nullptr) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  std::vector<char> fc(n, 0), in_step(n, 0), front(n, 0), listed(n, 0);
  std::vector<int> frontier;
  std::size_t cleared = 0;
  if (initial) {
    if (initial->universe() != n) throw InputError("initial set does not belong to this graph");
    initial->for_each([&](int v) {
      fc[static_cast<std::size_t>(v)] = 1;
      ++cleared;
    });
  }
  auto is_front = [&](int v) {
    if (!fc[static_cast<std::size_t>(v)]) return false;
    for (int w : g.neighbors(v))
      if (!fc[static_cast<std::size_t>(w)]) return true;
    return false;
  };
  auto refresh = [&](int v) {
    front[static_cast<std::size_t>(v)] = is_front(v);
    if (front[static_cast<std::size_t>(v)] && !listed[static_cast<std::size_t>(v)]) {
      listed[static_cast<std::size_t>(v)] = 1;
      frontier.push_back(v);
    }
  };
  for (int v = 0; v < g.order(); ++v) refresh(v);

  StepCheck r;
  r.length = steps.size();
  r.aligned = true;
  auto pre = [&](int v) { return fc[static_cast<std::size_t>(v)] || in_step[static_cast<std::size_t>(v)]; };
  if (b >= 0 && !steps.empty() && fc[static_cast<std::size_t>(b)]) r.aligned = false;
  std::vector<int> losers, gainers, keep;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    std::vector<int> s = steps[t];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    r.width = std::max(r.width, s.size());
    for (int v : s) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("search step names a vertex outside the graph");
      in_step[static_cast<std::size_t>(v)] = 1;
    }
    if (a >= 0 && !pre(a)) r.aligned = false;
    losers.clear();
    gainers.clear();
    keep.clear();
    for (int v : frontier) {
      if (!front[static_cast<std::size_t>(v)]) {
        listed[static_cast<std::size_t>(v)] = 0;
        continue;
      }
      keep.push_back(v);
      for (int w : g.neighbors(v))
        if (!pre(w)) {
          losers.push_back(v);
          break;
        }
    }
    frontier.swap(keep);
    for (int v : s) {
      if (fc[static_cast<std::size_t>(v)]) continue;
      bool all = true;
      for (int w : g.neighbors(v)) all = all && pre(w);
      if (all) gainers.push_back(v);
    }
    for (int v : s) in_step[static_cast<std::size_t>(v)] = 0;
    for (int v : losers) fc[static_cast<std::size_t>(v)] = 0;
    for (int v : gainers) fc[static_cast<std::size_t>(v)] = 1;
    cleared = cleared + gainers.size() - losers.size();
    for (const auto* list : {&losers, &gainers})
      for (int v : *list) {
        refresh(v);
        for (int w : g.neighbors(v)) refresh(w);
      }
    if (cleared == n && r.first_full == 0) r.first_full = t + 1;
    if (b >= 0 && t + 1 < steps.size() && fc[static_cast<std::size_t>(b)]) r.aligned = false;
  }
  r.successful = cleared == n;
  r.cleared = g.empty_set();
  for (std::size_t v = 0; v < n; ++v)
    if (fc[v]) r.cleared.insert(static_cast<int>(v));
  return r;
}

inline Search to_search(const Graph& g, const StepList& steps, int k = 3) {
  Search s;
  s.k = k;
  s.steps.reserve(steps.size());
  for (const auto& st : steps) {
    VertexSet x = g.empty_set();
    for (int v : st) x.insert(v);
    s.steps.push_back(std::move(x));
  }
  return s;
}

inline StepList to_steps(const Search& s) {
  StepList out;
  for (const auto& st : s.steps) out.push_back(st.members());
  return out;
}

// A successful 3-search on a subdivision, aligned to base terminals (a, b).
struct AlignedSearchBundle {
  SubdividedGraph host;
  StepList steps;
  std::string a, b;
  // Consecutive named pieces of the search, for inspection.
  std::vector<std::pair<std::string, std::size_t>> segments;
  // Base edges that took the sum of two floors (an a-b edge of G0 in a parallel
  // step), and input edges subdivided twice ahead of bridge splitting.
  std::size_t summed_floor_edges = 0;
  std::size_t presubdivided_edges = 0;

  std::size_t length() const { return steps.size(); }
  const EdgeCounts& floors_satisfied() const { return host.counts(); }
  int first() const { return host.derived().index(a); }
  int second() const { return host.derived().index(b); }

  Search search() const {
    double bits = static_cast<double>(steps.size()) * host.derived().order();
    if (bits > 4e9) throw ResourceError("search too large to materialize as vertex sets");
    return to_search(host.derived(), steps);
  }

  std::vector<std::vector<std::string>> step_labels() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& st : steps) {
      std::vector<std::string> l;
      for (int v : st) l.push_back(host.derived().label(v));
      out.push_back(std::move(l));
    }
    return out;
  }
};

inline StepCheck check_bundle(const AlignedSearchBundle& x) {
  return check_steps(x.host.derived(), x.steps, x.first(), x.second());
}

inline bool floors_met(const SubdividedGraph& h, const SubdivisionFloor& floors) {
  for (const auto& [e, f] : floors) {
    auto it = h.counts().find(e);
    if (it != h.counts().end() && it->second < f) return false;
  }
  return true;
}

namespace detail {

// Drops the steps after the host is first fully cleared. A construction that clears
// more than its analysis assumes can otherwise clear b before its last step.
inline void trim(AlignedSearchBundle& x) {
  StepCheck c = check_steps(x.host.derived(), x.steps, -1, -1);
  if (c.first_full == 0 || c.first_full == x.steps.size()) return;
  std::size_t cut = x.steps.size() - c.first_full;
  x.steps.resize(c.first_full);
  while (cut > 0 && !x.segments.empty()) {
    auto& last = x.segments.back();
    std::size_t take = std::min(cut, last.second);
    last.second -= take;
    cut -= take;
    if (last.second == 0) x.segments.pop_back();
  }
}

// Every construction is checked before it is handed on; a failure here is a bug.
inline void verify(const AlignedSearchBundle& x, const char* what, const SubdivisionFloor& floors = {}) {
  StepCheck c = check_bundle(x);
  std::string why;
  if (!c.successful) why = "not successful";
  else if (!c.aligned) why = "not aligned";
  else if (c.width > 3) why = "a step has more than 3 vertices";
  else if (!floors_met(x.host, floors)) why = "subdivision floors not met";
  if (!why.empty()) throw std::logic_error(std::string(what) + " produced a search that is " + why);
}

inline long long checked_mul(long long x, long long y) {
  if (x != 0 && y > (1LL << 50) / x) throw ResourceError("subdivision floor overflow");
  return x * y;
}

inline long long pow2(int e) {
  if (e > 50) throw ResourceError("subdivision floor overflow");
  return 1LL << e;
}

// Paths replacing the base edges at w, in neighbour label order, each from w.
inline std::vector<std::vector<int>> arms(const SubdividedGraph& h, const std::string& w) {
  const Graph& base = h.base();
  std::vector<std::vector<int>> out;
  for (int x : base.neighbors(base.index(w))) out.push_back(h.edge_path(w, base.label(x)));
  return out;
}

inline long long outward_floor(int d, long long r) { return checked_mul(pow2(d - 1), r) + 1; }
inline long long inward_floor(int d, long long r) { return checked_mul(pow2(d - 1), r); }

inline void check_floor(const SubdividedGraph& h, const std::string& w, const std::vector<int>& arm, long long need) {
  long long have = static_cast<long long>(arm.size()) - 2;
  if (have < need)
    throw InputError("edge " + w + "-" + h.derived().label(arm.back()) + " is subdivided " + std::to_string(have) +
                     " times, below the floor " + std::to_string(need));
}

inline StepList outward_steps(const SubdividedGraph& h, const std::string& w, long long r) {
  if (r <= 0) return {};
  auto ar = arms(h, w);
  int d = static_cast<int>(ar.size());
  if (d == 0) throw InputError("ball clearing at an isolated vertex " + w);
  long long need = outward_floor(d, r);
  for (const auto& p : ar) check_floor(h, w, p, need);
  int wi = h.derived().index(w);
  StepList out;
  for (int i = 0; i < d; ++i) {
    long long len = checked_mul(pow2(d - 1 - i), r);
    const auto& p = ar[static_cast<std::size_t>(i)];
    for (long long t = 1; t <= len; ++t)
      out.push_back({wi, p[static_cast<std::size_t>(t)], p[static_cast<std::size_t>(t + 1)]});
  }
  return out;
}

inline StepList inward_steps(const SubdividedGraph& h, const std::string& v, long long r) {
  if (r <= 0) return {};
  auto ar = arms(h, v);
  int d = static_cast<int>(ar.size());
  if (d == 0) throw InputError("ball clearing at an isolated vertex " + v);
  long long need = inward_floor(d, r);
  for (const auto& p : ar) check_floor(h, v, p, need);
  int vi = h.derived().index(v);
  StepList out;
  for (int i = 0; i < d; ++i) {
    long long reach = checked_mul(pow2(i), r);
    const auto& p = ar[static_cast<std::size_t>(i)];
    for (long long t = 1; t <= reach; ++t) {
      std::vector<int> s{vi, p[static_cast<std::size_t>(reach - t)], p[static_cast<std::size_t>(reach - t + 1)]};
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace detail

// Sweeps outward along each path at w (as a base vertex of degree d), path i for
// 2^(d-i) r steps, so that afterwards the r-ball around w is fully cleared. Length
// (2^d - 1) r, w in every step, aligned to (w, v).
inline Search clear_ball_outward(const SubdividedGraph& h, const std::string& w, const std::string& v, long long r) {
  if (w == v) throw InputError("ball clearing needs two distinct vertices");
  h.derived().index(v);
  if (r < 0) throw InputError("negative radius");
  return to_search(h.derived(), detail::outward_steps(h, w, r));
}

// With everything outside the r-ball around v already cleared, sweeps inward along
// each path at v, path i from distance 2^(i-1) r, clearing the whole host.
inline Search clear_ball_inward(const SubdividedGraph& h, const std::string& v, const std::string& w, long long r) {
  if (w == v) throw InputError("ball clearing needs two distinct vertices");
  h.derived().index(w);
  if (r < 0) throw InputError("negative radius");
  return to_search(h.derived(), detail::inward_steps(h, v, r));
}

// V(H) minus the r-ball around v: the initial set for clear_ball_inward.
inline VertexSet inward_initial_set(const SubdividedGraph& h, const std::string& v, long long r) {
  const Graph& g = h.derived();
  auto dist = bfs_distances(g, g.index(v));
  VertexSet out = g.empty_set();
  for (int x = 0; x < g.order(); ++x)
    if (dist[static_cast<std::size_t>(x)] < 0 || dist[static_cast<std::size_t>(x)] > r) out.insert(x);
  return out;
}

// The edge uv subdivided `count` times, swept from u to v two vertices at a time.
inline AlignedSearchBundle edge_bundle(const std::string& u, const std::string& v, long long count = 0) {
  AlignedSearchBundle x;
  x.host = subdivide(make_graph({{u, v}}), {{edge_key(u, v), count}});
  auto p = x.host.edge_path(u, v);
  for (std::size_t i = 0; i + 1 < p.size(); ++i) x.steps.push_back({p[i], p[i + 1]});
  x.a = u;
  x.b = v;
  x.segments = {{"sweep", x.steps.size()}};
  detail::verify(x, "edge sweep");
  return x;
}

// A recursive synthesizer for (base, a, b): given extra floors, returns a bundle on
// a subdivision of base meeting them.
struct TerminalSynth {
  Graph base;
  std::string a, b;
  std::function<AlignedSearchBundle(const SubdivisionFloor&)> run;
};

namespace detail {

inline std::vector<std::string> common_labels(const Graph& x, const Graph& y) {
  std::vector<std::string> out;
  for (const auto& l : x.labels())
    if (y.has_vertex(l)) out.push_back(l);
  return out;
}

inline void require_meet(const Graph& x, const Graph& y, std::vector<std::string> expect, const char* what) {
  auto got = common_labels(x, y);
  std::sort(expect.begin(), expect.end());
  std::sort(got.begin(), got.end());
  if (got != expect) {
    std::string e;
    for (const auto& l : expect) e += " " + l;
    throw InputError(std::string(what) + ": operands must share exactly {" + e + " }");
  }
}

struct ExtraEdge {
  std::string u, v;
  long long count;
};

inline SubdividedGraph unite(const std::vector<const SubdividedGraph*>& parts, const std::vector<ExtraEdge>& extra,
                             const SynthConfig& cfg) {
  GraphBuilder gb;
  EdgeCounts counts;
  std::size_t total = 0;
  for (const auto* p : parts) {
    for (const auto& l : p->base().labels()) gb.add_vertex(l);
    for (const auto& [u, v] : p->base().edge_labels()) gb.add_edge(u, v);
    for (const auto& [e, c] : p->counts()) {
      if (!counts.emplace(e, c).second) throw InputError("operands share the edge " + e.first + "-" + e.second);
      total += static_cast<std::size_t>(c);
    }
    total += static_cast<std::size_t>(p->base().order());
  }
  for (const auto& x : extra) {
    gb.add_edge(x.u, x.v);
    if (!counts.emplace(edge_key(x.u, x.v), x.count).second)
      throw InputError("connector duplicates the edge " + x.u + "-" + x.v);
    total += static_cast<std::size_t>(x.count);
  }
  if (total > cfg.max_host_vertices)
    throw ResourceError("synthesized host would exceed " + std::to_string(cfg.max_host_vertices) + " vertices");
  return subdivide(gb.build(), counts);
}

inline std::vector<int> index_map(const Graph& from, const Graph& to) {
  std::vector<int> m(static_cast<std::size_t>(from.order()));
  for (int v = 0; v < from.order(); ++v) m[static_cast<std::size_t>(v)] = to.index(from.label(v));
  return m;
}

inline void append(StepList& out, const StepList& s, const std::vector<int>& m) {
  for (const auto& st : s) {
    std::vector<int> x;
    x.reserve(st.size());
    for (int v : st) x.push_back(m[static_cast<std::size_t>(v)]);
    out.push_back(std::move(x));
  }
}

// Floor `need` on every base edge at v.
inline SubdivisionFloor pin_floor(const Graph& base, const std::string& v, long long need) {
  SubdivisionFloor f;
  for (int x : base.neighbors(base.index(v))) f[edge_key(v, base.label(x))] = need;
  return f;
}

inline AlignedSearchBundle run_checked(const TerminalSynth& s, const SubdivisionFloor& f, const char* what) {
  AlignedSearchBundle x = s.run(f);
  if (x.a != s.a || x.b != s.b || !(x.host.base() == s.base))
    throw std::logic_error(std::string(what) + ": synthesizer returned a bundle for a different terminal graph");
  if (!floors_met(x.host, f)) throw std::logic_error(std::string(what) + ": synthesizer ignored the requested floors");
  return x;
}

}  // namespace detail

// (G0, a, c) then (G1, c, b): the searches run one after the other.
inline AlignedSearchBundle amalgamate_series(const AlignedSearchBundle& b0, const AlignedSearchBundle& b1,
                                             const SynthConfig& cfg = {}) {
  if (b0.b != b1.a) throw InputError("series: second bundle must start at the first bundle's end terminal");
  detail::require_meet(b0.host.base(), b1.host.base(), {b0.b}, "series");
  AlignedSearchBundle x;
  x.host = detail::unite({&b0.host, &b1.host}, {}, cfg);
  const Graph& d = x.host.derived();
  detail::append(x.steps, b0.steps, detail::index_map(b0.host.derived(), d));
  detail::append(x.steps, b1.steps, detail::index_map(b1.host.derived(), d));
  x.a = b0.a;
  x.b = b1.b;
  x.segments = {{"S0", b0.length()}, {"S1", b1.length()}};
  x.summed_floor_edges = b0.summed_floor_edges + b1.summed_floor_edges;
  detail::trim(x);
  detail::verify(x, "series amalgamation");
  return x;
}

// (G0, a, b) with (G1, a, c) hanging at a: first clear a ball around a in G0 large
// enough to outlast S1, then S1, then S0.
inline AlignedSearchBundle amalgamate_branch(const TerminalSynth& s0, const AlignedSearchBundle& b1,
                                             const SynthConfig& cfg = {}) {
  if (b1.a != s0.a) throw InputError("branch: attached bundle must start at the first terminal");
  detail::require_meet(s0.base, b1.host.base(), {s0.a}, "branch");
  long long r = static_cast<long long>(b1.length());
  int deg = s0.base.degree(s0.base.index(s0.a));
  auto floors = detail::pin_floor(s0.base, s0.a, detail::outward_floor(deg, r));
  AlignedSearchBundle b0 = detail::run_checked(s0, floors, "branch");
  StepList sa = detail::outward_steps(b0.host, s0.a, r);

  AlignedSearchBundle x;
  x.host = detail::unite({&b0.host, &b1.host}, {}, cfg);
  const Graph& d = x.host.derived();
  auto m0 = detail::index_map(b0.host.derived(), d);
  detail::append(x.steps, sa, m0);
  detail::append(x.steps, b1.steps, detail::index_map(b1.host.derived(), d));
  detail::append(x.steps, b0.steps, m0);
  x.a = s0.a;
  x.b = s0.b;
  x.segments = {{"Sa", sa.size()}, {"S1", b1.length()}, {"S0", b0.length()}};
  x.summed_floor_edges = b0.summed_floor_edges + b1.summed_floor_edges;
  detail::trim(x);
  detail::verify(x, "branch amalgamation", floors);
  return x;
}

// (G0, a, b) with (G1, c, b) hanging at b, b1 aligned to (c, b): S0 with b dropped
// from its last step, then S1, then an inward sweep at b over the ball S1 left behind.
inline AlignedSearchBundle amalgamate_branch_prime(const TerminalSynth& s0, const AlignedSearchBundle& b1,
                                                   const SynthConfig& cfg = {}) {
  if (b1.b != s0.b) throw InputError("branch': attached bundle must end at the second terminal");
  detail::require_meet(s0.base, b1.host.base(), {s0.b}, "branch'");
  long long r = static_cast<long long>(b1.length()) + 1;
  int deg = s0.base.degree(s0.base.index(s0.b));
  auto floors = detail::pin_floor(s0.base, s0.b, detail::inward_floor(deg, r));
  AlignedSearchBundle b0 = detail::run_checked(s0, floors, "branch'");
  StepList star = b0.steps;
  if (!star.empty()) {
    auto& last = star.back();
    last.erase(std::remove(last.begin(), last.end(), b0.second()), last.end());
  }
  StepList sb = detail::inward_steps(b0.host, s0.b, r);

  AlignedSearchBundle x;
  x.host = detail::unite({&b0.host, &b1.host}, {}, cfg);
  const Graph& d = x.host.derived();
  auto m0 = detail::index_map(b0.host.derived(), d);
  detail::append(x.steps, star, m0);
  detail::append(x.steps, b1.steps, detail::index_map(b1.host.derived(), d));
  detail::append(x.steps, sb, m0);
  x.a = s0.a;
  x.b = s0.b;
  x.segments = {{"S0*", star.size()}, {"S1", b1.length()}, {"Sb", sb.size()}};
  x.summed_floor_edges = b0.summed_floor_edges + b1.summed_floor_edges;
  detail::trim(x);
  detail::verify(x, "branch' amalgamation", floors);
  return x;
}

// (G0, a, b) in parallel with (G1, a, c) - cd - (G2, d, b). The bridge cd becomes a
// connector path H3 of length at least |S0| + 5, swept from c while a is held and
// from the far side while b is held. The first sweep runs |S0| + 3 steps: S0 erodes
// the cleared part of H3 by one vertex per step and the second sweep starts at
// distance 3 from c.
inline AlignedSearchBundle amalgamate_parallel(const TerminalSynth& s0, const AlignedSearchBundle& b1,
                                               const AlignedSearchBundle& b2, long long connector_floor = 0,
                                               const SynthConfig& cfg = {}) {
  const std::string& a = s0.a;
  const std::string& b = s0.b;
  if (b1.a != a) throw InputError("parallel: first side must start at the first terminal");
  if (b2.b != b) throw InputError("parallel: second side must end at the second terminal");
  detail::require_meet(s0.base, b1.host.base(), {a}, "parallel");
  detail::require_meet(s0.base, b2.host.base(), {b}, "parallel");
  detail::require_meet(b1.host.base(), b2.host.base(), {}, "parallel");
  const std::string& c = b1.b;
  const std::string& dd = b2.a;

  int delta = std::max(s0.base.degree(s0.base.index(a)), s0.base.degree(s0.base.index(b)));
  long long n1 = static_cast<long long>(b1.length()), n2 = static_cast<long long>(b2.length());
  auto floors = detail::pin_floor(s0.base, a, detail::outward_floor(delta, n1));
  // An a-b edge of G0 carries both sweeps, so it gets both floors.
  std::size_t summed = 0;
  for (const auto& [e, f] : detail::pin_floor(s0.base, b, detail::inward_floor(delta, n2 + 1))) {
    summed += floors.count(e);
    floors[e] += f;
  }
  AlignedSearchBundle b0 = detail::run_checked(s0, floors, "parallel");
  long long s = static_cast<long long>(b0.length());
  long long len = std::max(s + 5, connector_floor + 1);

  AlignedSearchBundle x;
  x.host = detail::unite({&b0.host, &b1.host, &b2.host}, {{c, dd, len - 1}}, cfg);
  const Graph& g = x.host.derived();
  auto m0 = detail::index_map(b0.host.derived(), g);
  auto h3 = x.host.edge_path(c, dd);
  auto at = [&](long long j) { return h3[static_cast<std::size_t>(j)]; };
  int ai = g.index(a), bi = g.index(b);

  StepList sa = detail::outward_steps(b0.host, a, n1);
  StepList sb = detail::inward_steps(b0.host, b, n2 + 1);
  std::size_t mark = 0;
  auto seg = [&](const char* name) {
    x.segments.emplace_back(name, x.steps.size() - mark);
    mark = x.steps.size();
  };
  detail::append(x.steps, sa, m0);
  seg("Sa");
  detail::append(x.steps, b1.steps, detail::index_map(b1.host.derived(), g));
  seg("S1");
  for (long long t = 1; t <= s + 3; ++t) x.steps.push_back({ai, at(t - 1), at(t)});
  seg("Spa");
  detail::append(x.steps, b0.steps, m0);
  seg("S0");
  for (long long t = 1; t + 3 <= len; ++t) x.steps.push_back({bi, at(t + 2), at(t + 3)});
  seg("Spb");
  x.steps.push_back({g.index(dd)});
  seg("{d}");
  detail::append(x.steps, b2.steps, detail::index_map(b2.host.derived(), g));
  seg("S2");
  detail::append(x.steps, sb, m0);
  seg("Sb");
  x.a = a;
  x.b = b;
  x.summed_floor_edges = b0.summed_floor_edges + b1.summed_floor_edges + b2.summed_floor_edges + summed;
  detail::trim(x);
  detail::verify(x, "parallel amalgamation", floors);
  return x;
}

// A bridged terminal graph cut at a separating bridge cd into (G1, a, c) and
// (G2, d, b), with decompositions of both sides taken from the tree.
struct BridgeSplit {
  Gsp left;  // (G1, a, c)
  int c = -1, d = -1;
  Gsp right;  // (G2, d, b)
};

namespace detail {

// Every split of k along the tree; a side is null when it is a single vertex.
inline std::vector<BridgeSplit> all_splits(const Gsp& k) {
  std::vector<BridgeSplit> out;
  if (!k->bridged) return out;
  switch (k->op) {
    case GspOp::Edge:
      out.push_back({nullptr, k->a, k->b, nullptr});
      break;
    case GspOp::Series: {
      const Gsp& k0 = k->left;
      const Gsp& k1 = k->right;
      for (auto sp : all_splits(k0)) {
        sp.right = sp.right ? gsp_series(sp.right, k1) : k1;
        out.push_back(sp);
      }
      for (auto sp : all_splits(k1)) {
        sp.left = sp.left ? gsp_series(k0, sp.left) : k0;
        out.push_back(sp);
      }
      break;
    }
    case GspOp::Branch:
      for (auto sp : all_splits(k->main()))
        if (sp.left) {
          sp.left = compose(GspOp::Branch, sp.left, k->attached());
          out.push_back(sp);
        }
      break;
    case GspOp::BranchPrime:
      for (auto sp : all_splits(k->main()))
        if (sp.right) {
          sp.right = compose(GspOp::BranchPrime, sp.right, k->attached());
          out.push_back(sp);
        }
      break;
    case GspOp::Parallel:
      break;
  }
  return out;
}

}  // namespace detail

// A split with both sides proper, or nothing when every separating bridge touches a
// terminal (subdivide first).
inline std::optional<BridgeSplit> split_at_bridge(const Gsp& k) {
  if (!k->bridged) throw InputError("split_at_bridge: no bridge separates the terminals");
  for (auto& sp : detail::all_splits(k))
    if (sp.left && sp.right) return sp;
  return std::nullopt;
}

namespace detail {

// A parallel family with branch attachments at its terminals lifted out: the
// pieces are edges and series nodes, attachments at a and b are kept apart.
struct ParallelPlan {
  std::vector<Gsp> pieces;
  std::vector<Gsp> at_a, at_b;
};

inline void gather_parallel(const Gsp& t, ParallelPlan& p) {
  switch (t->op) {
    case GspOp::Parallel:
      gather_parallel(t->left, p);
      gather_parallel(t->right, p);
      break;
    case GspOp::Branch:
      p.at_a.push_back(t->attached());
      gather_parallel(t->main(), p);
      break;
    case GspOp::BranchPrime:
      p.at_b.push_back(t->attached());
      gather_parallel(t->main(), p);
      break;
    default:
      p.pieces.push_back(t);
  }
}

// The bridged piece used as K: the first one. A simple family has at most one
// unbridged series piece, so with two or more pieces one is bridged.
inline std::size_t bridged_piece(const std::vector<Gsp>& pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i]->bridged) return i;
  throw InputError("parallel family without a bridged member; the decomposition is not simple");
}

// The parallel family rebuilt with its branch attachments on top, or t itself
// when there are none.
inline Gsp lift_attachments(const Gsp& t) {
  ParallelPlan p;
  gather_parallel(t, p);
  if (p.at_a.empty() && p.at_b.empty()) return t;
  Gsp n = fold(GspOp::Parallel, p.pieces);
  for (const auto& x : p.at_a) n = compose(GspOp::Branch, n, x);
  for (const auto& x : p.at_b) n = compose(GspOp::BranchPrime, n, x);
  return n;
}

inline Gsp rest_of(const std::vector<Gsp>& pieces, std::size_t skip) {
  std::vector<Gsp> rest;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (i != skip) rest.push_back(pieces[i]);
  return fold(GspOp::Parallel, rest);
}

// Base edges of every bridged side that cannot be split away from the terminals.
// Walks the tree exactly as Synthesizer::run does, including inversions.
inline void mark_degenerate(const Gsp& t, std::vector<std::pair<int, int>>& marks) {
  switch (t->op) {
    case GspOp::Edge:
      return;
    case GspOp::Series:
    case GspOp::Branch:
      mark_degenerate(t->left, marks);
      mark_degenerate(t->right, marks);
      return;
    case GspOp::BranchPrime:
      mark_degenerate(t->main(), marks);
      mark_degenerate(invert(t->attached()), marks);
      return;
    case GspOp::Parallel:
      break;
  }
  Gsp lifted = lift_attachments(t);
  if (lifted != t) {
    mark_degenerate(lifted, marks);
    return;
  }
  ParallelPlan p;
  gather_parallel(t, p);
  std::size_t k = bridged_piece(p.pieces);
  if (!split_at_bridge(p.pieces[k]))
    for (auto e : leaf_edges(p.pieces[k])) marks.push_back(e);
  mark_degenerate(p.pieces[k], marks);
  mark_degenerate(rest_of(p.pieces, k), marks);
}

class Synthesizer {
 public:
  Synthesizer(const Graph& host, const SynthConfig& cfg) : g_(host), cfg_(cfg) {}

  AlignedSearchBundle run(const Gsp& t, const SubdivisionFloor& floors) const {
    switch (t->op) {
      case GspOp::Edge: {
        auto it = floors.find(edge_key(g_.label(t->a), g_.label(t->b)));
        return edge_bundle(g_.label(t->a), g_.label(t->b), it == floors.end() ? 0 : it->second);
      }
      case GspOp::Series:
        return amalgamate_series(run(t->left, floors), run(t->right, floors), cfg_);
      case GspOp::Branch:
        return amalgamate_branch(sub(t->main(), floors), run(t->attached(), floors), cfg_);
      case GspOp::BranchPrime:
        return amalgamate_branch_prime(sub(t->main(), floors), run(invert(t->attached()), floors), cfg_);
      case GspOp::Parallel:
        return parallel(t, floors);
    }
    throw std::logic_error("unknown GSP operation");
  }

 private:
  TerminalSynth sub(const Gsp& t, const SubdivisionFloor& floors) const {
    TerminalSynth s;
    s.base = node_graph(g_, t);
    s.a = g_.label(t->a);
    s.b = g_.label(t->b);
    s.run = [this, t, floors](const SubdivisionFloor& extra) {
      SubdivisionFloor f = floors;
      for (const auto& [e, x] : extra) f[e] = std::max(f[e], x);
      return run(t, f);
    };
    return s;
  }

  AlignedSearchBundle parallel(const Gsp& t, const SubdivisionFloor& floors) const {
    Gsp lifted = lift_attachments(t);
    if (lifted != t) return run(lifted, floors);
    ParallelPlan p;
    gather_parallel(t, p);
    std::size_t k = bridged_piece(p.pieces);
    auto sp = split_at_bridge(p.pieces[k]);
    if (!sp) throw std::logic_error("bridged side was not pre-subdivided");
    AlignedSearchBundle b1 = run(sp->left, floors);
    AlignedSearchBundle b2 = run(sp->right, floors);
    auto it = floors.find(edge_key(g_.label(sp->c), g_.label(sp->d)));
    long long cf = it == floors.end() ? 0 : it->second;
    return amalgamate_parallel(sub(rest_of(p.pieces, k), floors), b1, b2, cf, cfg_);
  }

  const Graph& g_;
  SynthConfig cfg_;
};

}  // namespace detail

// A successful 3-search, aligned to the root terminals of t, on a subdivision of g
// meeting the floors. Bridged sides of parallel nodes whose bridges all touch a
// terminal are subdivided twice first; the result is expressed on g itself.
inline AlignedSearchBundle synthesize(const Graph& g, const Gsp& t, const SubdivisionFloor& floors = {},
                                      const SynthConfig& cfg = {}) {
  if (!t) throw InputError("synthesize: empty decomposition");
  if (!t->simple) throw InputError("synthesize: the decomposition is not simple");
  if (!decomposes(g, t)) throw InputError("synthesize: the tree does not decompose the graph");
  for (const auto& [e, f] : floors)
    if (f < 0) throw InputError("negative subdivision floor on " + e.first + "-" + e.second);

  std::vector<std::pair<int, int>> marks;
  detail::mark_degenerate(t, marks);
  EdgeCounts pre;
  for (auto [u, v] : marks) pre[edge_key(g.label(u), g.label(v))] = 2;
  SubdividedGraph gp = subdivide(g, pre);
  const Graph& g2 = gp.derived();
  Gsp t2 = subdivide_decomposition(g, t, gp);

  // A floor on a pre-subdivided edge goes to its middle piece.
  SubdivisionFloor f2;
  for (const auto& [e, f] : floors) {
    if (!g.adjacent(e.first, e.second)) continue;
    if (pre.count(e))
      f2[edge_key(subdivision_label(e, 1), subdivision_label(e, 2))] = std::max(0LL, f - 2);
    else
      f2[e] = f;
  }
  AlignedSearchBundle inner = detail::Synthesizer(g2, cfg).run(t2, f2);

  // Re-express the host as a subdivision of g.
  EdgeCounts counts;
  for (const auto& [e, c] : gp.counts()) {
    if (c == 0) {
      counts[e] = inner.host.count(e.first, e.second);
    } else {
      long long total = c;
      std::string prev = e.first;
      for (long long i = 1; i <= c + 1; ++i) {
        std::string next = i <= c ? subdivision_label(e, i) : e.second;
        total += inner.host.count(prev, next);
        prev = next;
      }
      counts[e] = total;
    }
  }
  AlignedSearchBundle out;
  out.host = subdivide(g, counts);
  std::vector<int> m(static_cast<std::size_t>(inner.host.derived().order()), -1);
  for (int v = 0; v < g.order(); ++v) m[static_cast<std::size_t>(inner.host.derived().index(g.label(v)))] = out.host.derived().index(g.label(v));
  for (const auto& [e, c] : gp.counts()) {
    std::vector<int> along;
    std::string prev = e.first;
    for (long long i = 1; i <= c + 1; ++i) {
      std::string next = i <= c ? subdivision_label(e, i) : e.second;
      auto p = inner.host.edge_path(prev, next);
      along.insert(along.end(), along.empty() ? p.begin() : p.begin() + 1, p.end());
      prev = next;
    }
    auto q = out.host.edge_path(e.first, e.second);
    for (std::size_t i = 0; i < q.size(); ++i) m[static_cast<std::size_t>(along[i])] = q[i];
  }
  detail::append(out.steps, inner.steps, m);
  out.a = g.label(t->a);
  out.b = g.label(t->b);
  out.segments = inner.segments;
  out.summed_floor_edges = inner.summed_floor_edges;
  out.presubdivided_edges = pre.size();
  detail::verify(out, "synthesis", floors);
  return out;
}

// Search on gen::grid(n, m): windows of s + 1 consecutive vertices, s the shorter
// side, taken in the order that runs along the shorter side first.
inline Search grid_search(int n, int m) {
  if (n < 2 || m < 2) throw InputError("grid search needs both sides at least 2");
  Graph g = gen::grid(n, m);
  int s = std::min(n, m), l = std::max(n, m);
  std::vector<int> order;
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < s; ++j) order.push_back(g.index("v" + std::to_string(m <= n ? i * m + j : j * m + i)));
  Search out;
  out.k = s + 1;
  for (int t = 0; t < s * (l - 1); ++t) {
    VertexSet x = g.empty_set();
    for (int j = 0; j <= s; ++j) x.insert(order[static_cast<std::size_t>(t + j)]);
    out.steps.push_back(std::move(x));
  }
  return out;
}

// The host split into parts (vertex sets whose induced subgraphs share only cut
// vertices), laid side by side with the copies of each host vertex related. An
// amalgamation's correctness argument runs its search on this model.
struct QuotientModel {
  Graph disjoint;                        // vertex x of part i is labelled "x@i"
  EquivalenceSpec relation;              // copies of one host vertex
  std::vector<int> host_vertex;          // class -> host vertex
  std::vector<std::vector<int>> copies;  // host vertex -> its copies

  // Every host vertex replaced by all of its copies.
  VertexSet lift(const std::vector<int>& host_set) const {
    VertexSet out = disjoint.empty_set();
    for (int v : host_set)
      for (int c : copies[static_cast<std::size_t>(v)]) out.insert(c);
    return out;
  }

  Search lift(const StepList& s) const {
    Search out;
    out.k = 0;
    for (const auto& st : s) {
      out.steps.push_back(lift(st));
      out.k = std::max(out.k, static_cast<int>(out.steps.back().size()));
    }
    return out;
  }

  // Steps of a search on the quotient, as host vertex lists.
  StepList to_host(const Search& pushed) const {
    StepList out;
    for (const auto& st : pushed.steps) {
      std::vector<int> x;
      st.for_each([&](int c) { x.push_back(host_vertex[static_cast<std::size_t>(c)]); });
      std::sort(x.begin(), x.end());
      out.push_back(std::move(x));
    }
    return out;
  }
};

inline QuotientModel quotient_model(const Graph& host, const std::vector<VertexSet>& parts) {
  GraphBuilder gb;
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(host.order()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].universe() != static_cast<std::size_t>(host.order())) throw InputError("part does not belong to the host");
    std::string tag = "@" + std::to_string(i);
    parts[i].for_each([&](int v) {
      gb.add_vertex(host.label(v) + tag);
      names[static_cast<std::size_t>(v)].push_back(host.label(v) + tag);
      for (int w : host.neighbors(v))
        if (w > v && parts[i].contains(w)) gb.add_edge(host.label(v) + tag, host.label(w) + tag);
    });
  }
  QuotientModel m;
  m.disjoint = gb.build();
  std::vector<int> raw(static_cast<std::size_t>(m.disjoint.order()), -1);
  m.copies.assign(static_cast<std::size_t>(host.order()), {});
  for (int v = 0; v < host.order(); ++v) {
    if (names[static_cast<std::size_t>(v)].empty()) throw InputError("host vertex " + host.label(v) + " is in no part");
    for (const auto& l : names[static_cast<std::size_t>(v)]) {
      int x = m.disjoint.index(l);
      raw[static_cast<std::size_t>(x)] = v;
      m.copies[static_cast<std::size_t>(v)].push_back(x);
    }
  }
  m.relation = EquivalenceSpec(raw);
  m.host_vertex.resize(static_cast<std::size_t>(m.relation.class_count()));
  for (int c = 0; c < m.relation.class_count(); ++c)
    m.host_vertex[static_cast<std::size_t>(c)] = raw[static_cast<std::size_t>(m.relation.members(c).front())];
  return m;
}

}  // namespace insp
