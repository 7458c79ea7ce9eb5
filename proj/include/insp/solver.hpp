#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "game.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"

namespace insp {

struct SolverConfig {
  std::size_t state_budget = 4'000'000;
  int workers = 1;
  bool prune = true;            // keep only inclusion-maximal cleared states
  int pathwidth_limit = 22;     // vertices, for the subset DP
  int profile_limit = 24;       // vertices, for boundary-profile enumeration
};

struct SolveResult {
  int value = 0;
  bool exceeds = false;             // true: no search of width <= value - 1 = k_max exists
  std::optional<Search> witness;
  std::size_t explored_states = 0;
  std::string method;
};

struct PathDecomposition {
  std::vector<VertexSet> bags;
  int width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
  }
};

struct BoundaryGapCertificate {
  int k = 0;
  int i = 0;
  std::set<int> profile;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }

struct MaskGraph {
  int n = 0;
  std::vector<Mask> adj;
  Mask full = 0;

  explicit MaskGraph(const Graph& g) : n(g.order()), adj(static_cast<std::size_t>(g.order()), 0) {
    if (n > 64) throw ResourceError("solver supports at most 64 vertices");
    for (int v = 0; v < n; ++v)
      for (int w : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= bit(w);
    full = n == 64 ? ~Mask{0} : bit(n) - 1;
  }

  Mask fully_cleared(Mask pc) const {
    Mask fc = 0;
    for (Mask r = pc; r; r &= r - 1) {
      int v = std::countr_zero(r);
      if ((adj[static_cast<std::size_t>(v)] & ~pc) == 0) fc |= bit(v);
    }
    return fc;
  }

  int boundary_size(Mask s) const {
    int c = 0;
    for (Mask r = s; r; r &= r - 1) {
      int v = std::countr_zero(r);
      if (adj[static_cast<std::size_t>(v)] & ~s) ++c;
    }
    return c;
  }
};

inline VertexSet to_set(const Graph& g, Mask m) {
  VertexSet s = g.empty_set();
  for (; m; m &= m - 1) s.insert(std::countr_zero(m));
  return s;
}

// Calls f(S) for every subset S of `pool` with exactly r members, in lexicographic
// order of member positions. Stops early when f returns true.
template <class F>
bool for_each_subset(Mask pool, int r, F&& f) {
  std::vector<int> pos;
  for (Mask x = pool; x; x &= x - 1) pos.push_back(std::countr_zero(x));
  const int m = static_cast<int>(pos.size());
  if (r > m) return false;
  if (r == 0) return f(Mask{0});
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    Mask s = 0;
    for (int i : idx) s |= bit(pos[static_cast<std::size_t>(i)]);
    if (f(s)) return true;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

struct Successor {
  Mask fc, step;
  std::size_t parent;
};

// Reachability over fully-cleared states of one graph. Returns the steps of a
// successful search, or nothing when the closure never reaches V.
class ClearingSearch {
 public:
  ClearingSearch(const MaskGraph& g, int k, const SolverConfig& cfg, bool monotone_only)
      : g_(g), k_(k), cfg_(cfg), monotone_(monotone_only) {}

  std::optional<std::vector<Mask>> run() {
    add_state(0, 0, npos);
    if (g_.full == 0) return std::vector<Mask>{};
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty()) {
      std::vector<std::vector<Successor>> found(frontier.size());
      expand(frontier, found);
      std::vector<std::size_t> next;
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (const auto& s : found[i]) {
          if (s.fc == g_.full) {
            add_state(s.fc, s.step, s.parent);
            return replay_from(states_.size() - 1);
          }
          if (seen_.count(s.fc)) continue;
          if (cfg_.prune && !monotone_ && dominated(s.fc)) continue;
          next.push_back(add_state(s.fc, s.step, s.parent));
        }
      frontier.clear();
      for (auto id : next)
        if (alive_[id]) frontier.push_back(id);
    }
    return std::nullopt;
  }

  std::size_t explored() const { return states_.size(); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void successors(std::size_t id, std::vector<Successor>& out) const {
    Mask a = states_[id];
    Mask rest = g_.full & ~a;
    auto emit = [&](Mask s) {
      Mask fc = g_.fully_cleared(a | s);
      if (monotone_) {
        if ((fc & a) != a || fc == a) return false;
      } else if (cfg_.prune && (fc & ~a) == 0) {
        return false;
      }
      out.push_back({fc, s, id});
      return fc == g_.full;
    };
    if (std::popcount(rest) <= k_) {
      emit(rest);
      return;
    }
    if (monotone_) {
      for (int r = 1; r <= k_; ++r)
        if (for_each_subset(rest, r, emit)) return;
    } else {
      for_each_subset(rest, k_, emit);
    }
  }

  void expand(const std::vector<std::size_t>& frontier, std::vector<std::vector<Successor>>& found) const {
    int w = std::max(1, cfg_.workers);
    if (w == 1 || frontier.size() < 2) {
      for (std::size_t i = 0; i < frontier.size(); ++i) successors(frontier[i], found[i]);
      return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < frontier.size(); i += static_cast<std::size_t>(w))
          successors(frontier[i], found[i]);
      });
    for (auto& th : pool) th.join();
  }

  bool dominated(Mask fc) const {
    for (auto id : maximal_)
      if ((fc & ~states_[id]) == 0) return true;
    return false;
  }

  std::size_t add_state(Mask fc, Mask step, std::size_t parent) {
    if (states_.size() >= cfg_.state_budget)
      throw ResourceError("state budget of " + std::to_string(cfg_.state_budget) + " exhausted");
    std::size_t id = states_.size();
    states_.push_back(fc);
    steps_.push_back(step);
    parents_.push_back(parent);
    alive_.push_back(true);
    seen_.insert(fc);
    if (cfg_.prune && !monotone_) {
      std::vector<std::size_t> keep;
      for (auto m : maximal_) {
        if ((states_[m] & ~fc) == 0) alive_[m] = false;
        else keep.push_back(m);
      }
      keep.push_back(id);
      maximal_ = std::move(keep);
    }
    return id;
  }

  std::vector<Mask> replay_from(std::size_t id) const {
    std::vector<Mask> out;
    for (; parents_[id] != npos; id = parents_[id]) out.push_back(steps_[id]);
    std::reverse(out.begin(), out.end());
    return out;
  }

  const MaskGraph& g_;
  int k_;
  const SolverConfig& cfg_;
  bool monotone_;
  std::vector<Mask> states_, steps_;
  std::vector<std::size_t> parents_;
  std::vector<bool> alive_;
  std::vector<std::size_t> maximal_;
  std::unordered_set<Mask> seen_;
};

// Runs `solve` on each component (as an induced subgraph) and stitches the
// component searches together in component order.
template <class F>
std::optional<Search> per_component(const Graph& g, F&& solve) {
  Search out;
  for (const auto& comp : components(g)) {
    Graph h = g.induced(comp);
    auto s = solve(h);
    if (!s) return std::nullopt;
    for (const auto& st : s->steps) {
      VertexSet lifted = g.empty_set();
      st.for_each([&](int v) { lifted.insert(g.index(h.label(v))); });
      out.steps.push_back(std::move(lifted));
    }
    out.k = std::max(out.k, s->k);
  }
  return out;
}

inline std::optional<Search> clearing_search(const Graph& g, int k, const SolverConfig& cfg, bool monotone,
                                             std::size_t* explored) {
  if (k < 1) throw InputError("search width must be at least 1");
  return per_component(g, [&](const Graph& h) -> std::optional<Search> {
    MaskGraph mg(h);
    ClearingSearch cs(mg, k, cfg, monotone);
    auto steps = cs.run();
    if (explored) *explored += cs.explored();
    if (!steps) return std::nullopt;
    Search s;
    s.k = k;
    for (auto m : *steps) s.steps.push_back(to_set(h, m));
    return s;
  });
}

}  // namespace detail

inline std::optional<Search> exists_successful_search(const Graph& g, int k, const SolverConfig& cfg = {},
                                                      std::size_t* explored = nullptr) {
  return detail::clearing_search(g, k, cfg, false, explored);
}

// Independent decision procedure restricted to monotone transitions, without pruning.
inline std::optional<Search> exists_monotonic_search(const Graph& g, int k, const SolverConfig& cfg = {},
                                                     std::size_t* explored = nullptr) {
  return detail::clearing_search(g, k, cfg, true, explored);
}

// Vertex-separation subset DP; the decomposition has bags boundary(L_{i-1}) + v_i
// along the optimal ordering.
inline std::pair<int, PathDecomposition> pathwidth(const Graph& g, const SolverConfig& cfg = {}) {
  using detail::Mask;
  const int n = g.order();
  if (n == 0) throw InputError("pathwidth of the empty graph");
  if (n > cfg.pathwidth_limit)
    throw ResourceError("pathwidth DP limited to " + std::to_string(cfg.pathwidth_limit) + " vertices");
  detail::MaskGraph mg(g);
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::uint8_t> f(total, 0);
  for (std::size_t s = 1; s < total; ++s) {
    int best = 255;
    for (Mask r = s; r; r &= r - 1) best = std::min<int>(best, f[s & ~(Mask{1} << std::countr_zero(r))]);
    f[s] = static_cast<std::uint8_t>(std::max(best, mg.boundary_size(s)));
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  Mask s = mg.full;
  for (int i = n - 1; i >= 0; --i) {
    int pick = -1;
    for (Mask r = s; r; r &= r - 1) {
      int v = std::countr_zero(r);
      if (pick < 0 || f[s & ~detail::bit(v)] < f[s & ~detail::bit(pick)]) pick = v;
    }
    order[static_cast<std::size_t>(i)] = pick;
    s &= ~detail::bit(pick);
  }
  PathDecomposition pd;
  Mask left = 0;
  for (int v : order) {
    Mask bd = 0;
    for (Mask r = left; r; r &= r - 1) {
      int u = std::countr_zero(r);
      if (mg.adj[static_cast<std::size_t>(u)] & ~left) bd |= detail::bit(u);
    }
    pd.bags.push_back(detail::to_set(g, bd | detail::bit(v)));
    left |= detail::bit(v);
  }
  return {static_cast<int>(f[mg.full]), std::move(pd)};
}

inline bool is_path_decomposition(const Graph& g, const PathDecomposition& pd) {
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (const auto& b : pd.bags) covered = covered || (b.contains(u) && b.contains(v));
    if (!covered) return false;
  }
  for (int v = 0; v < g.order(); ++v) {
    int first = -1, last = -1, hits = 0;
    for (std::size_t i = 0; i < pd.bags.size(); ++i)
      if (pd.bags[i].contains(v)) {
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
        ++hits;
      }
    if (hits == 0 || hits != last - first + 1) return false;
  }
  return true;
}

// pw(G) + 1 with the bag sequence as the (monotone) witness.
inline SolveResult monotonic_inspection_number(const Graph& g, const SolverConfig& cfg = {}) {
  auto [pw, pd] = pathwidth(g, cfg);
  SolveResult r;
  r.value = pw + 1;
  r.method = "pathwidth-dp";
  Search s;
  s.k = pw + 1;
  s.steps = pd.bags;
  r.witness = std::move(s);
  return r;
}

inline SolveResult inspection_number(const Graph& g, int k_max, const SolverConfig& cfg = {}) {
  if (g.order() == 0) throw InputError("inspection number of the empty graph");
  if (k_max < 1) throw InputError("k_max must be at least 1");
  SolveResult r;
  r.method = "reachability";
  std::optional<SolveResult> mono;
  int cap = k_max;
  if (g.order() <= cfg.pathwidth_limit) {
    mono = monotonic_inspection_number(g, cfg);
    cap = std::min(cap, mono->value);
  }
  for (int k = 1; k <= cap; ++k) {
    if (mono && k == mono->value) {
      auto tr = simulate(g, *mono->witness);
      if (!is_successful(tr)) throw std::logic_error("bag-sequence witness failed to clear the graph");
      r.value = k;
      r.witness = mono->witness;
      r.method = "reachability+pathwidth-bound";
      return r;
    }
    auto s = exists_successful_search(g, k, cfg, &r.explored_states);
    if (s) {
      r.value = k;
      r.witness = std::move(s);
      return r;
    }
  }
  r.value = k_max + 1;
  r.exceeds = true;
  return r;
}

// Sizes |C| over all C with fewer than k boundary vertices.
inline std::set<int> boundary_profile(const Graph& g, int k, const SolverConfig& cfg = {}) {
  using detail::Mask;
  const int n = g.order();
  if (n > cfg.profile_limit)
    throw ResourceError("boundary profile limited to " + std::to_string(cfg.profile_limit) + " vertices");
  detail::MaskGraph mg(g);
  std::set<int> sizes;
  // Decide vertices in index order; a chosen vertex with a rejected neighbour is
  // certainly on the boundary, which bounds the search.
  auto rec = [&](auto&& self, int v, Mask in, Mask out, int forced) -> void {
    if (forced >= k) return;
    if (static_cast<int>(sizes.size()) == n + 1) return;
    if (v == n) {
      if (mg.boundary_size(in) < k) sizes.insert(std::popcount(in));
      return;
    }
    Mask b = detail::bit(v);
    int add_in = (mg.adj[static_cast<std::size_t>(v)] & out) ? 1 : 0;
    self(self, v + 1, in | b, out, forced + add_in);
    int add_out = 0;
    for (Mask r = mg.adj[static_cast<std::size_t>(v)] & in; r; r &= r - 1) {
      int u = std::countr_zero(r);
      if ((mg.adj[static_cast<std::size_t>(u)] & out) == 0) ++add_out;
    }
    self(self, v + 1, in, out | b, forced + add_out);
  };
  rec(rec, 0, 0, 0, 0);
  return sizes;
}

// The least i in [1, n] with no achievable size strictly between i-k and i. Its
// existence shows in(G) > k; absence proves nothing. The argument needs a
// nonempty boundary for the pre-cleared set before the first step, so K1 (where
// i = k = 1 has no witness yet in = 1) never gets a certificate.
inline std::optional<BoundaryGapCertificate> boundary_gap_certificate(const Graph& g, int k,
                                                                      const SolverConfig& cfg = {}) {
  auto prof = boundary_profile(g, k, cfg);
  if (g.order() <= 1) return std::nullopt;
  for (int i = 1; i <= g.order(); ++i) {
    auto it = prof.upper_bound(i - k);
    if (it == prof.end() || *it >= i) return BoundaryGapCertificate{k, i, prof};
  }
  return std::nullopt;
}

}  // namespace insp
