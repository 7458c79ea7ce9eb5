#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "subdivision.hpp"

namespace insp {

// A k-search: the sets inspected at steps 1..l.
struct Search {
  std::vector<VertexSet> steps;
  int k = 0;

  std::size_t length() const { return steps.size(); }
  std::size_t width() const {
    std::size_t w = 0;
    for (const auto& s : steps) w = std::max(w, s.size());
    return w;
  }
};

// Build a search from labelled steps; k defaults to the largest step.
inline Search make_search(const Graph& g, const std::vector<std::vector<std::string>>& steps, int k = -1) {
  Search s;
  for (const auto& st : steps) s.steps.push_back(g.set_of(st));
  int w = static_cast<int>(s.width());
  if (k >= 0 && w > k) throw InputError("search step larger than declared k=" + std::to_string(k));
  s.k = k >= 0 ? k : w;
  return s;
}

inline Search concat(Search a, const Search& b) {
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  a.k = std::max(a.k, b.k);
  return a;
}

inline std::vector<std::vector<std::string>> step_labels(const Graph& g, const Search& s) {
  std::vector<std::vector<std::string>> out;
  for (const auto& st : s.steps) out.push_back(g.labels_of(st));
  return out;
}

// pc[t-1] = PC_t for t = 1..l, fc[t] = FC_t for t = 0..l.
struct SearchTrace {
  VertexSet initial;
  std::vector<VertexSet> pc;
  std::vector<VertexSet> fc;

  std::size_t length() const { return pc.size(); }
};

namespace detail {

// FC = PC minus the vertices of PC with a neighbour outside PC. Scans whichever
// side of the cut is smaller.
inline VertexSet fully_cleared(const Graph& g, const VertexSet& pc) {
  std::size_t inside = pc.size();
  if (2 * inside <= static_cast<std::size_t>(g.order())) return pc - boundary(g, pc);
  VertexSet fc = pc;
  for (int u = 0; u < g.order(); ++u) {
    if (pc.contains(u)) continue;
    for (int w : g.neighbors(u)) fc.erase(w);
  }
  return fc;
}

inline void check_universe(const Graph& g, const VertexSet& s, const char* what) {
  if (s.universe() != static_cast<std::size_t>(g.order()))
    throw InputError(std::string(what) + " does not belong to this graph");
}

}  // namespace detail

// Runs the clearing recursion, calling f(t, pc_t, fc_t) after each step t = 1..l.
template <class F>
VertexSet replay(const Graph& g, const Search& s, const VertexSet& initial, F&& f) {
  detail::check_universe(g, initial, "initial set");
  VertexSet fc = initial;
  for (std::size_t t = 0; t < s.steps.size(); ++t) {
    detail::check_universe(g, s.steps[t], "search step");
    VertexSet pc = fc | s.steps[t];
    fc = detail::fully_cleared(g, pc);
    f(t + 1, pc, fc);
  }
  return fc;
}

inline SearchTrace simulate(const Graph& g, const Search& s, const VertexSet& initial) {
  SearchTrace tr;
  tr.initial = initial;
  tr.fc.push_back(initial);
  replay(g, s, initial, [&](std::size_t, const VertexSet& pc, const VertexSet& fc) {
    tr.pc.push_back(pc);
    tr.fc.push_back(fc);
  });
  return tr;
}

inline SearchTrace simulate(const Graph& g, const Search& s) { return simulate(g, s, g.empty_set()); }

inline bool is_successful(const SearchTrace& tr) { return tr.fc.back().size() == tr.fc.back().universe(); }

inline bool is_monotonic(const SearchTrace& tr) {
  for (std::size_t t = 1; t < tr.fc.size(); ++t)
    if (!tr.fc[t - 1].is_subset_of(tr.fc[t])) return false;
  return true;
}

// a is pre-cleared at every step and b is not fully cleared before the last step.
inline bool is_aligned(const SearchTrace& tr, int a, int b) {
  for (const auto& pc : tr.pc)
    if (!pc.contains(a)) return false;
  for (std::size_t t = 0; t + 1 < tr.fc.size(); ++t)
    if (tr.fc[t].contains(b)) return false;
  return true;
}

// Step t of the result is the set of classes meeting S_t.
inline Search push_search(const Search& s, const EquivalenceSpec& e) {
  Search out;
  out.k = s.k;
  for (const auto& st : s.steps) out.steps.push_back(e.vee(st));
  return out;
}

inline bool is_invariant(const Graph& g, const Search& s, const VertexSet& initial, const EquivalenceSpec& e) {
  bool ok = true;
  replay(g, s, initial, [&](std::size_t, const VertexSet& pc, const VertexSet&) { ok = ok && e.is_invariant(pc); });
  return ok;
}

}  // namespace insp
