#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace insp {

// Edge key with endpoints in label order.
using EdgeKey = std::pair<std::string, std::string>;

inline EdgeKey edge_key(std::string a, std::string b) {
  if (natural_compare(a, b) > 0) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

struct EdgeKeyLess {
  bool operator()(const EdgeKey& x, const EdgeKey& y) const {
    int c = natural_compare(x.first, y.first);
    if (c != 0) return c < 0;
    return natural_compare(x.second, y.second) < 0;
  }
};

using EdgeCounts = std::map<EdgeKey, long long, EdgeKeyLess>;

inline std::string subdivision_label(const EdgeKey& e, long long i) {
  return "(" + e.first + "," + e.second + ")#" + std::to_string(i);
}

// A base graph with every edge replaced by a path. The i-th internal vertex of the
// path for edge (u,v), counted from the label-smaller endpoint u, is "(u,v)#i".
class SubdividedGraph {
 public:
  SubdividedGraph() = default;

  const Graph& base() const { return base_; }
  const Graph& derived() const { return derived_; }
  const EdgeCounts& counts() const { return counts_; }

  long long count(const std::string& u, const std::string& v) const {
    auto it = counts_.find(edge_key(u, v));
    if (it == counts_.end()) throw InputError("not an edge of the base graph: " + u + " " + v);
    return it->second;
  }

  // Derived-graph indices along the path replacing base edge (u,v), from u to v.
  std::vector<int> edge_path(const std::string& u, const std::string& v) const {
    auto k = edge_key(u, v);
    long long c = count(u, v);
    std::vector<int> p{derived_.index(k.first)};
    for (long long i = 1; i <= c; ++i) p.push_back(derived_.index(subdivision_label(k, i)));
    p.push_back(derived_.index(k.second));
    if (k.first != u) std::reverse(p.begin(), p.end());
    return p;
  }

  // Base edge carrying a derived vertex, or nothing for base vertices.
  std::optional<EdgeKey> carrier(int derived_vertex) const {
    auto it = carrier_.find(derived_vertex);
    if (it == carrier_.end()) return std::nullopt;
    return it->second;
  }

  bool is_base_vertex(int derived_vertex) const { return !carrier_.count(derived_vertex); }

  friend SubdividedGraph subdivide(const Graph& g, const EdgeCounts& counts);

 private:
  Graph base_;
  EdgeCounts counts_;
  Graph derived_;
  std::map<int, EdgeKey> carrier_;
};

inline SubdividedGraph subdivide(const Graph& g, const EdgeCounts& counts) {
  SubdividedGraph h;
  h.base_ = g;
  for (const auto& [u, v] : g.edge_labels()) h.counts_[edge_key(u, v)] = 0;
  for (const auto& [e, c] : counts) {
    auto k = edge_key(e.first, e.second);
    auto it = h.counts_.find(k);
    if (it == h.counts_.end()) throw InputError("subdivision count for a non-edge: " + k.first + " " + k.second);
    if (c < 0) throw InputError("negative subdivision count on " + k.first + " " + k.second);
    it->second = c;
  }
  GraphBuilder b;
  for (const auto& l : g.labels()) b.add_vertex(l);
  for (const auto& [k, c] : h.counts_) {
    std::string prev = k.first;
    for (long long i = 1; i <= c; ++i) {
      std::string s = subdivision_label(k, i);
      if (g.has_vertex(s)) throw InputError("subdivision label collides with a base vertex: " + s);
      b.add_edge(prev, s);
      prev = std::move(s);
    }
    b.add_edge(prev, k.second);
  }
  h.derived_ = b.build();
  for (const auto& [k, c] : h.counts_)
    for (long long i = 1; i <= c; ++i) h.carrier_[h.derived_.index(subdivision_label(k, i))] = k;
  return h;
}

// Partition of V(G) given as a class id per vertex. Classes are numbered in order
// of their least member, so class c of the quotient is also its vertex index.
class EquivalenceSpec {
 public:
  EquivalenceSpec() = default;

  static EquivalenceSpec singletons(const Graph& g) {
    std::vector<int> ids(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) ids[static_cast<std::size_t>(v)] = v;
    return EquivalenceSpec(std::move(ids));
  }

  // Classes given by labels; vertices not mentioned are singletons.
  static EquivalenceSpec from_classes(const Graph& g, const std::vector<std::vector<std::string>>& classes) {
    std::vector<int> ids(static_cast<std::size_t>(g.order()), -1);
    int next = 0;
    for (const auto& c : classes) {
      if (c.empty()) continue;
      for (const auto& l : c) {
        int v = g.index(l);
        if (ids[static_cast<std::size_t>(v)] != -1) throw InputError("vertex in two classes: " + l);
        ids[static_cast<std::size_t>(v)] = next;
      }
      ++next;
    }
    for (auto& x : ids)
      if (x == -1) x = next++;
    return EquivalenceSpec(std::move(ids));
  }

  explicit EquivalenceSpec(std::vector<int> raw) {
    std::map<int, int> renumber;
    class_of_.resize(raw.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
      auto [it, fresh] = renumber.emplace(raw[v], static_cast<int>(renumber.size()));
      class_of_[v] = it->second;
    }
    members_.assign(renumber.size(), {});
    for (std::size_t v = 0; v < raw.size(); ++v) members_[static_cast<std::size_t>(class_of_[v])].push_back(static_cast<int>(v));
  }

  int class_of(int v) const { return class_of_[static_cast<std::size_t>(v)]; }
  int class_count() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members(int c) const { return members_[static_cast<std::size_t>(c)]; }
  std::size_t universe() const { return class_of_.size(); }

  // Classes contained in X.
  VertexSet wedge(const VertexSet& x) const {
    VertexSet out(members_.size());
    for (std::size_t c = 0; c < members_.size(); ++c) {
      bool all = true;
      for (int v : members_[c]) all = all && x.contains(v);
      if (all) out.insert(static_cast<int>(c));
    }
    return out;
  }

  // Classes meeting X.
  VertexSet vee(const VertexSet& x) const {
    VertexSet out(members_.size());
    x.for_each([&](int v) { out.insert(class_of(v)); });
    return out;
  }

  // Union of the given classes.
  VertexSet lift(const VertexSet& classes) const {
    VertexSet out(class_of_.size());
    classes.for_each([&](int c) {
      for (int v : members_[static_cast<std::size_t>(c)]) out.insert(v);
    });
    return out;
  }

  bool is_invariant(const VertexSet& x) const { return lift(vee(x)) == x; }

 private:
  std::vector<int> class_of_;
  std::vector<std::vector<int>> members_;
};

// Quotient graph: one vertex per class, labelled by its least member; intra-class
// edges are dropped.
inline Graph quotient(const Graph& g, const EquivalenceSpec& e) {
  if (e.universe() != static_cast<std::size_t>(g.order())) throw InputError("equivalence does not match graph");
  GraphBuilder b;
  for (int c = 0; c < e.class_count(); ++c) b.add_vertex(g.label(e.members(c).front()));
  for (auto [u, v] : g.edges()) {
    int cu = e.class_of(u), cv = e.class_of(v);
    if (cu != cv) b.add_edge(g.label(e.members(cu).front()), g.label(e.members(cv).front()));
  }
  return b.build();
}

}  // namespace insp
