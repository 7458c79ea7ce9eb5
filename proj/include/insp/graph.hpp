#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "errors.hpp"
#include "label_order.hpp"

namespace insp {

// A subset of the vertices of one graph, stored as a bitset over vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe) : bits_(universe) {}

  static VertexSet full(std::size_t universe) {
    VertexSet s(universe);
    s.bits_.set();
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(int v) const { return bits_.test(static_cast<std::size_t>(v)); }
  void insert(int v) { bits_.set(static_cast<std::size_t>(v)); }
  void erase(int v) { bits_.reset(static_cast<std::size_t>(v)); }
  void clear() { bits_.reset(); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      out.push_back(static_cast<int>(i));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      f(static_cast<int>(i));
  }

  bool is_subset_of(const VertexSet& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const VertexSet& o) const { return bits_.intersects(o.bits_); }

  VertexSet& operator|=(const VertexSet& o) { bits_ |= o.bits_; return *this; }
  VertexSet& operator&=(const VertexSet& o) { bits_ &= o.bits_; return *this; }
  VertexSet& operator-=(const VertexSet& o) { bits_ -= o.bits_; return *this; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.bits_ < b.bits_; }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

 private:
  boost::dynamic_bitset<> bits_;
};

// Finite simple undirected graph with string labels. Immutable once built;
// vertex indices follow the natural label order, neighbour lists are sorted.
class Graph {
 public:
  Graph() = default;

  int order() const { return static_cast<int>(labels_.size()); }
  std::size_t size() const { return m_; }

  const std::string& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find(std::string_view l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l, LabelLess{});
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
  }

  int index(std::string_view l) const {
    auto v = find(l);
    if (!v) throw InputError("unknown vertex '" + std::string(l) + "'");
    return *v;
  }

  bool has_vertex(std::string_view l) const { return find(l).has_value(); }

  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(int u, int v) const {
    const auto& n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  bool adjacent(std::string_view u, std::string_view v) const {
    auto a = find(u), b = find(v);
    return a && b && adjacent(*a, *b);
  }

  // Edges as index pairs (u < v), in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < order(); ++u)
      for (int v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::vector<std::pair<std::string, std::string>> edge_labels() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto [u, v] : edges()) out.emplace_back(label(u), label(v));
    return out;
  }

  VertexSet empty_set() const { return VertexSet(labels_.size()); }
  VertexSet all() const { return VertexSet::full(labels_.size()); }

  VertexSet set_of(const std::vector<std::string>& ls) const {
    VertexSet s = empty_set();
    for (const auto& l : ls) s.insert(index(l));
    return s;
  }

  VertexSet set_of(std::initializer_list<std::string_view> ls) const {
    VertexSet s = empty_set();
    for (auto l : ls) s.insert(index(l));
    return s;
  }

  std::vector<std::string> labels_of(const VertexSet& s) const {
    std::vector<std::string> out;
    s.for_each([&](int v) { out.push_back(label(v)); });
    return out;
  }

  // Subgraph induced by s; labels are kept.
  Graph induced(const VertexSet& s) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  friend class GraphBuilder;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> adj_;
  std::size_t m_ = 0;
};

class GraphBuilder {
 public:
  GraphBuilder() = default;
  explicit GraphBuilder(const Graph& g) {
    for (const auto& l : g.labels()) add_vertex(l);
    for (const auto& [u, v] : g.edge_labels()) add_edge(u, v);
  }

  GraphBuilder& add_vertex(std::string l) {
    check_label(l);
    vertices_.push_back(std::move(l));
    return *this;
  }

  GraphBuilder& add_edge(std::string u, std::string v) {
    check_label(u);
    check_label(v);
    if (u == v) throw InputError("self-loop at '" + u + "'");
    edges_.emplace_back(std::move(u), std::move(v));
    return *this;
  }

  Graph build() const {
    Graph g;
    g.labels_ = vertices_;
    for (const auto& [u, v] : edges_) {
      g.labels_.push_back(u);
      g.labels_.push_back(v);
    }
    std::sort(g.labels_.begin(), g.labels_.end(), LabelLess{});
    g.labels_.erase(std::unique(g.labels_.begin(), g.labels_.end()), g.labels_.end());
    g.adj_.assign(g.labels_.size(), {});
    for (const auto& [u, v] : edges_) {
      int a = g.index(u), b = g.index(v);
      g.adj_[static_cast<std::size_t>(a)].push_back(b);
      g.adj_[static_cast<std::size_t>(b)].push_back(a);
    }
    std::size_t twice = 0;
    for (auto& n : g.adj_) {
      std::sort(n.begin(), n.end());
      n.erase(std::unique(n.begin(), n.end()), n.end());
      twice += n.size();
    }
    g.m_ = twice / 2;
    return g;
  }

 private:
  static void check_label(const std::string& l) {
    if (l.empty()) throw InputError("empty vertex label");
    for (char c : l)
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw InputError("vertex label contains whitespace: '" + l + "'");
  }

  std::vector<std::string> vertices_;
  std::vector<std::pair<std::string, std::string>> edges_;
};

inline Graph Graph::induced(const VertexSet& s) const {
  GraphBuilder b;
  s.for_each([&](int v) {
    b.add_vertex(label(v));
    for (int w : neighbors(v))
      if (w > v && s.contains(w)) b.add_edge(label(v), label(w));
  });
  return b.build();
}

inline Graph make_graph(const std::vector<std::pair<std::string, std::string>>& edges,
                        const std::vector<std::string>& isolated = {}) {
  GraphBuilder b;
  for (const auto& v : isolated) b.add_vertex(v);
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

}  // namespace insp
