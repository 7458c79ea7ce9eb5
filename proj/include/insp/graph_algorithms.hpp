#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace insp {

using Path = std::vector<int>;

// Vertices of S with at least one neighbour outside S.
inline VertexSet boundary(const Graph& g, const VertexSet& s) {
  VertexSet out = g.empty_set();
  s.for_each([&](int v) {
    for (int w : g.neighbors(v))
      if (!s.contains(w)) {
        out.insert(v);
        break;
      }
  });
  return out;
}

// Breadth-first distances from the vertices of `sources`, restricted to `allowed`.
// Unreachable vertices get -1.
inline std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources, const VertexSet& allowed) {
  std::vector<int> dist(static_cast<std::size_t>(g.order()), -1);
  std::deque<int> q;
  sources.for_each([&](int v) {
    if (allowed.contains(v)) {
      dist[static_cast<std::size_t>(v)] = 0;
      q.push_back(v);
    }
  });
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v))
      if (allowed.contains(w) && dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

inline std::vector<int> bfs_distances(const Graph& g, int source) {
  VertexSet s = g.empty_set();
  s.insert(source);
  return bfs_distances(g, s, g.all());
}

// Closed ball of radius r around v.
inline VertexSet ball(const Graph& g, int v, int r) {
  if (r < 0) throw InputError("ball radius must be non-negative");
  auto dist = bfs_distances(g, v);
  VertexSet out = g.empty_set();
  for (int w = 0; w < g.order(); ++w)
    if (dist[static_cast<std::size_t>(w)] >= 0 && dist[static_cast<std::size_t>(w)] <= r) out.insert(w);
  return out;
}

// Shortest path from some source to some target using only allowed vertices.
// Ties resolve towards smaller vertex indices.
inline std::optional<Path> shortest_path(const Graph& g, const VertexSet& sources, const VertexSet& targets,
                                         const VertexSet& allowed) {
  std::vector<int> parent(static_cast<std::size_t>(g.order()), -2);
  std::deque<int> q;
  std::optional<int> hit;
  sources.for_each([&](int v) {
    if (!allowed.contains(v) || parent[static_cast<std::size_t>(v)] != -2) return;
    parent[static_cast<std::size_t>(v)] = -1;
    q.push_back(v);
  });
  for (int v : q)
    if (targets.contains(v)) {
      hit = v;
      break;
    }
  while (!hit && !q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v)) {
      if (!allowed.contains(w) || parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = v;
      if (targets.contains(w)) {
        hit = w;
        break;
      }
      q.push_back(w);
    }
  }
  if (!hit) return std::nullopt;
  Path p;
  for (int v = *hit; v != -1; v = parent[static_cast<std::size_t>(v)]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

inline std::optional<Path> shortest_path(const Graph& g, int s, int t, const VertexSet& allowed) {
  VertexSet a = g.empty_set(), b = g.empty_set();
  a.insert(s);
  b.insert(t);
  return shortest_path(g, a, b, allowed);
}

// Connected components of the subgraph induced by `allowed`, ordered by least vertex.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& allowed) {
  std::vector<VertexSet> out;
  VertexSet seen = g.empty_set();
  allowed.for_each([&](int v) {
    if (seen.contains(v)) return;
    VertexSet src = g.empty_set();
    src.insert(v);
    auto dist = bfs_distances(g, src, allowed);
    VertexSet c = g.empty_set();
    for (int w = 0; w < g.order(); ++w)
      if (dist[static_cast<std::size_t>(w)] >= 0) c.insert(w);
    seen |= c;
    out.push_back(std::move(c));
  });
  return out;
}

inline std::vector<VertexSet> components(const Graph& g) { return components(g, g.all()); }

inline bool is_connected(const Graph& g) { return g.order() > 0 && components(g).size() == 1; }

struct BlockDecomposition {
  std::vector<VertexSet> blocks;                          // vertex sets, one per block
  std::vector<std::vector<std::pair<int, int>>> edges;    // edges of each block (u < v)
  VertexSet cut_vertices;
  // Block-cut tree: nodes [0, blocks.size()) are blocks, the rest are cut vertices
  // in increasing index order (see cut_node / node_vertex).
  std::vector<std::vector<int>> tree;
  std::vector<int> node_vertex;                           // tree node -> cut vertex, -1 for blocks
  std::vector<int> cut_node;                              // vertex -> tree node, -1 if not a cut vertex

  // Some block containing v (the unique one unless v is a cut vertex).
  int block_of(int v) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (blocks[b].contains(v)) return static_cast<int>(b);
    return -1;
  }

  // Tree node standing for v: its cut-vertex node, or its unique block.
  int node_of(int v) const {
    int c = cut_node[static_cast<std::size_t>(v)];
    return c >= 0 ? c : block_of(v);
  }
};

// Blocks by the Hopcroft-Tarjan edge-stack method (iterative).
// Isolated vertices form single-vertex blocks.
inline BlockDecomposition blocks(const Graph& g) {
  const int n = g.order();
  BlockDecomposition bd;
  bd.cut_vertices = g.empty_set();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> estack;
  int timer = 0;
  struct Frame {
    int v, parent;
    std::size_t next;
    int children;
  };
  auto pop_block = [&](int u, int w) {
    VertexSet b = g.empty_set();
    std::vector<std::pair<int, int>> es;
    while (true) {
      auto e = estack.back();
      estack.pop_back();
      b.insert(e.first);
      b.insert(e.second);
      es.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
      if (e == std::make_pair(u, w)) break;
    }
    std::sort(es.begin(), es.end());
    bd.blocks.push_back(std::move(b));
    bd.edges.push_back(std::move(es));
  };
  for (int r = 0; r < n; ++r) {
    if (disc[static_cast<std::size_t>(r)] >= 0) continue;
    if (g.degree(r) == 0) {
      VertexSet b = g.empty_set();
      b.insert(r);
      bd.blocks.push_back(std::move(b));
      bd.edges.emplace_back();
      disc[static_cast<std::size_t>(r)] = timer++;
      continue;
    }
    std::vector<Frame> st{{r, -1, 0, 0}};
    disc[static_cast<std::size_t>(r)] = low[static_cast<std::size_t>(r)] = timer++;
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        auto vi = static_cast<std::size_t>(f.v), wi = static_cast<std::size_t>(w);
        if (disc[wi] < 0) {
          estack.emplace_back(f.v, w);
          disc[wi] = low[wi] = timer++;
          ++f.children;
          st.push_back({w, f.v, 0, 0});
        } else if (w != f.parent && disc[wi] < disc[vi]) {
          estack.emplace_back(f.v, w);
          low[vi] = std::min(low[vi], disc[wi]);
        }
      } else {
        int w = f.v;
        st.pop_back();
        if (st.empty()) break;
        Frame& p = st.back();
        auto pi = static_cast<std::size_t>(p.v), wi = static_cast<std::size_t>(w);
        low[pi] = std::min(low[pi], low[wi]);
        if (low[wi] >= disc[pi]) {
          pop_block(p.v, w);
          if (p.parent != -1) bd.cut_vertices.insert(p.v);
        }
      }
    }
    // the root is a cut vertex iff it lies in more than one block
    int in_blocks = 0;
    for (const auto& b : bd.blocks)
      if (b.contains(r)) ++in_blocks;
    if (in_blocks > 1) bd.cut_vertices.insert(r);
  }
  const int nb = static_cast<int>(bd.blocks.size());
  bd.cut_node.assign(static_cast<std::size_t>(n), -1);
  bd.node_vertex.assign(static_cast<std::size_t>(nb), -1);
  bd.cut_vertices.for_each([&](int v) {
    bd.cut_node[static_cast<std::size_t>(v)] = static_cast<int>(bd.node_vertex.size());
    bd.node_vertex.push_back(v);
  });
  bd.tree.assign(bd.node_vertex.size(), {});
  for (int b = 0; b < nb; ++b)
    bd.blocks[static_cast<std::size_t>(b)].for_each([&](int v) {
      int c = bd.cut_node[static_cast<std::size_t>(v)];
      if (c < 0) return;
      bd.tree[static_cast<std::size_t>(b)].push_back(c);
      bd.tree[static_cast<std::size_t>(c)].push_back(b);
    });
  return bd;
}

// Path of tree nodes between two nodes of the block-cut tree (a forest in general).
inline std::optional<std::vector<int>> block_tree_path(const BlockDecomposition& bd, int from, int to) {
  std::vector<int> parent(bd.tree.size(), -2);
  std::deque<int> q{from};
  parent[static_cast<std::size_t>(from)] = -1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (x == to) break;
    for (int y : bd.tree[static_cast<std::size_t>(x)])
      if (parent[static_cast<std::size_t>(y)] == -2) {
        parent[static_cast<std::size_t>(y)] = x;
        q.push_back(y);
      }
  }
  if (parent[static_cast<std::size_t>(to)] == -2) return std::nullopt;
  std::vector<int> p;
  for (int x = to; x != -1; x = parent[static_cast<std::size_t>(x)]) p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

// The chain of blocks linking s to t: blocks B_0..B_{k-1} and attachment vertices
// v_0 = s, v_1, ..., v_k = t with v_j, v_{j+1} in B_j. Empty if s and t are disconnected.
struct BlockChain {
  std::vector<int> blocks;
  std::vector<int> attach;
};

inline BlockChain block_chain(const BlockDecomposition& bd, int s, int t) {
  BlockChain ch;
  if (s == t) return ch;
  int from = bd.node_of(s), to = bd.node_of(t);
  auto path = block_tree_path(bd, from, to);
  if (!path) return ch;
  const int nb = static_cast<int>(bd.blocks.size());
  ch.attach.push_back(s);
  for (int x : *path) {
    if (x < nb) {
      ch.blocks.push_back(x);
    } else if (bd.node_vertex[static_cast<std::size_t>(x)] != s && bd.node_vertex[static_cast<std::size_t>(x)] != t) {
      ch.attach.push_back(bd.node_vertex[static_cast<std::size_t>(x)]);
    }
  }
  ch.attach.push_back(t);
  return ch;
}

// True iff s and t are connected and some bridge separates them.
inline bool separated_by_bridge(const Graph& g, int s, int t) {
  if (s == t) return false;
  auto bd = blocks(g);
  auto ch = block_chain(bd, s, t);
  if (ch.blocks.empty()) return false;
  for (int b : ch.blocks)
    if (bd.blocks[static_cast<std::size_t>(b)].size() == 2) return true;
  return false;
}

namespace detail {

// Unit-capacity max flow on the vertex-split graph. Vertices in `unlimited` may be
// shared by several paths (used for common endpoints).
class VertexFlow {
 public:
  VertexFlow(const Graph& g, const VertexSet& allowed, const VertexSet& sources, const VertexSet& sinks,
             const VertexSet& unlimited, int limit)
      : g_(g) {
    const int n = g.order();
    src_ = 2 * n;
    snk_ = 2 * n + 1;
    adj_.assign(static_cast<std::size_t>(2 * n + 2), {});
    for (int v = 0; v < n; ++v) {
      if (!allowed.contains(v)) continue;
      int cap = unlimited.contains(v) ? limit : 1;
      add(in(v), out(v), cap);
      if (sources.contains(v)) add(src_, in(v), cap);
      if (sinks.contains(v)) add(out(v), snk_, cap);
      for (int w : g.neighbors(v)) {
        if (!allowed.contains(w)) continue;
        // a shared source is never re-entered and a shared sink never left
        if (unlimited.contains(w) && sources.contains(w)) continue;
        if (unlimited.contains(v) && sinks.contains(v)) continue;
        add(out(v), in(w), 1);
      }
    }
    while (flow_ < limit && augment()) ++flow_;
  }

  int flow() const { return flow_; }

  std::vector<Path> paths() {
    std::vector<Path> out;
    for (int i = 0; i < flow_; ++i) {
      Path p;
      int x = src_;
      while (x != snk_) {
        bool moved = false;
        for (auto& e : adj_[static_cast<std::size_t>(x)]) {
          if (e.orig > 0 && e.cap < e.orig) {
            ++e.cap;  // consume one unit
            x = e.to;
            moved = true;
            break;
          }
        }
        if (!moved) break;
        if (x < 2 * g_.order() && x % 2 == 0) p.push_back(x / 2);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

 private:
  struct Edge {
    int to;
    std::size_t rev;
    int cap, orig;
  };
  static int in(int v) { return 2 * v; }
  static int out(int v) { return 2 * v + 1; }
  void add(int a, int b, int cap) {
    adj_[static_cast<std::size_t>(a)].push_back({b, adj_[static_cast<std::size_t>(b)].size(), cap, cap});
    adj_[static_cast<std::size_t>(b)].push_back({a, adj_[static_cast<std::size_t>(a)].size() - 1, 0, 0});
  }
  bool augment() {
    std::vector<std::pair<int, std::size_t>> prev(adj_.size(), {-1, 0});
    std::deque<int> q{src_};
    prev[static_cast<std::size_t>(src_)] = {src_, 0};
    while (!q.empty() && prev[static_cast<std::size_t>(snk_)].first < 0) {
      int x = q.front();
      q.pop_front();
      for (std::size_t i = 0; i < adj_[static_cast<std::size_t>(x)].size(); ++i) {
        const auto& e = adj_[static_cast<std::size_t>(x)][i];
        if (e.cap > 0 && prev[static_cast<std::size_t>(e.to)].first < 0) {
          prev[static_cast<std::size_t>(e.to)] = {x, i};
          q.push_back(e.to);
        }
      }
    }
    if (prev[static_cast<std::size_t>(snk_)].first < 0) return false;
    for (int x = snk_; x != src_;) {
      auto [p, i] = prev[static_cast<std::size_t>(x)];
      auto& e = adj_[static_cast<std::size_t>(p)][i];
      --e.cap;
      ++adj_[static_cast<std::size_t>(x)][e.rev].cap;
      x = p;
    }
    return true;
  }

  const Graph& g_;
  int src_, snk_;
  int flow_ = 0;
  std::vector<std::vector<Edge>> adj_;
};

}  // namespace detail

// Up to `count` pairwise vertex-disjoint X-Y paths inside `allowed`. Each path meets X
// only at its first vertex and Y only at its last; a vertex of X and Y is a
// one-vertex path.
inline std::vector<Path> disjoint_paths(const Graph& g, const VertexSet& x, const VertexSet& y, int count,
                                        const VertexSet& allowed) {
  detail::VertexFlow f(g, allowed, x, y, g.empty_set(), count);
  auto raw = f.paths();
  std::vector<Path> out;
  for (auto& p : raw) {
    std::size_t first = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (x.contains(p[i])) first = i;
    std::size_t last = first;
    while (!y.contains(p[last])) ++last;
    out.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(first), p.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  }
  return out;
}

// Two vertex-disjoint paths between X and Y, or nothing when Menger's bound is below two.
inline std::optional<std::pair<Path, Path>> two_disjoint_paths(const Graph& g, const VertexSet& x,
                                                               const VertexSet& y) {
  auto ps = disjoint_paths(g, x, y, 2, g.all());
  if (ps.size() < 2) return std::nullopt;
  return std::make_pair(ps[0], ps[1]);
}

// Up to `count` internally disjoint s-t paths inside `allowed` (s != t). The direct
// edge st, if present and allowed, counts as one path.
inline std::vector<Path> internally_disjoint_paths(const Graph& g, int s, int t, int count,
                                                   const VertexSet& allowed) {
  VertexSet a = g.empty_set(), b = g.empty_set(), both = g.empty_set();
  a.insert(s);
  b.insert(t);
  both.insert(s);
  both.insert(t);
  detail::VertexFlow f(g, allowed, a, b, both, count);
  return f.paths();
}

}  // namespace insp
