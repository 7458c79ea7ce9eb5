#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "subdivision.hpp"

namespace insp {

enum class GspOp { Edge, Series, Parallel, Branch, BranchPrime };

inline const char* op_name(GspOp op) {
  switch (op) {
    case GspOp::Edge: return "edge";
    case GspOp::Series: return "series";
    case GspOp::Parallel: return "parallel";
    case GspOp::Branch: return "branch";
    case GspOp::BranchPrime: return "branch'";
  }
  return "?";
}

inline GspOp op_from_name(const std::string& s) {
  if (s == "edge") return GspOp::Edge;
  if (s == "series") return GspOp::Series;
  if (s == "parallel") return GspOp::Parallel;
  if (s == "branch") return GspOp::Branch;
  if (s == "branch'" || s == "branch_prime") return GspOp::BranchPrime;
  throw InputError("unknown GSP operation '" + s + "'");
}

struct GspNode;
using Gsp = std::shared_ptr<const GspNode>;

// A node (H, a, b) of a GSP decomposition over a fixed host graph. Children follow
// the operand order of the operation: for series (H,a,c),(K,c,b); for parallel
// (H,a,b),(K,a,b); for branch the main child (H,a,b) and the attached (K,a,w);
// for branch' the main child (H,a,b) and the attached (K,b,w). Derived data is
// filled in by the constructors below and never changes.
struct GspNode {
  GspOp op = GspOp::Edge;
  int a = -1, b = -1;
  Gsp left, right;
  VertexSet vertices;
  std::size_t edge_count = 0;
  std::size_t node_count = 1;
  int complexity = 0;
  bool bridged = true;
  bool simple = true;        // every subtree has complexity at most 1
  bool terminal_edge = true;    // contains the edge ab
  bool series_parallel = true;  // no branch operations below

  bool is_leaf() const { return op == GspOp::Edge; }
  const Gsp& main() const { return left; }
  const Gsp& attached() const { return right; }
};

inline Gsp gsp_edge(const Graph& host, int u, int v) {
  if (u == v || !host.adjacent(u, v))
    throw InputError("GSP leaf is not an edge: " + host.label(u) + " " + host.label(v));
  auto n = std::make_shared<GspNode>();
  n->a = u;
  n->b = v;
  n->vertices = host.empty_set();
  n->vertices.insert(u);
  n->vertices.insert(v);
  n->edge_count = 1;
  return n;
}

namespace detail {

inline VertexSet pair_set(const VertexSet& like, int u, int v) {
  VertexSet s(like.universe());
  s.insert(u);
  if (v >= 0) s.insert(v);
  return s;
}

}  // namespace detail

// x op y with the intersection and terminal constraints of each operation.
inline Gsp compose(GspOp op, const Gsp& x, const Gsp& y) {
  if (!x || !y) throw InputError("GSP composition of an empty tree");
  if (x->vertices.universe() != y->vertices.universe()) throw InputError("GSP operands over different hosts");
  VertexSet common = x->vertices & y->vertices;
  auto n = std::make_shared<GspNode>();
  n->op = op;
  n->left = x;
  n->right = y;
  switch (op) {
    case GspOp::Series:
      if (x->b != y->a) throw InputError("series: second operand must start at the first's end terminal");
      if (x->a == y->b) throw InputError("series: terminals would coincide");
      if (common != detail::pair_set(common, x->b, -1))
        throw InputError("series: operands must meet exactly in the middle terminal");
      n->a = x->a;
      n->b = y->b;
      n->bridged = x->bridged || y->bridged;
      n->complexity = n->bridged ? 0 : 1;
      n->terminal_edge = false;
      break;
    case GspOp::Parallel:
      if (x->a != y->a || x->b != y->b) throw InputError("parallel: operands must share both terminals");
      if (common != detail::pair_set(common, x->a, x->b))
        throw InputError("parallel: operands must meet exactly in the terminals");
      if (x->terminal_edge && y->terminal_edge) throw InputError("parallel: both operands contain the terminal edge");
      n->a = x->a;
      n->b = x->b;
      n->bridged = false;
      n->complexity = x->complexity + y->complexity;
      n->terminal_edge = x->terminal_edge || y->terminal_edge;
      break;
    case GspOp::Branch:
    case GspOp::BranchPrime: {
      int pin = op == GspOp::Branch ? x->a : x->b;
      if (y->a != pin)
        throw InputError(std::string(op_name(op)) + ": attached operand must start at the " +
                         (op == GspOp::Branch ? "first" : "second") + " terminal");
      if (common != detail::pair_set(common, pin, -1))
        throw InputError(std::string(op_name(op)) + ": operands must meet exactly in the pinned terminal");
      n->a = x->a;
      n->b = x->b;
      n->bridged = x->bridged;
      n->complexity = x->complexity;
      n->terminal_edge = x->terminal_edge;
      break;
    }
    case GspOp::Edge:
      throw InputError("edge is not a binary operation");
  }
  n->vertices = x->vertices | y->vertices;
  n->edge_count = x->edge_count + y->edge_count;
  n->node_count = 1 + x->node_count + y->node_count;
  n->simple = x->simple && y->simple && n->complexity <= 1;
  n->series_parallel = x->series_parallel && y->series_parallel && (op == GspOp::Series || op == GspOp::Parallel);
  return n;
}

inline Gsp gsp_series(const Gsp& x, const Gsp& y) { return compose(GspOp::Series, x, y); }
inline Gsp gsp_parallel(const Gsp& x, const Gsp& y) { return compose(GspOp::Parallel, x, y); }

// Left folds; the list must be non-empty.
inline Gsp fold(GspOp op, const std::vector<Gsp>& parts) {
  if (parts.empty()) throw InputError("fold of an empty list");
  Gsp acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = compose(op, acc, parts[i]);
  return acc;
}

// Pre-order traversal.
inline void for_each_node(const Gsp& t, const std::function<void(const Gsp&)>& f) {
  if (!t) return;
  f(t);
  for_each_node(t->left, f);
  for_each_node(t->right, f);
}

inline std::vector<std::pair<int, int>> leaf_edges(const Gsp& t) {
  std::vector<std::pair<int, int>> out;
  for_each_node(t, [&](const Gsp& n) {
    if (n->is_leaf()) out.emplace_back(n->a, n->b);
  });
  return out;
}

// The node's own graph, with host labels.
inline Graph node_graph(const Graph& host, const Gsp& t) {
  GraphBuilder b;
  t->vertices.for_each([&](int v) { b.add_vertex(host.label(v)); });
  for (auto [u, v] : leaf_edges(t)) b.add_edge(host.label(u), host.label(v));
  return b.build();
}

// Some path from the first terminal to the second, read off the tree.
inline Path terminal_path(const Gsp& t) {
  switch (t->op) {
    case GspOp::Edge: return {t->a, t->b};
    case GspOp::Series: {
      Path p = terminal_path(t->left);
      Path q = terminal_path(t->right);
      p.insert(p.end(), q.begin() + 1, q.end());
      return p;
    }
    default: return terminal_path(t->left);
  }
}

// The tree is a decomposition of the whole host: every host vertex and edge is
// covered and every leaf is a host edge. Operation constraints hold by construction.
inline bool decomposes(const Graph& host, const Gsp& t) {
  if (!t || t->vertices.universe() != static_cast<std::size_t>(host.order())) return false;
  if (t->vertices != host.all() || t->edge_count != host.size()) return false;
  for (auto [u, v] : leaf_edges(t))
    if (!host.adjacent(u, v)) return false;
  return true;
}

// Terminals of every node separate its other vertices from the rest of the host.
inline bool terminals_separate(const Graph& host, const Gsp& t) {
  bool ok = true;
  for_each_node(t, [&](const Gsp& n) {
    n->vertices.for_each([&](int v) {
      if (v == n->a || v == n->b) return;
      for (int w : host.neighbors(v))
        if (!n->vertices.contains(w)) ok = false;
    });
  });
  return ok;
}

// Complexity recomputed from the definition, bridgedness by bridge search on the
// node's graph. Used to cross-check the cached values.
inline int complexity_from_definition(const Graph& host, const Gsp& t) {
  switch (t->op) {
    case GspOp::Parallel:
      return complexity_from_definition(host, t->left) + complexity_from_definition(host, t->right);
    case GspOp::Branch:
    case GspOp::BranchPrime:
      return complexity_from_definition(host, t->main());
    default: {
      Graph h = node_graph(host, t);
      bool br = separated_by_bridge(h, h.index(host.label(t->a)), h.index(host.label(t->b)));
      return br ? 0 : 1;
    }
  }
}

// Whether (g, a, b) has a bridge lying on every a-b path.
inline bool is_bridged(const Graph& g, int a, int b) { return separated_by_bridge(g, a, b); }

namespace detail {

// (G, b, a) from (G, a, b), node by node; complexity of every subtree is unchanged.
inline Gsp reverse(const Gsp& t) {
  switch (t->op) {
    case GspOp::Edge: {
      auto n = std::make_shared<GspNode>(*t);
      std::swap(n->a, n->b);
      return n;
    }
    case GspOp::Series:
    case GspOp::Parallel:
      return compose(t->op, reverse(t->right), reverse(t->left));
    case GspOp::Branch:
      return compose(GspOp::BranchPrime, reverse(t->main()), t->attached());
    case GspOp::BranchPrime:
      return compose(GspOp::Branch, reverse(t->main()), t->attached());
  }
  return t;
}

// Maximal series chain below t: the pieces in order from t->a to t->b.
inline void series_pieces(const Gsp& t, std::vector<Gsp>& out) {
  if (t->op == GspOp::Series) {
    series_pieces(t->left, out);
    series_pieces(t->right, out);
  } else {
    out.push_back(t);
  }
}

// Maximal parallel family below t, all with terminals (t->a, t->b).
inline void parallel_pieces(const Gsp& t, std::vector<Gsp>& out) {
  if (t->op == GspOp::Parallel) {
    parallel_pieces(t->left, out);
    parallel_pieces(t->right, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace detail

// Decomposition of the terminal-swapped graph. Series and parallel children swap
// order and are inverted; branch and branch' exchange.
inline Gsp invert(const Gsp& t) {
  if (!t->simple) throw InputError("invert expects a simple decomposition");
  return detail::reverse(t);
}

// The decomposition of a subdivision: each node keeps its terminals and each leaf
// becomes the series chain along its subdivided edge.
inline Gsp subdivide_decomposition(const Graph& base, const Gsp& t, const SubdividedGraph& h) {
  if (!(h.base() == base)) throw InputError("subdivision does not belong to this base graph");
  const Graph& d = h.derived();
  std::function<Gsp(const Gsp&)> rec = [&](const Gsp& n) -> Gsp {
    if (n->is_leaf()) {
      auto p = h.edge_path(base.label(n->a), base.label(n->b));
      std::vector<Gsp> parts;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) parts.push_back(gsp_edge(d, p[i], p[i + 1]));
      return fold(GspOp::Series, parts);
    }
    return compose(n->op, rec(n->left), rec(n->right));
  };
  return rec(t);
}

// Indented one-line-per-node rendering, for diagnostics.
inline std::string to_string(const Graph& host, const Gsp& t, int indent = 0) {
  std::string s(static_cast<std::size_t>(indent), ' ');
  s += op_name(t->op);
  s += " (" + host.label(t->a) + "," + host.label(t->b) + ") c=" + std::to_string(t->complexity) + "\n";
  if (!t->is_leaf()) {
    s += to_string(host, t->left, indent + 2);
    s += to_string(host, t->right, indent + 2);
  }
  return s;
}

}  // namespace insp
