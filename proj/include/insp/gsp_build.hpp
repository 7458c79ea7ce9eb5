#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "forbidden.hpp"
#include "graph.hpp"
#include "graph_algorithms.hpp"
#include "gsp_tree.hpp"

namespace insp {

using GspOrWitness = std::variant<Gsp, ForbiddenWitness>;

inline bool has_witness(const GspOrWitness& r) { return std::holds_alternative<ForbiddenWitness>(r); }

namespace detail {

// G[S], optionally without the edge {drop_u, drop_v}, with index maps both ways.
struct LocalGraph {
  Graph g;
  std::vector<int> host;   // local -> host
  std::vector<int> local;  // host -> local, -1 outside

  int at(int v) const { return local[static_cast<std::size_t>(v)]; }
  int up(int v) const { return host[static_cast<std::size_t>(v)]; }
  Path lift(const Path& p) const {
    Path out;
    for (int v : p) out.push_back(up(v));
    return out;
  }
  VertexSet lift(const VertexSet& s, const Graph& G) const {
    VertexSet out = G.empty_set();
    s.for_each([&](int v) { out.insert(up(v)); });
    return out;
  }
};

inline LocalGraph localize(const Graph& G, const VertexSet& S, int drop_u = -1, int drop_v = -1) {
  GraphBuilder b;
  S.for_each([&](int v) { b.add_vertex(G.label(v)); });
  S.for_each([&](int v) {
    for (int w : G.neighbors(v)) {
      if (w < v || !S.contains(w)) continue;
      if ((v == drop_u && w == drop_v) || (v == drop_v && w == drop_u)) continue;
      b.add_edge(G.label(v), G.label(w));
    }
  });
  LocalGraph l;
  l.g = b.build();
  l.local.assign(static_cast<std::size_t>(G.order()), -1);
  for (int i = 0; i < l.g.order(); ++i) {
    int h = G.index(l.g.label(i));
    l.host.push_back(h);
    l.local[static_cast<std::size_t>(h)] = i;
  }
  return l;
}

inline Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

// p followed by q, which must start where p ends.
inline Path join(Path p, const Path& q) {
  if (p.empty()) return q;
  if (q.empty() || q.front() != p.back()) throw std::logic_error("paths do not meet");
  p.insert(p.end(), q.begin() + 1, q.end());
  return p;
}

inline VertexSet path_set(const Graph& G, const Path& p) {
  VertexSet s = G.empty_set();
  for (int v : p) s.insert(v);
  return s;
}

inline VertexSet interior(const Gsp& t) {
  VertexSet s = t->vertices;
  s.erase(t->a);
  s.erase(t->b);
  return s;
}

// K4 subdivision with branch vertices a, b, v, w: two internally disjoint a-b paths
// of H (which lacks the edge ab), a shortest link R between their interiors inside
// the component C, and the outer a-b path.
inline ForbiddenWitness k4_witness(const Graph& G, const LocalGraph& h, const VertexSet& c, int a, int b,
                                   const Path& outer) {
  auto ps = internally_disjoint_paths(h.g, h.at(a), h.at(b), 2, h.g.all());
  if (ps.size() < 2) throw std::logic_error("block without two disjoint terminal paths");
  Path p = h.lift(ps[0]), q = h.lift(ps[1]);
  VertexSet ip = G.empty_set(), iq = G.empty_set();
  for (std::size_t i = 1; i + 1 < p.size(); ++i) ip.insert(p[i]);
  for (std::size_t i = 1; i + 1 < q.size(); ++i) iq.insert(q[i]);
  auto r = shortest_path(G, ip, iq, c);
  if (!r) throw std::logic_error("component does not link the two paths");
  int v = r->front(), w = r->back();
  auto cut = [](const Path& x, int at) {
    auto it = std::find(x.begin(), x.end(), at);
    return std::make_pair(Path(x.begin(), std::next(it)), Path(it, x.end()));
  };
  auto [av, vb] = cut(p, v);
  auto [aw, wb] = cut(q, w);
  ForbiddenWitness wt;
  wt.family = Family::F1;
  wt.anchors = {G.label(a), G.label(b), G.label(v), G.label(w)};
  for (const Path& x : {outer, av, aw, vb, wb, *r}) wt.paths.push_back(labels(G, x));
  return wt;
}

// Series-parallel decomposition of (G[S], a, b) following the component / block
// chain recursion. `outer` is an a-b path whose interior avoids S, or empty when
// none exists. When a and b turn out to share a block of some component, the
// outer path closes a K4 subdivision, which is returned instead.
inline GspOrWitness sp_rec(const Graph& G, const VertexSet& S, int a, int b, const Path& outer) {
  if (S.size() == 2) return gsp_edge(G, a, b);
  VertexSet inner = S;
  inner.erase(a);
  inner.erase(b);
  auto comps = components(G, inner);
  const bool ab = G.adjacent(a, b);
  std::vector<Gsp> pieces;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const VertexSet& c = comps[i];
    Path out;
    if (ab) {
      out = {a, b};
    } else if (comps.size() > 1) {
      VertexSet via = comps[i == 0 ? 1 : 0];
      via.insert(a);
      via.insert(b);
      auto p = shortest_path(G, a, b, via);
      if (!p) throw InputError("a component between the terminals attaches to only one of them");
      out = *p;
    } else {
      out = outer;
    }
    VertexSet hs = c;
    hs.insert(a);
    hs.insert(b);
    auto h = localize(G, hs, a, b);
    auto bd = blocks(h.g);
    auto chain = block_chain(bd, h.at(a), h.at(b));
    if (chain.blocks.empty()) throw InputError("a component between the terminals attaches to only one of them");
    std::size_t covered = 0;
    for (int blk : chain.blocks) covered += bd.blocks[static_cast<std::size_t>(blk)].size();
    if (covered != hs.size() + chain.blocks.size() - 1)
      throw InputError("graph is not 2-connected once the terminals are joined");
    if (chain.blocks.size() == 1) {
      if (out.empty()) throw InputError("terminals are neither adjacent nor a separating pair");
      return k4_witness(G, h, c, a, b, out);
    }
    const std::size_t k = chain.blocks.size();
    std::vector<VertexSet> bs;
    for (int blk : chain.blocks) bs.push_back(h.lift(bd.blocks[static_cast<std::size_t>(blk)], G));
    std::vector<Gsp> parts;
    for (std::size_t j = 0; j < k; ++j) {
      int vj = h.up(chain.attach[j]), vk = h.up(chain.attach[j + 1]);
      Path oj;
      if (!out.empty()) {
        VertexSet before = G.empty_set(), after = G.empty_set();
        for (std::size_t x = 0; x < j; ++x) before |= bs[x];
        for (std::size_t x = j + 1; x < k; ++x) after |= bs[x];
        Path back = j == 0 ? Path{a} : *shortest_path(G, a, vj, before);
        Path fwd = j + 1 == k ? Path{b} : *shortest_path(G, b, vk, after);
        oj = join(join(reversed(back), out), fwd);
      }
      auto r = sp_rec(G, bs[j], vj, vk, oj);
      if (has_witness(r)) return r;
      parts.push_back(std::get<Gsp>(r));
    }
    pieces.push_back(fold(GspOp::Series, parts));
  }
  if (ab) pieces.push_back(gsp_edge(G, a, b));
  return fold(GspOp::Parallel, pieces);
}

inline void chain_segments(const Gsp& t, std::vector<Gsp>& out) {
  switch (t->op) {
    case GspOp::Series:
      chain_segments(t->left, out);
      chain_segments(t->right, out);
      break;
    case GspOp::Branch:
    case GspOp::BranchPrime: chain_segments(t->main(), out); break;
    default: out.push_back(t);
  }
}

inline Bipath make_bipath(const VertexSet& like, Path p1, Path p2) {
  Bipath b{std::move(p1), std::move(p2), VertexSet(like.universe())};
  for (int v : b.p1) b.vertices.insert(v);
  for (int v : b.p2) b.vertices.insert(v);
  return b;
}

}  // namespace detail

using detail::Bipath;

// At least c(t) pairwise internally disjoint bipaths between the terminals of t.
// A non-bridged series chain is a sequence of parallel segments; one path is taken
// through each side of every segment.
inline std::vector<Bipath> extract_bipaths(const Gsp& t) {
  std::vector<Bipath> out;
  switch (t->op) {
    case GspOp::Edge: break;
    case GspOp::Parallel: {
      out = extract_bipaths(t->left);
      auto more = extract_bipaths(t->right);
      out.insert(out.end(), more.begin(), more.end());
      break;
    }
    case GspOp::Branch:
    case GspOp::BranchPrime: out = extract_bipaths(t->main()); break;
    case GspOp::Series: {
      if (t->bridged) break;
      std::vector<Gsp> segs;
      detail::chain_segments(t, segs);
      Path p1, p2;
      for (const auto& s : segs) {
        if (s->op != GspOp::Parallel) throw std::logic_error("non-bridged chain with a bridged segment");
        p1 = detail::join(p1, terminal_path(s->left));
        p2 = detail::join(p2, terminal_path(s->right));
      }
      out.push_back(detail::make_bipath(t->vertices, p1, p2));
      break;
    }
  }
  return out;
}

// Parallel nodes of complexity at least 2 whose children are both simple.
inline std::vector<Gsp> minimal_complex_nodes(const Gsp& t) {
  std::vector<Gsp> out;
  for_each_node(t, [&](const Gsp& n) {
    if (n->op == GspOp::Parallel && n->complexity >= 2 && n->left->simple && n->right->simple) out.push_back(n);
  });
  return out;
}

namespace detail {

// Two distinct complex nodes of one decomposition meet at most in terminals. Their
// bipaths give F2 when the terminal pairs coincide and F3 otherwise; paths are
// routed inside `scope`, a 2-connected part of G containing both.
inline ForbiddenWitness conflict_witness(const Graph& G, const VertexSet& scope, const Gsp& x, const Gsp& y) {
  auto bx = extract_bipaths(x), by = extract_bipaths(y);
  if (bx.size() < 2 || by.size() < 2) throw std::logic_error("complex node with fewer than two bipaths");
  std::vector<int> shared;
  for (int v : {x->a, x->b})
    if (v == y->a || v == y->b) shared.push_back(v);
  ForbiddenWitness w;
  if (shared.size() == 2) {
    w.family = Family::F2;
    w.anchors = {G.label(x->a), G.label(x->b)};
    w.bipaths = {bipath_labels(G, bx[0]), bipath_labels(G, bx[1]), bipath_labels(G, by[0])};
    return w;
  }
  w.family = Family::F3;
  w.bipaths = {bipath_labels(G, bx[0]), bipath_labels(G, bx[1]), bipath_labels(G, by[0]), bipath_labels(G, by[1])};
  VertexSet avoid = x->vertices | y->vertices;
  if (shared.size() == 1) {
    // The second connector collapses to the shared terminal.
    int c = shared[0];
    int xo = x->a == c ? x->b : x->a, yo = y->a == c ? y->b : y->a;
    VertexSet allowed = scope - avoid;
    allowed.insert(xo);
    allowed.insert(yo);
    auto p = shortest_path(G, xo, yo, allowed);
    if (!p) throw std::logic_error("no connector between complex nodes");
    w.degenerate = true;
    w.anchors = {G.label(xo), G.label(c), G.label(yo), G.label(c)};
    w.paths = {labels(G, *p), {G.label(c)}};
    return w;
  }
  VertexSet tx = G.empty_set(), ty = G.empty_set();
  tx.insert(x->a);
  tx.insert(x->b);
  ty.insert(y->a);
  ty.insert(y->b);
  VertexSet allowed = (scope - avoid) | tx | ty;
  auto ps = disjoint_paths(G, tx, ty, 2, allowed);
  if (ps.size() < 2) throw std::logic_error("no disjoint connectors between complex nodes");
  w.anchors = {G.label(ps[0].front()), G.label(ps[1].front()), G.label(ps[0].back()), G.label(ps[1].back())};
  w.paths = {labels(G, ps[0]), labels(G, ps[1])};
  return w;
}

// Three bipaths: two of the complex node x, one of the non-bridged node y.
inline ForbiddenWitness triple_witness(const Graph& G, const Gsp& x, const Gsp& y) {
  auto bx = extract_bipaths(x), by = extract_bipaths(y);
  if (bx.size() < 2 || by.empty()) throw std::logic_error("missing bipaths for F2");
  ForbiddenWitness w;
  w.family = Family::F2;
  w.anchors = {G.label(x->a), G.label(x->b)};
  w.bipaths = {bipath_labels(G, bx[0]), bipath_labels(G, bx[1]), bipath_labels(G, by[0])};
  return w;
}

inline Gsp rotate(Gsp h, Gsp k) {
  if (h->complexity + k->complexity <= 1) return gsp_parallel(h, k);
  if (k->vertices.size() < h->vertices.size()) std::swap(h, k);
  if (h->op == GspOp::Parallel) {
    Gsp zero = h->left->complexity == 0 ? h->left : h->right;
    Gsp one = zero == h->left ? h->right : h->left;
    return rotate(one, gsp_parallel(zero, k));
  }
  if (h->op == GspOp::Series) {
    // h = B0 . B1 ... Bn from a to b; re-root the cycle at the end of B0.
    std::vector<Gsp> bs;
    series_pieces(h, bs);
    std::vector<Gsp> chain{k};
    for (std::size_t j = bs.size(); j-- > 1;) chain.push_back(reverse(bs[j]));
    return rotate(bs[0], fold(GspOp::Series, chain));
  }
  throw InputError("rotate_parallel expects series-parallel operands");
}

inline Gsp attach_at(const Gsp& t, const Gsp& h, int c) {
  if (t->a == c) return compose(GspOp::Branch, t, h);
  if (t->b == c) return compose(GspOp::BranchPrime, t, h);
  if (t->is_leaf()) throw InputError("merge vertex is not in the decomposition");
  if (t->left->vertices.contains(c)) return compose(t->op, attach_at(t->left, h, c), t->right);
  return compose(t->op, t->left, attach_at(t->right, h, c));
}

}  // namespace detail

// Simple series-parallel decomposition of H o_p K with the first shared terminal
// kept first. Both operands must be simple series-parallel with equal terminals.
inline Gsp rotate_parallel(const Gsp& h, const Gsp& k) {
  if (!h->simple || !k->simple || !h->series_parallel || !k->series_parallel)
    throw InputError("rotate_parallel expects simple series-parallel operands");
  if (h->a != k->a || h->b != k->b) throw InputError("rotate_parallel operands must share both terminals");
  return detail::rotate(h, k);
}

// Decomposition of G u H where H meets G only in c, a terminal of H. H's tree is kept
// as a subtree and hangs off the highest node having c as a terminal.
inline Gsp merge_block(const Gsp& tg, const Gsp& th, int c) {
  VertexSet common = tg->vertices & th->vertices;
  if (common.size() != 1 || !common.contains(c)) throw InputError("merge_block: graphs must meet exactly in c");
  if (th->a != c && th->b != c) throw InputError("merge_block: c must be a terminal of the attached graph");
  Gsp h = th->a == c ? th : detail::reverse(th);
  return detail::attach_at(tg, h, c);
}

// Series-parallel decomposition of (G, a, b) for 2-connected K4-subdivision-free G
// with a, b adjacent or separating.
inline Gsp sp_decompose(const Graph& G, int a, int b) {
  if (a < 0 || b < 0 || a >= G.order() || b >= G.order() || a == b) throw InputError("invalid terminals");
  if (!is_connected(G) || blocks(G).blocks.size() != 1) throw InputError("sp_decompose needs a 2-connected graph");
  if (!G.adjacent(a, b)) {
    VertexSet rest = G.all();
    rest.erase(a);
    rest.erase(b);
    if (components(G, rest).size() < 2) throw InputError("terminals are neither adjacent nor a separating pair");
  }
  auto r = detail::sp_rec(G, G.all(), a, b, {});
  if (has_witness(r)) throw InputError("graph contains a subdivision of K4");
  return std::get<Gsp>(r);
}

namespace detail {

// Blocks that are leaves of the block-cut tree restricted to `alive`, with their
// cut vertex.
inline std::vector<std::pair<int, int>> leaf_blocks(const BlockDecomposition& bd, const std::vector<bool>& alive) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
    if (!alive[i]) continue;
    std::vector<int> shared;
    bd.blocks[i].for_each([&](int v) {
      if (!bd.cut_vertices.contains(v)) return;
      for (std::size_t j = 0; j < bd.blocks.size(); ++j)
        if (j != i && alive[j] && bd.blocks[j].contains(v)) {
          shared.push_back(v);
          return;
        }
    });
    if (shared.size() == 1) out.emplace_back(static_cast<int>(i), shared[0]);
  }
  return out;
}

// Peeling order of all blocks but `keep`, leaves first.
inline std::vector<std::pair<int, int>> peel_order(const BlockDecomposition& bd, int keep) {
  std::vector<bool> alive(bd.blocks.size(), true);
  std::vector<std::pair<int, int>> order;
  for (std::size_t round = 1; round < bd.blocks.size(); ++round) {
    for (auto [blk, c] : leaf_blocks(bd, alive))
      if (blk != keep) {
        order.emplace_back(blk, c);
        alive[static_cast<std::size_t>(blk)] = false;
        break;
      }
  }
  return order;
}

struct BlockOutcome {
  Gsp tree;
  std::optional<ForbiddenWitness> witness;
  Gsp bad;  // the complex node that keeps v from being a terminal
};

// Simple decomposition of the block G[block] with v (when v >= 0) as first terminal.
inline BlockOutcome simple_block(const Graph& G, const VertexSet& block, int v) {
  auto members = block.members();
  if (members.size() == 2) {
    int x = v >= 0 ? v : members[0];
    return {gsp_edge(G, x, x == members[0] ? members[1] : members[0]), std::nullopt, nullptr};
  }
  int root = v >= 0 ? v : members[0];
  int nb = -1;
  for (int w : G.neighbors(root))
    if (block.contains(w) && (nb < 0 || w < nb)) nb = w;
  auto r = sp_rec(G, block, root, nb, {});
  if (has_witness(r)) return {nullptr, std::get<ForbiddenWitness>(r), nullptr};
  Gsp t = std::get<Gsp>(r);
  if (t->simple) return {t, std::nullopt, nullptr};
  auto mins = minimal_complex_nodes(t);
  if (mins.size() >= 2) return {nullptr, conflict_witness(G, block, mins[0], mins[1]), nullptr};
  Gsp h = mins.at(0);
  if (v >= 0 && !h->vertices.contains(v)) return {nullptr, std::nullopt, h};

  // Redecompose with h's terminals at the root; everything outside h must be bridged.
  auto r2 = sp_rec(G, block, h->a, h->b, {});
  if (has_witness(r2)) return {nullptr, std::get<ForbiddenWitness>(r2), nullptr};
  std::vector<Gsp> pieces, outside;
  parallel_pieces(std::get<Gsp>(r2), pieces);
  VertexSet inside = interior(h);
  for (const auto& p : pieces) {
    bool in_h = p->is_leaf() ? h->terminal_edge : interior(p).intersects(inside);
    if (in_h) continue;
    if (!p->simple) return {nullptr, conflict_witness(G, block, h, minimal_complex_nodes(p).at(0)), nullptr};
    if (!p->bridged) return {nullptr, triple_witness(G, h, p), nullptr};
    outside.push_back(p);
  }
  outside.push_back(h->left);
  Gsp g0 = fold(GspOp::Parallel, outside), k = h->right;
  if (v == h->b) {
    g0 = reverse(g0);
    k = reverse(k);
  }
  return {rotate_parallel(g0, k), std::nullopt, nullptr};
}

// Two leaf blocks whose complex nodes avoid their cut vertices: route both terminal
// pairs through the cut vertices into an F3 member.
inline ForbiddenWitness bad_leaves_witness(const Graph& G, const VertexSet& l1, int c1, const Gsp& h1,
                                           const VertexSet& l2, int c2, const Gsp& h2) {
  auto to_cut = [&](const VertexSet& leaf, const Gsp& h, int from, int cut) {
    VertexSet allowed = leaf - h->vertices;
    allowed.insert(from);
    auto p = shortest_path(G, from, cut, allowed);
    if (!p) throw std::logic_error("leaf terminal cannot reach its cut vertex");
    return *p;
  };
  Path mid{c1};
  if (c1 != c2) {
    VertexSet allowed = G.all() - l1 - l2;
    allowed.insert(c1);
    allowed.insert(c2);
    auto p = shortest_path(G, c1, c2, allowed);
    if (!p) throw std::logic_error("leaf blocks are not connected");
    mid = *p;
  }
  Path p1 = join(join(to_cut(l1, h1, h1->a, c1), mid), reversed(to_cut(l2, h2, h2->a, c2)));
  Path p2 = join(join(to_cut(l1, h1, h1->b, c1), mid), reversed(to_cut(l2, h2, h2->b, c2)));
  auto b1 = extract_bipaths(h1), b2 = extract_bipaths(h2);
  ForbiddenWitness w;
  w.family = Family::F3;
  w.anchors = {G.label(h1->a), G.label(h1->b), G.label(h2->a), G.label(h2->b)};
  w.bipaths = {bipath_labels(G, b1.at(0)), bipath_labels(G, b1.at(1)), bipath_labels(G, b2.at(0)),
               bipath_labels(G, b2.at(1))};
  w.paths = {labels(G, p1), labels(G, p2)};
  return w;
}

}  // namespace detail

// GSP decomposition of (G, a, b) for connected K4-subdivision-free G, where a and b
// lie in one block and are adjacent or separate that block.
inline Gsp gsp_decompose(const Graph& G, int a, int b) {
  if (a < 0 || b < 0 || a >= G.order() || b >= G.order() || a == b) throw InputError("invalid terminals");
  if (!is_connected(G)) throw InputError("gsp_decompose needs a connected graph");
  auto bd = blocks(G);
  int home = -1;
  for (std::size_t i = 0; i < bd.blocks.size(); ++i)
    if (bd.blocks[i].contains(a) && bd.blocks[i].contains(b)) home = static_cast<int>(i);
  if (home < 0) throw InputError("terminals do not share a block");
  const VertexSet& hb = bd.blocks[static_cast<std::size_t>(home)];
  if (!G.adjacent(a, b)) {
    VertexSet rest = hb;
    rest.erase(a);
    rest.erase(b);
    if (components(G, rest).size() < 2) throw InputError("terminals are neither adjacent nor a separating pair");
  }
  auto unwrap = [](const GspOrWitness& r) {
    if (has_witness(r)) throw InputError("graph contains a subdivision of K4");
    return std::get<Gsp>(r);
  };
  Gsp t = unwrap(detail::sp_rec(G, hb, a, b, {}));
  auto order = detail::peel_order(bd, home);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexSet& leaf = bd.blocks[static_cast<std::size_t>(it->first)];
    int c = it->second, nb = -1;
    for (int w : G.neighbors(c))
      if (leaf.contains(w) && (nb < 0 || w < nb)) nb = w;
    t = merge_block(t, unwrap(detail::sp_rec(G, leaf, c, nb, {})), c);
  }
  return t;
}

// A simple GSP decomposition of G, or a member of F1, F2 or F3 inside G.
inline GspOrWitness build_simple_gsp(const Graph& G) {
  if (G.order() < 2 || !is_connected(G)) throw InputError("classification needs a connected graph with at least 2 vertices");
  if (auto w = has_k4_subdivision(G)) return *w;
  auto bd = blocks(G);
  std::vector<bool> alive(bd.blocks.size(), true);
  std::map<std::pair<int, int>, detail::BlockOutcome> cache;
  std::vector<std::pair<int, Gsp>> peeled;  // cut vertex, leaf tree
  for (std::size_t left = bd.blocks.size(); left > 1; --left) {
    std::vector<std::pair<int, int>> bad;
    bool done = false;
    for (auto [blk, c] : detail::leaf_blocks(bd, alive)) {
      auto key = std::make_pair(blk, c);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, detail::simple_block(G, bd.blocks[static_cast<std::size_t>(blk)], c)).first;
      const auto& out = it->second;
      if (out.witness) return *out.witness;
      if (out.tree) {
        peeled.emplace_back(c, out.tree);
        alive[static_cast<std::size_t>(blk)] = false;
        done = true;
        break;
      }
      bad.push_back(key);
    }
    if (!done) {
      if (bad.size() < 2) throw std::logic_error("block-cut tree without two leaves");
      auto [b1, c1] = bad[0];
      auto [b2, c2] = bad[1];
      return detail::bad_leaves_witness(G, bd.blocks[static_cast<std::size_t>(b1)], c1, cache[bad[0]].bad,
                                        bd.blocks[static_cast<std::size_t>(b2)], c2, cache[bad[1]].bad);
    }
  }
  int last = static_cast<int>(std::find(alive.begin(), alive.end(), true) - alive.begin());
  auto out = detail::simple_block(G, bd.blocks[static_cast<std::size_t>(last)], -1);
  if (out.witness) return *out.witness;
  Gsp t = out.tree;
  for (auto it = peeled.rbegin(); it != peeled.rend(); ++it) t = merge_block(t, it->second, it->first);
  if (!decomposes(G, t) || !t->simple) throw std::logic_error("constructed decomposition failed validation");
  return t;
}

struct Classification {
  bool yes = false;
  Gsp tree;
  std::optional<ForbiddenWitness> witness;
};

// Topological inspection number at most 3 exactly when a simple GSP decomposition
// exists; otherwise the forbidden subgraph found is reported.
inline Classification classify_topological_3(const Graph& G) {
  auto r = build_simple_gsp(G);
  if (has_witness(r)) return {false, nullptr, std::get<ForbiddenWitness>(r)};
  return {true, std::get<Gsp>(r), std::nullopt};
}

// The minimal complex node of t, or the witness formed by two incomparable ones.
inline GspOrWitness minimal_complex_descendant(const Graph& G, const Gsp& t) {
  auto mins = minimal_complex_nodes(t);
  if (mins.empty()) throw InputError("decomposition is simple");
  if (mins.size() == 1) return mins[0];
  return detail::conflict_witness(G, t->vertices, mins[0], mins[1]);
}

struct ComplexityEntry {
  Gsp node;
  int complexity;
  bool bridged;
};

// Per-node complexity and bridgedness in pre-order.
inline std::vector<ComplexityEntry> complexity_report(const Gsp& t) {
  std::vector<ComplexityEntry> out;
  for_each_node(t, [&](const Gsp& n) { out.push_back({n, n->complexity, n->bridged}); });
  return out;
}

}  // namespace insp
