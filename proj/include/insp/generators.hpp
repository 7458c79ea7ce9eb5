#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "subdivision.hpp"

namespace insp::gen {

inline Graph path(int n) {
  if (n < 1) throw InputError("path needs at least one vertex");
  GraphBuilder b;
  b.add_vertex("0");
  for (int i = 1; i < n; ++i) b.add_edge(std::to_string(i - 1), std::to_string(i));
  return b.build();
}

inline Graph cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least three vertices");
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_edge(std::to_string(i), std::to_string((i + 1) % n));
  return b.build();
}

inline Graph complete(int n) {
  if (n < 1) throw InputError("complete graph needs at least one vertex");
  GraphBuilder b;
  b.add_vertex("0");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(std::to_string(i), std::to_string(j));
  return b.build();
}

// n x m grid; vertex (a,b) is labelled v{a*m+b}.
inline Graph grid(int n, int m) {
  if (n < 2 || m < 2) throw InputError("grid sides must be at least 2");
  auto name = [m](int a, int b) { return "v" + std::to_string(a * m + b); };
  GraphBuilder b;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < m; ++c) {
      if (a + 1 < n) b.add_edge(name(a, c), name(a + 1, c));
      if (c + 1 < m) b.add_edge(name(a, c), name(a, c + 1));
    }
  return b.build();
}

// Heap-labelled perfect binary tree: root 1, children of i are 2i and 2i+1.
inline Graph perfect_binary_tree(int depth) {
  if (depth < 0) throw InputError("tree depth must be non-negative");
  if (depth > 20) throw InputError("tree depth too large");
  GraphBuilder b;
  b.add_vertex("1");
  int last = (1 << (depth + 1)) - 1;
  for (int i = 2; i <= last; ++i) b.add_edge(std::to_string(i / 2), std::to_string(i));
  return b.build();
}

// The eight-vertex subdivision of K4 drawn with vertices A, B, C, D, I1..I4.
inline Graph k4_subdivision_fig3() {
  return make_graph({{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "I4"}, {"I4", "I3"},
                     {"I3", "I2"}, {"I2", "I1"}, {"I1", "A"}, {"A", "C"}, {"B", "D"}});
}

// Subdivision of K4 on 0..3; counts are for edges 01, 02, 03, 12, 13, 23.
inline Graph f1(const std::array<long long, 6>& counts = {}) {
  EdgeCounts c;
  const std::array<std::pair<int, int>, 6> es{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (std::size_t i = 0; i < 6; ++i)
    c[edge_key(std::to_string(es[i].first), std::to_string(es[i].second))] = counts[i];
  return subdivide(complete(4), c).derived();
}

// A bipath described by the lengths (edge counts) of its primary path pairs,
// one pair per consecutive pair of primary vertices.
struct BipathSpec {
  std::vector<std::pair<int, int>> pairs;

  static BipathSpec uniform(int order, int length = 2) {
    if (order < 3) throw InputError("bipath order must be at least 3");
    return BipathSpec{std::vector<std::pair<int, int>>(static_cast<std::size_t>(order - 1), {length, length})};
  }
  int order() const { return static_cast<int>(pairs.size()) + 1; }
};

namespace detail {

inline void add_path(GraphBuilder& b, const std::string& from, const std::string& to, int length,
                     const std::string& prefix) {
  std::string prev = from;
  for (int j = 1; j < length; ++j) {
    std::string x = prefix + std::to_string(j);
    b.add_edge(prev, x);
    prev = x;
  }
  b.add_edge(prev, to);
}

inline void add_bipath(GraphBuilder& b, const std::string& from, const std::string& to, const BipathSpec& spec,
                       const std::string& name) {
  if (spec.pairs.size() < 2) throw InputError("bipath order must be at least 3");
  std::string prev = from;
  for (std::size_t i = 0; i < spec.pairs.size(); ++i) {
    auto [x, y] = spec.pairs[i];
    if (x < 1 || y < 1) throw InputError("primary path length must be positive");
    if (x == 1 && y == 1) throw InputError("primary path pair of two single edges is a parallel edge");
    std::string next = i + 1 == spec.pairs.size() ? to : name + "p" + std::to_string(i + 1);
    std::string seg = name + "." + std::to_string(i + 1);
    add_path(b, prev, next, x, seg + "a");
    add_path(b, prev, next, y, seg + "b");
    prev = next;
  }
}

}  // namespace detail

// Three bipaths B1, B2, B3 sharing the endpoints s and t.
inline Graph f2(const std::array<BipathSpec, 3>& specs = {BipathSpec::uniform(3), BipathSpec::uniform(3),
                                                          BipathSpec::uniform(3)}) {
  GraphBuilder b;
  for (std::size_t j = 0; j < 3; ++j) detail::add_bipath(b, "s", "t", specs[j], "B" + std::to_string(j + 1));
  return b.build();
}

// Bipaths Ba, Bb between v1 and v2, Bc, Bd between v3 and v4, and the connectors
// P1 (v1 to v3) and P2 (v2 to v4) of the given lengths.
inline Graph f3(const std::array<BipathSpec, 4>& specs = {BipathSpec::uniform(3), BipathSpec::uniform(3),
                                                          BipathSpec::uniform(3), BipathSpec::uniform(3)},
                int p1_length = 2, int p2_length = 2) {
  if (p1_length < 1 || p2_length < 1) throw InputError("connector length must be positive");
  GraphBuilder b;
  detail::add_bipath(b, "v1", "v2", specs[0], "Ba");
  detail::add_bipath(b, "v1", "v2", specs[1], "Bb");
  detail::add_bipath(b, "v3", "v4", specs[2], "Bc");
  detail::add_bipath(b, "v3", "v4", specs[3], "Bd");
  detail::add_path(b, "v1", "v3", p1_length, "P1.");
  detail::add_path(b, "v2", "v4", p2_length, "P2.");
  return b.build();
}

}  // namespace insp::gen
