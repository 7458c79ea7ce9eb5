#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "forbidden.hpp"
#include "game.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "gsp_tree.hpp"
#include "solver.hpp"
#include "subdivision.hpp"
#include "synth.hpp"

namespace insp {

using Json = nlohmann::ordered_json;

struct TerminalPair {
  std::string a, b;
};

struct GraphFile {
  Graph graph;
  std::optional<TerminalPair> terminals;
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line.substr(0, line.find('#')));
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline InputError line_error(const std::string& source, int line, const std::string& what) {
  return InputError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace detail

// One edge "u v" per line; a lone label is an isolated vertex; "terminals a b"
// names a terminal pair; "#" starts a comment.
inline GraphFile parse_edge_list(std::istream& in, const std::string& source = "<input>") {
  GraphBuilder gb;
  GraphFile out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto t = detail::tokens(line);
    if (t.empty()) continue;
    if (t[0] == "terminals") {
      if (t.size() != 3) throw detail::line_error(source, no, "expected 'terminals a b'");
      if (out.terminals) throw detail::line_error(source, no, "terminals given twice");
      if (t[1] == t[2]) throw detail::line_error(source, no, "terminals must differ");
      out.terminals = TerminalPair{t[1], t[2]};
      continue;
    }
    try {
      if (t.size() == 1)
        gb.add_vertex(t[0]);
      else if (t.size() == 2)
        gb.add_edge(t[0], t[1]);
      else
        throw InputError("expected 'u v', got " + std::to_string(t.size()) + " fields");
    } catch (const InputError& e) {
      throw detail::line_error(source, no, e.what());
    }
  }
  out.graph = gb.build();
  if (out.terminals)
    for (const auto& l : {out.terminals->a, out.terminals->b})
      if (!out.graph.has_vertex(l)) throw InputError(source + ": terminal '" + l + "' is not a vertex");
  return out;
}

inline std::string write_edge_list(const Graph& g, const std::optional<TerminalPair>& terminals = std::nullopt) {
  std::ostringstream out;
  if (terminals) out << "terminals " << terminals->a << ' ' << terminals->b << '\n';
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) out << g.label(v) << '\n';
  for (const auto& [u, v] : g.edge_labels()) out << u << ' ' << v << '\n';
  return out.str();
}

// One step per line, labels separated by spaces; "-" alone is an empty step.
inline Search parse_search(std::istream& in, const Graph& g, const std::string& source = "<input>") {
  Search s;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto t = detail::tokens(line);
    if (t.empty()) continue;
    VertexSet step = g.empty_set();
    if (!(t.size() == 1 && t[0] == "-"))
      for (const auto& l : t) {
        auto v = g.find(l);
        if (!v) throw detail::line_error(source, no, "unknown vertex '" + l + "'");
        step.insert(*v);
      }
    s.steps.push_back(std::move(step));
  }
  s.k = static_cast<int>(s.width());
  return s;
}

inline std::string write_search(const Graph& g, const Search& s) {
  std::ostringstream out;
  for (const auto& st : s.steps) {
    auto l = g.labels_of(st);
    if (l.empty()) out << '-';
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline std::vector<int> int_list(const std::string& spec, const std::string& args) {
  std::vector<int> out;
  if (args.empty()) return out;
  std::stringstream in(args);
  for (std::string x; std::getline(in, x, ',');) {
    try {
      std::size_t used = 0;
      int v = std::stoi(x, &used);
      if (used != x.size()) throw std::invalid_argument(x);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw InputError("bad number '" + x + "' in generator spec '" + spec + "'");
    }
  }
  return out;
}

inline void arity(const std::string& spec, const std::vector<int>& p, std::size_t lo, std::size_t hi) {
  if (p.size() < lo || p.size() > hi) throw InputError("wrong number of parameters in generator spec '" + spec + "'");
}

}  // namespace detail

// Generator specs: path:n cycle:n complete:n Kn grid:n,m tree:depth fig3 F1[:c01,..,c23]
// F2[:order[,len]] F3[:order[,p1,p2]].
inline Graph graph_from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  auto p = detail::int_list(spec, colon == std::string::npos ? "" : spec.substr(colon + 1));
  if (kind.size() > 1 && kind[0] == 'K' && kind.find_first_not_of("0123456789", 1) == std::string::npos && p.empty())
    return gen::complete(std::stoi(kind.substr(1)));
  if (kind == "path") return detail::arity(spec, p, 1, 1), gen::path(p[0]);
  if (kind == "cycle") return detail::arity(spec, p, 1, 1), gen::cycle(p[0]);
  if (kind == "complete") return detail::arity(spec, p, 1, 1), gen::complete(p[0]);
  if (kind == "grid") return detail::arity(spec, p, 2, 2), gen::grid(p[0], p[1]);
  if (kind == "tree") return detail::arity(spec, p, 1, 1), gen::perfect_binary_tree(p[0]);
  if (kind == "fig3" || kind == "k4_subdivision_fig3") return detail::arity(spec, p, 0, 0), gen::k4_subdivision_fig3();
  if (kind == "F1") {
    detail::arity(spec, p, 0, 6);
    if (!p.empty() && p.size() != 6) throw InputError("F1 takes six subdivision counts");
    std::array<long long, 6> c{};
    for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i];
    return gen::f1(c);
  }
  if (kind == "F2") {
    detail::arity(spec, p, 0, 2);
    auto b = gen::BipathSpec::uniform(p.empty() ? 3 : p[0], p.size() > 1 ? p[1] : 2);
    return gen::f2({{b, b, b}});
  }
  if (kind == "F3") {
    detail::arity(spec, p, 0, 3);
    if (p.size() == 2) throw InputError("F3 takes an order and both connector lengths");
    auto b = gen::BipathSpec::uniform(p.empty() ? 3 : p[0]);
    return gen::f3({{b, b, b, b}}, p.size() > 1 ? p[1] : 2, p.size() > 2 ? p[2] : 2);
  }
  throw InputError("unknown graph generator '" + kind + "'");
}

// A file path, "-" for standard input, or a generator spec.
inline GraphFile load_graph(const std::string& arg, std::istream& stdin_stream) {
  if (arg == "-") return parse_edge_list(stdin_stream, "<stdin>");
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream f(arg);
    if (!f) throw InputError("cannot read " + arg);
    return parse_edge_list(f, arg);
  }
  return GraphFile{graph_from_spec(arg), std::nullopt};
}

inline Search load_search(const std::string& path, const Graph& g) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  return parse_search(f, g, path);
}

// ---- JSON ----

inline Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [u, v] : g.edge_labels()) edges.push_back({u, v});
  return {{"vertices", g.labels()}, {"edges", edges}};
}

inline Graph graph_from_json(const Json& j) {
  try {
    GraphBuilder b;
    for (const auto& v : j.at("vertices")) b.add_vertex(v.get<std::string>());
    for (const auto& e : j.at("edges")) {
      if (e.size() != 2) throw InputError("edge must have two endpoints");
      b.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return b.build();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed graph record: ") + e.what());
  }
}

inline Json steps_json(const Graph& g, const Search& s) {
  Json out = Json::array();
  for (const auto& st : s.steps) out.push_back(g.labels_of(st));
  return out;
}

inline Json to_json(const Graph& g, const SearchTrace& tr, const Search& s) {
  Json rows = Json::array();
  for (std::size_t t = 0; t < tr.length(); ++t)
    rows.push_back({{"step", t + 1},
                    {"searched", g.labels_of(s.steps[t])},
                    {"pc", g.labels_of(tr.pc[t])},
                    {"fc", g.labels_of(tr.fc[t + 1])}});
  return rows;
}

inline Json to_json(const Graph& g, const SolveResult& r) {
  Json j{{"value", r.value}, {"exceeds", r.exceeds}, {"method", r.method}, {"explored_states", r.explored_states}};
  if (r.witness) j["witness"] = steps_json(g, *r.witness);
  return j;
}

inline Json to_json(const Graph& g, const PathDecomposition& pd) {
  Json bags = Json::array();
  for (const auto& b : pd.bags) bags.push_back(g.labels_of(b));
  return bags;
}

inline Json to_json(const Graph& host, const Gsp& t) {
  Json j{{"op", op_name(t->op)}, {"terminals", {host.label(t->a), host.label(t->b)}}};
  if (!t->is_leaf()) j["children"] = {to_json(host, t->left), to_json(host, t->right)};
  return j;
}

inline Gsp gsp_from_json(const Graph& host, const Json& j) {
  try {
    GspOp op = op_from_name(j.at("op").get<std::string>());
    const auto& term = j.at("terminals");
    if (term.size() != 2) throw InputError("GSP node needs two terminals");
    int a = host.index(term[0].get<std::string>()), b = host.index(term[1].get<std::string>());
    if (op == GspOp::Edge) return gsp_edge(host, a, b);
    const auto& ch = j.at("children");
    if (ch.size() != 2) throw InputError("GSP operation needs two children");
    Gsp t = compose(op, gsp_from_json(host, ch[0]), gsp_from_json(host, ch[1]));
    if (t->a != a || t->b != b) throw InputError("GSP node terminals do not match its children");
    return t;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed GSP record: ") + e.what());
  }
}

inline Json to_json(const ForbiddenWitness& w) {
  Json bip = Json::array();
  for (const auto& b : w.bipaths) bip.push_back({{"p1", b.p1}, {"p2", b.p2}});
  Json j{{"family", family_name(w.family)}, {"degenerate", w.degenerate}, {"anchors", w.anchors},
         {"paths", w.paths}, {"bipaths", bip}};
  return j;
}

inline ForbiddenWitness witness_from_json(const Json& j) {
  try {
    ForbiddenWitness w;
    w.family = family_from_name(j.at("family").get<std::string>());
    w.degenerate = j.value("degenerate", false);
    w.anchors = j.at("anchors").get<std::vector<std::string>>();
    w.paths = j.at("paths").get<std::vector<LabelPath>>();
    for (const auto& b : j.at("bipaths"))
      w.bipaths.push_back({b.at("p1").get<LabelPath>(), b.at("p2").get<LabelPath>()});
    return w;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed witness record: ") + e.what());
  }
}

inline Json to_json(const AlignedSearchBundle& x) {
  Json counts = Json::array();
  for (const auto& [e, c] : x.host.counts()) counts.push_back({e.first, e.second, c});
  Json segs = Json::array();
  for (const auto& [n, l] : x.segments) segs.push_back({n, l});
  return {{"base", to_json(x.host.base())},
          {"counts", counts},
          {"alignment", {x.a, x.b}},
          {"steps", x.step_labels()},
          {"stats",
           {{"host_vertices", x.host.derived().order()},
            {"host_edges", x.host.derived().size()},
            {"length", x.length()},
            {"segments", segs},
            {"summed_floor_edges", x.summed_floor_edges},
            {"presubdivided_edges", x.presubdivided_edges}}}};
}

// Rebuilds the host from the base graph and counts and resolves step labels; the
// search is not checked here.
inline AlignedSearchBundle bundle_from_json(const Json& j) {
  try {
    AlignedSearchBundle x;
    Graph base = graph_from_json(j.at("base"));
    EdgeCounts counts;
    for (const auto& c : j.at("counts")) {
      if (c.size() != 3) throw InputError("count record must be [u, v, count]");
      counts[edge_key(c[0].get<std::string>(), c[1].get<std::string>())] = c[2].get<long long>();
    }
    x.host = subdivide(base, counts);
    const auto& al = j.at("alignment");
    if (al.size() != 2) throw InputError("alignment must name two vertices");
    x.a = al[0].get<std::string>();
    x.b = al[1].get<std::string>();
    x.first();
    x.second();
    const Graph& d = x.host.derived();
    for (const auto& st : j.at("steps")) {
      std::vector<int> s;
      for (const auto& l : st) s.push_back(d.index(l.get<std::string>()));
      x.steps.push_back(std::move(s));
    }
    if (j.contains("stats")) {
      const auto& s = j["stats"];
      for (const auto& seg : s.value("segments", Json::array()))
        x.segments.emplace_back(seg.at(0).get<std::string>(), seg.at(1).get<std::size_t>());
      x.summed_floor_edges = s.value("summed_floor_edges", std::size_t{0});
      x.presubdivided_edges = s.value("presubdivided_edges", std::size_t{0});
    }
    return x;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed bundle record: ") + e.what());
  }
}

inline Json read_json(std::istream& in, const std::string& source) {
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

}  // namespace insp
