// Batch front end: one verb per invocation, one document on stdout (or -o),
// diagnostics on stderr. Exit 0 on a definite answer, 1 on bad input, 2 when a
// budget is exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "insp/insp.hpp"

namespace {

using namespace insp;

struct Options {
  std::string graph;
  std::string search;
  std::string bundle;
  std::string output;
  std::string initial;
  std::vector<std::string> floors;
  std::size_t budget = 0;
  int workers = 1;
  int k = 0;
  int k_max = 0;
  bool no_prune = false;
  bool trace = false;
  bool json = false;
};

std::size_t default_budget() {
  if (const char* env = std::getenv("INSP_STATE_BUDGET")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::logic_error&) {
    }
    throw InputError(std::string("INSP_STATE_BUDGET must be a positive integer, got '") + env + "'");
  }
  return SolverConfig{}.state_budget;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig c;
  c.state_budget = o.budget ? o.budget : default_budget();
  c.workers = o.workers;
  c.prune = !o.no_prune;
  return c;
}

GraphFile input_graph(const Options& o) { return load_graph(o.graph, std::cin); }

void emit(const Options& o, const std::string& doc) {
  if (o.output.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw InputError("cannot write " + o.output);
  f << doc;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

void run_gen(const Options& o) {
  auto g = graph_from_spec(o.graph);
  if (o.json)
    emit(o, to_json(g));
  else
    emit(o, write_edge_list(g));
}

void run_solve(const Options& o) {
  auto in = input_graph(o);
  const Graph& g = in.graph;
  int k_max = o.k_max ? o.k_max : g.order();
  auto r = inspection_number(g, k_max, solver_config(o));
  Json j = to_json(g, r);
  j["stats"] = {{"vertices", g.order()}, {"edges", g.size()}, {"k_max", k_max}};
  emit(o, j);
}

void run_pathwidth(const Options& o) {
  auto g = input_graph(o).graph;
  auto [pw, pd] = pathwidth(g, solver_config(o));
  emit(o, Json{{"pathwidth", pw}, {"bags", to_json(g, pd)}});
}

void run_mono(const Options& o) {
  auto g = input_graph(o).graph;
  auto r = monotonic_inspection_number(g, solver_config(o));
  emit(o, to_json(g, r));
}

void run_verify_bundle(const Options& o) {
  std::ifstream f(o.bundle);
  if (!f) throw InputError("cannot read " + o.bundle);
  auto x = bundle_from_json(read_json(f, o.bundle));
  if (!o.graph.empty()) {
    auto base = input_graph(o).graph;
    if (!(base == x.host.base())) throw InputError("bundle base graph differs from " + o.graph);
  }
  auto c = check_bundle(x);
  emit(o, Json{{"successful", c.successful},
               {"aligned", c.aligned},
               {"width", c.width},
               {"length", c.length},
               {"alignment", {x.a, x.b}},
               {"host_vertices", x.host.derived().order()}});
}

void run_verify(const Options& o) {
  if (!o.bundle.empty()) return run_verify_bundle(o);
  if (o.graph.empty() || o.search.empty()) throw InputError("verify needs a graph and --search, or --bundle");
  auto in = input_graph(o);
  const Graph& g = in.graph;
  auto s = load_search(o.search, g);
  VertexSet init = g.empty_set();
  if (!o.initial.empty()) {
    std::istringstream ls(o.initial);
    for (std::string l; ls >> l;) init.insert(g.index(l));
  }
  auto tr = simulate(g, s, init);
  Json j{{"successful", is_successful(tr)},
         {"monotonic", is_monotonic(tr)},
         {"length", s.length()},
         {"width", s.width()}};
  if (in.terminals) j["aligned"] = is_aligned(tr, g.index(in.terminals->a), g.index(in.terminals->b));
  if (o.trace) j["trace"] = to_json(g, tr, s);
  emit(o, j);
}

void run_classify(const Options& o) {
  auto g = input_graph(o).graph;
  auto c = classify_topological_3(g);
  Json j{{"verdict", c.yes ? "YES" : "NO"}};
  if (c.yes) {
    j["decomposition"] = to_json(g, c.tree);
  } else {
    j["family"] = family_name(c.witness->family);
    j["witness"] = to_json(*c.witness);
    j["witness_valid"] = pattern_check(*c.witness, &g);
  }
  emit(o, j);
}

SubdivisionFloor parse_floors(const Graph& g, const std::vector<std::string>& specs) {
  SubdivisionFloor f;
  for (const auto& s : specs) {
    std::istringstream in(s);
    std::string u, v, c;
    if (!std::getline(in, u, ',') || !std::getline(in, v, ',') || !std::getline(in, c) || u.empty() || v.empty())
      throw InputError("floor must be u,v,count: '" + s + "'");
    if (!g.adjacent(g.index(u), g.index(v))) throw InputError("floor on a non-edge: '" + s + "'");
    long long n = 0;
    try {
      std::size_t used = 0;
      n = std::stoll(c, &used);
      if (used != c.size() || n < 0) throw std::invalid_argument(c);
    } catch (const std::logic_error&) {
      throw InputError("floor count must be a non-negative integer: '" + s + "'");
    }
    f[edge_key(u, v)] = n;
  }
  return f;
}

void run_synth(const Options& o) {
  auto g = input_graph(o).graph;
  auto c = classify_topological_3(g);
  if (!c.yes)
    throw InputError(std::string("graph has topological inspection number above 3 (") +
                     family_name(c.witness->family) + " witness); nothing to synthesize");
  auto x = synthesize(g, c.tree, parse_floors(g, o.floors));
  emit(o, to_json(x));
}

void run_lowerbound(const Options& o) {
  if (o.k < 1) throw InputError("lowerbound needs --k >= 1");
  auto g = input_graph(o).graph;
  auto cert = boundary_gap_certificate(g, o.k, solver_config(o));
  Json j{{"k", o.k}, {"certified", cert.has_value()}};
  if (cert) {
    j["i"] = cert->i;
    j["profile"] = cert->profile;
    j["claim"] = "in > " + std::to_string(o.k);
  }
  emit(o, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-visibility inspection game toolkit"};
  app.require_subcommand(1);
  Options o;

  auto graph_arg = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("graph", o.graph, "edge-list file, '-' for stdin, or generator spec");
    if (required) opt->required();
  };
  auto budget_flags = [&](CLI::App* c) {
    c->add_option("--budget", o.budget, "state budget (default $INSP_STATE_BUDGET or 4000000)")
        ->check(CLI::PositiveNumber);
    c->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  };
  auto out_flag = [&](CLI::App* c) { c->add_option("-o,--output", o.output, "write the document here"); };

  auto* gen = app.add_subcommand("gen", "emit a generated graph");
  gen->add_option("spec", o.graph, "path:n cycle:n complete:n Kn grid:n,m tree:d fig3 F1 F2[:order,len] F3[:order,p1,p2]")
      ->required();
  gen->add_flag("--json", o.json, "JSON instead of an edge list");
  out_flag(gen);

  auto* solve = app.add_subcommand("solve", "exact inspection number");
  graph_arg(solve);
  solve->add_option("--k-max", o.k_max, "largest width to try (default: order)")->check(CLI::PositiveNumber);
  solve->add_flag("--no-prune", o.no_prune, "keep dominated states");
  budget_flags(solve);
  out_flag(solve);

  auto* pw = app.add_subcommand("pathwidth", "exact pathwidth with a decomposition");
  graph_arg(pw);
  budget_flags(pw);
  out_flag(pw);

  auto* mono = app.add_subcommand("mono", "monotonic inspection number");
  graph_arg(mono);
  budget_flags(mono);
  out_flag(mono);

  auto* verify = app.add_subcommand("verify", "replay a search or a synthesized bundle");
  graph_arg(verify, false);
  verify->add_option("--search", o.search, "search file, one step per line");
  verify->add_option("--bundle", o.bundle, "bundle JSON from synth");
  verify->add_option("--initial", o.initial, "space-separated pre-cleared vertices");
  verify->add_flag("--trace", o.trace, "include the per-step trace");
  out_flag(verify);

  auto* classify = app.add_subcommand("classify", "decide topological inspection number <= 3");
  graph_arg(classify);
  out_flag(classify);

  auto* synth = app.add_subcommand("synth", "build a verified 3-search on a subdivision");
  graph_arg(synth);
  synth->add_option("--floor", o.floors, "minimum subdivision count u,v,count (repeatable)");
  out_flag(synth);

  auto* lb = app.add_subcommand("lowerbound", "boundary-gap certificate that in > k");
  graph_arg(lb);
  lb->add_option("--k", o.k, "width to refute")->required();
  budget_flags(lb);
  out_flag(lb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) run_gen(o);
    else if (*solve) run_solve(o);
    else if (*pw) run_pathwidth(o);
    else if (*mono) run_mono(o);
    else if (*verify) run_verify(o);
    else if (*classify) run_classify(o);
    else if (*synth) run_synth(o);
    else if (*lb) run_lowerbound(o);
  } catch (const InputError& e) {
    std::cerr << "insp: " << e.what() << '\n';
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "insp: resource limit: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
