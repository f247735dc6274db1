// Command-line front end: expansions by any of the three routes, path and
// matching listings, seed enumeration, verification sweeps, the atomic
// checks, and a static SVG renderer.
//
// Exit codes: 0 success, 1 property failure, 2 usage or parse error,
// 3 cross-method disagreement.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "pgon/atomic.hpp"
#include "pgon/cluster.hpp"
#include "pgon/snake.hpp"
#include "pgon/svg.hpp"
#include "pgon/tpath.hpp"
#include "pgon/verify.hpp"

using nlohmann::json;
using namespace pgon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;

std::string slurp_or_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw std::invalid_argument("cannot read file " + arg.substr(1));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonArgs {
  int n = 4;
  std::string triangulation;
  std::string arc;
  bool as_json = false;
  int threads = 1;
  int seed_bound = 6;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_tri, bool with_arc) {
  cmd->configurable();   // presettable from the --config file, [subcommand] section
  cmd->fallthrough();    // so --config may follow the subcommand name
  cmd->add_option("--n", args.n, "number of boundary vertices")->required();
  if (with_tri)
    cmd->add_option("--triangulation", args.triangulation,
                    "comma-separated arcs, or @file")
        ->required();
  if (with_arc) cmd->add_option("--arc", args.arc, "arc to expand/list");
  cmd->add_flag("--json", args.as_json, "machine-readable output");
  cmd->add_option("--threads", args.threads, "worker threads for sweeps");
  cmd->add_option("--seed-bound", args.seed_bound, "largest n accepted by enumeration sweeps");
}

VarNamer arc_namer(const VarTableRef& table, const Surface& s) {
  return [table, &s](int k) { return "x[" + to_string(tagged_from_id(s, table->keys[k])) + "]"; };
}

json poly_to_json(const LaurentPoly& p, const Surface& s) {
  json terms = json::array();
  for (auto& [e, c] : p.terms()) {
    json exps = json::object();
    for (int k = 0; k < p.table()->size(); ++k)
      if (e[k] != 0) exps[to_string(tagged_from_id(s, p.table()->keys[k]))] = e[k];
    terms.push_back({{"coeff", c.str()}, {"exps", exps}});
  }
  return terms;
}

json path_to_json(const TPath& p) {
  json steps = json::array();
  for (auto& st : p.steps) steps.push_back(st.label());
  json cycles = json::array();
  for (size_t j = 0; j + 1 < p.steps.size(); ++j)
    if (p.pair_classes[j] != CycleClass::NotACycle)
      cycles.push_back({{"at", j}, {"class", to_string(p.pair_classes[j])}});
  return {{"steps", steps}, {"cycles", cycles}};
}

int run_expand(const CommonArgs& args, const std::string& method) {
  Surface s(args.n);
  TaggedTriangulation t = parse_tagged_triangulation(s, slurp_or_text(args.triangulation));
  TaggedArc gamma = parse_tagged_arc(s, args.arc);
  std::optional<LaurentPoly> tpath_poly, snake_poly, mutation_poly;
  if (method == "tpath" || method == "all") tpath_poly = expand_tagged(t, gamma);
  if (method == "snake" || method == "all") snake_poly = expand_tagged_via_matchings(t, gamma);
  if (method == "mutation" || method == "all")
    mutation_poly = expand_by_mutation(t, gamma, args.seed_bound);
  const LaurentPoly& result = tpath_poly   ? *tpath_poly
                              : snake_poly ? *snake_poly
                                           : *mutation_poly;
  bool mismatch = (tpath_poly && snake_poly && !(*tpath_poly == *snake_poly)) ||
                  (tpath_poly && mutation_poly && !(*tpath_poly == *mutation_poly)) ||
                  (snake_poly && mutation_poly && !(*snake_poly == *mutation_poly));
  if (args.as_json) {
    json out = {{"n", args.n},
                {"triangulation", to_string(t)},
                {"arc", to_string(gamma)},
                {"method", method},
                {"agree", !mismatch},
                {"expansion", poly_to_json(result, s)}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << to_text(result, arc_namer(result.table(), s)) << "\n";
  }
  if (mismatch) {
    std::cerr << "error: expansion methods disagree\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int run_paths(const CommonArgs& args) {
  Surface s(args.n);
  TaggedTriangulation t = parse_tagged_triangulation(s, slurp_or_text(args.triangulation));
  IdealTriangulation ideal = ideal_from_tagged(t);
  OrdinaryArc gamma = parse_ordinary_arc(s, args.arc);
  LiftedPolygon poly = lifted_polygon(ideal, gamma);
  auto paths = enumerate_tpaths(poly);
  if (args.as_json) {
    json out = json::array();
    for (auto& p : paths) out.push_back(path_to_json(p));
    std::cout << json{{"count", paths.size()}, {"paths", out}}.dump(2) << "\n";
  } else {
    for (auto& p : paths) std::cout << to_string(p) << "\n";
    std::cout << paths.size() << " paths\n";
  }
  return kExitOk;
}

json snake_to_json(const SnakeGraph& g) {
  json tiles = json::array();
  for (int t = 0; t < g.d; ++t) {
    json edges = json::array();
    for (auto& e : g.edges)
      if (e.tile == t && !e.diagonal)
        edges.push_back({{"id", e.id},
                         {"label", g.poly_edge_of(e.id).label()},
                         {"u", e.u},
                         {"v", e.v}});
    tiles.push_back({{"diagonal", g.poly->edges[g.poly->internal_edges[t]].label()},
                     {"sign", g.tiles[t].sign},
                     {"edges", edges}});
  }
  std::string shape;
  for (char c : g.glue_dirs) shape += c;
  return {{"tiles", tiles}, {"glue", shape}};
}

int run_snake(const CommonArgs& args, bool list_matchings) {
  Surface s(args.n);
  TaggedTriangulation t = parse_tagged_triangulation(s, slurp_or_text(args.triangulation));
  IdealTriangulation ideal = ideal_from_tagged(t);
  OrdinaryArc gamma = parse_ordinary_arc(s, args.arc);
  SnakeGraph g = build_snake(ideal, gamma);
  if (!list_matchings) {
    if (args.as_json) {
      std::cout << snake_to_json(g).dump(2) << "\n";
    } else {
      std::cout << g.d << " tiles, glue ";
      for (char c : g.glue_dirs) std::cout << c;
      std::cout << "\n";
      for (int k = 0; k < g.d; ++k)
        std::cout << "tile " << k + 1 << ": diagonal "
                  << g.poly->edges[g.poly->internal_edges[k]].label() << "\n";
    }
    return kExitOk;
  }
  auto matchings = enumerate_matchings(g);
  VarTableRef ord = ordinary_table(ideal);
  if (args.as_json) {
    json out = json::array();
    for (auto& m : matchings) {
      json labels = json::array();
      for (int eid : m.edge_ids) labels.push_back(g.poly_edge_of(eid).label());
      out.push_back({{"edges", m.edge_ids}, {"labels", labels}});
    }
    std::cout << json{{"count", matchings.size()}, {"matchings", out}}.dump(2) << "\n";
  } else {
    for (auto& m : matchings) {
      std::cout << "{";
      for (size_t x = 0; x < m.edge_ids.size(); ++x)
        std::cout << (x ? "," : "") << g.poly_edge_of(m.edge_ids[x]).label();
      std::cout << "}\n";
    }
    std::cout << matchings.size() << " matchings (transfer count "
              << transfer_matching_count(g) << ")\n";
  }
  return kExitOk;
}

int run_seeds(const CommonArgs& args) {
  Surface s(args.n);
  TaggedTriangulation t0 = args.triangulation.empty()
                               ? [&] {
                                   std::vector<TaggedArc> wheel;
                                   for (int i = 0; i < s.n; ++i)
                                     wheel.push_back(TaggedArc::radius_plain(s, i));
                                   return TaggedTriangulation(s, wheel);
                                 }()
                               : parse_tagged_triangulation(s, slurp_or_text(args.triangulation));
  SeedEnumeration en = enumerate_seeds(t0, args.seed_bound);
  if (args.as_json) {
    json nodes = json::array();
    for (auto& seed : en.seeds) nodes.push_back(to_string(seed.cluster));
    json edges = json::array();
    for (auto& [u, v] : en.edges) edges.push_back({u, v});
    std::cout << json{{"seeds", nodes}, {"exchange_graph", edges}}.dump(2) << "\n";
  } else {
    std::cout << en.seeds.size() << " seeds, " << en.edges.size() << " exchange edges\n";
  }
  return kExitOk;
}

int run_verify(const CommonArgs& args, const std::string& suite) {
  if (args.n > args.seed_bound) {
    std::cerr << "error: n exceeds --seed-bound\n";
    return kExitUsage;
  }
  SweepReport rep;
  if (suite == "oracle" || suite == "all") {
    rep.merge(census_sweep(args.n));
    rep.merge(oracle_sweep(args.n, args.threads));
    rep.merge(commutation_sweep(args.n));
  }
  if (suite == "bijection" || suite == "all") {
    rep.merge(bijection_sweep(args.n, args.threads));
    rep.merge(denominator_sweep(args.n));
    rep.merge(notching_sweep(args.n));
  }
  if (suite == "lemmas" || suite == "all") {
    LemmaReport lr = verify_degree_lemmas(args.n);
    for (auto& [id, count] : lr.instances)
      rep.note("lemma " + id + ": " + std::to_string(count) + " instances");
    for (auto& f : lr.failures) rep.fail(f);
    rep.merge(proper_laurent_sweep(args.n, 2, args.threads));
  }
  if (args.as_json) {
    json out = {{"ok", rep.ok},
                {"checks", rep.checks},
                {"summary", rep.lines},
                {"failures", rep.failures}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto& l : rep.lines) std::cout << l << "\n";
    for (auto& f : rep.failures) std::cout << "FAIL: " << f << "\n";
    std::cout << (rep.ok ? "ok" : "FAILED") << " (" << rep.checks << " checks)\n";
  }
  return rep.ok ? kExitOk : kExitPropertyFailure;
}

int run_atomic(const CommonArgs& args, int max_mult, const std::string& lemma,
               const std::string& witness_file) {
  SweepReport rep;
  if (lemma == "all" || lemma == "proper")
    rep.merge(proper_laurent_sweep(args.n, max_mult, args.threads));
  if (lemma != "proper") {
    LemmaReport lr = verify_degree_lemmas(args.n, lemma == "all" ? "all" : lemma);
    for (auto& [id, count] : lr.instances)
      rep.note("lemma " + id + ": " + std::to_string(count) + " instances");
    for (auto& f : lr.failures) rep.fail(f);
  }
  if (!witness_file.empty() && !rep.failures.empty()) {
    std::ofstream out(witness_file);
    for (auto& f : rep.failures) out << json{{"witness", f}}.dump() << "\n";
  }
  for (auto& l : rep.lines) std::cout << l << "\n";
  for (auto& f : rep.failures) std::cout << "FAIL: " << f << "\n";
  std::cout << (rep.ok ? "ok" : "FAILED") << "\n";
  return rep.ok ? kExitOk : kExitPropertyFailure;
}

int run_render(const CommonArgs& args, const std::string& out_path) {
  Surface s(args.n);
  TaggedTriangulation t = parse_tagged_triangulation(s, slurp_or_text(args.triangulation));
  RenderOptions opt;
  if (!args.arc.empty()) {
    OrdinaryArc gamma = parse_ordinary_arc(s, args.arc);
    opt.gamma = gamma;
    if (t.shape() != TaggedTriangulation::Shape::AllNotched) {
      IdealTriangulation ideal = ideal_from_tagged(t);
      if (!ideal.contains(gamma))
        for (auto& c : crossing_sequence(ideal, gamma).crossed)
          opt.highlight.insert(ordinary_id(s, c.side.arc));
    }
  }
  std::string svg = render_svg(s, t.arcs(), opt);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  out << svg;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cluster-variable expansions on a once-punctured polygon"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file presetting options, one [subcommand] section");

  CommonArgs expand_args, paths_args, snake_args, match_args, seeds_args, verify_args,
      atomic_args, render_args;
  std::string method = "tpath", suite = "all", lemma = "all", witness_file, render_out;
  int max_mult = 2;

  auto* cmd_expand = app.add_subcommand("expand", "Laurent expansion of a tagged arc");
  add_common(cmd_expand, expand_args, true, true);
  cmd_expand->add_option("--method", method, "tpath | snake | mutation | all")
      ->check(CLI::IsMember({"tpath", "snake", "mutation", "all"}));

  auto* cmd_paths = app.add_subcommand("paths", "list the complete paths of an arc");
  add_common(cmd_paths, paths_args, true, true);

  auto* cmd_snake = app.add_subcommand("snake", "snake graph of an arc");
  add_common(cmd_snake, snake_args, true, true);

  auto* cmd_match = app.add_subcommand("matchings", "perfect matchings of the snake graph");
  add_common(cmd_match, match_args, true, true);

  auto* cmd_seeds = app.add_subcommand("seeds", "exchange graph by mutation");
  add_common(cmd_seeds, seeds_args, false, false);
  cmd_seeds->add_option("--triangulation", seeds_args.triangulation,
                        "initial cluster (defaults to the plain wheel)");

  auto* cmd_verify = app.add_subcommand("verify", "cross-validation sweeps");
  add_common(cmd_verify, verify_args, false, false);
  cmd_verify->add_option("--suite", suite, "oracle | bijection | lemmas | all")
      ->check(CLI::IsMember({"oracle", "bijection", "lemmas", "all"}));

  auto* cmd_atomic = app.add_subcommand("atomic", "degree-lemma and properness checks");
  add_common(cmd_atomic, atomic_args, false, false);
  cmd_atomic->add_option("--max-mult", max_mult, "multiplicity bound for the properness sweep");
  cmd_atomic->add_option("--lemma", lemma, "lemma id (e.g. 5.20), 'proper', or 'all'");
  cmd_atomic->add_option("--witnesses", witness_file, "write failures as JSON lines");

  auto* cmd_render = app.add_subcommand("render", "write an SVG depiction");
  add_common(cmd_render, render_args, true, false);
  cmd_render->add_option("--arc", render_args.arc, "arc to draw dashed");
  cmd_render->add_option("-o,--out", render_out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_expand->parsed()) return run_expand(expand_args, method);
    if (cmd_paths->parsed()) return run_paths(paths_args);
    if (cmd_snake->parsed()) return run_snake(snake_args, false);
    if (cmd_match->parsed()) return run_snake(match_args, true);
    if (cmd_seeds->parsed()) return run_seeds(seeds_args);
    if (cmd_verify->parsed()) return run_verify(verify_args, suite);
    if (cmd_atomic->parsed()) return run_atomic(atomic_args, max_mult, lemma, witness_file);
    if (cmd_render->parsed()) return run_render(render_args, render_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitPropertyFailure;
  }
  return kExitUsage;
}
