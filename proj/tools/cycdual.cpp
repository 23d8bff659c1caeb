// cycdual: command-line front end for the duality engines, widths and searches.
//
// Exit codes: 0 success, 1 a certificate failed to verify, 2 parse/usage
// error, 3 budget exceeded, 4 internal error (integrality or LP failure).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cycdual/cycdual.hpp"

using namespace cycdual;

namespace {

enum Exit : int { ok = 0, not_verified = 1, parse_error = 2, budget_error = 3, internal_error = 4 };

struct Common {
  std::string input;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t budget_cycles = EnumerationBudget{}.max_cycles;
  std::size_t budget_subsets = EnumerationBudget{}.max_subsets;
  std::string verify = "oracle";

  EnumerationBudget budget() const { return {budget_cycles, budget_subsets}; }
  VerifyLevel verify_level() const {
    if (verify == "off") return VerifyLevel::off;
    if (verify == "exhaustive") return VerifyLevel::exhaustive;
    return VerifyLevel::oracle;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = dump(j);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + out + "'");
  f << text;
}

Json run_header(const std::string& command, const Common& c) {
  Json j;
  j["command"] = command;
  j["seed"] = c.seed;
  j["verify"] = c.verify;
  j["budget"] = {{"cycles", c.budget_cycles}, {"subsets", c.budget_subsets}};
  return j;
}

/// --target: vertices=a,b | edges=e,f | all | random (each element kept with probability 1/2).
template <AnyGraph G>
Target resolve_target(const G& g, const std::string& text, const std::string& kind, std::uint64_t seed) {
  if (text.rfind("vertices=", 0) == 0 || text.rfind("edges=", 0) == 0) {
    const bool vertices = text[0] == 'v';
    Target t{vertices ? ElementKind::vertex : ElementKind::edge, {}};
    for (const auto& name : split_list(text.substr(text.find('=') + 1)))
      t.elements.push_back(vertices ? g.vertex(name) : g.edge(name));
    return t;
  }
  Target t{kind == "edge" ? ElementKind::edge : ElementKind::vertex, {}};
  const std::size_t n = t.kind == ElementKind::vertex ? g.num_vertices() : g.num_edges();
  if (text == "all") {
    for (std::size_t i = 0; i < n; ++i) t.elements.push_back(i);
  } else if (text == "random") {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i)
      if (uniform_below(rng, 2)) t.elements.push_back(i);
  } else {
    throw ParseError("--target must be vertices=..., edges=..., all or random");
  }
  return t;
}

template <AnyGraph G>
DualityReport dispatch_duality(const G& g, const Target& t, const DualityOptions& opt) {
  if constexpr (G::kind == GraphKind::undirected) {
    if (t.kind == ElementKind::edge) return undirected_edge_duality(g, t.elements, opt);
    return oracle_comparison(g, ElementKind::vertex, t.elements, opt);
  } else if constexpr (G::kind == GraphKind::directed) {
    if (t.kind == ElementKind::edge) return directed_edge_duality(g, t.elements, opt);
    return directed_vertex_duality(g, t.elements, opt);
  } else {
    if (t.kind == ElementKind::vertex) return bidirected_vertex_duality(g, t.elements, opt);
    return oracle_comparison(g, ElementKind::edge, t.elements, opt);
  }
}

int cmd_duality(const Common& c, const std::string& target, const std::string& kind) {
  const auto graph = parse_graph(read_file(c.input));
  return std::visit(
      [&](const auto& g) {
        const auto t = resolve_target(g, target, kind, c.seed);
        const auto rep = dispatch_duality(g, t, DualityOptions{c.budget(), c.verify_level()});
        Json j = run_header("duality", c);
        j["report"] = report_to_json(g, rep);
        emit(j, c.out);
        if (rep.log_only) return int(ok);
        const bool good = rep.inequality_verified && rep.hitting.status != Verification::failed &&
                          rep.dual_cycle_inequalities.value_or(true);
        return good ? int(ok) : int(not_verified);
      },
      graph);
}

template <typename F>
int with_oriented_graph(const std::string& input, F&& f) {
  const auto graph = parse_graph(read_file(input));
  if (std::holds_alternative<UndirectedGraph>(graph))
    throw ParseError("widths commands need a directed or bidirected graph");
  if (const auto* d = std::get_if<DirectedGraph>(&graph)) return f(*d);
  return f(std::get<BidirectedGraph>(graph));
}

template <AnyGraph G>
CycleDecomposition decomposition_for(const G& g, const std::string& path, std::size_t n_cap, const EnumerationBudget& b) {
  if (!path.empty()) return decomposition_from_json(g, parse_json(read_file(path)));
  return cycle_width_bruteforce(g, n_cap, b).witness;
}

int cmd_widths(const std::string& sub, const Common& c, const std::string& side, const std::string& dec_path,
               std::size_t n_cap, const std::string& robber, const std::string& script) {
  return with_oriented_graph(c.input, [&](const auto& g) {
    Json j = run_header("widths " + sub, c);
    int code = ok;
    if (sub == "porosity") {
      std::vector<std::size_t> a;
      for (const auto& name : split_list(side)) a.push_back(g.vertex(name));
      const auto cut = make_cut(g, a);
      const auto p = cycle_porosity(g, cut, c.budget());
      j["cut"] = cut_json(g, cut);
      j["porosity"] = porosity_json(p);
      if (p.verified && !p.agree()) code = not_verified;
    } else if (sub == "cyclewidth") {
      const auto cw = cycle_width_bruteforce(g, n_cap, c.budget());
      const auto w = decomposition_width(g, cw.witness, c.budget());
      j["cycle_width"] = cw.width;
      j["trees_checked"] = cw.trees_checked;
      j["cuts_evaluated"] = cw.cuts_evaluated;
      j["all_agree"] = cw.all_agree && w.all_agree;
      j["decomposition"] = decomposition_to_json(g, cw.witness);
      Json edges = Json::array();
      for (const auto& [t, p] : w.per_edge)
        edges.push_back({{"tree_edge", t}, {"cut", cut_json(g, induced_cut(g, cw.witness, t))}, {"porosity", porosity_json(p)}});
      j["tree_edges"] = std::move(edges);
      if (!j["all_agree"].get<bool>()) code = not_verified;
    } else if (sub == "strategy") {
      const auto dec = decomposition_for(g, dec_path, n_cap, c.budget());
      const auto w = decomposition_width(g, dec, c.budget());
      j["decomposition"] = decomposition_to_json(g, dec);
      j["width"] = w.width;
      Json ys = Json::array();
      for (const auto& [t, y] : hitting_sets_Ye(g, dec, DualityOptions{c.budget(), c.verify_level()})) {
        ys.push_back({{"tree_edge", t},
                      {"cut", cut_json(g, y.cut)},
                      {"porosity", y.porosity},
                      {"Y", vertex_names(g, y.vertices)},
                      {"status", std::string(verification_name(y.status))}});
        if (y.status == Verification::failed || y.vertices.size() > w.width) code = not_verified;
      }
      j["hitting_sets"] = std::move(ys);
    } else {
      const auto dec = decomposition_for(g, dec_path, n_cap, c.budget());
      const auto strategy = make_cop_strategy(g, dec, DualityOptions{c.budget(), c.verify_level()});
      std::vector<std::size_t> moves;
      for (const auto& name : split_list(script)) moves.push_back(g.vertex(name));
      const auto mode = robber == "scripted" ? RobberMode::scripted : RobberMode::adversarial;
      const auto r = play_cops_and_robbers(g, strategy, mode, moves);
      j["decomposition"] = decomposition_to_json(g, dec);
      j["width"] = strategy.width;
      j["robber"] = robber;
      if constexpr (std::is_same_v<std::decay_t<decltype(g)>, BidirectedGraph>) {
        j["circular"] = is_circular(g, c.budget());
        j["strong_components"] = "sign-alternating stand-in";
      }
      j["game"] = game_json(g, r);
      if (!r.caught || !r.within_budget) code = not_verified;
    }
    emit(j, c.out);
    return code;
  });
}

int cmd_search(const std::string& sub, const Common& c, std::size_t n_max, std::size_t trials) {
  Json j = run_header("search " + sub, c);
  if (sub == "vertex-question") {
    try {
      j["result"] = vertex_question_json(search_vertex_question_counterexample(n_max, c.seed, trials, c.budget()));
    } catch (const BudgetExceeded& e) {
      j["result"] = {{"search", "vertex-question"}, {"partial", true}, {"reason", e.what()}, {"findings", "none found"}};
    }
  } else {
    try {
      j["result"] = nullspace_fixture_json(search_nullspace_noncycle_fixture(n_max, c.seed, trials, c.budget()), n_max,
                                           c.seed, trials);
    } catch (const BudgetExceeded& e) {
      j["result"] = {{"findings", {{"search", "nullspace"}, {"partial", true}, {"reason", e.what()}, {"result", "none found"}}}};
    }
  }
  emit(j, c.out);
  return ok;
}

int cmd_generate(const Common& c, const std::string& kind, std::size_t n, std::size_t m, bool simple) {
  std::mt19937_64 rng(c.seed);
  const GeneratorParams p{n, m, !simple};
  AnyGraphValue g;
  try {
    if (kind == "directed") g = random_directed(p, rng);
    else if (kind == "undirected") g = random_undirected(p, rng);
    else if (kind == "bidirected") g = random_bidirected(p, rng);
    else throw ParseError("--kind must be directed, undirected or bidirected");
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid generator parameters: ") + e.what());
  }
  const Json j = graph_to_json(g);
  if (graph_to_json(parse_graph(dump(j))) != j) throw std::logic_error("generated graph does not round-trip");
  emit(j, c.out);
  return ok;
}

void add_common(CLI::App* app, Common& c, bool needs_input) {
  auto* in = app->add_option("--input", c.input, "graph file (JSON)");
  if (needs_input) in->required();
  app->add_option("--out", c.out, "output file (default: stdout)");
  app->add_option("--seed", c.seed, "64-bit seed for every random choice");
  app->add_option("--budget-cycles", c.budget_cycles, "maximum number of enumerated cycles");
  app->add_option("--budget-subsets", c.budget_subsets, "maximum number of search nodes in the oracles");
  app->add_option("--verify", c.verify, "off | oracle | exhaustive")
      ->check(CLI::IsMember({"off", "oracle", "exhaustive"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle packing and covering certificates"};
  app.require_subcommand(1);
  Common c;

  auto* duality = app.add_subcommand("duality", "packing and hitting certificates for a target S or F");
  add_common(duality, c, true);
  std::string target = "all", kind = "vertex";
  duality->add_option("--target", target, "vertices=a,b | edges=e,f | all | random");
  duality->add_option("--kind", kind, "element kind for all/random targets: vertex | edge")
      ->check(CLI::IsMember({"vertex", "edge"}));

  auto* widths = app.add_subcommand("widths", "cycle porosity, cycle-width, Y_e sets and the cop game");
  widths->require_subcommand(1);
  std::string side, dec_path, robber = "adversarial", script;
  std::size_t n_cap = 8;
  for (const char* name : {"porosity", "cyclewidth", "strategy", "play"}) {
    auto* sub = widths->add_subcommand(name);
    add_common(sub, c, true);
    sub->add_option("--n-cap", n_cap, "vertex cap for the cubic-tree enumeration");
    if (std::string(name) == "porosity") sub->add_option("--side", side, "vertices of side A, comma separated")->required();
    if (std::string(name) == "strategy" || std::string(name) == "play")
      sub->add_option("--decomposition", dec_path, "decomposition file (default: a brute-force optimum)");
    if (std::string(name) == "play") {
      sub->add_option("--robber", robber, "adversarial | scripted")->check(CLI::IsMember({"adversarial", "scripted"}));
      sub->add_option("--script", script, "vertices naming the robber's successive components");
    }
  }

  auto* search = app.add_subcommand("search", "falsification and fixture searches");
  search->require_subcommand(1);
  std::size_t n_max = 4, trials = 0;
  for (const char* name : {"vertex-question", "nullspace"}) {
    auto* sub = search->add_subcommand(name);
    add_common(sub, c, false);
    sub->add_option("--n-max", n_max, "largest vertex count");
    sub->add_option("--trials", trials, "random draws (vertex-question: 0 means exhaustive)");
  }

  auto* generate = app.add_subcommand("generate", "random graph in the canonical format");
  add_common(generate, c, false);
  std::string gen_kind = "directed";
  std::size_t gen_n = 0, gen_m = 0;
  bool simple = false;
  generate->add_option("--kind", gen_kind, "directed | undirected | bidirected");
  generate->add_option("--n", gen_n, "vertices");
  generate->add_option("--m", gen_m, "edges");
  generate->add_flag("--simple", simple, "no parallel edges or digons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? int(ok) : int(parse_error);
  }

  try {
    if (*duality) return cmd_duality(c, target, kind);
    if (*widths) {
      for (auto* sub : widths->get_subcommands()) return cmd_widths(sub->get_name(), c, side, dec_path, n_cap, robber, script);
    }
    if (*search) {
      if (search->get_subcommands().empty()) return parse_error;
      if (n_max == 0) throw ParseError("--n-max must be positive");
      auto* sub = search->get_subcommands().front();
      // The null-space search is random; default to a finite number of draws.
      const std::size_t draws = sub->get_name() == "nullspace" && trials == 0 ? 2000 : trials;
      return cmd_search(sub->get_name(), c, n_max, draws);
    }
    if (*generate) return cmd_generate(c, gen_kind, gen_n, gen_m, simple);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return budget_error;
  } catch (const IllegalMove& e) {
    std::cerr << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const GraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal_error;
  }
  return parse_error;
}
