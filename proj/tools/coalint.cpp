#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coalint/axioms.hpp"
#include "coalint/io.hpp"

namespace {

using namespace coalint;

void apply_max_n(std::optional<int> flag) {
  const char* env = std::getenv("COALITION_INTERACT_MAX_N");
  std::optional<int> cap = flag;
  if (!cap && env && *env) {
    try {
      cap = std::stoi(env);
    } catch (const std::exception&) {
      throw ValidationError("COALITION_INTERACT_MAX_N must be an integer");
    }
  }
  if (!cap) return;
  if (*cap < 1 || *cap > 31) throw ValidationError("--max-n must lie in 1..31");
  Limits& l = limits();
  l.max_game_n = *cap;
  l.max_enum_n = *cap;
  l.max_axiom_n = *cap;
  l.max_partnership_n = *cap;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

struct LoadedSituation {
  TUGame game;
  CommGraph graph;
  bool graph_supplied = false;
};

LoadedSituation load(const std::string& game_path, const std::string& graph_path,
                     IndexKind kind) {
  TUGame game = parse_game_file(game_path);
  const bool supplied = !graph_path.empty();
  CommGraph graph = supplied ? parse_graph_file(graph_path) : CommGraph::complete(game.n);
  if (game.n != graph.n)
    throw SizeMismatch("game has n = " + std::to_string(game.n) + " but graph has n = " +
                       std::to_string(graph.n));
  if (!supplied && kind == IndexKind::network)
    std::cerr << "warning: no graph given; against the complete graph the network index is "
                 "identically 0\n";
  if ((kind == IndexKind::myerson || kind == IndexKind::network) &&
      game.n <= limits().max_enum_n && !is_superadditive(game))
    std::cerr << "warning: the game is not superadditive; restricted-game results remain exact "
                 "but the usual interpretation assumes superadditivity\n";
  return {std::move(game), std::move(graph), supplied};
}

int cmd_compute(const std::string& game_path, const std::string& graph_path,
                const std::string& index_name, int order, const std::string& coalition,
                const std::string& out_path, const std::string& format) {
  const IndexKind kind = index_kind_from_string(index_name);
  LoadedSituation in = load(game_path, graph_path, kind);

  InteractionTable table;
  if (kind == IndexKind::shapley || kind == IndexKind::banzhaf) {
    table = interaction_table(in.game, kind, order);
  } else {
    table = interaction_table(CommunicationSituation(in.game, in.graph), kind, order);
  }
  if (!coalition.empty()) {
    const Mask s = parse_coalition_key(coalition, in.game.n);
    InteractionTable single;
    single.kind = table.kind;
    single.n = table.n;
    single.max_order = popcount(s);
    const CommunicationSituation sit(in.game, in.graph);
    double value = 0.0;
    switch (kind) {
      case IndexKind::shapley: value = sii_div(mobius(in.game), s); break;
      case IndexKind::banzhaf: value = banzhaf_div(mobius(in.game), s); break;
      case IndexKind::myerson: value = mii(sit, s); break;
      case IndexKind::network: value = nii(sit, s); break;
    }
    single.entries.push_back({s, value});
    table = std::move(single);
  }
  emit(out_path, format == "json" ? table_to_json(table) : table_to_csv(table));
  return 0;
}

int cmd_reproduce(const std::string& which, const std::string& out_dir) {
  const ReproducedTables tables = reproduce_case(which);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
  for (const auto& [name, content] : tables.files) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    write_file(path, content);
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_counterfactual(const std::string& game_path, const std::string& graph_path,
                       const std::string& index_name, int order, const std::string& coalition,
                       const std::vector<std::string>& toggles, const std::string& out_path,
                       const std::string& format) {
  const IndexKind kind = index_kind_from_string(index_name);
  LoadedSituation in = load(game_path, graph_path, kind);
  CommGraph after = in.graph;
  for (const std::string& t : toggles) {
    const Mask pair = parse_coalition_key(t, in.game.n);
    if (popcount(pair) != 2)
      throw ValidationError("--toggle-edge expects two distinct player ids, got '" + t + "'");
    const int i = lowest_player(pair);
    const int j = lowest_player(pair & (pair - 1));
    after = after.has_edge(i, j) ? after.remove_edge(i, j) : after.add_edge(i, j);
  }
  CounterfactualReport report;
  if (!coalition.empty())
    report = counterfactual(in.game, in.graph, after, kind,
                            std::vector<Mask>{parse_coalition_key(coalition, in.game.n)});
  else
    report = counterfactual(in.game, in.graph, after, kind, order);
  emit(out_path, format == "json" ? counterfactual_to_json(report) : counterfactual_to_csv(report));
  return 0;
}

GraphIndex named_graph_index(const std::string& name) {
  if (name == "myerson") return myerson_index();
  for (GraphIndex& gi : counterexample_indices())
    if (gi.name == name) return gi;
  throw UnknownKind("unknown graph index '" + name +
                    "' (expected myerson, banzhaf_graph, fgn_modified, scaled_essential, "
                    "first_order_only or squared_game)");
}

int cmd_verify(const std::string& game_path, const std::string& graph_path,
               const std::string& index_name, const std::string& out_path) {
  const GraphIndex index = named_graph_index(index_name);
  LoadedSituation in = load(game_path, graph_path, IndexKind::myerson);
  const CommunicationSituation sit(in.game, in.graph);

  std::vector<AxiomReport> reports;
  for (Axiom axiom : all_axioms()) {
    if (axiom == Axiom::Linearity) {
      // Pair the game with the fixed family on its own graph.
      std::vector<CommunicationSituation> sits;
      sits.push_back(sit);
      for (TUGame& partner : fixed_game_family(in.game.n))
        sits.emplace_back(std::move(partner), in.graph);
      reports.push_back(check_axiom(index, axiom, sits));
    } else {
      reports.push_back(check_axiom(index, axiom, {sit}));
    }
  }

  bool all_hold = true;
  for (const AxiomReport& r : reports) {
    std::cout << to_string(r.axiom) << ": " << (r.holds ? "holds" : "VIOLATED") << "  ["
              << r.domain << "]\n";
    if (!r.holds) {
      std::cout << "    residual " << r.witness.residual << ": " << r.witness.detail << "\n";
      all_hold = false;
    }
  }
  if (!out_path.empty()) write_file(out_path, axiom_reports_to_json(reports));
  return all_hold ? 0 : 2;
}

int cmd_independence(const std::string& out_path) {
  const std::vector<IndependenceEntry> entries = independence_suite();
  bool all_expected = true;
  std::cout << "index                 I-CE      I-GN      I-F       I-SRVPC   I-L\n";
  for (const IndependenceEntry& e : entries) {
    std::string line = e.index_name;
    line.resize(22, ' ');
    for (const AxiomReport& r : e.reports) {
      std::string cell = r.holds ? "holds" : "VIOLATED";
      cell.resize(10, ' ');
      line += cell;
    }
    std::cout << line << (e.as_expected ? "" : "   <- unexpected pattern") << "\n";
    all_expected = all_expected && e.as_expected;
  }
  if (!out_path.empty()) write_file(out_path, independence_to_json(entries));
  return all_expected ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact interaction indices for cooperative games with graph-restricted communication"};
  app.require_subcommand(1);
  std::optional<int> max_n;
  app.add_option("--max-n", max_n, "override the exact-computation size caps");

  std::string game_path, graph_path, index_name = "shapley", coalition, out_path, format = "csv",
              which_case;
  int order = 2;
  std::vector<std::string> toggles;

  CLI::App* compute = app.add_subcommand("compute", "interaction table for a game (and graph)");
  compute->add_option("--game", game_path, "game file (json)")->required();
  compute->add_option("--graph", graph_path, "graph file (json); defaults to the complete graph");
  compute->add_option("--index", index_name, "shapley | banzhaf | myerson | network");
  compute->add_option("--order", order, "maximum coalition order (default 2)");
  compute->add_option("--coalition", coalition, "single coalition, e.g. \"1,3\"");
  compute->add_option("--out", out_path, "output file (default stdout)");
  compute->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  CLI::App* reproduce = app.add_subcommand("reproduce", "write the bundled reference tables");
  reproduce->add_option("--case", which_case, "messages | horse")->required();
  reproduce->add_option("--out", out_path, "output directory")->required();

  CLI::App* counterf = app.add_subcommand("counterfactual", "edge toggles: before/after/delta");
  counterf->add_option("--game", game_path)->required();
  counterf->add_option("--graph", graph_path, "defaults to the complete graph");
  counterf->add_option("--index", index_name, "shapley | banzhaf | myerson | network");
  counterf->add_option("--order", order, "coalitions up to this order (default 2)");
  counterf->add_option("--coalition", coalition, "restrict to a single coalition");
  counterf->add_option("--toggle-edge", toggles, "edge \"i,j\" to flip; repeatable")->required();
  counterf->add_option("--out", out_path);
  counterf->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::string verify_index = "myerson";
  CLI::App* verify = app.add_subcommand("verify", "check the five axioms on one situation");
  verify->add_option("--game", game_path)->required();
  verify->add_option("--graph", graph_path, "defaults to the complete graph");
  verify->add_option("--index", verify_index, "graph index to test (default myerson)");
  verify->add_option("--out", out_path, "also write a json report");

  CLI::App* independence = app.add_subcommand(
      "independence", "run the five counterexample indices against all five axioms");
  independence->add_option("--out", out_path, "also write a json report");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_max_n(max_n);
    if (compute->parsed())
      return cmd_compute(game_path, graph_path, index_name, order, coalition, out_path, format);
    if (reproduce->parsed()) return cmd_reproduce(which_case, out_path);
    if (counterf->parsed())
      return cmd_counterfactual(game_path, graph_path, index_name, order, coalition, toggles,
                                out_path, format);
    if (verify->parsed()) return cmd_verify(game_path, graph_path, verify_index, out_path);
    if (independence->parsed()) return cmd_independence(out_path);
  } catch (const SizeCapExceeded& e) {
    std::cerr << "error (size cap): " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
