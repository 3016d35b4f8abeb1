#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coalint/axioms.hpp"
#include "coalint/graph.hpp"
#include "coalint/interaction.hpp"
#include "coalint/myerson.hpp"

namespace coalint {

// Game file: {"n": 5, "dense": [...2^n values...]} or
// {"n": 5, "values": {"1,5": 100.0, ...}} with unlisted coalitions worth 0.
// The empty coalition key is forbidden; sparse games are densified here.
TUGame parse_game_text(const std::string& text);
TUGame parse_game_file(const std::string& path);
std::string game_to_json(const TUGame& game);

// Graph file: {"n": 5, "edges": [[1,2],[1,3],...]} with ascending pairs.
CommGraph parse_graph_text(const std::string& text);
CommGraph parse_graph_file(const std::string& path);
std::string graph_to_json(const CommGraph& graph);

// Table serialization: JSON keeps full precision and round-trips doubles
// exactly; CSV fixes 6 decimals. Rows are already (order, mask) sorted.
std::string table_to_json(const InteractionTable& table);
std::string table_to_csv(const InteractionTable& table);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Counterfactual edge analysis: before/after/delta per coalition for one
// index, sorted by |delta| descending (ties by order then mask).
struct CounterfactualRow {
  Mask coalition = 0;
  double before = 0.0;
  double after = 0.0;
  double delta = 0.0;
};
struct CounterfactualReport {
  IndexKind kind = IndexKind::myerson;
  int n = 0;
  std::vector<CounterfactualRow> rows;
};
CounterfactualReport counterfactual(const TUGame& game, const CommGraph& before,
                                    const CommGraph& after, IndexKind kind, int max_order);
CounterfactualReport counterfactual(const TUGame& game, const CommGraph& before,
                                    const CommGraph& after, IndexKind kind,
                                    const std::vector<Mask>& coalitions);
std::string counterfactual_to_csv(const CounterfactualReport& report);
std::string counterfactual_to_json(const CounterfactualReport& report);

// The two bundled table reproductions: the messages game and the horse
// market on the five-player bridge graph. Emits one csv per table with
// myerson / shapley / network rows, two decimals, plus footnotes on cells
// whose commonly printed reference values contradict the tables' own
// myerson and shapley rows.
struct ReproducedTables {
  std::vector<std::pair<std::string, std::string>> files;  // filename -> csv content
};
ReproducedTables reproduce_case(const std::string& which);  // "messages" | "horse"

// The five-player graph used by both bundled cases.
CommGraph bridge_graph();

std::string axiom_reports_to_json(const std::vector<AxiomReport>& reports);
std::string independence_to_json(const std::vector<IndependenceEntry>& entries);

}  // namespace coalint
