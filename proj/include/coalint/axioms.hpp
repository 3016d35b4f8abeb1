#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coalint/myerson.hpp"

namespace coalint {

enum class Axiom {
  ComponentEfficiency,      // I-CE: first-order values split each component's worth
  GraphNull,                // I-GN: coalitions holding a graph null player score 0
  Fairness,                 // I-F: deleting an edge moves both endpoints' interactions equally
  PartnershipConsistency,   // I-SRVPC: veto graph partnerships collapse to their proxy
  Linearity,                // I-L: additive and homogeneous in the game
};

std::string to_string(Axiom axiom);
const std::vector<Axiom>& all_axioms();

// A pluggable graph interaction index: a named evaluator over situations.
struct GraphIndex {
  std::string name;
  std::function<double(const CommunicationSituation&, Mask)> eval;
};

GraphIndex myerson_index();
// The five counterexample indices, each designed to break exactly one axiom.
GraphIndex banzhaf_graph_index();               // breaks I-CE
GraphIndex fgn_modified_index(double alpha);    // breaks I-GN
GraphIndex scaled_essential_index();            // breaks I-F
GraphIndex first_order_only_index();            // breaks I-SRVPC
GraphIndex squared_game_index();                // breaks I-L
std::vector<GraphIndex> counterexample_indices();

// Name-based dispatcher over the indices above (fgn_modified uses alpha = 1).
double alt_index(const std::string& kind, const CommunicationSituation& sit, Mask s);

// A violated verdict always carries enough data to replay the residual.
struct Witness {
  int situation = -1;
  int situation_b = -1;  // linearity pairs
  Mask coalition = 0;
  Mask coalition_b = 0;  // component (I-CE) or partnership (I-SRVPC)
  int edge_i = 0;
  int edge_j = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;
  std::string detail;
};

struct AxiomReport {
  std::string index_name;
  Axiom axiom = Axiom::ComponentEfficiency;
  bool holds = true;
  double tolerance = axiom_tol;
  std::string domain;  // the quantification scope that was actually checked
  Witness witness;     // meaningful only when violated
};

// Runs one axiom over the supplied situations. Exhaustive caps: I-CE, I-GN
// and I-F require n <= limits().max_axiom_n; I-SRVPC requires
// n <= limits().max_partnership_n. Linearity pairs up situations sharing a
// graph, at most 50 pairs.
AxiomReport check_axiom(const GraphIndex& index, Axiom axiom,
                        const std::vector<CommunicationSituation>& sits, double tol = axiom_tol);

// Recomputes a violated report's residual from its witness; the result is
// bit-identical to witness.residual.
double replay_witness(const GraphIndex& index, const std::vector<CommunicationSituation>& sits,
                      const AxiomReport& report);

// The two defining conditions of a graph interaction index: zero across
// components, and agreement with the per-component restricted situation.
struct AdmissibilityReport {
  bool holds = true;
  std::string detail;
};
AdmissibilityReport check_admissibility(const GraphIndex& index,
                                        const std::vector<CommunicationSituation>& sits,
                                        double tol = axiom_tol);

// Deterministic game family used by the exhaustive suites (10 games).
std::vector<TUGame> fixed_game_family(int n);
// Every graph on up to four nodes crossed with the fixed family.
std::vector<CommunicationSituation> exhaustive_suite();
// Seeded random situations, n cycling over 2..max_n.
std::vector<CommunicationSituation> randomized_suite(int count, unsigned seed, int max_n = 5);
// exhaustive_suite + 200 randomized situations; the acceptance domain.
std::vector<CommunicationSituation> standard_suite();

// Per-index outcome of the independence run: all five axiom reports plus
// whether the violation landed exactly on the targeted axiom.
struct IndependenceEntry {
  std::string index_name;
  Axiom target = Axiom::ComponentEfficiency;
  std::vector<AxiomReport> reports;
  bool as_expected = false;
};
std::vector<IndependenceEntry> independence_suite();

// Residual primitives shared by the checkers and replay (same arithmetic,
// so replays are bit-for-bit).
namespace residual {
double component_efficiency(const GraphIndex& index, const CommunicationSituation& sit, Mask component);
double graph_null(const GraphIndex& index, const CommunicationSituation& sit, Mask coalition);
double fairness(const GraphIndex& index, const CommunicationSituation& sit,
                const CommunicationSituation& without_edge, int i, int j, Mask s);
double partnership(const GraphIndex& index, const CommunicationSituation& sit,
                   const QuotientSituation& quotient, Mask p, Mask s);
double linearity(const GraphIndex& index, const CommunicationSituation& a,
                 const CommunicationSituation& b, double alpha, double beta, Mask s);
}  // namespace residual

}  // namespace coalint
