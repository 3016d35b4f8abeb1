#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "coalint/game.hpp"
#include "coalint/graph.hpp"
#include "coalint/interaction.hpp"
#include "coalint/types.hpp"

namespace coalint {

// Restricted game: each coalition is worth the sum of the original values
// of its connected components in the induced subgraph.
TUGame restricted_game(const TUGame& game, const CommGraph& graph);

// A game plus a communication graph on the same players. The restricted
// game and the dividend vectors are built lazily, exactly once, and the
// first build is safe under concurrent access; afterwards every query is
// pure and shareable.
class CommunicationSituation {
 public:
  CommunicationSituation(TUGame game, CommGraph graph);

  int n() const { return game_.n; }
  const TUGame& game() const { return game_; }
  const CommGraph& graph() const { return graph_; }

  const TUGame& restricted() const;
  const DividendVector& restricted_dividends() const;
  const DividendVector& game_dividends() const;

 private:
  struct Cache;
  Cache& ensure() const;

  TUGame game_;
  CommGraph graph_;
  std::shared_ptr<Cache> cache_;  // shared so copies reuse one build
};

// Shapley value of the restricted game; component efficient.
std::vector<double> myerson_value(const CommunicationSituation& sit);

// Myerson interaction index: the Shapley interaction index of the
// restricted game. Zero whenever S straddles components.
double mii(const CommunicationSituation& sit, Mask s);

// Network-induced interaction: mii minus the plain Shapley interaction
// of the unrestricted game.
double nii(const CommunicationSituation& sit, Mask s);

// Table of mii or nii values; kind must be myerson or network.
InteractionTable interaction_table(const CommunicationSituation& sit, IndexKind kind, int max_order);

// Graph null player: null in the original game restricted to the player's
// component, and never an intermediary between two non-null players of
// that component. Each component is analysed independently.
bool is_graph_null(const CommunicationSituation& sit, int player);
Mask graph_null_players(const CommunicationSituation& sit);

// True iff some veto partnership P of the game satisfies
// GP inside P u EB(P). Enumeration is ascending by cardinality, so the
// minimal witnessing P is found first.
bool is_veto_graph_partnership(const CommunicationSituation& sit, Mask gp);
bool is_veto_graph_partnership(const TUGame& game, const CommGraph& graph, Mask gp);
std::optional<Mask> veto_graph_partnership_witness(const TUGame& game, const CommGraph& graph, Mask gp);

// All veto graph partnerships of the situation, ascending by (cardinality, mask).
std::vector<Mask> veto_graph_partnerships(const TUGame& game, const CommGraph& graph);

// Situation obtained by collapsing a veto graph partnership P into its
// proxy: the quotient of the restricted game paired with the quotient
// graph. Throws NotAVetoGraphPartnership when P is not one.
struct QuotientSituation {
  CommunicationSituation situation;
  QuotientMap map;
};
QuotientSituation srvpc_quotient(const CommunicationSituation& sit, Mask partnership);

// Situation on the players of keep only (game and graph both restricted,
// ids compacted). Coalitions translate via compress_mask/expand_mask.
CommunicationSituation component_situation(const CommunicationSituation& sit, Mask keep);

// Dividend of the restricted game, straight from the cached transform.
double restricted_dividend_direct(const CommunicationSituation& sit, Mask s);

// Closed-form cross-checks for the restricted dividends. Both are
// verification harness material, never the production path: the direct
// Moebius transform above is authoritative.
//
// General form: over every non-empty T in S and every non-empty family of
// minimal T-connecting sets inside S whose union is exactly S, add
// (-1)^(|family|+1) * delta(T). Requires S connected in its induced subgraph.
double restricted_dividend_general(const CommunicationSituation& sit, Mask s);
// Forest form: sum of delta(S \ L) over all subsets L of the cutnodes of S,
// where cutnodes are the cut vertices of the induced subgraph.
double restricted_dividend_tree(const CommunicationSituation& sit, Mask s);

// Cut vertices of the induced subgraph: nodes of s whose removal
// disconnects the rest of s within the induced subgraph.
Mask cutnodes(const CommGraph& graph, Mask s);

}  // namespace coalint
