#pragma once

#include <utility>
#include <vector>

#include "coalint/game.hpp"
#include "coalint/types.hpp"

namespace coalint {

// Undirected simple graph on players 1..n, one neighbor bitmask per node.
// Immutable after construction; edge surgery returns a new graph.
struct CommGraph {
  int n = 0;
  std::vector<Mask> adj;  // adj[i-1] = neighbors of player i

  static CommGraph make(int n, const std::vector<std::pair<int, int>>& edges);
  static CommGraph complete(int n);
  static CommGraph edgeless(int n);

  Mask neighbors(int i) const { return adj[i - 1]; }
  bool has_edge(int i, int j) const;
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // ascending (i, j), i < j

  CommGraph remove_edge(int i, int j) const;  // NoSuchEdge if absent
  CommGraph add_edge(int i, int j) const;     // EdgeAlreadyPresent if present
};

// Connected components of the subgraph induced by s, ascending by minimum element.
std::vector<Mask> components(const CommGraph& graph, Mask s);

// True iff s is empty, a singleton, or spans a single component of its induced subgraph.
bool is_connected_in(const CommGraph& graph, Mask s);

// All inclusion-minimal node sets R containing s whose induced subgraph
// connects s, ascending by mask. Empty iff s straddles components of the
// whole graph. Brute force over supersets with a per-element minimality
// certificate; this routine is the oracle other modules lean on.
std::vector<Mask> minimal_connecting_sets(const CommGraph& graph, Mask s);

// Union of all minimal connecting sets, minus s. Empty set when there are none.
Mask intermediaries(const CommGraph& graph, Mask s);
// Intersection of all minimal connecting sets, minus s.
Mask essential_intermediaries(const CommGraph& graph, Mask s);

// Quotient graph: the proxy [C] is adjacent to exactly the outside
// neighbors of C. Relabeling is shared with quotient_game.
std::pair<CommGraph, QuotientMap> quotient_graph(const CommGraph& graph, Mask merged);

// Induced subgraph on the players of keep, compacted to 1..|keep|.
CommGraph induced_subgraph(const CommGraph& graph, Mask keep);

bool is_forest(const CommGraph& graph);

}  // namespace coalint
