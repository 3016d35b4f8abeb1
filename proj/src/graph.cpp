#include "coalint/graph.hpp"

#include <algorithm>

namespace coalint {

namespace {

void check_node(int n, int i) {
  if (i < 1 || i > n) throw PlayerOutOfRange("node " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

}  // namespace

CommGraph CommGraph::make(int n, const std::vector<std::pair<int, int>>& edges) {
  require_game_size(n);
  CommGraph g;
  g.n = n;
  g.adj.assign(n, 0);
  for (auto [a, b] : edges) {
    check_node(n, a);
    check_node(n, b);
    if (a == b) throw LoopEdge("loop edge at node " + std::to_string(a));
    if (g.has_edge(a, b))
      throw DuplicateEdge("duplicate edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    g.adj[a - 1] |= player_bit(b);
    g.adj[b - 1] |= player_bit(a);
  }
  return g;
}

CommGraph CommGraph::complete(int n) {
  require_game_size(n);
  CommGraph g;
  g.n = n;
  g.adj.assign(n, 0);
  for (int i = 1; i <= n; ++i) g.adj[i - 1] = full_mask(n) & ~player_bit(i);
  return g;
}

CommGraph CommGraph::edgeless(int n) {
  require_game_size(n);
  CommGraph g;
  g.n = n;
  g.adj.assign(n, 0);
  return g;
}

bool CommGraph::has_edge(int i, int j) const {
  check_node(n, i);
  check_node(n, j);
  return i != j && has_player(adj[i - 1], j);
}

int CommGraph::edge_count() const {
  int twice = 0;
  for (Mask m : adj) twice += popcount(m);
  return twice / 2;
}

std::vector<std::pair<int, int>> CommGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i)
    for (Mask m = adj[i - 1]; m; m &= m - 1) {
      const int j = lowest_player(m);
      if (i < j) out.emplace_back(i, j);
    }
  return out;
}

CommGraph CommGraph::remove_edge(int i, int j) const {
  if (!has_edge(i, j))
    throw NoSuchEdge("no edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
  CommGraph g = *this;
  g.adj[i - 1] &= ~player_bit(j);
  g.adj[j - 1] &= ~player_bit(i);
  return g;
}

CommGraph CommGraph::add_edge(int i, int j) const {
  check_node(n, i);
  check_node(n, j);
  if (i == j) throw LoopEdge("loop edge at node " + std::to_string(i));
  if (has_edge(i, j))
    throw EdgeAlreadyPresent("edge {" + std::to_string(i) + "," + std::to_string(j) + "} already present");
  CommGraph g = *this;
  g.adj[i - 1] |= player_bit(j);
  g.adj[j - 1] |= player_bit(i);
  return g;
}

namespace {

// Flood fill within s starting from seed, using only edges of the induced subgraph.
Mask flood(const CommGraph& g, Mask s, Mask seed) {
  Mask comp = seed;
  Mask frontier = seed;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= g.adj[std::countr_zero(f)];
    next &= s & ~comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

}  // namespace

std::vector<Mask> components(const CommGraph& graph, Mask s) {
  if (s & ~full_mask(graph.n)) throw PlayerOutOfRange("coalition has a player above n");
  std::vector<Mask> out;
  Mask rem = s;
  while (rem) {
    const Mask comp = flood(graph, s, rem & -rem);
    out.push_back(comp);
    rem &= ~comp;
  }
  return out;
}

bool is_connected_in(const CommGraph& graph, Mask s) {
  if (s & ~full_mask(graph.n)) throw PlayerOutOfRange("coalition has a player above n");
  if (popcount(s) <= 1) return true;
  return flood(graph, s, s & -s) == s;
}

std::vector<Mask> minimal_connecting_sets(const CommGraph& graph, Mask s) {
  if (s == 0) throw EmptyCoalition("connecting sets are defined for non-empty coalitions");
  if (s & ~full_mask(graph.n)) throw PlayerOutOfRange("coalition has a player above n");
  require_enum_size(graph.n);
  std::vector<Mask> out;
  const Mask rest = full_mask(graph.n) & ~s;
  // r = s | x runs over supersets of s in ascending mask order as x ascends.
  for (Mask x = 0;; x = (x - rest) & rest) {
    const Mask r = s | x;
    if (is_connected_in(graph, r)) {
      bool minimal = true;
      for (Mask m = x; m; m &= m - 1)
        if (is_connected_in(graph, r & ~(m & -m))) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(r);
    }
    if (x == rest) break;
  }
  return out;
}

Mask intermediaries(const CommGraph& graph, Mask s) {
  Mask u = 0;
  for (Mask r : minimal_connecting_sets(graph, s)) u |= r;
  return u & ~s;
}

Mask essential_intermediaries(const CommGraph& graph, Mask s) {
  const std::vector<Mask> sets = minimal_connecting_sets(graph, s);
  if (sets.empty()) return 0;
  Mask u = full_mask(graph.n);
  for (Mask r : sets) u &= r;
  return u & ~s;
}

std::pair<CommGraph, QuotientMap> quotient_graph(const CommGraph& graph, Mask merged) {
  QuotientMap qm = make_quotient_map(graph.n, merged);
  // Outside neighbors of the merged block.
  Mask proxy_neighbors = 0;
  for (Mask m = merged; m; m &= m - 1) proxy_neighbors |= graph.adj[std::countr_zero(m)];
  proxy_neighbors &= ~merged;

  CommGraph q;
  q.n = qm.quotient_n;
  q.adj.assign(q.n, 0);
  for (int i = 1; i <= graph.n; ++i) {
    if (has_player(merged, i)) continue;
    const int qi = qm.to_quotient_id[i];
    q.adj[qi - 1] = qm.to_quotient_mask(graph.adj[i - 1] & ~merged);
    if (has_player(proxy_neighbors, i)) {
      q.adj[qi - 1] |= player_bit(qm.proxy_id);
      q.adj[qm.proxy_id - 1] |= player_bit(qi);
    }
  }
  return {std::move(q), std::move(qm)};
}

CommGraph induced_subgraph(const CommGraph& graph, Mask keep) {
  if (keep == 0) throw EmptyCoalition("cannot induce a subgraph on no nodes");
  if (keep & ~full_mask(graph.n)) throw PlayerOutOfRange("induced set has a player above n");
  CommGraph g;
  g.n = popcount(keep);
  g.adj.assign(g.n, 0);
  int rank = 0;
  for (Mask m = keep; m; m &= m - 1, ++rank)
    g.adj[rank] = compress_mask(graph.adj[std::countr_zero(m)] & keep, keep);
  return g;
}

bool is_forest(const CommGraph& graph) {
  return graph.edge_count() == graph.n - static_cast<int>(components(graph, full_mask(graph.n)).size());
}

}  // namespace coalint
