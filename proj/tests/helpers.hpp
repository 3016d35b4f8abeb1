#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "coalint/graph.hpp"
#include "coalint/myerson.hpp"

namespace coalint::testing {

inline Mask mask(std::initializer_list<int> players) {
  Mask m = 0;
  for (int p : players) m |= player_bit(p);
  return m;
}

// Independent dividend oracle: direct inclusion-exclusion per coalition,
// never touching the in-place lattice transform it is meant to check.
inline double dividend_oracle(const TUGame& game, Mask t) {
  const int size_t_ = popcount(t);
  double sum = 0.0;
  for (Mask s = t;; s = (s - 1) & t) {
    const double v = game.at(s);
    sum += ((size_t_ - popcount(s)) % 2 == 0) ? v : -v;
    if (s == 0) break;
  }
  return sum;
}

inline TUGame random_game(int n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (Mask s = 1; s <= full_mask(n); ++s) v[s] = dist(rng);
  return TUGame::make(n, std::move(v));
}

// Random recursive tree: each new node attaches to a uniform earlier node.
inline CommGraph random_tree(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 2; i <= n; ++i) {
    std::uniform_int_distribution<int> pick(1, i - 1);
    edges.emplace_back(pick(rng), i);
  }
  return CommGraph::make(n, edges);
}

inline CommGraph random_graph(int n, std::mt19937_64& rng, double p = 0.5) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (coin(rng) < p) edges.emplace_back(i, j);
  return CommGraph::make(n, edges);
}

// Unique path between two nodes of a tree, as a node mask (BFS parents).
inline Mask tree_path(const CommGraph& tree, int from, int to) {
  std::vector<int> parent(tree.n + 1, 0);
  std::vector<int> queue{from};
  parent[from] = from;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const int u = queue[k];
    if (u == to) break;
    for (Mask m = tree.neighbors(u); m; m &= m - 1) {
      const int w = lowest_player(m);
      if (parent[w] == 0) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  Mask path = 0;
  for (int u = to; u != parent[u]; u = parent[u]) path |= player_bit(u);
  return path | player_bit(from);
}

// Union of the pairwise paths: the unique minimal connecting set on a tree.
inline Mask path_union(const CommGraph& tree, Mask s) {
  Mask hull = s;
  for (Mask a = s; a; a &= a - 1)
    for (Mask b = a & (a - 1); b; b &= b - 1)
      hull |= tree_path(tree, lowest_player(a), lowest_player(b));
  return hull;
}

// Alternative cutnode reading for the forest dividend relation: nodes of s
// whose removal leaves the rest of s disconnected within the hull.
inline Mask cutnodes_hull_reading(const CommGraph& graph, Mask s) {
  const std::vector<Mask> mins = minimal_connecting_sets(graph, s);
  if (mins.size() != 1) return 0;
  const Mask hull = mins.front();
  Mask out = 0;
  for (Mask m = s; m; m &= m - 1) {
    const Mask bit = m & -m;
    const Mask rest = s & ~bit;
    if (popcount(rest) <= 1) continue;
    bool within_one = false;
    for (Mask c : components(graph, hull & ~bit))
      if ((rest & c) == rest) within_one = true;
    if (!within_one) out |= bit;
  }
  return out;
}

}  // namespace coalint::testing
