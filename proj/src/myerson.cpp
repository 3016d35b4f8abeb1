#include "coalint/myerson.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace coalint {

TUGame restricted_game(const TUGame& game, const CommGraph& graph) {
  if (game.n != graph.n) throw SizeMismatch("game and graph must share the player set");
  std::vector<double> v(game.table_size(), 0.0);
  for (Mask s = 1; s <= game.grand(); ++s) {
    double sum = 0.0;
    for (Mask c : components(graph, s)) sum += game.at(c);
    v[s] = sum;
  }
  return TUGame::make(game.n, std::move(v));
}

struct CommunicationSituation::Cache {
  std::once_flag once;
  TUGame restricted;
  DividendVector restricted_div;
  DividendVector game_div;
};

CommunicationSituation::CommunicationSituation(TUGame game, CommGraph graph)
    : game_(std::move(game)), graph_(std::move(graph)), cache_(std::make_shared<Cache>()) {
  if (game_.n != graph_.n) throw SizeMismatch("game and graph must share the player set");
}

CommunicationSituation::Cache& CommunicationSituation::ensure() const {
  std::call_once(cache_->once, [this] {
    cache_->restricted = restricted_game(game_, graph_);
    cache_->restricted_div = mobius(cache_->restricted);
    cache_->game_div = mobius(game_);
  });
  return *cache_;
}

const TUGame& CommunicationSituation::restricted() const { return ensure().restricted; }

const DividendVector& CommunicationSituation::restricted_dividends() const {
  return ensure().restricted_div;
}

const DividendVector& CommunicationSituation::game_dividends() const { return ensure().game_div; }

std::vector<double> myerson_value(const CommunicationSituation& sit) {
  return shapley(sit.restricted_dividends());
}

double mii(const CommunicationSituation& sit, Mask s) {
  return sii_div(sit.restricted_dividends(), s);
}

double nii(const CommunicationSituation& sit, Mask s) {
  return mii(sit, s) - sii_div(sit.game_dividends(), s);
}

InteractionTable interaction_table(const CommunicationSituation& sit, IndexKind kind, int max_order) {
  if (kind != IndexKind::myerson && kind != IndexKind::network)
    throw UnknownKind("interaction_table on a situation supports myerson or network");
  if (max_order < 1 || max_order > sit.n())
    throw OrderOutOfRange("max order must lie in 1.." + std::to_string(sit.n()));
  InteractionTable table;
  table.kind = kind;
  table.n = sit.n();
  table.max_order = max_order;
  for (int order = 1; order <= max_order; ++order)
    for (Mask s = 1; s <= full_mask(sit.n()); ++s)
      if (popcount(s) == order) {
        const double v = kind == IndexKind::myerson ? mii(sit, s) : nii(sit, s);
        table.entries.push_back({s, v});
      }
  return table;
}

bool is_graph_null(const CommunicationSituation& sit, int player) {
  if (player < 1 || player > sit.n()) throw PlayerOutOfRange("no player " + std::to_string(player));
  require_enum_size(sit.n());
  const Mask bit = player_bit(player);
  Mask comp = 0;
  for (Mask c : components(sit.graph(), full_mask(sit.n())))
    if (c & bit) comp = c;

  // Each component is analysed independently: both conditions quantify
  // over the game restricted to the player's component.
  const TUGame sub = restrict_to_players(sit.game(), comp);
  const CommGraph subgraph = induced_subgraph(sit.graph(), comp);
  const int me = popcount(comp & (bit - 1)) + 1;  // compacted id of player

  if (!is_null_player(sub, me)) return false;  // (GNi)

  const Mask nulls = null_players(sub);
  const Mask others = full_mask(sub.n) & ~player_bit(me);
  for (Mask jm = others; jm; jm &= jm - 1) {
    const int j = lowest_player(jm);
    for (Mask km = jm & (jm - 1); km; km &= km - 1) {
      const int k = lowest_player(km);
      if (has_player(nulls, j) || has_player(nulls, k)) continue;
      if (has_player(intermediaries(subgraph, player_bit(j) | player_bit(k)), me))
        return false;  // (GNii)
    }
  }
  return true;
}

Mask graph_null_players(const CommunicationSituation& sit) {
  Mask out = 0;
  for (int i = 1; i <= sit.n(); ++i)
    if (is_graph_null(sit, i)) out |= player_bit(i);
  return out;
}

std::optional<Mask> veto_graph_partnership_witness(const TUGame& game, const CommGraph& graph, Mask gp) {
  if (gp == 0) throw EmptyCoalition("a veto graph partnership must be non-empty");
  if (gp & ~game.grand()) throw PlayerOutOfRange("partnership has a player above n");
  if (game.n != graph.n) throw SizeMismatch("game and graph must share the player set");
  require_enum_size(game.n);
  for (Mask p : veto_partnerships(game)) {
    const Mask closure = p | essential_intermediaries(graph, p);
    if ((gp & closure) == gp) return p;
  }
  return std::nullopt;
}

bool is_veto_graph_partnership(const TUGame& game, const CommGraph& graph, Mask gp) {
  return veto_graph_partnership_witness(game, graph, gp).has_value();
}

bool is_veto_graph_partnership(const CommunicationSituation& sit, Mask gp) {
  return is_veto_graph_partnership(sit.game(), sit.graph(), gp);
}

std::vector<Mask> veto_graph_partnerships(const TUGame& game, const CommGraph& graph) {
  if (game.n != graph.n) throw SizeMismatch("game and graph must share the player set");
  require_enum_size(game.n);
  std::vector<char> seen(std::size_t{1} << game.n, 0);
  for (Mask p : veto_partnerships(game)) {
    const Mask closure = p | essential_intermediaries(graph, p);
    for (Mask gp = closure;; gp = (gp - 1) & closure) {
      if (gp != 0) seen[gp] = 1;
      if (gp == 0) break;
    }
  }
  std::vector<Mask> out;
  for (Mask gp = 1; gp <= game.grand(); ++gp)
    if (seen[gp]) out.push_back(gp);
  std::sort(out.begin(), out.end(),
            [](Mask a, Mask b) { return std::pair(popcount(a), a) < std::pair(popcount(b), b); });
  return out;
}

QuotientSituation srvpc_quotient(const CommunicationSituation& sit, Mask partnership) {
  if (!is_veto_graph_partnership(sit, partnership))
    throw NotAVetoGraphPartnership("coalition " + coalition_key(partnership) +
                                   " is not a veto graph partnership");
  auto [qgame, qmap] = quotient_game(sit.restricted(), partnership);
  auto [qgraph, qmap2] = quotient_graph(sit.graph(), partnership);
  (void)qmap2;  // identical relabeling by construction
  return {CommunicationSituation(std::move(qgame), std::move(qgraph)), std::move(qmap)};
}

CommunicationSituation component_situation(const CommunicationSituation& sit, Mask keep) {
  return CommunicationSituation(restrict_to_players(sit.game(), keep),
                                induced_subgraph(sit.graph(), keep));
}

double restricted_dividend_direct(const CommunicationSituation& sit, Mask s) {
  if (s == 0) throw EmptyCoalition("dividends are defined for non-empty coalitions");
  if (s & ~full_mask(sit.n())) throw PlayerOutOfRange("coalition has a player above n");
  return sit.restricted_dividends().deltas[s];
}

double restricted_dividend_general(const CommunicationSituation& sit, Mask s) {
  if (s == 0) throw EmptyCoalition("dividends are defined for non-empty coalitions");
  if (s & ~full_mask(sit.n())) throw PlayerOutOfRange("coalition has a player above n");
  if (!is_connected_in(sit.graph(), s))
    throw PreconditionViolated("coalition " + coalition_key(s) +
                               " is disconnected; its restricted dividend is 0 by convention");
  require_enum_size(sit.n());
  const DividendVector& dividends = sit.game_dividends();
  double total = 0.0;
  for (Mask t = s;; t = (t - 1) & s) {
    if (t == 0) break;
    const double delta = dividends.deltas[t];
    if (delta != 0.0) {
      // Minimal t-connecting sets inside s; sets reaching outside s can
      // never be part of a family whose union is exactly s.
      std::vector<Mask> mins;
      const Mask rest = s & ~t;
      for (Mask x = 0;; x = (x - rest) & rest) {
        const Mask r = t | x;
        if (is_connected_in(sit.graph(), r)) {
          bool minimal = true;
          for (Mask m = x; m; m &= m - 1)
            if (is_connected_in(sit.graph(), r & ~(m & -m))) {
              minimal = false;
              break;
            }
          if (minimal) mins.push_back(r);
        }
        if (x == rest) break;
      }
      if (mins.size() > 24)
        throw SizeCapExceeded("too many minimal connecting sets (" + std::to_string(mins.size()) + ")");
      // Every non-empty family with union s contributes one signed term.
      if (!mins.empty()) {
        const Mask families = full_mask(static_cast<int>(mins.size()));
        for (Mask fam = 1; fam <= families; ++fam) {
          Mask u = 0;
          for (Mask f = fam; f; f &= f - 1) u |= mins[std::countr_zero(f)];
          if (u == s) total += (popcount(fam) % 2 == 1) ? delta : -delta;
        }
      }
    }
  }
  return total;
}

Mask cutnodes(const CommGraph& graph, Mask s) {
  Mask out = 0;
  for (Mask m = s; m; m &= m - 1) {
    const Mask bit = m & -m;
    if (!is_connected_in(graph, s & ~bit)) out |= bit;
  }
  return out;
}

double restricted_dividend_tree(const CommunicationSituation& sit, Mask s) {
  if (s == 0) throw EmptyCoalition("dividends are defined for non-empty coalitions");
  if (s & ~full_mask(sit.n())) throw PlayerOutOfRange("coalition has a player above n");
  if (!is_forest(sit.graph())) throw NotATree("the communication graph has a cycle");
  if (!is_connected_in(sit.graph(), s))
    throw PreconditionViolated("coalition " + coalition_key(s) +
                               " is disconnected; its restricted dividend is 0 by convention");
  const DividendVector& dividends = sit.game_dividends();
  const Mask cuts = cutnodes(sit.graph(), s);
  double total = 0.0;
  for (Mask l = cuts;; l = (l - 1) & cuts) {
    total += dividends.deltas[s & ~l];
    if (l == 0) break;
  }
  return total;
}

}  // namespace coalint
