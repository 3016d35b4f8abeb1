#include "coalint/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace coalint {

TUGame TUGame::make(int n, std::vector<double> values) {
  require_game_size(n);
  if (values.size() != (std::size_t{1} << n))
    throw SizeMismatch("value table for n = " + std::to_string(n) + " must have " +
                       std::to_string(std::size_t{1} << n) + " entries, got " +
                       std::to_string(values.size()));
  if (values[0] != 0.0)
    throw NonZeroEmptyCoalition("v(empty) must be 0, got " + std::to_string(values[0]));
  TUGame g;
  g.n = n;
  g.values = std::move(values);
  return g;
}

DividendVector mobius(const TUGame& game) {
  DividendVector d;
  d.n = game.n;
  d.deltas = game.values;
  const Mask size = Mask{1} << game.n;
  for (int i = 0; i < game.n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask m = bit; m < size; ++m)
      if (m & bit) d.deltas[m] -= d.deltas[m ^ bit];
  }
  return d;
}

TUGame zeta(const DividendVector& dividends) {
  std::vector<double> v = dividends.deltas;
  const Mask size = Mask{1} << dividends.n;
  for (int i = 0; i < dividends.n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask m = bit; m < size; ++m)
      if (m & bit) v[m] += v[m ^ bit];
  }
  return TUGame::make(dividends.n, std::move(v));
}

QuotientMap make_quotient_map(int n, Mask merged) {
  if (merged == 0) throw EmptyCoalition("cannot merge the empty coalition");
  if (merged & ~full_mask(n)) throw PlayerOutOfRange("merged coalition has a player above n");
  QuotientMap qm;
  qm.original_n = n;
  qm.merged = merged;
  qm.proxy_label = lowest_player(merged);
  qm.quotient_n = n - popcount(merged) + 1;
  qm.to_quotient_id.assign(n + 1, 0);
  qm.to_original_id.assign(qm.quotient_n + 1, 0);
  int next = 1;
  for (int i = 1; i <= n; ++i) {
    const bool in_merged = has_player(merged, i);
    if (in_merged && i != qm.proxy_label) continue;
    qm.to_original_id[next] = i;
    qm.to_quotient_id[i] = next;
    if (in_merged) qm.proxy_id = next;
    ++next;
  }
  for (int i = 1; i <= n; ++i)
    if (has_player(merged, i)) qm.to_quotient_id[i] = qm.proxy_id;
  return qm;
}

Mask QuotientMap::to_quotient_mask(Mask original) const {
  Mask out = 0;
  for (Mask m = original; m; m &= m - 1) out |= player_bit(to_quotient_id[lowest_player(m)]);
  return out;
}

Mask QuotientMap::to_original_mask(Mask quotient) const {
  Mask out = 0;
  for (Mask m = quotient; m; m &= m - 1) {
    const int q = lowest_player(m);
    if (q == proxy_id)
      out |= merged;
    else
      out |= player_bit(to_original_id[q]);
  }
  return out;
}

std::pair<TUGame, QuotientMap> quotient_game(const TUGame& game, Mask merged) {
  QuotientMap qm = make_quotient_map(game.n, merged);
  std::vector<double> v(std::size_t{1} << qm.quotient_n);
  for (Mask s = 0; s < (Mask{1} << qm.quotient_n); ++s) v[s] = game.at(qm.to_original_mask(s));
  return {TUGame::make(qm.quotient_n, std::move(v)), std::move(qm)};
}

Mask compress_mask(Mask s, Mask keep) {
  Mask out = 0;
  int rank = 0;
  for (Mask m = keep; m; m &= m - 1, ++rank)
    if (s & m & -m) out |= Mask{1} << rank;
  return out;
}

Mask expand_mask(Mask packed, Mask keep) {
  Mask out = 0;
  int rank = 0;
  for (Mask m = keep; m; m &= m - 1, ++rank)
    if (packed & (Mask{1} << rank)) out |= m & -m;
  return out;
}

TUGame restrict_to_players(const TUGame& game, Mask keep) {
  if (keep == 0) throw EmptyCoalition("cannot restrict a game to no players");
  if (keep & ~game.grand()) throw PlayerOutOfRange("restriction set has a player above n");
  const int k = popcount(keep);
  std::vector<double> v(std::size_t{1} << k);
  for (Mask s = 0; s < (Mask{1} << k); ++s) v[s] = game.at(expand_mask(s, keep));
  return TUGame::make(k, std::move(v));
}

bool is_null_player(const TUGame& game, int player) {
  if (player < 1 || player > game.n) throw PlayerOutOfRange("no player " + std::to_string(player));
  const Mask bit = player_bit(player);
  const Mask size = Mask{1} << game.n;
  for (Mask s = 0; s < size; ++s) {
    if (s & bit) continue;
    if (std::abs(game.at(s | bit) - game.at(s)) > value_tol) return false;
  }
  return true;
}

Mask null_players(const TUGame& game) {
  Mask out = 0;
  for (int i = 1; i <= game.n; ++i)
    if (is_null_player(game, i)) out |= player_bit(i);
  return out;
}

bool is_veto_partnership(const TUGame& game, Mask partnership) {
  if (partnership == 0) throw EmptyCoalition("a veto partnership must be non-empty");
  if (partnership & ~game.grand()) throw PlayerOutOfRange("partnership has a player above n");
  // Every coalition R with P not contained in R is some T u S with
  // T in N\P and S a proper subset of P, and vice versa.
  const Mask size = Mask{1} << game.n;
  for (Mask r = 0; r < size; ++r)
    if ((r & partnership) != partnership && std::abs(game.at(r)) > value_tol) return false;
  return true;
}

std::vector<Mask> veto_partnerships(const TUGame& game) {
  Mask core = game.grand();
  for (Mask r = 0; r < (Mask{1} << game.n); ++r)
    if (std::abs(game.at(r)) > value_tol) core &= r;
  std::vector<Mask> candidates;
  for (Mask p = core;; p = (p - 1) & core) {
    if (p != 0 && is_veto_partnership(game, p)) candidates.push_back(p);
    if (p == 0) break;
  }
  std::sort(candidates.begin(), candidates.end(),
            [](Mask a, Mask b) { return std::pair(popcount(a), a) < std::pair(popcount(b), b); });
  return candidates;
}

bool is_superadditive(const TUGame& game) {
  require_enum_size(game.n);
  const Mask size = Mask{1} << game.n;
  for (Mask u = 0; u < size; ++u) {
    for (Mask s = (u - 1) & u; s > 0; s = (s - 1) & u) {
      const Mask t = u ^ s;
      if (s > t) continue;
      if (game.at(u) < game.at(s) + game.at(t) - 1e-12) return false;
    }
  }
  return true;
}

TUGame messages_game(int n) {
  require_game_size(n);
  std::vector<double> v(std::size_t{1} << n);
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    const double k = popcount(s);
    v[s] = k * (k - 1);
  }
  return TUGame::make(n, std::move(v));
}

TUGame horse_market() {
  const int n = 5;
  std::vector<double> v(32, 0.0);
  for (Mask s = 0; s < 32; ++s) {
    if (!has_player(s, 1)) continue;
    if (has_player(s, 5))
      v[s] = 100.0;
    else if (has_player(s, 4))
      v[s] = 90.0;
  }
  return TUGame::make(n, std::move(v));
}

TUGame unanimity_game(int n, Mask t) {
  require_game_size(n);
  if (t == 0) throw EmptyCoalition("unanimity coalition must be non-empty");
  if (t & ~full_mask(n)) throw PlayerOutOfRange("unanimity coalition has a player above n");
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (Mask s = 0; s < (Mask{1} << n); ++s)
    if ((s & t) == t) v[s] = 1.0;
  return TUGame::make(n, std::move(v));
}

TUGame dictator_game(int n, int player) {
  if (player < 1 || player > n) throw PlayerOutOfRange("dictator outside 1..n");
  return unanimity_game(n, player_bit(player));
}

TUGame null_game(int n) {
  require_game_size(n);
  return TUGame::make(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

namespace {

std::vector<int> parse_int_args(const std::string& spec, std::size_t open) {
  if (spec.back() != ')') throw UnknownKind("malformed game spec '" + spec + "'");
  std::vector<int> args;
  std::size_t pos = open + 1;
  const std::size_t end = spec.size() - 1;
  while (pos < end) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos || comma > end) comma = end;
    const std::string tok = spec.substr(pos, comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UnknownKind("bad argument '" + tok + "' in game spec '" + spec + "'");
    args.push_back(std::stoi(tok));
    pos = comma + 1;
  }
  return args;
}

}  // namespace

TUGame builtin_game(const std::string& spec) {
  const std::size_t open = spec.find('(');
  const std::string name = spec.substr(0, open);
  std::vector<int> args;
  if (open != std::string::npos) args = parse_int_args(spec, open);

  if (name == "horse_market") {
    if (!args.empty()) throw UnknownKind("horse_market takes no arguments");
    return horse_market();
  }
  if (name == "messages") {
    if (args.size() != 1) throw UnknownKind("messages expects (n)");
    return messages_game(args[0]);
  }
  if (name == "null") {
    if (args.size() != 1) throw UnknownKind("null expects (n)");
    return null_game(args[0]);
  }
  if (name == "dictator") {
    if (args.size() != 2) throw UnknownKind("dictator expects (n,i)");
    return dictator_game(args[0], args[1]);
  }
  if (name == "unanimity") {
    if (args.size() < 2) throw UnknownKind("unanimity expects (n,i,j,...)");
    const int n = args[0];
    Mask t = 0;
    for (std::size_t k = 1; k < args.size(); ++k) {
      if (args[k] < 1 || args[k] > n) throw PlayerOutOfRange("unanimity player outside 1..n");
      t |= player_bit(args[k]);
    }
    return unanimity_game(n, t);
  }
  throw UnknownKind("unknown builtin game '" + name + "'");
}

std::vector<double> shapley(const DividendVector& dividends) {
  std::vector<double> phi(dividends.n, 0.0);
  const Mask size = Mask{1} << dividends.n;
  for (Mask s = 1; s < size; ++s) {
    const double d = dividends.deltas[s];
    if (d == 0.0) continue;
    const double share = d / popcount(s);
    for (Mask m = s; m; m &= m - 1) phi[std::countr_zero(m)] += share;
  }
  return phi;
}

std::vector<double> shapley(const TUGame& game) { return shapley(mobius(game)); }

}  // namespace coalint
