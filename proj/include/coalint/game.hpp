#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coalint/types.hpp"

namespace coalint {

// A TU game: player count plus a dense table of 2^n coalition values,
// indexed by coalition mask, with v(empty) = 0. Immutable after make().
struct TUGame {
  int n = 0;
  std::vector<double> values;  // size 1 << n

  static TUGame make(int n, std::vector<double> values);

  double at(Mask s) const { return values[s]; }
  Mask grand() const { return full_mask(n); }
  std::size_t table_size() const { return std::size_t{1} << n; }
};

// Harsanyi dividends: the Moebius transform of a game's value table.
struct DividendVector {
  int n = 0;
  std::vector<double> deltas;  // size 1 << n, deltas[0] == 0

  double at(Mask s) const { return deltas[s]; }
};

// Moebius transform, O(n * 2^n) in place over the subset lattice.
DividendVector mobius(const TUGame& game);
// Inverse transform: v(S) = sum of deltas over subsets of S.
TUGame zeta(const DividendVector& dividends);

// Relabeling that merges coalition C into a single proxy player [C].
// The proxy inherits the smallest player id in C; all ids are then
// compacted so the quotient structure lives on players 1..quotient_n.
struct QuotientMap {
  int original_n = 0;
  int quotient_n = 0;
  Mask merged = 0;     // C, original indexing
  int proxy_label = 0; // min player id of C
  int proxy_id = 0;    // id of [C] in the quotient indexing
  std::vector<int> to_quotient_id;  // [1..original_n] -> quotient id (members of C -> proxy_id)
  std::vector<int> to_original_id;  // [1..quotient_n] -> original id (proxy -> proxy_label)

  Mask to_quotient_mask(Mask original) const;  // members of C collapse into the proxy bit
  Mask to_original_mask(Mask quotient) const;  // the proxy bit expands to all of C
};

QuotientMap make_quotient_map(int n, Mask merged);

// Quotient game: v_[C](S) = v(S) and v_[C](S u [C]) = v(S u C).
std::pair<TUGame, QuotientMap> quotient_game(const TUGame& game, Mask merged);

// Subgame on the players of C, compacted to 1..|C|.
TUGame restrict_to_players(const TUGame& game, Mask keep);
// Pack the bits of s that lie inside keep, by rank. s must be a subset of keep.
Mask compress_mask(Mask s, Mask keep);
// Inverse of compress_mask.
Mask expand_mask(Mask packed, Mask keep);

bool is_null_player(const TUGame& game, int player);
// Players whose presence never changes any coalition's value (abs tol 1e-12).
Mask null_players(const TUGame& game);

// True iff every coalition that lacks some member of P is worth zero,
// i.e. v(T u S) = v(T) = 0 for all T in N\P and all proper S of P.
bool is_veto_partnership(const TUGame& game, Mask partnership);

// All veto partnerships, ascending by (cardinality, mask). Candidates are
// pruned to subsets of the intersection of all non-zero coalitions (exactly
// the veto partnerships), then confirmed against the literal condition.
std::vector<Mask> veto_partnerships(const TUGame& game);

bool is_superadditive(const TUGame& game);

// Built-in example games.
TUGame messages_game(int n);            // v(S) = s(s-1)
TUGame horse_market();                  // the fixed 5-player seller/buyers game
TUGame unanimity_game(int n, Mask t);   // worth 1 exactly on supersets of T
TUGame dictator_game(int n, int player);
TUGame null_game(int n);

// Dispatcher for the named games: "messages(5)", "horse_market",
// "unanimity(4,2,3)" (first argument n, rest the coalition),
// "dictator(3,2)", "null(4)".
TUGame builtin_game(const std::string& spec);

std::vector<double> shapley(const TUGame& game);
std::vector<double> shapley(const DividendVector& dividends);

}  // namespace coalint
