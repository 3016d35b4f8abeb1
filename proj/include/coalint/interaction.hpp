#pragma once

#include <string>
#include <vector>

#include "coalint/game.hpp"
#include "coalint/types.hpp"

namespace coalint {

enum class IndexKind { shapley, banzhaf, myerson, network };

std::string to_string(IndexKind kind);
IndexKind index_kind_from_string(const std::string& name);

// S-derivative of the game at T: the alternating sum over subsets of S
// of v(T u L), measuring the joint marginal effect of S on top of T.
// T must be disjoint from S.
double s_derivative(const TUGame& game, Mask s, Mask t);

// Shapley interaction index, derivative form: the weighted sum of
// S-derivatives over all T in N\S. Exists as the independent oracle for
// the dividend form below; factorial weights are exact integers.
double sii_deriv(const TUGame& game, Mask s);

// Shapley interaction index, dividend form: sum over T containing S of
// delta(T) / (t - s + 1). This is the production path; dividends are
// computed once per game and reused across queries.
double sii_div(const DividendVector& dividends, Mask s);
double sii_div(const TUGame& game, Mask s);

// Banzhaf interaction index, both forms; they agree within 1e-9.
double banzhaf_deriv(const TUGame& game, Mask s);
double banzhaf_div(const DividendVector& dividends, Mask s);
double banzhaf_ii(const TUGame& game, Mask s);  // dividend path

// Interaction values for every non-empty coalition up to max_order,
// tagged with the index kind so tables from different indices are never
// merged silently. Entries are sorted by (order, coalition mask).
struct InteractionTable {
  IndexKind kind = IndexKind::shapley;
  int n = 0;
  int max_order = 0;
  struct Entry {
    Mask coalition = 0;
    double value = 0.0;
  };
  std::vector<Entry> entries;
};

InteractionTable interaction_table(const TUGame& game, IndexKind kind, int max_order);

}  // namespace coalint
