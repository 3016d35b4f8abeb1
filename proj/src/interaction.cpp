#include "coalint/interaction.hpp"

#include <array>

namespace coalint {

std::string to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::shapley: return "shapley";
    case IndexKind::banzhaf: return "banzhaf";
    case IndexKind::myerson: return "myerson";
    case IndexKind::network: return "network";
  }
  return "?";
}

IndexKind index_kind_from_string(const std::string& name) {
  if (name == "shapley") return IndexKind::shapley;
  if (name == "banzhaf") return IndexKind::banzhaf;
  if (name == "myerson") return IndexKind::myerson;
  if (name == "network") return IndexKind::network;
  throw UnknownKind("unknown index kind '" + name + "'");
}

namespace {

// 21! overflows 64 bits but n <= 20 keeps every factorial here exact.
constexpr std::array<unsigned long long, 21> make_factorials() {
  std::array<unsigned long long, 21> f{};
  f[0] = 1;
  for (int i = 1; i <= 20; ++i) f[i] = f[i - 1] * static_cast<unsigned long long>(i);
  return f;
}
constexpr auto kFactorial = make_factorials();

void check_query(const TUGame& game, Mask s) {
  if (s == 0) throw EmptyCoalition("interaction indices are defined for non-empty coalitions");
  if (s & ~game.grand()) throw PlayerOutOfRange("coalition has a player above n");
}

}  // namespace

double s_derivative(const TUGame& game, Mask s, Mask t) {
  check_query(game, s);
  if (t & ~game.grand()) throw PlayerOutOfRange("base coalition has a player above n");
  if (s & t) throw OverlappingArguments("S and T must be disjoint");
  const int size_s = popcount(s);
  double sum = 0.0;
  for (Mask l = s;; l = (l - 1) & s) {
    const double term = game.at(t | l);
    sum += ((size_s - popcount(l)) % 2 == 0) ? term : -term;
    if (l == 0) break;
  }
  return sum;
}

double sii_deriv(const TUGame& game, Mask s) {
  check_query(game, s);
  const int n = game.n;
  const int size_s = popcount(s);
  // weight(t) = (n - t - s)! t! / (n - s + 1)!
  std::vector<double> weight(n - size_s + 1);
  for (int t = 0; t <= n - size_s; ++t)
    weight[t] = static_cast<double>(static_cast<long double>(kFactorial[n - t - size_s]) *
                                    static_cast<long double>(kFactorial[t]) /
                                    static_cast<long double>(kFactorial[n - size_s + 1]));
  const Mask rest = game.grand() & ~s;
  double sum = 0.0;
  for (Mask t = 0;; t = (t - rest) & rest) {
    sum += weight[popcount(t)] * s_derivative(game, s, t);
    if (t == rest) break;
  }
  return sum;
}

double sii_div(const DividendVector& dividends, Mask s) {
  if (s == 0) throw EmptyCoalition("interaction indices are defined for non-empty coalitions");
  if (s & ~full_mask(dividends.n)) throw PlayerOutOfRange("coalition has a player above n");
  const Mask rest = full_mask(dividends.n) & ~s;
  double sum = 0.0;
  for (Mask x = 0;; x = (x - rest) & rest) {
    sum += dividends.deltas[s | x] / (popcount(x) + 1);
    if (x == rest) break;
  }
  return sum;
}

double sii_div(const TUGame& game, Mask s) { return sii_div(mobius(game), s); }

double banzhaf_deriv(const TUGame& game, Mask s) {
  check_query(game, s);
  const Mask rest = game.grand() & ~s;
  const double weight = 1.0 / static_cast<double>(Mask{1} << (game.n - popcount(s)));
  double sum = 0.0;
  for (Mask t = 0;; t = (t - rest) & rest) {
    sum += s_derivative(game, s, t);
    if (t == rest) break;
  }
  return weight * sum;
}

double banzhaf_div(const DividendVector& dividends, Mask s) {
  if (s == 0) throw EmptyCoalition("interaction indices are defined for non-empty coalitions");
  if (s & ~full_mask(dividends.n)) throw PlayerOutOfRange("coalition has a player above n");
  const Mask rest = full_mask(dividends.n) & ~s;
  double sum = 0.0;
  for (Mask x = 0;; x = (x - rest) & rest) {
    sum += dividends.deltas[s | x] / static_cast<double>(Mask{1} << popcount(x));
    if (x == rest) break;
  }
  return sum;
}

double banzhaf_ii(const TUGame& game, Mask s) { return banzhaf_div(mobius(game), s); }

InteractionTable interaction_table(const TUGame& game, IndexKind kind, int max_order) {
  if (kind != IndexKind::shapley && kind != IndexKind::banzhaf)
    throw UnknownKind("interaction_table on a bare game supports shapley or banzhaf");
  if (max_order < 1 || max_order > game.n)
    throw OrderOutOfRange("max order must lie in 1.." + std::to_string(game.n));
  const DividendVector dividends = mobius(game);
  InteractionTable table;
  table.kind = kind;
  table.n = game.n;
  table.max_order = max_order;
  for (int order = 1; order <= max_order; ++order)
    for (Mask s = 1; s <= game.grand(); ++s)
      if (popcount(s) == order) {
        const double v = kind == IndexKind::shapley ? sii_div(dividends, s) : banzhaf_div(dividends, s);
        table.entries.push_back({s, v});
      }
  return table;
}

}  // namespace coalint
