#include <cmath>
#include <random>
#include <thread>

#include "coalint/myerson.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coalint;
using coalint::testing::cutnodes_hull_reading;
using coalint::testing::mask;
using coalint::testing::random_game;
using coalint::testing::random_tree;

namespace {

CommGraph bridge5() { return CommGraph::make(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}}); }

// Example game: coalitions of two or more players containing player 4 are
// worth 2; every subset of {1,2,3} is worthless.
TUGame two_with_four_game() {
  std::vector<double> v(16, 0.0);
  for (Mask s = 1; s <= full_mask(4); ++s)
    if (popcount(s) >= 2) v[s] = 2.0;
  v[mask({1, 2})] = v[mask({1, 3})] = v[mask({2, 3})] = v[mask({1, 2, 3})] = 0.0;
  return TUGame::make(4, std::move(v));
}

TUGame example2_game() {
  std::vector<double> v(16, 0.0);
  for (Mask s : {mask({1, 3}), mask({1, 4}), mask({1, 2, 3}), mask({1, 2, 4}), mask({1, 3, 4}),
                 mask({1, 2, 3, 4})})
    v[s] = 1.0;
  return TUGame::make(4, std::move(v));
}

}  // namespace

TEST_CASE("restricted game") {
  SUBCASE("a star on the missing intermediary turns u_{2,3} into u_N") {
    const TUGame r = restricted_game(unanimity_game(3, mask({2, 3})),
                                     CommGraph::make(3, {{1, 2}, {1, 3}}));
    for (Mask s = 0; s < 8; ++s) CHECK(r.at(s) == (s == full_mask(3) ? 1.0 : 0.0));
  }

  SUBCASE("an unreachable unanimity coalition kills the game") {
    const TUGame r = restricted_game(unanimity_game(4, mask({2, 3, 4})),
                                     CommGraph::make(4, {{1, 2}, {2, 3}}));
    for (Mask s = 0; s < 16; ++s) CHECK(r.at(s) == 0.0);
  }

  SUBCASE("the complete graph changes nothing") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + k % 5;
      const TUGame g = random_game(n, rng);
      const TUGame r = restricted_game(g, CommGraph::complete(n));
      for (Mask s = 0; s <= full_mask(n); ++s) CHECK(r.at(s) == g.at(s));
    }
  }

  SUBCASE("definition: the sum of component values") {
    std::mt19937_64 rng(32);
    for (int k = 0; k < 20; ++k) {
      const int n = 2 + k % 5;
      const TUGame g = random_game(n, rng);
      const CommGraph graph = coalint::testing::random_graph(n, rng);
      const TUGame r = restricted_game(g, graph);
      for (Mask s = 0; s <= full_mask(n); ++s) {
        double sum = 0.0;
        for (Mask c : components(graph, s)) sum += g.at(c);
        CHECK(r.at(s) == doctest::Approx(sum).epsilon(1e-12));
      }
    }
  }

  CHECK_THROWS_AS(restricted_game(null_game(3), CommGraph::edgeless(4)), SizeMismatch);
}

TEST_CASE("myerson value reproduces the bundled tables") {
  SUBCASE("messages game singles") {
    const CommunicationSituation sit(messages_game(5), bridge5());
    const std::vector<double> mu = myerson_value(sit);
    const double expected[] = {3.7667, 3.60, 5.9333, 3.7667, 2.9333};
    for (int i = 0; i < 5; ++i) CHECK(mu[i] == doctest::Approx(expected[i]).epsilon(1e-4));
    double sum = 0.0;
    for (double x : mu) sum += x;
    CHECK(sum == doctest::Approx(20.0).epsilon(1e-9));
  }

  SUBCASE("horse market singles") {
    const CommunicationSituation sit(horse_market(), bridge5());
    const std::vector<double> mu = myerson_value(sit);
    const double expected[] = {48.3333, 7.5, 18.3333, 15.0, 10.8333};
    for (int i = 0; i < 5; ++i) CHECK(mu[i] == doctest::Approx(expected[i]).epsilon(1e-4));
  }

  SUBCASE("complete graph gives the shapley value") {
    std::mt19937_64 rng(33);
    const TUGame g = random_game(5, rng);
    const std::vector<double> mu = myerson_value(CommunicationSituation(g, CommGraph::complete(5)));
    const std::vector<double> phi = shapley(g);
    for (int i = 0; i < 5; ++i) CHECK(mu[i] == doctest::Approx(phi[i]).epsilon(1e-12));
  }

  SUBCASE("component efficiency, per component") {
    std::mt19937_64 rng(34);
    for (int k = 0; k < 25; ++k) {
      const int n = 2 + k % 5;
      const CommunicationSituation sit(random_game(n, rng),
                                       coalint::testing::random_graph(n, rng, 0.35));
      const std::vector<double> mu = myerson_value(sit);
      for (Mask c : components(sit.graph(), full_mask(n))) {
        double sum = 0.0;
        for (Mask m = c; m; m &= m - 1) sum += mu[std::countr_zero(m)];
        CHECK(sum == doctest::Approx(sit.game().at(c)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("myerson interaction index") {
  SUBCASE("messages pairs: the definition-consistent values") {
    const CommunicationSituation sit(messages_game(5), bridge5());
    CHECK(mii(sit, mask({1, 2})) == doctest::Approx(17.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({1, 3})) == doctest::Approx(23.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({1, 4})) == doctest::Approx(1.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({1, 5})) == doctest::Approx(7.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({2, 3})) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(mii(sit, mask({2, 4})) == doctest::Approx(17.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({2, 5})) == doctest::Approx(5.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({3, 4})) == doctest::Approx(23.0 / 6).epsilon(1e-9));
    CHECK(mii(sit, mask({3, 5})) == doctest::Approx(29.0 / 6).epsilon(1e-9));  // prints 4.83
    CHECK(mii(sit, mask({4, 5})) == doctest::Approx(7.0 / 6).epsilon(1e-9));
    // second-order sum rule: sum over pairs = sum over T of delta(T) * t / 2
    double pair_sum = 0.0;
    for (Mask s = 1; s <= full_mask(5); ++s)
      if (popcount(s) == 2) pair_sum += mii(sit, s);
    CHECK(pair_sum == doctest::Approx(23.0).epsilon(1e-9));
  }

  SUBCASE("horse market pairs") {
    const CommunicationSituation sit(horse_market(), bridge5());
    const std::pair<Mask, double> expected[] = {
        {mask({1, 2}), 15}, {mask({1, 3}), 35},  {mask({1, 4}), 30},  {mask({1, 5}), 20},
        {mask({2, 3}), -30}, {mask({2, 4}), 15}, {mask({2, 5}), 0},   {mask({3, 4}), -15},
        {mask({3, 5}), 20}, {mask({4, 5}), -30}};
    for (auto [s, v] : expected) CHECK(mii(sit, s) == doctest::Approx(v).epsilon(1e-9));
  }

  SUBCASE("coalitions straddling components score zero") {
    std::mt19937_64 rng(35);
    for (int k = 0; k < 20; ++k) {
      const int n = 3 + k % 3;
      const CommunicationSituation sit(random_game(n, rng),
                                       coalint::testing::random_graph(n, rng, 0.3));
      const std::vector<Mask> comps = components(sit.graph(), full_mask(n));
      for (Mask s = 1; s <= full_mask(n); ++s) {
        bool inside = false;
        for (Mask c : comps)
          if ((s & c) == s) inside = true;
        if (!inside) CHECK(std::abs(mii(sit, s)) <= 1e-9);
      }
    }
  }

  CHECK_THROWS_AS(mii(CommunicationSituation(null_game(2), CommGraph::edgeless(2)), 0),
                  EmptyCoalition);
}

TEST_CASE("network-induced interaction") {
  const CommunicationSituation messages(messages_game(5), bridge5());
  CHECK(nii(messages, mask({3})) == doctest::Approx(1.9333).epsilon(1e-4));
  CHECK(nii(messages, mask({5})) == doctest::Approx(-1.0667).epsilon(1e-4));
  const CommunicationSituation horse(horse_market(), bridge5());
  CHECK(nii(horse, mask({1, 5})) == doctest::Approx(-35.0).epsilon(1e-9));
  CHECK(nii(horse, mask({5})) == doctest::Approx(10.8333 - 20.0).epsilon(1e-4));

  SUBCASE("complete graph: identically zero") {
    std::mt19937_64 rng(36);
    const CommunicationSituation sit(random_game(4, rng), CommGraph::complete(4));
    for (Mask s = 1; s <= full_mask(4); ++s) CHECK(std::abs(nii(sit, s)) <= 1e-9);
  }

  SUBCASE("definitional identity") {
    std::mt19937_64 rng(37);
    for (int k = 0; k < 10; ++k) {
      const CommunicationSituation sit(random_game(4, rng),
                                       coalint::testing::random_graph(4, rng));
      for (Mask s = 1; s <= full_mask(4); ++s)
        CHECK(nii(sit, s) == mii(sit, s) - sii_div(sit.game_dividends(), s));
    }
  }
}

TEST_CASE("graph null players") {
  SUBCASE("first example: null in the restricted game but not graph null") {
    const CommunicationSituation sit(two_with_four_game(),
                                     CommGraph::make(4, {{1, 2}, {2, 3}, {3, 4}}));
    CHECK(is_null_player(sit.restricted(), 2));   // null in the restricted game
    CHECK_FALSE(is_graph_null(sit, 2));           // but not graph null: (GNi) fails
  }

  SUBCASE("unreachable unanimity: every player becomes graph null per component") {
    const CommunicationSituation sit(unanimity_game(4, mask({2, 3, 4})),
                                     CommGraph::make(4, {{1, 2}, {2, 3}}));
    CHECK(graph_null_players(sit) == full_mask(4));
  }

  SUBCASE("an intermediary with positive contribution is not graph null") {
    const CommunicationSituation sit(unanimity_game(3, mask({2, 3})),
                                     CommGraph::make(3, {{1, 2}, {1, 3}}));
    CHECK_FALSE(is_graph_null(sit, 1));  // (GNii) fails: 1 bridges 2 and 3
    CHECK(is_null_player(sit.game(), 1));
  }

  SUBCASE("graph null players are null in the restricted game") {
    std::mt19937_64 rng(38);
    for (int k = 0; k < 60; ++k) {
      const int n = 2 + k % 5;
      TUGame g = random_game(n, rng);
      if (k % 2) {  // plant null players to make graph nulls likelier
        for (int i = 1; i <= n; i += 2)
          for (Mask s = 0; s <= full_mask(n); ++s)
            if (has_player(s, i)) g.values[s] = g.values[s & ~player_bit(i)];
      }
      const CommunicationSituation sit(g, coalint::testing::random_graph(n, rng, 0.4));
      for (int i = 1; i <= n; ++i)
        if (is_graph_null(sit, i)) CHECK(is_null_player(sit.restricted(), i));
    }
  }
}

TEST_CASE("veto graph partnerships") {
  SUBCASE("second example: a restricted-game partnership that is not a graph partnership") {
    const CommunicationSituation sit(example2_game(), CommGraph::make(4, {{1, 2}, {2, 3}, {3, 4}}));
    CHECK(is_veto_partnership(sit.restricted(), mask({1, 2, 3})));
    CHECK_FALSE(is_veto_graph_partnership(sit, mask({1, 2, 3})));
  }

  SUBCASE("pair unanimity on its own edge") {
    const CommunicationSituation sit(unanimity_game(2, full_mask(2)), CommGraph::make(2, {{1, 2}}));
    CHECK(is_veto_graph_partnership(sit, full_mask(2)));
  }

  SUBCASE("partnership plus its essential intermediary") {
    const CommunicationSituation sit(unanimity_game(5, mask({1, 5})), bridge5());
    CHECK(is_veto_graph_partnership(sit, mask({1, 3, 5})));
    CHECK(veto_graph_partnership_witness(sit.game(), sit.graph(), mask({1, 3, 5})) == mask({1, 5}));
    CHECK_FALSE(is_veto_graph_partnership(sit, mask({1, 2, 5})));
  }

  SUBCASE("a veto graph partnership is a partnership of the restricted game") {
    std::mt19937_64 rng(39);
    for (int k = 0; k < 40; ++k) {
      const int n = 2 + k % 4;
      TUGame g = random_game(n, rng, 0.0, 1.0);
      if (k % 2) {  // zero out coalitions missing player 1 to create veto structure
        for (Mask s = 0; s <= full_mask(n); ++s)
          if (!has_player(s, 1)) g.values[s] = 0.0;
      }
      const CommGraph graph = coalint::testing::random_graph(n, rng, 0.5);
      const CommunicationSituation sit(g, graph);
      for (Mask gp : veto_graph_partnerships(g, graph))
        CHECK(is_veto_partnership(sit.restricted(), gp));
    }
  }

  CHECK_THROWS_AS(
      is_veto_graph_partnership(CommunicationSituation(null_game(2), CommGraph::edgeless(2)), 0),
      EmptyCoalition);
}

TEST_CASE("partnership quotient") {
  SUBCASE("grand partnership of the two-player unanimity game") {
    const CommunicationSituation sit(unanimity_game(2, full_mask(2)), CommGraph::make(2, {{1, 2}}));
    const QuotientSituation q = srvpc_quotient(sit, full_mask(2));
    CHECK(q.situation.n() == 1);
    CHECK(q.situation.game().at(player_bit(q.map.proxy_id)) == 1.0);
    CHECK(mii(q.situation, player_bit(q.map.proxy_id)) == doctest::Approx(1.0));
  }

  SUBCASE("connected partnership: quotient of restricted equals restricted of quotient") {
    std::mt19937_64 rng(40);
    for (int k = 0; k < 40; ++k) {
      const int n = 3 + k % 3;
      TUGame g = random_game(n, rng, 0.0, 1.0);
      for (Mask s = 0; s <= full_mask(n); ++s)
        if (!has_player(s, 1)) g.values[s] = 0.0;
      const CommGraph graph = coalint::testing::random_graph(n, rng, 0.6);
      const CommunicationSituation sit(g, graph);
      for (Mask p : veto_graph_partnerships(g, graph)) {
        if (!is_connected_in(graph, p)) continue;
        const QuotientSituation q = srvpc_quotient(sit, p);
        const auto [qg, qm] = quotient_game(sit.game(), p);
        const TUGame other = restricted_game(qg, q.situation.graph());
        for (Mask s = 0; s <= full_mask(q.situation.n()); ++s)
          CHECK(q.situation.game().at(s) == doctest::Approx(other.at(s)).epsilon(1e-12));
      }
    }
  }

  SUBCASE("collapsing {1,3,5} in the bridge graph preserves its interaction") {
    const CommunicationSituation sit(unanimity_game(5, mask({1, 5})), bridge5());
    const Mask p = mask({1, 3, 5});
    const double before = mii(sit, p);
    const QuotientSituation q = srvpc_quotient(sit, p);
    CHECK(q.situation.n() == 3);
    CHECK(mii(q.situation, player_bit(q.map.proxy_id)) == doctest::Approx(before).epsilon(1e-9));
  }

  CHECK_THROWS_AS(srvpc_quotient(CommunicationSituation(messages_game(3), CommGraph::complete(3)),
                                 mask({1, 2})),
                  NotAVetoGraphPartnership);
}

TEST_CASE("restricted dividends") {
  SUBCASE("direct: disconnected coalitions carry nothing") {
    std::mt19937_64 rng(41);
    for (int k = 0; k < 20; ++k) {
      const int n = 3 + k % 3;
      const CommunicationSituation sit(random_game(n, rng),
                                       coalint::testing::random_graph(n, rng, 0.4));
      for (Mask s = 1; s <= full_mask(n); ++s)
        if (!is_connected_in(sit.graph(), s))
          CHECK(std::abs(restricted_dividend_direct(sit, s)) <= 1e-12);
    }
  }

  SUBCASE("direct: complete graph returns the plain dividends") {
    std::mt19937_64 rng(42);
    const TUGame g = random_game(4, rng);
    const CommunicationSituation sit(g, CommGraph::complete(4));
    const DividendVector d = mobius(g);
    for (Mask s = 1; s <= full_mask(4); ++s)
      CHECK(restricted_dividend_direct(sit, s) == doctest::Approx(d.at(s)).epsilon(1e-12));
  }

  SUBCASE("star example: the hull coalition absorbs the pair dividend") {
    const CommunicationSituation sit(unanimity_game(3, mask({2, 3})),
                                     CommGraph::make(3, {{1, 2}, {1, 3}}));
    CHECK(restricted_dividend_direct(sit, full_mask(3)) == doctest::Approx(1.0));
    CHECK(restricted_dividend_general(sit, full_mask(3)) == doctest::Approx(1.0));
  }

  SUBCASE("general relation agrees with the direct transform") {
    std::mt19937_64 rng(43);
    int disagreements = 0;
    for (int k = 0; k < 30; ++k) {
      const int n = 3 + k % 4;
      const CommunicationSituation sit(random_game(n, rng),
                                       coalint::testing::random_graph(n, rng, 0.5));
      for (Mask s = 1; s <= full_mask(n); ++s) {
        if (!is_connected_in(sit.graph(), s)) continue;
        if (std::abs(restricted_dividend_general(sit, s) - restricted_dividend_direct(sit, s)) >
            1e-9)
          ++disagreements;
      }
    }
    CHECK(disagreements == 0);
  }

  SUBCASE("general relation on the two-route-plus-chord graph counts repeated unions") {
    // Minimal {1,6}-connecting sets: {1,2,3,6}, {1,4,5,6}, {1,2,5,6}; the
    // families {A,B} and {A,B,C} share the union N, and their signed terms
    // cancel, matching the direct transform exactly.
    const CommGraph g =
        CommGraph::make(6, {{1, 2}, {2, 3}, {3, 6}, {1, 4}, {4, 5}, {5, 6}, {2, 5}});
    const CommunicationSituation sit(unanimity_game(6, mask({1, 6})), g);
    CHECK(restricted_dividend_direct(sit, full_mask(6)) == doctest::Approx(0.0));
    CHECK(restricted_dividend_general(sit, full_mask(6)) == doctest::Approx(0.0));
  }

  SUBCASE("single-edge coalitions keep their own dividend") {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 10; ++k) {
      const int n = 3 + k % 3;
      const TUGame g = random_game(n, rng);
      const CommGraph graph = coalint::testing::random_graph(n, rng, 0.6);
      const CommunicationSituation sit(g, graph);
      const DividendVector d = mobius(g);
      for (auto [i, j] : graph.edges()) {
        const Mask s = player_bit(i) | player_bit(j);
        CHECK(restricted_dividend_general(sit, s) == doctest::Approx(d.at(s)).epsilon(1e-9));
        CHECK(restricted_dividend_direct(sit, s) == doctest::Approx(d.at(s)).epsilon(1e-9));
      }
    }
  }

  CHECK_THROWS_AS(restricted_dividend_general(
                      CommunicationSituation(messages_game(3), CommGraph::edgeless(3)), mask({1, 2})),
                  PreconditionViolated);
}

TEST_CASE("forest dividend relation") {
  SUBCASE("path example") {
    const CommunicationSituation sit(unanimity_game(3, mask({1, 3})),
                                     CommGraph::make(3, {{1, 2}, {2, 3}}));
    CHECK(restricted_dividend_tree(sit, full_mask(3)) == doctest::Approx(1.0));
    CHECK(restricted_dividend_direct(sit, full_mask(3)) == doctest::Approx(1.0));
  }

  SUBCASE("adjacent pairs have no cutnodes") {
    std::mt19937_64 rng(45);
    const TUGame g = random_game(5, rng);
    const CommGraph tree = random_tree(5, rng);
    const CommunicationSituation sit(g, tree);
    const DividendVector d = mobius(g);
    for (auto [i, j] : tree.edges()) {
      const Mask s = player_bit(i) | player_bit(j);
      CHECK(cutnodes(tree, s) == 0);
      CHECK(restricted_dividend_tree(sit, s) == doctest::Approx(d.at(s)).epsilon(1e-12));
    }
  }

  SUBCASE("random trees agree with the direct transform under both cutnode readings") {
    std::mt19937_64 rng(46);
    int checked = 0, hull_mismatches = 0;
    for (int k = 0; k < 50; ++k) {
      const int n = 2 + k % 7;  // up to 8
      const CommGraph tree = random_tree(n, rng);
      const CommunicationSituation sit(random_game(n, rng), tree);
      for (Mask s = 1; s <= full_mask(n); ++s) {
        if (!is_connected_in(tree, s)) continue;
        const double direct = restricted_dividend_direct(sit, s);
        CHECK(restricted_dividend_tree(sit, s) == doctest::Approx(direct).epsilon(1e-9));
        if (cutnodes(tree, s) != cutnodes_hull_reading(tree, s)) ++hull_mismatches;
        ++checked;
      }
    }
    CHECK(checked > 100);
    // For coalitions connected in their induced subgraph the two readings
    // provably coincide on forests.
    CHECK(hull_mismatches == 0);
  }

  CHECK_THROWS_AS(
      restricted_dividend_tree(CommunicationSituation(messages_game(3), CommGraph::complete(3)),
                               mask({1, 2})),
      NotATree);
}

TEST_CASE("situation tables") {
  const CommunicationSituation sit(horse_market(), bridge5());
  const InteractionTable t = interaction_table(sit, IndexKind::network, 2);
  CHECK(t.kind == IndexKind::network);
  REQUIRE(t.entries.size() == 15);
  CHECK(t.entries[0].value == doctest::Approx(-16.6667).epsilon(1e-4));
  for (std::size_t k = 1; k < t.entries.size(); ++k)
    CHECK(std::pair(popcount(t.entries[k - 1].coalition), t.entries[k - 1].coalition) <
          std::pair(popcount(t.entries[k].coalition), t.entries[k].coalition));
  CHECK_THROWS_AS(interaction_table(sit, IndexKind::shapley, 2), UnknownKind);
}

TEST_CASE("the lazy cache is safe under concurrent first access") {
  std::mt19937_64 rng(48);
  for (int round = 0; round < 5; ++round) {
    const CommunicationSituation sit(random_game(6, rng), coalint::testing::random_graph(6, rng));
    const double expected = [&] {
      const CommunicationSituation fresh(sit.game(), sit.graph());
      return mii(fresh, mask({1, 2}));
    }();
    std::vector<std::thread> workers;
    std::vector<double> results(8, 0.0);
    for (int w = 0; w < 8; ++w)
      workers.emplace_back([&, w] { results[w] = mii(sit, mask({1, 2})); });
    for (std::thread& t : workers) t.join();
    for (double r : results) CHECK(r == expected);
  }
}

TEST_CASE("fairness identity of the myerson interaction index") {
  std::mt19937_64 rng(47);
  for (int k = 0; k < 15; ++k) {
    const int n = 3 + k % 4;  // up to 6
    const TUGame g = random_game(n, rng);
    const CommGraph graph = coalint::testing::random_graph(n, rng, 0.5);
    const CommunicationSituation sit(g, graph);
    for (auto [i, j] : graph.edges()) {
      const CommunicationSituation cut(g, graph.remove_edge(i, j));
      const Mask rest = full_mask(n) & ~(player_bit(i) | player_bit(j));
      for (Mask s = rest;; s = (s - 1) & rest) {
        const double lhs = mii(sit, s | player_bit(i)) - mii(cut, s | player_bit(i));
        const double rhs = mii(sit, s | player_bit(j)) - mii(cut, s | player_bit(j));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        if (s == 0) break;
      }
    }
  }
}
