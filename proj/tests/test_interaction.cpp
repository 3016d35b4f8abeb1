#include <cmath>
#include <random>

#include "coalint/interaction.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace coalint;
using coalint::testing::mask;
using coalint::testing::random_game;

TEST_CASE("s-derivative") {
  std::mt19937_64 rng(21);
  SUBCASE("singleton derivative is the marginal contribution") {
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + k % 5;
      const TUGame g = random_game(n, rng);
      for (int i = 1; i <= n; ++i) {
        const Mask rest = full_mask(n) & ~player_bit(i);
        for (Mask t = rest;; t = (t - 1) & rest) {
          CHECK(s_derivative(g, player_bit(i), t) ==
                doctest::Approx(g.at(t | player_bit(i)) - g.at(t)).epsilon(1e-12));
          if (t == 0) break;
        }
      }
    }
  }

  SUBCASE("unanimity game: derivative of its own coalition at the empty set is 1") {
    for (int n = 1; n <= 6; ++n)
      for (Mask t = 1; t <= full_mask(n); ++t)
        CHECK(s_derivative(unanimity_game(n, t), t, 0) == doctest::Approx(1.0));
  }

  SUBCASE("messages game: every pair derivative is 2") {
    const TUGame vm = messages_game(5);
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) {
        const Mask s = mask({i, j});
        const Mask rest = full_mask(5) & ~s;
        for (Mask t = rest;; t = (t - 1) & rest) {
          CHECK(s_derivative(vm, s, t) == doctest::Approx(2.0).epsilon(1e-12));
          if (t == 0) break;
        }
      }
  }

  CHECK_THROWS_AS(s_derivative(messages_game(3), mask({1, 2}), mask({2, 3})), OverlappingArguments);
  CHECK_THROWS_AS(s_derivative(messages_game(3), 0, mask({2})), EmptyCoalition);
}

TEST_CASE("shapley interaction index") {
  SUBCASE("first order equals the shapley value") {
    std::mt19937_64 rng(22);
    for (int k = 0; k < 15; ++k) {
      const int n = 2 + k % 6;
      const TUGame g = random_game(n, rng);
      const std::vector<double> phi = shapley(g);
      const DividendVector d = mobius(g);
      for (int i = 1; i <= n; ++i) {
        CHECK(sii_deriv(g, player_bit(i)) == doctest::Approx(phi[i - 1]).epsilon(1e-9));
        CHECK(sii_div(d, player_bit(i)) == doctest::Approx(phi[i - 1]).epsilon(1e-9));
      }
    }
  }

  SUBCASE("horse market pair values") {
    const TUGame vh = horse_market();
    CHECK(sii_deriv(vh, mask({1, 5})) == doctest::Approx(55.0).epsilon(1e-9));
    CHECK(sii_deriv(vh, mask({4, 5})) == doctest::Approx(-45.0).epsilon(1e-9));
    CHECK(sii_div(vh, mask({1, 5})) == doctest::Approx(55.0).epsilon(1e-9));
    CHECK(sii_div(vh, mask({4, 5})) == doctest::Approx(-45.0).epsilon(1e-9));
    CHECK(sii_div(vh, mask({1, 4})) == doctest::Approx(45.0).epsilon(1e-9));
  }

  SUBCASE("messages game: every pair interaction is 2") {
    const DividendVector d = mobius(messages_game(5));
    for (Mask s = 1; s <= full_mask(5); ++s)
      if (popcount(s) == 2) CHECK(sii_div(d, s) == doctest::Approx(2.0).epsilon(1e-9));
  }

  SUBCASE("unanimity closed form") {
    for (int n = 1; n <= 6; ++n)
      for (Mask t = 1; t <= full_mask(n); ++t) {
        const DividendVector d = mobius(unanimity_game(n, t));
        for (Mask s = 1; s <= full_mask(n); ++s) {
          const double expected = (s & t) == s ? 1.0 / (popcount(t) - popcount(s) + 1) : 0.0;
          CHECK(sii_div(d, s) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
  }

  SUBCASE("both forms agree on random games") {
    std::mt19937_64 rng(23);
    for (int k = 0; k < 12; ++k) {
      const int n = 3 + k % 4;
      const TUGame g = random_game(n, rng);
      const DividendVector d = mobius(g);
      for (Mask s = 1; s <= full_mask(n); ++s)
        CHECK(std::abs(sii_deriv(g, s) - sii_div(d, s)) <= 1e-9);
    }
  }

  SUBCASE("efficiency of first order") {
    std::mt19937_64 rng(24);
    for (int k = 0; k < 15; ++k) {
      const int n = 2 + k % 6;
      const TUGame g = random_game(n, rng);
      const DividendVector d = mobius(g);
      double sum = 0.0;
      for (int i = 1; i <= n; ++i) sum += sii_div(d, player_bit(i));
      CHECK(sum == doctest::Approx(g.at(full_mask(n))).epsilon(1e-9));
    }
  }

  SUBCASE("linearity") {
    std::mt19937_64 rng(25);
    for (int k = 0; k < 10; ++k) {
      const int n = 2 + k % 5;
      const TUGame a = random_game(n, rng);
      const TUGame b = random_game(n, rng);
      std::uniform_real_distribution<double> w(-2.0, 2.0);
      const double alpha = w(rng), beta = w(rng);
      std::vector<double> mixed(a.table_size());
      for (Mask s = 0; s <= full_mask(n); ++s) mixed[s] = alpha * a.at(s) + beta * b.at(s);
      const TUGame m = TUGame::make(n, std::move(mixed));
      for (Mask s = 1; s <= full_mask(n); ++s)
        CHECK(sii_div(m, s) ==
              doctest::Approx(alpha * sii_div(a, s) + beta * sii_div(b, s)).epsilon(1e-9));
    }
  }

  SUBCASE("coalitions holding a null player have zero interaction") {
    std::mt19937_64 rng(26);
    for (int k = 0; k < 10; ++k) {
      const int n = 3 + k % 4;
      TUGame g = random_game(n, rng);
      for (Mask s = 0; s <= full_mask(n); ++s)
        if (has_player(s, 2)) g.values[s] = g.values[s & ~player_bit(2)];
      const DividendVector d = mobius(g);
      for (Mask s = 1; s <= full_mask(n); ++s)
        if (has_player(s, 2)) CHECK(std::abs(sii_div(d, s)) <= 1e-9);
    }
  }
}

TEST_CASE("banzhaf interaction index") {
  SUBCASE("unanimity closed form, dividend route") {
    for (int n = 1; n <= 6; ++n)
      for (Mask t = 1; t <= full_mask(n); ++t) {
        const DividendVector d = mobius(unanimity_game(n, t));
        for (Mask s = 1; s <= full_mask(n); ++s) {
          const double expected =
              (s & t) == s ? 1.0 / (Mask{1} << (popcount(t) - popcount(s))) : 0.0;
          CHECK(banzhaf_div(d, s) == doctest::Approx(expected).epsilon(1e-12));
        }
      }
  }

  SUBCASE("one-player game") {
    CHECK(banzhaf_ii(TUGame::make(1, {0.0, 3.5}), mask({1})) == doctest::Approx(3.5));
  }

  SUBCASE("not efficient: u_{1,2,3} splits only 3/4 of the worth") {
    const TUGame u = unanimity_game(3, full_mask(3));
    double sum = 0.0;
    for (int i = 1; i <= 3; ++i) sum += banzhaf_ii(u, player_bit(i));
    CHECK(sum == doctest::Approx(0.75));
    CHECK(sum != doctest::Approx(u.at(full_mask(3))));
    // while on two players the pair unanimity game happens to be efficient
    const TUGame u2 = unanimity_game(2, full_mask(2));
    CHECK(banzhaf_ii(u2, mask({1})) + banzhaf_ii(u2, mask({2})) == doctest::Approx(1.0));
  }

  SUBCASE("both forms agree on random games") {
    std::mt19937_64 rng(27);
    for (int k = 0; k < 12; ++k) {
      const int n = 3 + k % 4;
      const TUGame g = random_game(n, rng);
      const DividendVector d = mobius(g);
      for (Mask s = 1; s <= full_mask(n); ++s)
        CHECK(std::abs(banzhaf_deriv(g, s) - banzhaf_div(d, s)) <= 1e-9);
    }
  }
}

TEST_CASE("interaction tables") {
  SUBCASE("messages game order 2 collects singles and pairs") {
    const InteractionTable t = interaction_table(messages_game(5), IndexKind::shapley, 2);
    REQUIRE(t.entries.size() == 15);
    for (std::size_t k = 0; k < 5; ++k) {
      CHECK(popcount(t.entries[k].coalition) == 1);
      CHECK(t.entries[k].value == doctest::Approx(4.0));
    }
    for (std::size_t k = 5; k < 15; ++k) {
      CHECK(popcount(t.entries[k].coalition) == 2);
      CHECK(t.entries[k].value == doctest::Approx(2.0));
    }
    CHECK(std::is_sorted(t.entries.begin(), t.entries.end(), [](auto a, auto b) {
      return std::pair(popcount(a.coalition), a.coalition) <
             std::pair(popcount(b.coalition), b.coalition);
    }));
  }

  SUBCASE("null game tables vanish for both kinds") {
    for (IndexKind kind : {IndexKind::shapley, IndexKind::banzhaf})
      for (const auto& e : interaction_table(null_game(4), kind, 4).entries)
        CHECK(e.value == 0.0);
  }

  SUBCASE("horse market order 1 is the shapley vector") {
    const InteractionTable t = interaction_table(horse_market(), IndexKind::shapley, 1);
    const double expected[] = {65, 0, 0, 15, 20};
    REQUIRE(t.entries.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(t.entries[i].value == doctest::Approx(expected[i]));
  }

  CHECK_THROWS_AS(interaction_table(null_game(3), IndexKind::shapley, 0), OrderOutOfRange);
  CHECK_THROWS_AS(interaction_table(null_game(3), IndexKind::shapley, 4), OrderOutOfRange);
  CHECK_THROWS_AS(interaction_table(null_game(3), IndexKind::myerson, 2), UnknownKind);
}
