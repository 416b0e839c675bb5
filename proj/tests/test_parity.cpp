#include <catch2/catch_amalgamated.hpp>

#include "colfix/parity.hh"
#include "oracles.hh"

using namespace colfix;
using namespace oracles;

TEST_CASE("single position loops") {
  Arena g;
  g.add_position(Player::Forall, 0);
  g.add_move(0, 0);
  CHECK(solve_parity(g).exists_wins(0));
  Arena h;
  h.add_position(Player::Forall, 1);
  h.add_move(0, 0);
  CHECK_FALSE(solve_parity(h).exists_wins(0));
}

TEST_CASE("dead ends lose for their owner") {
  Arena g;
  g.add_position(Player::Exists, 0);
  g.add_position(Player::Forall, 0);
  auto sol = solve_parity(g);
  CHECK_FALSE(sol.exists_wins(0));
  CHECK(sol.exists_wins(1));
  // Forall may walk into an Exists dead end
  Arena h;
  h.add_position(Player::Forall, 2);
  h.add_position(Player::Exists, 0);
  h.add_move(0, 0);
  h.add_move(0, 1);
  auto s2 = solve_parity(h);
  CHECK_FALSE(s2.exists_wins(0));
  CHECK(s2.strategy[0] == 1);
}

TEST_CASE("solver agrees with strategy enumeration") {
  std::mt19937 rng(21);
  for (int round = 0; round < 400; ++round) {
    std::size_t n = 1 + std::size_t(round % 8);
    Arena g = random_arena(n, rng);
    auto sol = solve_parity(g);
    CHECK(sol.winner == brute_force(g));
    CHECK(strategy_sound(g, sol, Player::Exists));
    CHECK(strategy_sound(g, sol, Player::Forall));
  }
}

TEST_CASE("bad moves are rejected") {
  Arena g;
  g.add_position(Player::Exists, 0);
  CHECK_THROWS_AS(g.add_move(0, 3), Error);
  CHECK_THROWS_AS(g.add_position(Player::Exists, -1), Error);
}
