#pragma once

// Parity games: arenas and a Zielonka solver with positional strategies.
// Max-parity convention: the largest priority seen infinitely often decides,
// even for Exists. A player who cannot move loses.

#include <deque>
#include <vector>

#include "colfix/error.hh"

namespace colfix {

enum class Player { Exists = 0, Forall = 1 };

inline Player opponent(Player p) { return p == Player::Exists ? Player::Forall : Player::Exists; }

struct Arena {
  std::vector<Player> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> moves;

  std::size_t size() const noexcept { return owner.size(); }
  int add_position(Player who, int prio) {
    if (prio < 0) throw Error("negative priority");
    owner.push_back(who);
    priority.push_back(prio);
    moves.emplace_back();
    return static_cast<int>(owner.size() - 1);
  }
  void add_move(int from, int to) {
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= size() || static_cast<std::size_t>(to) >= size())
      throw Error("move between unknown positions");
    moves[static_cast<std::size_t>(from)].push_back(to);
  }
};

struct ParitySolution {
  /// winner[v] for every position.
  std::vector<Player> winner;
  /// For positions won by their owner and having moves: the chosen successor
  /// (staying in the owner's region); -1 elsewhere.
  std::vector<int> strategy;

  bool exists_wins(int v) const { return winner.at(static_cast<std::size_t>(v)) == Player::Exists; }
  std::vector<int> region(Player p) const {
    std::vector<int> out;
    for (std::size_t v = 0; v < winner.size(); ++v)
      if (winner[v] == p) out.push_back(static_cast<int>(v));
    return out;
  }
};

namespace detail {

class ZielonkaSolver {
 public:
  explicit ZielonkaSolver(const Arena& g) : g_(g), pred_(g.size()) {
    for (std::size_t v = 0; v < g.size(); ++v)
      for (int w : g.moves[v]) pred_[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  }

  ParitySolution solve() {
    std::size_t n = g_.size();
    ParitySolution sol;
    sol.winner.assign(n, Player::Exists);
    sol.strategy.assign(n, -1);
    std::vector<char> alive(n, 1);
    // players stuck in dead ends lose; peel those off first
    for (Player stuck : {Player::Exists, Player::Forall}) {
      std::vector<int> dead;
      for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && g_.owner[v] == stuck && live_moves(v, alive) == 0) dead.push_back(static_cast<int>(v));
      auto attr = attractor(opponent(stuck), dead, alive, sol.strategy);
      for (std::size_t v = 0; v < n; ++v)
        if (attr[v]) {
          sol.winner[v] = opponent(stuck);
          alive[v] = 0;
        }
    }
    zielonka(alive, sol);
    return sol;
  }

 private:
  std::size_t live_moves(std::size_t v, const std::vector<char>& alive) const {
    std::size_t k = 0;
    for (int w : g_.moves[v]) k += alive[static_cast<std::size_t>(w)] != 0;
    return k;
  }

  // attractor for `who` to `target` inside `alive`; records attracting moves
  std::vector<char> attractor(Player who, const std::vector<int>& target, const std::vector<char>& alive,
                              std::vector<int>& strat) const {
    std::size_t n = g_.size();
    std::vector<char> in(n, 0);
    std::vector<std::size_t> count(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) count[v] = live_moves(v, alive);
    std::deque<int> queue;
    for (int t : target)
      if (!in[static_cast<std::size_t>(t)]) {
        in[static_cast<std::size_t>(t)] = 1;
        queue.push_back(t);
      }
    while (!queue.empty()) {
      int w = queue.front();
      queue.pop_front();
      for (int v : pred_[static_cast<std::size_t>(w)]) {
        auto uv = static_cast<std::size_t>(v);
        if (!alive[uv] || in[uv]) continue;
        if (g_.owner[uv] == who) {
          in[uv] = 1;
          strat[uv] = w;
          queue.push_back(v);
        } else if (--count[uv] == 0) {
          in[uv] = 1;
          queue.push_back(v);
        }
      }
    }
    return in;
  }

  void zielonka(const std::vector<char>& alive, ParitySolution& sol) {
    std::size_t n = g_.size();
    int d = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) d = std::max(d, g_.priority[v]);
    if (d < 0) return;
    Player i = d % 2 == 0 ? Player::Exists : Player::Forall;
    std::vector<int> top;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v] && g_.priority[v] == d) top.push_back(static_cast<int>(v));
    std::vector<int> strat_a(n, -1);
    auto a = attractor(i, top, alive, strat_a);
    std::vector<char> rest(n, 0);
    for (std::size_t v = 0; v < n; ++v) rest[v] = alive[v] && !a[v];
    ParitySolution sub;
    sub.winner.assign(n, Player::Exists);
    sub.strategy.assign(n, -1);
    zielonka(rest, sub);
    std::vector<int> opp;
    for (std::size_t v = 0; v < n; ++v)
      if (rest[v] && sub.winner[v] == opponent(i)) opp.push_back(static_cast<int>(v));
    if (opp.empty()) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        sol.winner[v] = i;
        sol.strategy[v] = -1;
        if (g_.owner[v] != i) continue;
        if (rest[v]) {
          sol.strategy[v] = sub.strategy[v];
        } else if (strat_a[v] >= 0) {
          sol.strategy[v] = strat_a[v];
        } else {
          // a top-priority position of i: any move that stays in the game
          for (int w : g_.moves[v])
            if (alive[static_cast<std::size_t>(w)]) {
              sol.strategy[v] = w;
              break;
            }
        }
      }
      return;
    }
    std::vector<int> strat_b(n, -1);
    auto b = attractor(opponent(i), opp, alive, strat_b);
    for (std::size_t v = 0; v < n; ++v) {
      if (!b[v]) continue;
      sol.winner[v] = opponent(i);
      sol.strategy[v] = -1;
      if (g_.owner[v] != opponent(i)) continue;
      sol.strategy[v] = (rest[v] && sub.winner[v] == opponent(i)) ? sub.strategy[v] : strat_b[v];
    }
    std::vector<char> remaining(n, 0);
    for (std::size_t v = 0; v < n; ++v) remaining[v] = alive[v] && !b[v];
    zielonka(remaining, sol);
  }

  const Arena& g_;
  std::vector<std::vector<int>> pred_;
};

}  // namespace detail

/// Solves the game; every position is won by exactly one player.
inline ParitySolution solve_parity(const Arena& g) { return detail::ZielonkaSolver(g).solve(); }

}  // namespace colfix
