#pragma once

// The projection construction: automata for the bisimulation quantifier and
// the model builder behind its correctness argument.

#include <sstream>

#include "colfix/automaton.hh"

namespace colfix {

/// add_true_state followed by prune_unsatisfiable.
inline Automaton normalize(const Automaton& aut, std::size_t bound, std::uint64_t cap = default_cap) {
  return prune_unsatisfiable(add_true_state(aut), bound, cap);
}

/// Delta_p(a, c) = Delta(a, c) u Delta(a, c + p) over props minus p, with no
/// normalization.
inline Automaton projection_of(const Automaton& aut, const std::string& p) {
  aut.validate();
  int pi = aut.prop_index(p);
  if (pi < 0) throw UnboundProp("projection: '" + p + "' is not in the automaton vocabulary");
  Automaton out;
  out.functor = aut.functor;
  out.state_names = aut.state_names;
  out.priority = aut.priority;
  out.initial = aut.initial;
  out.props = aut.props;
  out.props.erase(out.props.begin() + pi);
  Color low = (Color{1} << pi) - 1;
  out.delta.assign(aut.size(), std::vector<std::vector<TElem>>(out.colors()));
  for (std::size_t a = 0; a < aut.size(); ++a)
    for (Color c = 0; c < out.colors(); ++c) {
      Color without = (c & low) | ((c & ~low) << 1);
      for (Color full : {without, without | (Color{1} << pi)})
        for (const auto& phi : aut.delta[a][full]) out.add_transition(a, c, phi);
    }
  return out;
}

/// The automaton for "exists p": normalize, then project.
inline Automaton project_automaton(const Automaton& aut, const std::string& p, std::size_t bound,
                                   std::uint64_t cap = default_cap) {
  if (aut.prop_index(p) < 0) throw UnboundProp("projection: '" + p + "' is not in the automaton vocabulary");
  return projection_of(normalize(aut, bound, cap), p);
}

/// Given a normalized automaton and a model over props minus p accepted by
/// its projection, builds a model over props that is bisimilar up to p and
/// accepted by the automaton. Both facts are checked before returning.
/// `wc` must be witness_coalgebra(aut, bound) for some bound.
inline PointedModel construct_projection_witness(const Automaton& aut, const WitnessCoalgebra& wc, const PointedModel& pm,
                                                 const std::string& p, std::uint64_t cap = default_cap) {
  aut.validate();
  pm.validate();
  const FunctorDescriptor& f = aut.functor;
  Automaton ap = projection_of(aut, p);
  const ColoredModel& m = pm.model;
  detail::check_compatible(ap, m);
  auto top = find_true_state(aut);
  if (!top) throw Error("projection witness: the automaton has no true state (normalize it first)");

  auto game = build_arena(ap, m);
  auto sol = solve_parity(game.arena);
  std::size_t n = m.size(), k = aut.size();
  if (sol.winner[static_cast<std::size_t>(game.basic(static_cast<std::size_t>(pm.point), static_cast<std::size_t>(aut.initial)))] !=
      Player::Exists)
    throw Error("projection witness: the projected automaton rejects the model");

  std::size_t nq = wc.model.size();
  std::size_t total = n * k + nq;

  ColoredModel out;
  out.functor = f;
  out.props = aut.props;
  out.state_names.resize(total);
  out.sigma.resize(total);
  out.gamma.resize(total);
  int pi = aut.prop_index(p);
  Color low = (Color{1} << pi) - 1;
  auto widen = [&](Color c) { return (c & low) | ((c & ~low) << 1); };
  Color pbit = Color{1} << pi;

  for (std::size_t q = 0; q < nq; ++q) {
    std::vector<int> shift(nq);
    for (std::size_t i = 0; i < nq; ++i) shift[i] = static_cast<int>(n * k + i);
    out.state_names[n * k + q] = "w" + std::to_string(q);
    out.sigma[n * k + q] = t_map(f, shift, wc.model.sigma[q]);
    out.gamma[n * k + q] = wc.model.gamma[q];
  }

  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < k; ++a) {
      std::size_t me = s * k + a;
      out.state_names[me] = m.name(s) + "_" + aut.name(a);
      out.gamma[me] = widen(m.gamma[s]);
      int pos = game.basic(s, a);
      if (sol.winner[static_cast<std::size_t>(pos)] != Player::Exists) {
        std::vector<int> kappa(n);
        for (std::size_t t = 0; t < n; ++t) kappa[t] = static_cast<int>(t * k + a);
        out.sigma[me] = t_map(f, kappa, m.sigma[s]);
        continue;
      }
      int modal = sol.strategy[static_cast<std::size_t>(pos)];
      int zpos = modal < 0 ? -1 : sol.strategy[static_cast<std::size_t>(modal)];
      if (modal < 0 || zpos < 0) throw InternalError("projection witness: winning position without a strategy move");
      const TElem& phi = game.modal.at(modal).second;
      Relation z = game.relation.at(zpos);
      auto dom = z.domain();
      for (std::size_t t = 0; t < n; ++t)
        if (!std::binary_search(dom.begin(), dom.end(), static_cast<int>(t))) z.insert(static_cast<int>(t), *top);
      // U = Z' + Q; R1 = S -> U along the first projection, R2 = U -> A
      auto pairs = z.pairs();
      std::size_t nu_ = pairs.size() + nq;
      Relation r1(n, nu_), r2(nu_, k);
      std::vector<int> embed(nu_);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [t, b] = pairs[i];
        r1.insert(t, static_cast<int>(i));
        r2.insert(static_cast<int>(i), b);
        embed[i] = static_cast<int>(static_cast<std::size_t>(t) * k + static_cast<std::size_t>(b));
      }
      for (std::size_t q = 0; q < nq; ++q) {
        embed[pairs.size() + q] = static_cast<int>(n * k + q);
        for (std::size_t b = 0; b < k; ++b)
          if (wc.y.contains(static_cast<int>(q), static_cast<int>(b)))
            r2.insert(static_cast<int>(pairs.size() + q), static_cast<int>(b));
      }
      auto xi = find_middle(f, r1, r2, m.sigma[s], phi, cap);
      if (!xi) {
        std::ostringstream msg;
        msg << "projection witness: no successor element found at (" << m.name(s) << ", " << aut.name(a) << ")";
        throw Error(msg.str());
      }
      out.sigma[me] = t_map(f, embed, *xi);
      Color with_p = widen(m.gamma[s]) | pbit;
      const auto& cell = aut.delta[a][with_p];
      if (std::binary_search(cell.begin(), cell.end(), phi)) out.gamma[me] = with_p;
    }
  out.validate();
  PointedModel result{out, static_cast<int>(static_cast<std::size_t>(pm.point) * k + static_cast<std::size_t>(aut.initial))};

  Relation graph(total, n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t a = 0; a < k; ++a) graph.insert(static_cast<int>(s * k + a), static_cast<int>(s));
  if (!is_bisimulation(graph, out, m, m.props) || !up_to_p_bisimilar(pm, result, p))
    throw InternalError("projection witness: the result is not bisimilar up to p");
  if (!accepts(aut, result)) throw InternalError("projection witness: the automaton rejects the result");
  return result;
}

inline PointedModel construct_projection_witness(const Automaton& aut, const PointedModel& pm, const std::string& p,
                                                 std::size_t bound, std::uint64_t cap = default_cap) {
  return construct_projection_witness(aut, witness_coalgebra(aut, bound, cap), pm, p, cap);
}

}  // namespace colfix
