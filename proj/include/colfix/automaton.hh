#pragma once

// T-automata over P(props)-colored coalgebras, the acceptance game and the
// normalizations used by the projection construction.

#include <map>
#include <optional>
#include <set>

#include "colfix/coalgebra.hh"
#include "colfix/formula.hh"
#include "colfix/parity.hh"

namespace colfix {

/// delta[a][c] lists the elements of T A offered at state a under color c
/// (a bitmask over the sorted props), sorted and duplicate free.
struct Automaton {
  FunctorDescriptor functor = FunctorDescriptor::powerset();
  std::vector<std::string> state_names;
  std::vector<std::string> props;
  std::vector<std::vector<std::vector<TElem>>> delta;
  std::vector<int> priority;
  int initial = 0;

  std::size_t size() const noexcept { return priority.size(); }
  std::size_t colors() const noexcept { return std::size_t{1} << props.size(); }
  std::string name(std::size_t a) const {
    return a < state_names.size() ? state_names[a] : "a" + std::to_string(a);
  }
  int state_index(const std::string& n) const {
    auto it = std::find(state_names.begin(), state_names.end(), n);
    return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
  }
  int prop_index(const std::string& p) const {
    auto it = std::lower_bound(props.begin(), props.end(), p);
    return it != props.end() && *it == p ? static_cast<int>(it - props.begin()) : -1;
  }

  /// Adds a state with empty cells; returns its index.
  int add_state(const std::string& n, int prio) {
    if (prio < 0) throw Error("negative priority");
    state_names.push_back(n);
    priority.push_back(prio);
    delta.emplace_back(colors());
    return static_cast<int>(size() - 1);
  }
  void add_transition(std::size_t a, Color c, const TElem& phi) {
    auto& cell = delta.at(a).at(c);
    auto it = std::lower_bound(cell.begin(), cell.end(), phi);
    if (it == cell.end() || !(*it == phi)) cell.insert(it, phi);
  }

  void validate() const {
    if (size() == 0) throw Error("automaton without states");
    if (props.size() > 16) throw Error("automaton: too many proposition letters");
    if (!std::is_sorted(props.begin(), props.end()) || std::adjacent_find(props.begin(), props.end()) != props.end())
      throw Error("automaton: props must be sorted and distinct");
    if (delta.size() != size() || state_names.size() != size()) throw CarrierMismatch("automaton: table sizes differ");
    if (initial < 0 || static_cast<std::size_t>(initial) >= size()) throw CarrierMismatch("automaton: bad initial state");
    for (std::size_t a = 0; a < size(); ++a) {
      if (priority[a] < 0) throw Error("automaton: negative priority");
      if (delta[a].size() != colors()) throw CarrierMismatch("automaton: missing color cells");
      for (const auto& cell : delta[a])
        for (const auto& phi : cell)
          if (!is_valid(functor, phi, size())) throw CarrierMismatch("automaton: transition element outside the states");
    }
  }
};

/// The acceptance game of an automaton on a model, with payloads to read
/// strategies back.
struct AcceptanceGame {
  Arena arena;
  std::size_t states = 0, automaton_states = 0;
  /// position -> (model element, automaton element) for modal positions
  std::map<int, std::pair<TElem, TElem>> modal;
  /// position -> relation S x A for relation positions
  std::map<int, Relation> relation;

  int basic(std::size_t s, std::size_t a) const { return static_cast<int>(s * automaton_states + a); }
};

namespace detail {

inline void check_compatible(const Automaton& aut, const ColoredModel& m) {
  if (!(aut.functor == m.functor)) throw CarrierMismatch("automaton and model use different functors");
  if (aut.props != m.props) throw CarrierMismatch("automaton and model use different vocabularies");
}

}  // namespace detail

/// Basic positions (s, a) come first, owned by Exists with priority Omega(a);
/// modal positions (sigma(s), phi) are Exists' and relation positions Z are
/// Forall's, both with priority 0.
inline AcceptanceGame build_arena(const Automaton& aut, const ColoredModel& m) {
  detail::check_compatible(aut, m);
  AcceptanceGame g;
  g.states = m.size();
  g.automaton_states = aut.size();
  for (std::size_t s = 0; s < m.size(); ++s)
    for (std::size_t a = 0; a < aut.size(); ++a) g.arena.add_position(Player::Exists, aut.priority[a]);
  std::map<std::pair<TElem, TElem>, int> modal_ids;
  std::map<Relation, int> relation_ids;
  for (std::size_t s = 0; s < m.size(); ++s)
    for (std::size_t a = 0; a < aut.size(); ++a) {
      int from = g.basic(s, a);
      for (const auto& phi : aut.delta[a][m.gamma[s]]) {
        auto key = std::make_pair(m.sigma[s], phi);
        auto it = modal_ids.find(key);
        if (it == modal_ids.end()) {
          int id = g.arena.add_position(Player::Exists, 0);
          it = modal_ids.emplace(key, id).first;
          g.modal.emplace(id, key);
          for (auto& z : minimal_witnesses(aut.functor, m.sigma[s], phi, m.size(), aut.size())) {
            auto zt = relation_ids.find(z);
            if (zt == relation_ids.end()) {
              int zid = g.arena.add_position(Player::Forall, 0);
              for (auto [t, b] : z.pairs())
                g.arena.add_move(zid, g.basic(static_cast<std::size_t>(t), static_cast<std::size_t>(b)));
              g.relation.emplace(zid, z);
              zt = relation_ids.emplace(std::move(z), zid).first;
            }
            g.arena.add_move(id, zt->second);
          }
        }
        g.arena.add_move(from, it->second);
      }
    }
  return g;
}

/// Win_Exists restricted to basic positions, as a relation S x A.
inline Relation winning_relation(const AcceptanceGame& g, const ParitySolution& sol) {
  Relation w(g.states, g.automaton_states);
  for (std::size_t s = 0; s < g.states; ++s)
    for (std::size_t a = 0; a < g.automaton_states; ++a)
      if (sol.exists_wins(g.basic(s, a))) w.insert(static_cast<int>(s), static_cast<int>(a));
  return w;
}

inline bool accepts(const Automaton& aut, const PointedModel& pm) {
  pm.validate();
  auto g = build_arena(aut, pm.model);
  return solve_parity(g.arena).exists_wins(g.basic(static_cast<std::size_t>(pm.point), static_cast<std::size_t>(aut.initial)));
}

/// All states a with (s, a) winning for Exists, for every s.
inline Relation accepting_relation(const Automaton& aut, const ColoredModel& m) {
  auto g = build_arena(aut, m);
  return winning_relation(g, solve_parity(g.arena));
}

/// Even priority and Delta(a, c) = T({a}) for all c.
inline bool is_true_state(const Automaton& aut, std::size_t a) {
  if (aut.priority.at(a) % 2 != 0) return false;
  std::vector<int> to_a{static_cast<int>(a)};
  std::vector<TElem> want;
  for (const auto& t : enumerate_t(aut.functor, 1)) want.push_back(t_map(aut.functor, to_a, t));
  std::sort(want.begin(), want.end());
  for (const auto& cell : aut.delta[a])
    if (cell != want) return false;
  return true;
}

inline std::optional<int> find_true_state(const Automaton& aut) {
  for (std::size_t a = 0; a < aut.size(); ++a)
    if (is_true_state(aut, a)) return static_cast<int>(a);
  return std::nullopt;
}

/// Appends a fresh true state with priority 0; nothing else changes.
inline Automaton add_true_state(const Automaton& aut) {
  Automaton out = aut;
  std::set<std::string> taken(aut.state_names.begin(), aut.state_names.end());
  int top = out.add_state(fresh_name("top", taken), 0);
  std::vector<int> to_top{top};
  for (Color c = 0; c < out.colors(); ++c)
    for (const auto& t : enumerate_t(out.functor, 1)) out.add_transition(static_cast<std::size_t>(top), c, t_map(out.functor, to_top, t));
  return out;
}

struct ElementWitness {
  ColoredModel model;
  TElem tau;
  /// Z within Win_Exists(model, aut), with (tau, phi) in L Z.
  Relation z;
};

/// Bounded search for witnessing coalgebras of every listed element; missing
/// entries had no witness with at most `bound` states.
inline std::map<TElem, ElementWitness> find_element_witnesses(const Automaton& aut, std::vector<TElem> elements,
                                                             std::size_t bound, std::uint64_t cap = default_cap) {
  aut.validate();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::map<TElem, ElementWitness> found;
  if (elements.empty()) return found;
  std::vector<std::vector<TElem>> carrier_elems;
  for_each_model_up_to(
      aut.functor, aut.props, bound,
      [&](const ColoredModel& q) {
        if (carrier_elems.size() <= q.size()) carrier_elems.resize(q.size() + 1);
        if (carrier_elems[q.size()].empty()) carrier_elems[q.size()] = enumerate_t(q.functor, q.size(), cap);
        Relation w = accepting_relation(aut, q);
        std::vector<TElem> pending;
        for (const auto& phi : elements) {
          bool done = false;
          for (const auto& tau : carrier_elems[q.size()])
            if (detail::lift_unchecked(aut.functor, w, tau, phi)) {
              found.emplace(phi, ElementWitness{q, tau, w.restricted(base(q.functor, tau), base(aut.functor, phi))});
              done = true;
              break;
            }
          if (!done) pending.push_back(phi);
        }
        elements = std::move(pending);
        return !elements.empty();
      },
      true, cap);
  return found;
}

inline std::optional<ElementWitness> element_satisfiable(const Automaton& aut, const TElem& phi, std::size_t bound,
                                                         std::uint64_t cap = default_cap) {
  if (!is_valid(aut.functor, phi, aut.size())) throw CarrierMismatch("element is not over the automaton states");
  auto w = find_element_witnesses(aut, {phi}, bound, cap);
  if (w.empty()) return std::nullopt;
  return w.begin()->second;
}

namespace detail {
inline std::vector<TElem> all_transition_elements(const Automaton& aut) {
  std::vector<TElem> out;
  for (const auto& row : aut.delta)
    for (const auto& cell : row) out.insert(out.end(), cell.begin(), cell.end());
  return out;
}
}  // namespace detail

/// Drops transition elements without a witness of at most `bound` states.
inline Automaton prune_unsatisfiable(const Automaton& aut, std::size_t bound, std::uint64_t cap = default_cap) {
  auto found = find_element_witnesses(aut, detail::all_transition_elements(aut), bound, cap);
  Automaton out = aut;
  for (auto& row : out.delta)
    for (auto& cell : row)
      cell.erase(std::remove_if(cell.begin(), cell.end(), [&](const TElem& phi) { return !found.count(phi); }),
                 cell.end());
  return out;
}

struct WitnessCoalgebra {
  /// Coproduct of the distinct witnesses; may have no states.
  ColoredModel model;
  /// Union of the witnessing relations, Q x A.
  Relation y;
  /// For each transition element, its tau in T Q.
  std::map<TElem, TElem> tau;
};

/// One coalgebra witnessing all satisfiable transition elements at once.
inline WitnessCoalgebra witness_coalgebra(const Automaton& aut, std::size_t bound, std::uint64_t cap = default_cap) {
  auto found = find_element_witnesses(aut, detail::all_transition_elements(aut), bound, cap);
  std::vector<ColoredModel> parts;
  std::vector<std::size_t> part_of;
  for (const auto& [phi, w] : found) {
    std::size_t k = 0;
    while (k < parts.size() && !(parts[k].sigma == w.model.sigma && parts[k].gamma == w.model.gamma)) ++k;
    if (k == parts.size()) parts.push_back(w.model);
    part_of.push_back(k);
  }
  WitnessCoalgebra out;
  if (parts.empty()) {
    out.model.functor = aut.functor;
    out.model.props = aut.props;
    out.y = Relation(0, aut.size());
    return out;
  }
  auto cp = coproduct(parts);
  out.model = std::move(cp.model);
  out.y = Relation(out.model.size(), aut.size());
  std::size_t i = 0;
  for (const auto& [phi, w] : found) {
    const auto& inj = cp.injections[part_of[i++]];
    out.tau.emplace(phi, t_map(aut.functor, inj, w.tau));
    for (auto [q, a] : w.z.pairs()) out.y.insert(inj[static_cast<std::size_t>(q)], a);
  }
  return out;
}

}  // namespace colfix
