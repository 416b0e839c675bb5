#pragma once

// Formula <-> automaton translations.

#include <deque>

#include "colfix/automaton.hh"
#include "colfix/logic.hh"

namespace colfix {

namespace detail {

enum class NnfKind { True, False, Lit, NegLit, And, Or, Nabla, Mu, Nu, Var };

struct NnfNode {
  NnfKind kind = NnfKind::True;
  int value = 0;  // prop index, or binder id for Mu/Nu/Var
  std::vector<int> kids;
  TElem shape;  // Nabla: over indices into kids
  bool fixpoint = false;
  auto key() const { return std::tie(kind, value, kids, shape); }
};

struct Binder {
  bool is_mu = true;
  int depth = 0;
  int body = -1;
  int priority = 0;
};

/// Negation normal form with explicit binders. Hash-consed, so equal
/// subterms share an id.
class NnfBuilder {
 public:
  NnfBuilder(const FunctorDescriptor& f, std::vector<std::string> props) : f_(f), props_(std::move(props)) {}

  int build(const Formula& a) { return go(a, true, 0); }

  const NnfNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const Binder& binder(int id) const { return binders_.at(static_cast<std::size_t>(id)); }
  std::size_t binder_count() const { return binders_.size(); }

  void assign_priorities() {
    int d = 0;
    for (const auto& b : binders_) d = std::max(d, b.depth);
    for (auto& b : binders_) b.priority = 2 * (d - b.depth) + (b.is_mu ? 1 : 0);
  }

 private:
  int intern(NnfNode n) {
    if (n.kind == NnfKind::Mu || n.kind == NnfKind::Nu || n.kind == NnfKind::Var) n.fixpoint = true;
    for (int k : n.kids) n.fixpoint = n.fixpoint || node(k).fixpoint;
    if (n.kind == NnfKind::And) {
      int fb = 0;
      for (int k : n.kids) fb += node(k).fixpoint;
      if (fb > 1)
        throw UnsupportedFragment(
            "conjunction of two subformulas that both involve fixpoints is outside the supported fragment");
    }
    auto it = index_.find(n.key());
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    index_.emplace(nodes_.back().key(), id);
    return id;
  }

  int lit(const std::string& p, bool positive) {
    auto it = std::lower_bound(props_.begin(), props_.end(), p);
    if (it == props_.end() || *it != p) throw UnboundProp("proposition '" + p + "' is not in the vocabulary");
    NnfNode n;
    n.kind = positive ? NnfKind::Lit : NnfKind::NegLit;
    n.value = static_cast<int>(it - props_.begin());
    return intern(n);
  }

  int junction(bool is_and, std::vector<int> kids) {
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    if (kids.size() == 1) return kids[0];
    NnfNode n;
    if (kids.empty()) {
      n.kind = is_and ? NnfKind::True : NnfKind::False;
      return intern(n);
    }
    n.kind = is_and ? NnfKind::And : NnfKind::Or;
    n.kids = std::move(kids);
    return intern(n);
  }

  int nabla_node(const TElem& shape, std::vector<int> kids) {
    // merge equal carrier entries so the payload stays canonical
    std::vector<int> sorted = kids;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> to(kids.size());
    for (std::size_t i = 0; i < kids.size(); ++i)
      to[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), kids[i]) - sorted.begin());
    NnfNode n;
    n.kind = NnfKind::Nabla;
    n.shape = t_map(f_, to, shape);
    n.kids = std::move(sorted);
    return intern(n);
  }

  int go(const Formula& a, bool positive, int depth) {
    switch (a.kind()) {
      case FormulaKind::Atom: {
        auto it = env_.find(a.name());
        if (it != env_.end() && !it->second.empty()) {
          NnfNode n;
          n.kind = NnfKind::Var;
          n.value = it->second.back();
          return intern(n);
        }
        return lit(a.name(), positive);
      }
      case FormulaKind::Neg: return go(a.body(), !positive, depth);
      case FormulaKind::Or: {
        std::vector<int> kids;
        for (const auto& c : a.args()) kids.push_back(go(c, positive, depth));
        return junction(!positive, std::move(kids));
      }
      case FormulaKind::Nabla: {
        if (!(a.functor() == f_)) throw CarrierMismatch("nabla payload functor differs from the automaton functor");
        if (positive) {
          std::vector<int> kids;
          for (const auto& c : a.args()) kids.push_back(go(c, true, depth));
          return nabla_node(a.shape(), std::move(kids));
        }
        if (f_.kind() != FunctorKind::Powerset)
          throw UnsupportedFragment("negated nabla is only supported for the powerset functor");
        // ~nabla{a1..an} = diamond ~\/a  \/  \/_i box ~ai
        std::vector<int> neg_args;
        for (const auto& c : a.args()) neg_args.push_back(go(c, false, depth));
        std::vector<int> alts;
        int top_id = junction(true, {});
        TElem two;
        two.kind = FunctorKind::Powerset;
        two.atoms = {0, 1};
        alts.push_back(nabla_node(two, {junction(true, neg_args), top_id}));
        TElem none;
        none.kind = FunctorKind::Powerset;
        TElem one;
        one.kind = FunctorKind::Powerset;
        one.atoms = {0};
        for (int na : neg_args) {
          alts.push_back(nabla_node(none, {}));
          alts.push_back(nabla_node(one, {na}));
        }
        return junction(false, std::move(alts));
      }
      case FormulaKind::Mu: {
        int id = static_cast<int>(binders_.size());
        binders_.push_back(Binder{positive, depth, -1, 0});
        env_[a.name()].push_back(id);
        int body = go(a.body(), positive, depth + 1);
        env_[a.name()].pop_back();
        binders_[static_cast<std::size_t>(id)].body = body;
        NnfNode n;
        n.kind = positive ? NnfKind::Mu : NnfKind::Nu;
        n.value = id;
        n.kids = {body};
        return intern(n);
      }
    }
    throw InternalError("unknown formula kind");
  }

  const FunctorDescriptor& f_;
  std::vector<std::string> props_;
  std::vector<NnfNode> nodes_;
  std::map<decltype(std::declval<NnfNode>().key()), int> index_;
  std::vector<Binder> binders_;
  std::map<std::string, std::vector<int>> env_;
};

struct Clause {
  Color pos = 0, neg = 0;
  std::vector<int> nablas;
  int priority = 0;
  auto key() const { return std::tie(pos, neg, nablas, priority); }
};

class Expander {
 public:
  explicit Expander(const NnfBuilder& b) : b_(b) {}

  std::vector<Clause> expand(const std::vector<int>& members) {
    std::vector<Clause> acc{Clause{}};
    for (int m : members) acc = product(acc, node(m, 0));
    return acc;
  }

 private:
  static std::vector<Clause> normalize(std::vector<Clause> cs) {
    for (auto& c : cs) {
      std::sort(c.nablas.begin(), c.nablas.end());
      c.nablas.erase(std::unique(c.nablas.begin(), c.nablas.end()), c.nablas.end());
    }
    std::sort(cs.begin(), cs.end(), [](const Clause& x, const Clause& y) { return x.key() < y.key(); });
    cs.erase(std::unique(cs.begin(), cs.end(), [](const Clause& x, const Clause& y) { return x.key() == y.key(); }),
             cs.end());
    return cs;
  }

  static std::vector<Clause> product(const std::vector<Clause>& xs, const std::vector<Clause>& ys) {
    std::vector<Clause> out;
    for (const auto& x : xs)
      for (const auto& y : ys) {
        Clause c;
        c.pos = x.pos | y.pos;
        c.neg = x.neg | y.neg;
        if (c.pos & c.neg) continue;
        c.nablas = x.nablas;
        c.nablas.insert(c.nablas.end(), y.nablas.begin(), y.nablas.end());
        c.priority = std::max(x.priority, y.priority);
        out.push_back(std::move(c));
      }
    return normalize(std::move(out));
  }

  std::vector<Clause> node(int id, int guard_depth) {
    if (guard_depth > 10000) throw InternalError("unguarded fixpoint variable during expansion");
    const NnfNode& n = b_.node(id);
    switch (n.kind) {
      case NnfKind::True: return {Clause{}};
      case NnfKind::False: return {};
      case NnfKind::Lit: {
        Clause c;
        c.pos = Color{1} << n.value;
        return {c};
      }
      case NnfKind::NegLit: {
        Clause c;
        c.neg = Color{1} << n.value;
        return {c};
      }
      case NnfKind::And: {
        std::vector<Clause> acc{Clause{}};
        for (int k : n.kids) acc = product(acc, node(k, guard_depth + 1));
        return acc;
      }
      case NnfKind::Or: {
        std::vector<Clause> acc;
        for (int k : n.kids) {
          auto cs = node(k, guard_depth + 1);
          acc.insert(acc.end(), cs.begin(), cs.end());
        }
        return normalize(std::move(acc));
      }
      case NnfKind::Nabla: {
        Clause c;
        c.nablas = {id};
        return {c};
      }
      case NnfKind::Mu:
      case NnfKind::Nu: return node(n.kids[0], guard_depth + 1);
      case NnfKind::Var: {
        const Binder& bd = b_.binder(n.value);
        auto cs = node(bd.body, guard_depth + 1);
        for (auto& c : cs) c.priority = std::max(c.priority, bd.priority);
        return normalize(std::move(cs));
      }
    }
    return {};
  }

  const NnfBuilder& b_;
};

}  // namespace detail

/// An automaton accepting exactly the pointed models satisfying a. The
/// vocabulary is free_props(a) unless a superset is given. Throws
/// UnsupportedFragment outside the supported fragment.
inline Automaton formula_to_automaton(const Formula& a, const FunctorDescriptor& f,
                                      std::optional<std::vector<std::string>> vocabulary = std::nullopt,
                                      std::uint64_t cap = default_cap) {
  std::vector<std::string> props = vocabulary ? detail::sorted_names(*vocabulary) : free_props(a);
  for (const auto& p : free_props(a))
    if (!std::binary_search(props.begin(), props.end(), p))
      throw UnboundProp("proposition '" + p + "' is not in the vocabulary");
  if (props.size() > 16) throw Error("too many proposition letters");
  Formula g = guard(a);
  detail::NnfBuilder nnf(f, props);
  int root = nnf.build(g);
  nnf.assign_priorities();
  detail::Expander expander(nnf);

  Automaton aut;
  aut.functor = f;
  aut.props = props;
  using Key = std::pair<std::vector<int>, int>;
  std::map<Key, int> ids;
  std::deque<Key> work;
  auto state = [&](std::vector<int> members, int prio) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Key k{members, prio};
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = aut.add_state("q" + std::to_string(aut.size()), prio);
    ids.emplace(k, id);
    work.push_back(k);
    return id;
  };
  aut.initial = state({root}, 0);

  // the true state: no obligations at all
  std::optional<int> top_state;
  auto top = [&] {
    if (!top_state) top_state = state({}, 0);
    return *top_state;
  };

  while (!work.empty()) {
    Key k = work.front();
    work.pop_front();
    int from = ids.at(k);
    auto clauses = expander.expand(k.first);
    for (const auto& cl : clauses) {
      // carriers are sets of nnf ids (one automaton state each)
      std::vector<std::vector<int>> carrier;
      TElem elem;
      if (cl.nablas.empty()) {
        int t = top();
        for (Color c = 0; c < aut.colors(); ++c) {
          if ((cl.pos & ~c) || (cl.neg & c)) continue;
          for (const auto& e : enumerate_t(f, 1, cap))
            aut.add_transition(static_cast<std::size_t>(from), c, t_map(f, std::vector<int>{t}, e));
        }
        continue;
      }
      std::vector<std::pair<std::vector<std::vector<int>>, TElem>> combos;
      {
        const auto& n0 = nnf.node(cl.nablas[0]);
        std::vector<std::vector<int>> c0;
        for (int kid : n0.kids) c0.push_back({kid});
        combos.push_back({c0, n0.shape});
      }
      if (cl.nablas.size() > 1 && !f.has_functorial_lifting())
        throw UnsupportedFragment("conjunctions of nabla formulas need a functorial lifting");
      for (std::size_t i = 1; i < cl.nablas.size(); ++i) {
        const auto& ni = nnf.node(cl.nablas[i]);
        std::vector<std::pair<std::vector<std::vector<int>>, TElem>> next;
        for (const auto& [car, el] : combos) {
          std::size_t n1 = car.size(), n2 = ni.kids.size();
          std::vector<int> p1(n1 * n2), p2(n1 * n2);
          std::vector<std::vector<int>> paired(n1 * n2);
          for (std::size_t x = 0; x < n1; ++x)
            for (std::size_t y = 0; y < n2; ++y) {
              p1[x * n2 + y] = static_cast<int>(x);
              p2[x * n2 + y] = static_cast<int>(y);
              auto members = car[x];
              members.push_back(ni.kids[y]);
              std::sort(members.begin(), members.end());
              members.erase(std::unique(members.begin(), members.end()), members.end());
              paired[x * n2 + y] = members;
            }
          for (const auto& gm : enumerate_t(f, n1 * n2, cap))
            if (t_map(f, p1, gm) == el && t_map(f, p2, gm) == ni.shape) next.push_back({paired, gm});
        }
        combos = std::move(next);
      }
      for (const auto& [car, el] : combos) {
        std::vector<int> to;
        for (const auto& members : car) to.push_back(state(members, cl.priority));
        TElem phi = t_map(f, to, el);
        for (Color c = 0; c < aut.colors(); ++c) {
          if ((cl.pos & ~c) || (cl.neg & c)) continue;
          aut.add_transition(static_cast<std::size_t>(from), c, phi);
        }
      }
    }
  }
  // add_state grows cells lazily; make sure every row has all colors
  for (auto& row : aut.delta) row.resize(aut.colors());
  aut.validate();
  return aut;
}

/// Exact description of a color over the automaton vocabulary.
inline Formula color_formula(const std::vector<std::string>& props, Color c) {
  std::vector<Formula> lits;
  for (std::size_t i = 0; i < props.size(); ++i) lits.push_back(c >> i & 1u ? atom(props[i]) : neg(atom(props[i])));
  return conj(std::move(lits));
}

/// A formula true exactly at the pointed models the automaton accepts,
/// obtained by Gaussian elimination of the state equations.
inline Formula automaton_to_formula(const Automaton& aut) {
  aut.validate();
  std::size_t n = aut.size();
  std::set<std::string> avoid(aut.props.begin(), aut.props.end());
  std::vector<std::string> var(n);
  for (std::size_t a = 0; a < n; ++a) {
    var[a] = fresh_name("x" + std::to_string(a), avoid);
    avoid.insert(var[a]);
  }
  std::vector<Formula> carrier;
  for (std::size_t a = 0; a < n; ++a) carrier.push_back(atom(var[a]));
  std::vector<Formula> rhs(n);
  std::vector<bool> trivial(n);
  for (std::size_t a = 0; a < n; ++a) trivial[a] = is_true_state(aut, a);
  for (std::size_t a = 0; a < n; ++a) {
    if (trivial[a]) {
      rhs[a] = top();
      continue;
    }
    bool uniform = std::all_of(aut.delta[a].begin(), aut.delta[a].end(),
                               [&](const auto& cell) { return cell == aut.delta[a][0]; });
    if (uniform) {
      std::vector<Formula> moves;
      for (const auto& phi : aut.delta[a][0]) moves.push_back(nabla(aut.functor, phi, carrier));
      rhs[a] = disj(std::move(moves));
      continue;
    }
    std::vector<Formula> alts;
    for (Color c = 0; c < aut.colors(); ++c) {
      if (aut.delta[a][c].empty()) continue;
      std::vector<Formula> moves;
      for (const auto& phi : aut.delta[a][c]) moves.push_back(nabla(aut.functor, phi, carrier));
      alts.push_back(conj(color_formula(aut.props, c), disj(std::move(moves))));
    }
    rhs[a] = disj(std::move(alts));
  }
  // outermost = highest priority; eliminate from the innermost equation
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return aut.priority[x] > aut.priority[y]; });
  auto close = [&](std::size_t a) {
    if (!rhs[a].occurs_free(var[a])) return rhs[a];
    return aut.priority[a] % 2 == 1 ? mu(var[a], rhs[a]) : nu(var[a], rhs[a]);
  };
  for (std::size_t k = n; k-- > 0;) {
    std::size_t a = order[k];
    rhs[a] = close(a);
    for (std::size_t j = 0; j < k; ++j) rhs[order[j]] = subst(rhs[order[j]], var[a], rhs[a]);
  }
  // back substitution, outermost first
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = k + 1; j < n; ++j) rhs[order[j]] = subst(rhs[order[j]], var[order[k]], rhs[order[k]]);
  return rhs[static_cast<std::size_t>(aut.initial)];
}

}  // namespace colfix
