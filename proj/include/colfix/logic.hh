#pragma once

// Syntactic analyses, the guarded transformation and model checking.

#include "colfix/coalgebra.hh"
#include "colfix/formula.hh"

namespace colfix {

/// Sfor(a), sorted.
inline std::vector<Formula> subformulas(const Formula& a) {
  std::set<Formula> seen;
  std::vector<Formula> stack{a};
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    for (const auto& c : f.args()) stack.push_back(c);
  }
  return {seen.begin(), seen.end()};
}

/// Letters occurring free in a (mu-bound letters excluded).
inline std::vector<std::string> free_props(const Formula& a) { return a.free_names(); }

namespace detail {

// free occurrences of p in a that are not under a nabla
inline bool occurs_unguarded(const Formula& a, const std::string& p) {
  if (!a.occurs_free(p)) return false;
  switch (a.kind()) {
    case FormulaKind::Atom: return true;
    case FormulaKind::Nabla: return false;
    default:
      for (const auto& c : a.args())
        if (occurs_unguarded(c, p)) return true;
      return false;
  }
}

}  // namespace detail

/// Every mu p. b inside a has all occurrences of p in b under a nabla.
inline bool is_guarded(const Formula& a) {
  for (const auto& f : subformulas(a))
    if (f.kind() == FormulaKind::Mu && detail::occurs_unguarded(f.body(), f.name())) return false;
  return true;
}

namespace detail {

// Unfolds every binder sitting in an unguarded position whose body mentions
// x freely; assumes those binders are themselves guarded.
inline Formula unfold_unguarded(const Formula& a, const std::string& x) {
  if (!a.occurs_free(x)) return a;
  switch (a.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Nabla: return a;
    case FormulaKind::Mu: return unfold_unguarded(subst(a.body(), a.name(), a), x);
    default: {
      std::vector<Formula> args;
      for (const auto& c : a.args()) args.push_back(unfold_unguarded(c, x));
      return rebuild(a, std::move(args));
    }
  }
}

inline Formula replace_unguarded(const Formula& a, const std::string& x, const Formula& by) {
  if (!a.occurs_free(x)) return a;
  switch (a.kind()) {
    case FormulaKind::Atom: return by;
    case FormulaKind::Nabla: return a;
    case FormulaKind::Mu: throw InternalError("binder left in an unguarded position");
    default: {
      std::vector<Formula> args;
      for (const auto& c : a.args()) args.push_back(replace_unguarded(c, x, by));
      return rebuild(a, std::move(args));
    }
  }
}

class Guarder {
 public:
  Formula run(const Formula& a) {
    if (auto it = memo_.find(a.node()); it != memo_.end()) return it->second;
    Formula out;
    switch (a.kind()) {
      case FormulaKind::Atom: out = a; break;
      case FormulaKind::Mu: {
        Formula b = run(a.body());
        if (occurs_unguarded(b, a.name())) b = replace_unguarded(unfold_unguarded(b, a.name()), a.name(), bot());
        out = mu(a.name(), b);
        break;
      }
      default: {
        std::vector<Formula> args;
        for (const auto& c : a.args()) args.push_back(run(c));
        out = rebuild(a, std::move(args));
      }
    }
    memo_.emplace(a.node(), out);
    return out;
  }

 private:
  std::unordered_map<const FormulaNode*, Formula> memo_;
};

}  // namespace detail

/// An equivalent guarded formula.
inline Formula guard(const Formula& a) { return detail::Guarder().run(a); }

using StateSet = std::vector<bool>;

namespace detail {

class Evaluator {
 public:
  explicit Evaluator(const ColoredModel& m) : m_(m) {}

  StateSet eval(const Formula& a) {
    std::string key = memo_key(a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    StateSet out(m_.size(), false);
    switch (a.kind()) {
      case FormulaKind::Atom: {
        auto it = env_.find(a.name());
        if (it != env_.end() && !it->second.empty()) {
          out = it->second.back();
        } else {
          int k = m_.prop_index(a.name());
          if (k < 0) throw UnboundProp("proposition '" + a.name() + "' is not in the model vocabulary");
          for (std::size_t s = 0; s < m_.size(); ++s) out[s] = m_.gamma[s] >> k & 1u;
        }
        break;
      }
      case FormulaKind::Neg: {
        out = eval(a.body());
        out.flip();
        break;
      }
      case FormulaKind::Or:
        for (const auto& c : a.args()) {
          StateSet v = eval(c);
          for (std::size_t s = 0; s < m_.size(); ++s) out[s] = out[s] || v[s];
        }
        break;
      case FormulaKind::Nabla: {
        if (!(a.functor() == m_.functor)) throw CarrierMismatch("nabla payload functor differs from the model functor");
        Relation forces(m_.size(), a.args().size());
        for (std::size_t i = 0; i < a.args().size(); ++i) {
          StateSet v = eval(a.arg(i));
          for (std::size_t s = 0; s < m_.size(); ++s)
            if (v[s]) forces.insert(static_cast<int>(s), static_cast<int>(i));
        }
        for (std::size_t s = 0; s < m_.size(); ++s) out[s] = lift_unchecked(m_.functor, forces, m_.sigma[s], a.shape());
        break;
      }
      case FormulaKind::Mu: {
        auto& slot = env_[a.name()];
        slot.push_back(StateSet(m_.size(), false));
        for (;;) {
          StateSet next = eval(a.body());
          if (next == env_[a.name()].back()) break;
          env_[a.name()].back() = std::move(next);
        }
        out = env_[a.name()].back();
        env_[a.name()].pop_back();
        break;
      }
    }
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  std::string memo_key(const Formula& a) {
    std::string key;
    auto ptr = reinterpret_cast<std::uintptr_t>(a.node());
    key.append(reinterpret_cast<const char*>(&ptr), sizeof ptr);
    for (const auto& p : a.free_names()) {
      auto it = env_.find(p);
      if (it == env_.end() || it->second.empty()) continue;
      key += '|' + p + '=';
      for (bool b : it->second.back()) key.push_back(b ? '1' : '0');
    }
    return key;
  }

  const ColoredModel& m_;
  std::map<std::string, std::vector<StateSet>> env_;
  std::unordered_map<std::string, StateSet> memo_;
};

}  // namespace detail

/// The set of states satisfying a.
inline StateSet eval(const ColoredModel& m, const Formula& a) { return detail::Evaluator(m).eval(a); }

inline bool satisfies(const PointedModel& pm, const Formula& a) {
  pm.validate();
  return eval(pm.model, a).at(static_cast<std::size_t>(pm.point));
}

}  // namespace colfix
