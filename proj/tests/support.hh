#pragma once

// Helpers shared by the test binaries.

#include <random>

#include "colfix/coalgebra.hh"

namespace testsupport {

using namespace colfix;

inline TElem pset(std::vector<int> xs) {
  TElem t;
  t.kind = FunctorKind::Powerset;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  t.atoms = std::move(xs);
  return t;
}

inline TElem nbhd(std::vector<std::vector<int>> gens) {
  TElem t;
  t.kind = FunctorKind::MonotoneNbhd;
  t.gens = detail::minimize_family(std::move(gens));
  return t;
}

/// Kripke model: succ[s] lists successors, colors[s] lists true letters.
inline ColoredModel kripke(const std::vector<std::vector<int>>& succ, const std::vector<std::string>& props,
                           const std::vector<std::vector<std::string>>& colors) {
  ColoredModel m;
  m.functor = FunctorDescriptor::powerset();
  m.props = props;
  std::sort(m.props.begin(), m.props.end());
  for (std::size_t s = 0; s < succ.size(); ++s) {
    m.state_names.push_back("s" + std::to_string(s));
    m.sigma.push_back(pset(succ[s]));
    Color c = 0;
    for (const auto& p : colors.at(s)) c |= Color{1} << m.prop_index(p);
    m.gamma.push_back(c);
  }
  m.validate();
  return m;
}

inline std::vector<Relation> all_relations(std::size_t n, std::size_t m) {
  std::vector<Relation> out;
  for (unsigned mask = 0; mask < (1u << (n * m)); ++mask) {
    Relation r(n, m);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (mask >> (x * m + y) & 1u) r.insert(int(x), int(y));
    out.push_back(r);
  }
  return out;
}

/// Uniformly random model with n states.
inline ColoredModel random_model(const FunctorDescriptor& f, const std::vector<std::string>& props, std::size_t n,
                                 std::mt19937& rng) {
  auto elems = enumerate_t(f, n);
  ColoredModel m;
  m.functor = f;
  m.props = props;
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  std::uniform_int_distribution<Color> color(0, (Color{1} << props.size()) - 1);
  for (std::size_t s = 0; s < n; ++s) {
    m.state_names.push_back("s" + std::to_string(s));
    m.sigma.push_back(elems[pick(rng)]);
    m.gamma.push_back(color(rng));
  }
  return m;
}

}  // namespace testsupport

#include "colfix/logic.hh"

namespace testsupport {

/// Random formula; bound variables only occur positively.
inline Formula random_formula(const FunctorDescriptor& f, const std::vector<std::string>& props, int depth,
                              std::mt19937& rng, std::vector<std::string> vars = {}, bool negated = false) {
  std::uniform_int_distribution<int> pick(0, 9);
  int k = depth <= 0 ? pick(rng) % 2 : pick(rng);
  auto leaf = [&] {
    std::vector<std::string> choices = props;
    if (!negated) choices.insert(choices.end(), vars.begin(), vars.end());
    std::uniform_int_distribution<std::size_t> c(0, choices.size());
    std::size_t i = c(rng);
    if (i == choices.size()) return pick(rng) % 2 ? top() : bot();
    return atom(choices[i]);
  };
  switch (k) {
    case 0:
    case 1: return leaf();
    case 2:
    case 3: return neg(random_formula(f, props, depth - 1, rng, vars, !negated));
    case 4:
    case 5: return disj(random_formula(f, props, depth - 1, rng, vars, negated),
                        random_formula(f, props, depth - 1, rng, vars, negated));
    case 6:
    case 7: {
      std::vector<Formula> carrier;
      std::uniform_int_distribution<int> width(0, 2);
      int w = width(rng);
      for (int i = 0; i < w; ++i) carrier.push_back(random_formula(f, props, depth - 1, rng, vars, negated));
      auto elems = enumerate_t(f, carrier.size());
      std::uniform_int_distribution<std::size_t> e(0, elems.size() - 1);
      return nabla(f, elems[e(rng)], carrier);
    }
    default: {
      std::string x = "x" + std::to_string(vars.size());
      // under an odd number of negations the enclosing variables are off limits
      std::vector<std::string> inner = negated ? std::vector<std::string>{x} : vars;
      if (!negated) inner.push_back(x);
      Formula body = random_formula(f, props, depth - 1, rng, inner, false);
      return pick(rng) % 2 ? mu(x, body) : nu(x, body);
    }
  }
}


}  // namespace testsupport

#include "colfix/automaton.hh"

namespace testsupport {

/// Random automaton: each cell gets up to `width` elements, priorities <= 3.
inline Automaton random_automaton(const FunctorDescriptor& f, const std::vector<std::string>& props, std::size_t n,
                                  std::mt19937& rng, std::size_t width = 2) {
  Automaton aut;
  aut.functor = f;
  aut.props = props;
  std::uniform_int_distribution<int> prio(0, 3);
  for (std::size_t a = 0; a < n; ++a) aut.add_state("a" + std::to_string(a), prio(rng));
  auto elems = enumerate_t(f, n);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1), count(0, width);
  for (std::size_t a = 0; a < n; ++a)
    for (Color c = 0; c < aut.colors(); ++c) {
      std::size_t k = count(rng);
      for (std::size_t i = 0; i < k; ++i) aut.add_transition(a, c, elems[pick(rng)]);
    }
  aut.validate();
  return aut;
}

}  // namespace testsupport

namespace testsupport {

/// Oracle for L_Q-bisimilarity across many models at once: partition
/// refinement on their disjoint union. Powerset and monotone neighborhoods
/// only.
class BisimClasses {
 public:
  explicit BisimClasses(std::vector<std::string> q) : q_(detail::sorted_names(std::move(q))) {}

  /// Returns the global index of state 0 of m.
  std::size_t add(const ColoredModel& m) {
    std::size_t base = color_.size();
    for (std::size_t s = 0; s < m.size(); ++s) {
      std::vector<bool> c;
      for (const auto& p : q_) c.push_back(m.prop_index(p) >= 0 && m.holds(s, p));
      color_.push_back(c);
      TElem t = m.sigma[s];
      for (auto& x : t.atoms) x += int(base);
      for (auto& g : t.gens)
        for (auto& x : g) x += int(base);
      if (m.functor.kind() != FunctorKind::Powerset && m.functor.kind() != FunctorKind::MonotoneNbhd)
        throw Error("BisimClasses: unsupported functor");
      sigma_.push_back(t);
    }
    return base;
  }

  void refine() {
    std::map<std::vector<bool>, int> first;
    block_.assign(color_.size(), 0);
    for (std::size_t s = 0; s < color_.size(); ++s)
      block_[s] = first.emplace(color_[s], int(first.size())).first->second;
    std::size_t count = first.size();
    for (;;) {
      std::map<std::pair<int, std::vector<std::vector<int>>>, int> sig;
      std::vector<int> next(block_.size());
      for (std::size_t s = 0; s < block_.size(); ++s) {
        std::vector<std::vector<int>> fam;
        auto blocks = [&](const std::vector<int>& xs) {
          std::vector<int> b;
          for (int x : xs) b.push_back(block_[std::size_t(x)]);
          std::sort(b.begin(), b.end());
          b.erase(std::unique(b.begin(), b.end()), b.end());
          return b;
        };
        if (sigma_[s].kind == FunctorKind::Powerset) {
          fam.push_back(blocks(sigma_[s].atoms));
        } else {
          for (const auto& g : sigma_[s].gens) fam.push_back(blocks(g));
          fam = detail::minimize_family(fam);
        }
        next[s] = sig.emplace(std::make_pair(block_[s], fam), int(sig.size())).first->second;
      }
      block_ = std::move(next);
      if (sig.size() == count) break;
      count = sig.size();
    }
  }

  int block(std::size_t s) const { return block_.at(s); }

 private:
  std::vector<std::string> q_;
  std::vector<std::vector<bool>> color_;
  std::vector<TElem> sigma_;
  std::vector<int> block_;
};

}  // namespace testsupport

#include "colfix/interpolation.hh"

namespace testsupport {

struct ExistsVerdict {
  PointedModel target;
  bool oracle = false;
};

/// Semantic display of "exists p. a", by brute force: a pointed model over q
/// (n states or fewer) is in when some pointed model over q + p with at most
/// n states satisfies a and is bisimilar to it up to p.
inline std::vector<ExistsVerdict> exists_oracle(const Formula& a, const std::string& p, std::vector<std::string> q,
                                                const FunctorDescriptor& f, std::size_t n) {
  q = detail::sorted_names(q);
  auto full = q;
  full.push_back(p);
  full = detail::sorted_names(full);
  BisimClasses classes(q);
  std::vector<std::size_t> sat_states;
  for_each_model_up_to(f, full, n, [&](const ColoredModel& m) {
    auto e = eval(m, a);
    std::size_t base = classes.add(m);
    for (std::size_t s = 0; s < m.size(); ++s)
      if (e[s]) sat_states.push_back(base + s);
    return true;
  });
  std::vector<ExistsVerdict> out;
  std::vector<std::size_t> target_states;
  for_each_model_up_to(f, q, n, [&](const ColoredModel& m) {
    std::size_t base = classes.add(m);
    for (std::size_t s = 0; s < m.size(); ++s) {
      out.push_back({PointedModel{m, int(s)}, false});
      target_states.push_back(base + s);
    }
    return true;
  });
  classes.refine();
  std::set<int> good;
  for (auto s : sat_states) good.insert(classes.block(s));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].oracle = good.count(classes.block(target_states[i])) > 0;
  return out;
}

}  // namespace testsupport
