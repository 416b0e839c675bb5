#pragma once

// Bisimulation quantifiers, uniform interpolants and bounded consequence.

#include "colfix/projection.hh"
#include "colfix/translate.hh"

namespace colfix {

inline constexpr std::size_t default_witness_bound = 3;

/// A formula over free_props(a) minus p for "exists p. a": true at a point
/// iff a holds at some point bisimilar to it up to p.
inline Formula exists_p(const Formula& a, const std::string& p, const FunctorDescriptor& f,
                        std::size_t bound = default_witness_bound, std::uint64_t cap = default_cap) {
  auto props = free_props(a);
  props.push_back(p);
  auto aut = formula_to_automaton(a, f, props, cap);
  return automaton_to_formula(project_automaton(aut, p, bound, cap));
}

/// Quantifies away every free letter of a outside q, in sorted order. The
/// projections are chained on the automaton and translated back once.
inline Formula uniform_interpolant(const Formula& a, const std::vector<std::string>& q, const FunctorDescriptor& f,
                                   std::size_t bound = default_witness_bound, std::uint64_t cap = default_cap) {
  auto props = free_props(a);
  std::vector<std::string> drop;
  for (const auto& p : props)
    if (std::find(q.begin(), q.end(), p) == q.end()) drop.push_back(p);
  if (drop.empty()) return a;
  auto aut = formula_to_automaton(a, f, props, cap);
  for (const auto& p : drop) aut = project_automaton(aut, p, bound, cap);
  return automaton_to_formula(aut);
}

/// A pointed model with at most n states satisfying a but not b, searched in
/// order of size over the letters of both formulas.
inline std::optional<PointedModel> bounded_countermodel(const Formula& a, const Formula& b, const FunctorDescriptor& f,
                                                        std::size_t n, std::uint64_t cap = default_cap) {
  auto props = free_props(a);
  auto pb = free_props(b);
  props.insert(props.end(), pb.begin(), pb.end());
  props = detail::sorted_names(props);
  std::optional<PointedModel> found;
  for_each_model_up_to(
      f, props, n,
      [&](const ColoredModel& m) {
        auto ea = eval(m, a);
        bool any = false;
        for (bool x : ea) any = any || x;
        if (!any) return true;
        auto eb = eval(m, b);
        for (std::size_t s = 0; s < m.size(); ++s)
          if (ea[s] && !eb[s]) {
            found = PointedModel{m, static_cast<int>(s)};
            return false;
          }
        return true;
      },
      true, cap);
  return found;
}

/// a entails b on every pointed model with at most n states.
inline bool entails_bounded(const Formula& a, const Formula& b, const FunctorDescriptor& f, std::size_t n,
                            std::uint64_t cap = default_cap) {
  return !bounded_countermodel(a, b, f, n, cap);
}

inline bool equivalent_bounded(const Formula& a, const Formula& b, const FunctorDescriptor& f, std::size_t n,
                               std::uint64_t cap = default_cap) {
  return entails_bounded(a, b, f, n, cap) && entails_bounded(b, a, f, n, cap);
}

}  // namespace colfix
