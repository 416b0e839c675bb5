#pragma once

// Finite colored coalgebras, bisimulations, projections and coproducts.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "colfix/lifting.hh"

namespace colfix {

using Color = std::uint32_t;
inline constexpr std::size_t max_props = 32;

/// A P(props)-colored T-coalgebra over states {0..n-1}. Colors are bitmasks
/// over the sorted `props`.
struct ColoredModel {
  FunctorDescriptor functor = FunctorDescriptor::powerset();
  std::vector<std::string> state_names;
  std::vector<TElem> sigma;
  std::vector<std::string> props;
  std::vector<Color> gamma;

  std::size_t size() const noexcept { return sigma.size(); }

  int prop_index(const std::string& p) const {
    auto it = std::lower_bound(props.begin(), props.end(), p);
    return it != props.end() && *it == p ? static_cast<int>(it - props.begin()) : -1;
  }
  bool holds(std::size_t s, const std::string& p) const {
    int i = prop_index(p);
    return i >= 0 && (gamma.at(s) >> i & 1u);
  }
  /// Valuation view: the states where p holds.
  std::vector<int> valuation(const std::string& p) const {
    std::vector<int> out;
    for (std::size_t s = 0; s < size(); ++s)
      if (holds(s, p)) out.push_back(static_cast<int>(s));
    return out;
  }
  std::vector<std::string> color_names(std::size_t s) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < props.size(); ++i)
      if (gamma.at(s) >> i & 1u) out.push_back(props[i]);
    return out;
  }
  int state_index(const std::string& name) const {
    auto it = std::find(state_names.begin(), state_names.end(), name);
    return it == state_names.end() ? -1 : static_cast<int>(it - state_names.begin());
  }

  /// Throws when an invariant is broken.
  void validate() const {
    if (gamma.size() != sigma.size()) throw CarrierMismatch("model: sigma and gamma sizes differ");
    if (!state_names.empty() && state_names.size() != sigma.size())
      throw CarrierMismatch("model: wrong number of state names");
    if (props.size() > max_props) throw Error("model: too many proposition letters");
    if (!std::is_sorted(props.begin(), props.end()) || std::adjacent_find(props.begin(), props.end()) != props.end())
      throw Error("model: props must be sorted and distinct");
    for (std::size_t s = 0; s < size(); ++s) {
      if (!is_valid(functor, sigma[s], size())) throw CarrierMismatch("model: sigma(" + name(s) + ") is not over the states");
      if (props.size() < max_props && (gamma[s] >> props.size()) != 0)
        throw CarrierMismatch("model: color of " + name(s) + " outside the vocabulary");
    }
  }

  std::string name(std::size_t s) const {
    return s < state_names.size() ? state_names[s] : "s" + std::to_string(s);
  }
};

struct PointedModel {
  ColoredModel model;
  int point = 0;

  void validate() const {
    model.validate();
    if (point < 0 || static_cast<std::size_t>(point) >= model.size()) throw CarrierMismatch("point outside the model");
  }
};

namespace detail {

inline std::vector<std::string> sorted_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Restriction of colors to Q, as comparable masks over Q.
inline std::vector<Color> colors_on(const ColoredModel& m, const std::vector<std::string>& q) {
  std::vector<Color> out(m.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    int k = m.prop_index(q[i]);
    if (k < 0) continue;
    for (std::size_t s = 0; s < m.size(); ++s)
      if (m.gamma[s] >> k & 1u) out[s] |= Color{1} << i;
  }
  return out;
}

inline void same_functor(const ColoredModel& a, const ColoredModel& b) {
  if (!(a.functor == b.functor)) throw CarrierMismatch("models over different functors");
}

}  // namespace detail

/// T f . sigma1 = sigma2 . f; with `check_colors`, also gamma2 . f = gamma1
/// (compared by proposition name).
inline bool is_morphism(std::span<const int> f, const ColoredModel& m1, const ColoredModel& m2,
                        bool check_colors = false) {
  detail::same_functor(m1, m2);
  if (f.size() != m1.size()) throw CarrierMismatch("morphism: map is not total on the source");
  for (int y : f)
    if (y < 0 || static_cast<std::size_t>(y) >= m2.size()) throw CarrierMismatch("morphism: target outside the model");
  std::vector<std::string> all;
  if (check_colors) {
    all = m1.props;
    all.insert(all.end(), m2.props.begin(), m2.props.end());
    all = detail::sorted_names(all);
  }
  auto c1 = detail::colors_on(m1, all), c2 = detail::colors_on(m2, all);
  for (std::size_t s = 0; s < m1.size(); ++s) {
    auto fs = static_cast<std::size_t>(f[s]);
    if (!(t_map(m1.functor, f, m1.sigma[s]) == m2.sigma[fs])) return false;
    if (check_colors && c1[s] != c2[fs]) return false;
  }
  return true;
}

/// L_Q-bisimulation check; letters of Q missing from a vocabulary count as
/// false there.
inline bool is_bisimulation(const Relation& r, const ColoredModel& m1, const ColoredModel& m2,
                            const std::vector<std::string>& q) {
  detail::same_functor(m1, m2);
  if (r.dom_size() != m1.size() || r.cod_size() != m2.size()) throw CarrierMismatch("bisimulation: carriers differ");
  auto qs = detail::sorted_names(q);
  auto c1 = detail::colors_on(m1, qs), c2 = detail::colors_on(m2, qs);
  for (auto [s, t] : r.pairs()) {
    auto us = static_cast<std::size_t>(s), ut = static_cast<std::size_t>(t);
    if (c1[us] != c2[ut]) return false;
    if (!detail::lift_unchecked(m1.functor, r, m1.sigma[us], m2.sigma[ut])) return false;
  }
  return true;
}

/// Largest L_Q-bisimulation, by refining the color-agreement relation.
inline Relation greatest_bisimulation(const ColoredModel& m1, const ColoredModel& m2, const std::vector<std::string>& q) {
  detail::same_functor(m1, m2);
  auto qs = detail::sorted_names(q);
  auto c1 = detail::colors_on(m1, qs), c2 = detail::colors_on(m2, qs);
  Relation r(m1.size(), m2.size());
  for (std::size_t s = 0; s < m1.size(); ++s)
    for (std::size_t t = 0; t < m2.size(); ++t)
      if (c1[s] == c2[t]) r.insert(static_cast<int>(s), static_cast<int>(t));
  for (bool changed = true; changed;) {
    changed = false;
    Relation next = r;
    for (auto [s, t] : r.pairs())
      if (!detail::lift_unchecked(m1.functor, r, m1.sigma[static_cast<std::size_t>(s)],
                                  m2.sigma[static_cast<std::size_t>(t)])) {
        next.erase(s, t);
        changed = true;
      }
    r = std::move(next);
  }
  return r;
}

/// Same carrier and structure; colors cut down to Q, which must be part of
/// the vocabulary.
inline ColoredModel project_model(const ColoredModel& m, const std::vector<std::string>& q) {
  ColoredModel out = m;
  out.props = detail::sorted_names(q);
  for (const auto& p : out.props)
    if (m.prop_index(p) < 0) throw CarrierMismatch("projection: '" + p + "' is not in the vocabulary");
  out.gamma = detail::colors_on(m, out.props);
  return out;
}

/// Bisimilar when the letter p is ignored.
inline bool up_to_p_bisimilar(const PointedModel& a, const PointedModel& b, const std::string& p) {
  auto q = a.model.props;
  q.insert(q.end(), b.model.props.begin(), b.model.props.end());
  q = detail::sorted_names(q);
  q.erase(std::remove(q.begin(), q.end(), p), q.end());
  return greatest_bisimulation(a.model, b.model, q).contains(a.point, b.point);
}

struct Coproduct {
  ColoredModel model;
  /// injections[i][s] is the image of state s of the i-th summand.
  std::vector<std::vector<int>> injections;
};

inline Coproduct coproduct(const std::vector<ColoredModel>& models) {
  if (models.empty()) throw Error("coproduct of an empty list");
  Coproduct out;
  out.model.functor = models[0].functor;
  out.model.props = models[0].props;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& m = models[i];
    detail::same_functor(m, models[0]);
    if (m.props != models[0].props) throw CarrierMismatch("coproduct: vocabularies differ");
    std::vector<int> inj(m.size());
    std::iota(inj.begin(), inj.end(), static_cast<int>(offset));
    for (std::size_t s = 0; s < m.size(); ++s) {
      out.model.state_names.push_back(m.name(s) + "_" + std::to_string(i));
      out.model.sigma.push_back(t_map(m.functor, inj, m.sigma[s]));
      out.model.gamma.push_back(m.gamma[s]);
    }
    out.injections.push_back(std::move(inj));
    offset += m.size();
  }
  return out;
}

namespace detail {

// key used to pick one representative per isomorphism class
inline std::vector<std::pair<TElem, Color>> model_key(const ColoredModel& m, std::span<const int> perm) {
  std::vector<std::pair<TElem, Color>> key(m.size());
  for (std::size_t s = 0; s < m.size(); ++s)
    key[static_cast<std::size_t>(perm[s])] = {t_map(m.functor, perm, m.sigma[s]), m.gamma[s]};
  return key;
}

inline bool is_canonical(const ColoredModel& m) {
  std::vector<int> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto mine = model_key(m, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (model_key(m, perm) < mine) return false;
  return true;
}

}  // namespace detail

/// Visits every model with exactly n states over the vocabulary; stops early
/// when the visitor returns false. With `up_to_iso`, only one model per
/// isomorphism class is visited. Returns false if stopped early.
inline bool for_each_model(const FunctorDescriptor& f, const std::vector<std::string>& props, std::size_t n,
                           const std::function<bool(const ColoredModel&)>& visit, bool up_to_iso = true,
                           std::uint64_t cap = default_cap) {
  auto elems = enumerate_t(f, n, cap);
  std::uint64_t colors = std::uint64_t{1} << props.size();
  std::uint64_t total = detail::sat_pow(detail::sat_mul(elems.size(), colors), n);
  if (total > cap)
    throw CapExceeded("model enumeration over " + std::to_string(n) + " states exceeds the cap of " + std::to_string(cap));
  ColoredModel m;
  m.functor = f;
  m.props = detail::sorted_names(props);
  m.sigma.assign(n, TElem{});
  m.gamma.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) m.state_names.push_back("s" + std::to_string(s));
  std::vector<std::size_t> digit(2 * n, 0);
  if (elems.empty() && n > 0) return true;
  for (;;) {
    for (std::size_t s = 0; s < n; ++s) {
      m.sigma[s] = elems[digit[2 * s]];
      m.gamma[s] = static_cast<Color>(digit[2 * s + 1]);
    }
    if (!up_to_iso || detail::is_canonical(m))
      if (!visit(m)) return false;
    std::size_t i = 0;
    for (; i < 2 * n; ++i) {
      std::size_t radix = i % 2 == 0 ? elems.size() : static_cast<std::size_t>(colors);
      if (++digit[i] < radix) break;
      digit[i] = 0;
    }
    if (i == 2 * n) return true;
  }
}

/// Visits models with 1..max_states states.
inline bool for_each_model_up_to(const FunctorDescriptor& f, const std::vector<std::string>& props,
                                 std::size_t max_states, const std::function<bool(const ColoredModel&)>& visit,
                                 bool up_to_iso = true, std::uint64_t cap = default_cap) {
  for (std::size_t n = 1; n <= max_states; ++n)
    if (!for_each_model(f, props, n, visit, up_to_iso, cap)) return false;
  return true;
}

}  // namespace colfix
