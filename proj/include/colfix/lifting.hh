#pragma once

// Lifting membership, minimal lifting witnesses and middle elements for
// composed relations.

#include <functional>

#include "colfix/functor.hh"

namespace colfix {

namespace detail {

inline bool lift_unchecked(const FunctorDescriptor& f, const Relation& r, const TElem& t, const TElem& u);

// forward image R[A]
inline std::vector<int> image(const Relation& r, const std::vector<int>& a) {
  std::vector<int> out;
  for (std::size_t y = 0; y < r.cod_size(); ++y)
    for (int x : a)
      if (r.contains(static_cast<std::size_t>(x), y)) {
        out.push_back(static_cast<int>(y));
        break;
      }
  return out;
}

// preimage R°[B]
inline std::vector<int> preimage(const Relation& r, const std::vector<int>& b) {
  std::vector<int> out;
  for (std::size_t x = 0; x < r.dom_size(); ++x)
    for (int y : b)
      if (r.contains(x, static_cast<std::size_t>(y))) {
        out.push_back(static_cast<int>(x));
        break;
      }
  return out;
}

// every a in A has an R-successor in B
inline bool forward_covered(const Relation& r, const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a) {
    bool ok = false;
    for (int y : b)
      if (r.contains(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

// every b in B has an R-predecessor in A
inline bool backward_covered(const Relation& r, const std::vector<int>& a, const std::vector<int>& b) {
  for (int y : b) {
    bool ok = false;
    for (int x : a)
      if (r.contains(static_cast<std::size_t>(x), static_cast<std::size_t>(y))) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

inline Relation inner_lifted(const FunctorDescriptor& inner, const Relation& r, const TElem& t, const TElem& u) {
  std::size_t k = t.parts.size() - 1, l = u.parts.size() - 1;
  Relation lifted(k, l);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < l; ++j)
      if (lift_unchecked(inner, r, t.parts[i + 1], u.parts[j + 1])) lifted.insert(i, j);
  return lifted;
}

inline bool lift_unchecked(const FunctorDescriptor& f, const Relation& r, const TElem& t, const TElem& u) {
  switch (f.kind()) {
    case FunctorKind::Powerset:
      return forward_covered(r, t.atoms, u.atoms) && backward_covered(r, t.atoms, u.atoms);
    case FunctorKind::MonotoneNbhd:
      for (const auto& a : t.gens) {
        bool ok = false;
        for (const auto& b : u.gens)
          if (backward_covered(r, a, b)) {
            ok = true;
            break;
          }
        if (!ok) return false;
      }
      for (const auto& b : u.gens) {
        bool ok = false;
        for (const auto& a : t.gens)
          if (forward_covered(r, a, b)) {
            ok = true;
            break;
          }
        if (!ok) return false;
      }
      return true;
    case FunctorKind::Identity:
      return r.contains(static_cast<std::size_t>(t.atoms.at(0)), static_cast<std::size_t>(u.atoms.at(0)));
    case FunctorKind::Constant: return t.value == u.value;
    case FunctorKind::Product:
      return lift_unchecked(f.left(), r, t.parts[0], u.parts[0]) && lift_unchecked(f.right(), r, t.parts[1], u.parts[1]);
    case FunctorKind::Coproduct:
      return t.value == u.value && lift_unchecked(t.value == 0 ? f.left() : f.right(), r, t.parts[0], u.parts[0]);
    case FunctorKind::Composition:
      return lift_unchecked(f.outer(), inner_lifted(f.inner(), r, t, u), t.parts[0], u.parts[0]);
  }
  return false;
}

inline void require_over(const FunctorDescriptor& f, const TElem& t, std::size_t n, const char* what) {
  if (!is_valid(f, t, n)) throw CarrierMismatch(std::string(what) + " is not an element over the expected carrier");
}

}  // namespace detail

/// (t, u) in L R.
inline bool lift_member(const FunctorDescriptor& f, const Relation& r, const TElem& t, const TElem& u) {
  detail::require_over(f, t, r.dom_size(), "left element");
  detail::require_over(f, u, r.cod_size(), "right element");
  return detail::lift_unchecked(f, r, t, u);
}

/// All subset-minimal Z within base(t) x base(u) with (t, u) in L Z.
/// Relations live over dom x cod.
inline std::vector<Relation> minimal_witnesses(const FunctorDescriptor& f, const TElem& t, const TElem& u,
                                               std::size_t dom, std::size_t cod) {
  detail::require_over(f, t, dom, "left element");
  detail::require_over(f, u, cod, "right element");
  std::vector<std::pair<int, int>> cand;
  for (int x : base(f, t))
    for (int y : base(f, u)) cand.emplace_back(x, y);

  std::vector<Relation> found;
  Relation current(dom, cod);
  Relation upper(dom, cod);
  for (auto [x, y] : cand) upper.insert(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  if (!detail::lift_unchecked(f, upper, t, u)) return {};

  // include/exclude search; `upper` is current plus the undecided pairs
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (detail::lift_unchecked(f, current, t, u)) {
      found.push_back(current);
      return;
    }
    if (i == cand.size()) return;
    auto [x, y] = cand[i];
    auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
    current.insert(ux, uy);
    go(i + 1);
    current.erase(ux, uy);
    upper.erase(ux, uy);
    if (detail::lift_unchecked(f, upper, t, u)) go(i + 1);
    upper.insert(ux, uy);
  };
  go(0);

  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  std::vector<Relation> minimal;
  for (const auto& z : found) {
    bool keep = true;
    for (const auto& w : found)
      if (!(w == z) && w.subset_of(z)) {
        keep = false;
        break;
      }
    if (keep) minimal.push_back(z);
  }
  return minimal;
}

namespace detail {

inline std::optional<TElem> middle_unchecked(const FunctorDescriptor& f, const Relation& r, const Relation& s,
                                             const TElem& t, const TElem& u, std::uint64_t cap);

inline std::optional<TElem> middle_by_search(const FunctorDescriptor& f, const Relation& r, const Relation& s,
                                             const TElem& t, const TElem& u, std::uint64_t cap) {
  // restrict to the part of the middle carrier reachable from both sides
  auto from_t = image(r, base(f, t));
  auto from_u = preimage(s, base(f, u));
  std::vector<int> region;
  std::set_intersection(from_t.begin(), from_t.end(), from_u.begin(), from_u.end(), std::back_inserter(region));
  std::vector<int> embed = region;
  for (const auto& cand : enumerate_t(f, region.size(), cap)) {
    TElem xi = t_map(f, embed, cand);
    if (lift_unchecked(f, r, t, xi) && lift_unchecked(f, s, xi, u)) return xi;
  }
  return std::nullopt;
}

inline std::optional<TElem> middle_unchecked(const FunctorDescriptor& f, const Relation& r, const Relation& s,
                                             const TElem& t, const TElem& u, std::uint64_t cap) {
  TElem xi;
  xi.kind = f.kind();
  switch (f.kind()) {
    case FunctorKind::Powerset: {
      auto a = image(r, t.atoms);
      auto b = preimage(s, u.atoms);
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(xi.atoms));
      break;
    }
    case FunctorKind::MonotoneNbhd: {
      std::vector<std::vector<int>> fam;
      for (const auto& a : t.gens) fam.push_back(image(r, a));
      for (const auto& b : u.gens) fam.push_back(preimage(s, b));
      xi.gens = minimize_family(std::move(fam));
      break;
    }
    case FunctorKind::Identity: {
      auto x = static_cast<std::size_t>(t.atoms.at(0)), y = static_cast<std::size_t>(u.atoms.at(0));
      for (std::size_t m = 0; m < r.cod_size(); ++m)
        if (r.contains(x, m) && s.contains(m, y)) {
          xi.atoms = {static_cast<int>(m)};
          return xi;
        }
      return std::nullopt;
    }
    case FunctorKind::Constant:
      if (t.value != u.value) return std::nullopt;
      xi.value = t.value;
      return xi;
    case FunctorKind::Product: {
      auto l = middle_unchecked(f.left(), r, s, t.parts[0], u.parts[0], cap);
      if (!l) return std::nullopt;
      auto rr = middle_unchecked(f.right(), r, s, t.parts[1], u.parts[1], cap);
      if (!rr) return std::nullopt;
      xi.parts = {*l, *rr};
      return xi;
    }
    case FunctorKind::Coproduct: {
      if (t.value != u.value) return std::nullopt;
      auto m = middle_unchecked(t.value == 0 ? f.left() : f.right(), r, s, t.parts[0], u.parts[0], cap);
      if (!m) return std::nullopt;
      xi.value = t.value;
      xi.parts = {*m};
      return xi;
    }
    case FunctorKind::Composition: {
      // candidate inner middles between every pair of inner elements
      std::vector<TElem> mids;
      for (std::size_t i = 1; i < t.parts.size(); ++i)
        for (std::size_t j = 1; j < u.parts.size(); ++j)
          if (auto m = middle_unchecked(f.inner(), r, s, t.parts[i], u.parts[j], cap)) mids.push_back(*m);
      std::sort(mids.begin(), mids.end());
      mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
      Relation lr(t.parts.size() - 1, mids.size()), ls(mids.size(), u.parts.size() - 1);
      for (std::size_t i = 1; i < t.parts.size(); ++i)
        for (std::size_t k = 0; k < mids.size(); ++k)
          if (lift_unchecked(f.inner(), r, t.parts[i], mids[k])) lr.insert(i - 1, k);
      for (std::size_t k = 0; k < mids.size(); ++k)
        for (std::size_t j = 1; j < u.parts.size(); ++j)
          if (lift_unchecked(f.inner(), s, mids[k], u.parts[j])) ls.insert(k, j - 1);
      auto outer = middle_unchecked(f.outer(), lr, ls, t.parts[0], u.parts[0], cap);
      if (outer) {
        TElem cand = canonical_composition(f, *outer, mids);
        if (lift_unchecked(f, r, t, cand) && lift_unchecked(f, s, cand, u)) return cand;
      }
      return middle_by_search(f, r, s, t, u, cap);
    }
  }
  if (lift_unchecked(f, r, t, xi) && lift_unchecked(f, s, xi, u)) return xi;
  return std::nullopt;
}

}  // namespace detail

/// Given R: X -> U and S: U -> Y, returns some xi in T U with (t, xi) in L R
/// and (xi, u) in L S, or nothing when none was found. Whenever (t, u) is in
/// L(R;S), t in Dom(L R) and u in Rng(L S), quasi-functoriality guarantees one.
inline std::optional<TElem> find_middle(const FunctorDescriptor& f, const Relation& r, const Relation& s,
                                        const TElem& t, const TElem& u, std::uint64_t cap = default_cap) {
  if (r.cod_size() != s.dom_size()) throw CarrierMismatch("find_middle: relations do not compose");
  detail::require_over(f, t, r.dom_size(), "left element");
  detail::require_over(f, u, s.cod_size(), "right element");
  return detail::middle_unchecked(f, r, s, t, u, cap);
}

}  // namespace colfix
