#pragma once

// Finitary set functors with their lax extensions: descriptors, elements of
// T X over finite carriers, the action on maps, supports and lifting.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colfix/error.hh"
#include "colfix/relation.hh"

namespace colfix {

enum class FunctorKind { Powerset, MonotoneNbhd, Identity, Constant, Product, Coproduct, Composition };

inline constexpr std::uint64_t default_cap = 1'000'000;

/// A finitary set functor together with its (implicit) lax extension:
/// Egli-Milner for powerset, the two-sided lifting for monotone
/// neighbourhoods, the diagonal for constants, componentwise liftings for
/// products and coproducts, nested liftings for compositions.
class FunctorDescriptor {
 public:
  static FunctorDescriptor powerset() { return FunctorDescriptor(FunctorKind::Powerset); }
  static FunctorDescriptor monotone() { return FunctorDescriptor(FunctorKind::MonotoneNbhd); }
  static FunctorDescriptor identity() { return FunctorDescriptor(FunctorKind::Identity); }
  static FunctorDescriptor constant(std::vector<std::string> values) {
    if (values.empty()) throw Error("constant functor needs a non-empty value set");
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(values.begin(), values.end()) != values.end())
      throw Error("constant functor values must be distinct");
    FunctorDescriptor f(FunctorKind::Constant);
    f.constants_ = std::move(values);
    return f;
  }
  static FunctorDescriptor product(FunctorDescriptor l, FunctorDescriptor r) {
    return binary(FunctorKind::Product, std::move(l), std::move(r));
  }
  static FunctorDescriptor coproduct(FunctorDescriptor l, FunctorDescriptor r) {
    return binary(FunctorKind::Coproduct, std::move(l), std::move(r));
  }
  /// outer o inner; the inner lifting must be functorial.
  static FunctorDescriptor composition(FunctorDescriptor outer, FunctorDescriptor inner) {
    if (!inner.has_functorial_lifting())
      throw Error("composition requires an inner functor with a functorial lifting");
    return binary(FunctorKind::Composition, std::move(outer), std::move(inner));
  }

  FunctorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& constants() const noexcept { return constants_; }
  const FunctorDescriptor& left() const { return *left_; }
  const FunctorDescriptor& right() const { return *right_; }
  const FunctorDescriptor& outer() const { return *left_; }
  const FunctorDescriptor& inner() const { return *right_; }

  /// True when no monotone-neighbourhood component occurs; all other
  /// shipped liftings distribute over relational composition.
  bool has_functorial_lifting() const {
    switch (kind_) {
      case FunctorKind::MonotoneNbhd: return false;
      case FunctorKind::Product:
      case FunctorKind::Coproduct:
      case FunctorKind::Composition: return left_->has_functorial_lifting() && right_->has_functorial_lifting();
      default: return true;
    }
  }

  friend bool operator==(const FunctorDescriptor& a, const FunctorDescriptor& b) {
    if (a.kind_ != b.kind_ || a.constants_ != b.constants_) return false;
    if (a.left_ && !(*a.left_ == *b.left_)) return false;
    if (a.right_ && !(*a.right_ == *b.right_)) return false;
    return true;
  }

 private:
  explicit FunctorDescriptor(FunctorKind k) : kind_(k) {}
  static FunctorDescriptor binary(FunctorKind k, FunctorDescriptor l, FunctorDescriptor r) {
    FunctorDescriptor f(k);
    f.left_ = std::make_shared<const FunctorDescriptor>(std::move(l));
    f.right_ = std::make_shared<const FunctorDescriptor>(std::move(r));
    return f;
  }

  FunctorKind kind_;
  std::vector<std::string> constants_;
  std::shared_ptr<const FunctorDescriptor> left_, right_;
};

/// An element of T X for a finite carrier X = {0..n-1}, in canonical form.
///
/// Payload by kind:
///   Powerset      atoms: sorted set of carrier elements
///   MonotoneNbhd  gens: sorted antichain of sorted sets (generators of the
///                 upward-closed family)
///   Identity      atoms: the single carrier element
///   Constant      value: index into the constant set
///   Product       parts: {left, right}
///   Coproduct     value: 0 (inl) or 1 (inr); parts: {payload}
///   Composition   parts[0]: outer element over {0..k-1}; parts[1..k]: the
///                 sorted distinct inner elements it mentions
struct TElem {
  FunctorKind kind = FunctorKind::Powerset;
  std::vector<int> atoms;
  std::vector<std::vector<int>> gens;
  int value = 0;
  std::vector<TElem> parts;

  friend bool operator==(const TElem&, const TElem&) = default;
  friend std::strong_ordering operator<=>(const TElem& a, const TElem& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.atoms <=> b.atoms; c != 0) return c;
    if (auto c = a.gens <=> b.gens; c != 0) return c;
    if (auto c = a.value <=> b.value; c != 0) return c;
    if (auto c = a.parts.size() <=> b.parts.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.parts.size(); ++i)
      if (auto c = a.parts[i] <=> b.parts[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

namespace detail {

inline std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Removes duplicates and non-minimal sets; result sorted.
inline std::vector<std::vector<int>> minimize_family(std::vector<std::vector<int>> fam) {
  for (auto& s : fam) s = sorted_unique(std::move(s));
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < fam.size() && minimal; ++j)
      if (i != j && fam[j].size() < fam[i].size() &&
          std::includes(fam[i].begin(), fam[i].end(), fam[j].begin(), fam[j].end()))
        minimal = false;
    if (minimal) out.push_back(fam[i]);
  }
  return out;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}
inline std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

}  // namespace detail

/// |T X| for |X| = n, saturating at 2^64-1.
inline std::uint64_t count_t(const FunctorDescriptor& f, std::uint64_t n) {
  // antichains of P({1..n}) (Dedekind numbers)
  static constexpr std::uint64_t dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354, 2414682040998ULL};
  switch (f.kind()) {
    case FunctorKind::Powerset: return n >= 64 ? std::numeric_limits<std::uint64_t>::max() : (1ULL << n);
    case FunctorKind::MonotoneNbhd: return n < 8 ? dedekind[n] : std::numeric_limits<std::uint64_t>::max();
    case FunctorKind::Identity: return n;
    case FunctorKind::Constant: return f.constants().size();
    case FunctorKind::Product: return detail::sat_mul(count_t(f.left(), n), count_t(f.right(), n));
    case FunctorKind::Coproduct: return detail::sat_add(count_t(f.left(), n), count_t(f.right(), n));
    case FunctorKind::Composition: return count_t(f.outer(), count_t(f.inner(), n));
  }
  return 0;
}

inline std::vector<int> base(const FunctorDescriptor& f, const TElem& t);
inline TElem t_map(const FunctorDescriptor& f, std::span<const int> map, const TElem& t);

namespace detail {

/// Builds the canonical composition element from an outer element over the
/// (possibly redundant) list of inner elements.
inline TElem canonical_composition(const FunctorDescriptor& f, const TElem& outer, const std::vector<TElem>& inner) {
  // dedupe inner list, then drop elements outside the outer support
  std::vector<TElem> sorted = inner;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> to_sorted(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    to_sorted[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), inner[i]) - sorted.begin());
  TElem o = t_map(f.outer(), to_sorted, outer);
  std::vector<int> used = base(f.outer(), o);
  std::vector<int> reindex(sorted.size(), 0);
  TElem result;
  result.kind = FunctorKind::Composition;
  for (std::size_t k = 0; k < used.size(); ++k) reindex[static_cast<std::size_t>(used[k])] = static_cast<int>(k);
  result.parts.push_back(t_map(f.outer(), reindex, o));
  for (int u : used) result.parts.push_back(sorted[static_cast<std::size_t>(u)]);
  return result;
}

inline void antichains(int n, unsigned next, std::vector<unsigned>& chosen, std::vector<std::vector<unsigned>>& out) {
  unsigned limit = 1u << n;
  if (next == limit) {
    out.push_back(chosen);
    return;
  }
  antichains(n, next + 1, chosen, out);
  for (unsigned c : chosen)
    if ((c & next) == c || (c & next) == next) return;
  chosen.push_back(next);
  antichains(n, next + 1, chosen, out);
  chosen.pop_back();
}

inline std::vector<int> mask_to_set(unsigned m) {
  std::vector<int> s;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) s.push_back(i);
  return s;
}

}  // namespace detail

/// All elements of T X for X = {0..n-1}, sorted. Throws CapExceeded when
/// |T X| exceeds `cap`.
inline std::vector<TElem> enumerate_t(const FunctorDescriptor& f, std::size_t n, std::uint64_t cap = default_cap) {
  if (count_t(f, n) > cap)
    throw CapExceeded("enumerating T X over a carrier of size " + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(cap));
  std::vector<TElem> out;
  switch (f.kind()) {
    case FunctorKind::Powerset:
      for (unsigned m = 0; m < (1u << n); ++m) {
        TElem t;
        t.kind = FunctorKind::Powerset;
        t.atoms = detail::mask_to_set(m);
        out.push_back(std::move(t));
      }
      break;
    case FunctorKind::MonotoneNbhd: {
      std::vector<std::vector<unsigned>> acs;
      std::vector<unsigned> chosen;
      detail::antichains(static_cast<int>(n), 0, chosen, acs);
      for (const auto& ac : acs) {
        TElem t;
        t.kind = FunctorKind::MonotoneNbhd;
        for (unsigned m : ac) t.gens.push_back(detail::mask_to_set(m));
        std::sort(t.gens.begin(), t.gens.end());
        out.push_back(std::move(t));
      }
      break;
    }
    case FunctorKind::Identity:
      for (std::size_t i = 0; i < n; ++i) {
        TElem t;
        t.kind = FunctorKind::Identity;
        t.atoms = {static_cast<int>(i)};
        out.push_back(std::move(t));
      }
      break;
    case FunctorKind::Constant:
      for (std::size_t i = 0; i < f.constants().size(); ++i) {
        TElem t;
        t.kind = FunctorKind::Constant;
        t.value = static_cast<int>(i);
        out.push_back(std::move(t));
      }
      break;
    case FunctorKind::Product: {
      auto ls = enumerate_t(f.left(), n, cap);
      auto rs = enumerate_t(f.right(), n, cap);
      for (const auto& l : ls)
        for (const auto& r : rs) {
          TElem t;
          t.kind = FunctorKind::Product;
          t.parts = {l, r};
          out.push_back(std::move(t));
        }
      break;
    }
    case FunctorKind::Coproduct:
      for (int side = 0; side < 2; ++side)
        for (auto& e : enumerate_t(side == 0 ? f.left() : f.right(), n, cap)) {
          TElem t;
          t.kind = FunctorKind::Coproduct;
          t.value = side;
          t.parts = {std::move(e)};
          out.push_back(std::move(t));
        }
      break;
    case FunctorKind::Composition: {
      auto inner = enumerate_t(f.inner(), n, cap);
      for (const auto& o : enumerate_t(f.outer(), inner.size(), cap))
        out.push_back(detail::canonical_composition(f, o, inner));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Least support: the smallest U with t in T U.
inline std::vector<int> base(const FunctorDescriptor& f, const TElem& t) {
  switch (f.kind()) {
    case FunctorKind::Powerset:
    case FunctorKind::Identity: return t.atoms;
    case FunctorKind::MonotoneNbhd: {
      std::vector<int> u;
      for (const auto& g : t.gens) u.insert(u.end(), g.begin(), g.end());
      return detail::sorted_unique(std::move(u));
    }
    case FunctorKind::Constant: return {};
    case FunctorKind::Product: {
      auto u = base(f.left(), t.parts.at(0));
      auto v = base(f.right(), t.parts.at(1));
      u.insert(u.end(), v.begin(), v.end());
      return detail::sorted_unique(std::move(u));
    }
    case FunctorKind::Coproduct: return base(t.value == 0 ? f.left() : f.right(), t.parts.at(0));
    case FunctorKind::Composition: {
      std::vector<int> u;
      for (std::size_t i = 1; i < t.parts.size(); ++i) {
        auto v = base(f.inner(), t.parts[i]);
        u.insert(u.end(), v.begin(), v.end());
      }
      return detail::sorted_unique(std::move(u));
    }
  }
  return {};
}

/// T f applied to t; `map[x]` is f(x). Result is canonical.
inline TElem t_map(const FunctorDescriptor& f, std::span<const int> map, const TElem& t) {
  auto img = [&](int x) {
    if (x < 0 || static_cast<std::size_t>(x) >= map.size()) throw CarrierMismatch("t_map: element outside map domain");
    return map[static_cast<std::size_t>(x)];
  };
  TElem r;
  r.kind = t.kind;
  switch (f.kind()) {
    case FunctorKind::Powerset:
    case FunctorKind::Identity:
      for (int x : t.atoms) r.atoms.push_back(img(x));
      r.atoms = detail::sorted_unique(std::move(r.atoms));
      break;
    case FunctorKind::MonotoneNbhd: {
      std::vector<std::vector<int>> fam;
      for (const auto& g : t.gens) {
        std::vector<int> s;
        for (int x : g) s.push_back(img(x));
        fam.push_back(std::move(s));
      }
      r.gens = detail::minimize_family(std::move(fam));
      break;
    }
    case FunctorKind::Constant: r.value = t.value; break;
    case FunctorKind::Product:
      r.parts = {t_map(f.left(), map, t.parts.at(0)), t_map(f.right(), map, t.parts.at(1))};
      break;
    case FunctorKind::Coproduct:
      r.value = t.value;
      r.parts = {t_map(t.value == 0 ? f.left() : f.right(), map, t.parts.at(0))};
      break;
    case FunctorKind::Composition: {
      std::vector<TElem> inner;
      for (std::size_t i = 1; i < t.parts.size(); ++i) inner.push_back(t_map(f.inner(), map, t.parts[i]));
      return detail::canonical_composition(f, t.parts.at(0), inner);
    }
  }
  return r;
}

/// Checks that t is a canonical element of T X for |X| = n.
inline bool is_valid(const FunctorDescriptor& f, const TElem& t, std::size_t n) {
  if (t.kind != f.kind()) return false;
  auto in_range = [&](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [&](int x) { return x >= 0 && static_cast<std::size_t>(x) < n; });
  };
  switch (f.kind()) {
    case FunctorKind::Powerset:
      return in_range(t.atoms) && detail::sorted_unique(t.atoms) == t.atoms && t.gens.empty() && t.parts.empty();
    case FunctorKind::Identity: return t.atoms.size() == 1 && in_range(t.atoms) && t.parts.empty();
    case FunctorKind::MonotoneNbhd:
      for (const auto& g : t.gens)
        if (!in_range(g)) return false;
      return detail::minimize_family(t.gens) == t.gens && t.atoms.empty();
    case FunctorKind::Constant:
      return t.value >= 0 && static_cast<std::size_t>(t.value) < f.constants().size() && t.atoms.empty();
    case FunctorKind::Product:
      return t.parts.size() == 2 && is_valid(f.left(), t.parts[0], n) && is_valid(f.right(), t.parts[1], n);
    case FunctorKind::Coproduct:
      return (t.value == 0 || t.value == 1) && t.parts.size() == 1 &&
             is_valid(t.value == 0 ? f.left() : f.right(), t.parts[0], n);
    case FunctorKind::Composition: {
      if (t.parts.empty()) return false;
      std::size_t k = t.parts.size() - 1;
      if (!is_valid(f.outer(), t.parts[0], k)) return false;
      if (base(f.outer(), t.parts[0]).size() != k) return false;
      for (std::size_t i = 1; i < t.parts.size(); ++i) {
        if (!is_valid(f.inner(), t.parts[i], n)) return false;
        if (i > 1 && !(t.parts[i - 1] < t.parts[i])) return false;
      }
      return true;
    }
  }
  return false;
}

/// The element of T(base t) as an element over a carrier that maps
/// carrier elements by `embed`; convenience for re-indexing.
inline TElem reindex(const FunctorDescriptor& f, const TElem& t, std::span<const int> embed) {
  return t_map(f, embed, t);
}

/// All maps {0..n-1} -> {0..m-1}, as value vectors.
inline std::vector<std::vector<int>> all_maps(std::size_t n, std::size_t m) {
  std::vector<std::vector<int>> out;
  if (m == 0 && n > 0) return out;
  std::vector<int> f(n, 0);
  for (;;) {
    out.push_back(f);
    std::size_t i = 0;
    while (i < n && static_cast<std::size_t>(++f[i]) == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace colfix

#include "colfix/lifting.hh"
