#pragma once

// Exhaustive small-carrier checks of the lax extension laws.

#include <cstdint>
#include <sstream>

#include "colfix/lifting.hh"
#include "colfix/text.hh"

namespace colfix {

struct LaxReport {
  bool converse = true;
  bool l1_monotone = true;
  bool l2_lax_composition = true;
  bool l3_graph_inclusion = true;
  bool l4_diagonal = true;
  bool lf_equals_tf = true;
  bool quasi_functorial = true;
  /// Informational; not part of passed().
  bool functorial = true;
  std::vector<std::string> counterexamples;

  bool passed() const {
    return converse && l1_monotone && l2_lax_composition && l3_graph_inclusion && l4_diagonal && lf_equals_tf &&
           quasi_functorial;
  }
};

struct SupportReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::string> counterexamples;
};

namespace detail {

struct BitMatrix {
  std::size_t rows = 0, cols = 0, words = 0;
  std::vector<std::uint64_t> data;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), words((c + 63) / 64), data(r * ((c + 63) / 64), 0) {}
  bool get(std::size_t i, std::size_t j) const { return (data[i * words + j / 64] >> (j % 64)) & 1u; }
  void set(std::size_t i, std::size_t j) { data[i * words + j / 64] |= std::uint64_t{1} << (j % 64); }
  BitMatrix compose(const BitMatrix& o) const {
    BitMatrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (get(i, j))
          for (std::size_t w = 0; w < o.words; ++w) r.data[i * r.words + w] |= o.data[j * o.words + w];
    return r;
  }
  bool row_nonempty(std::size_t i) const {
    for (std::size_t w = 0; w < words; ++w)
      if (data[i * words + w]) return true;
    return false;
  }
  bool col_nonempty(std::size_t j) const {
    for (std::size_t i = 0; i < rows; ++i)
      if (get(i, j)) return true;
    return false;
  }
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

inline Relation relation_from_mask(std::uint64_t mask, std::size_t n, std::size_t m) {
  Relation r(n, m);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if ((mask >> (x * m + y)) & 1u) r.insert(static_cast<int>(x), static_cast<int>(y));
  return r;
}

inline std::uint64_t compose_masks(std::uint64_t r, std::uint64_t s, std::size_t n, std::size_t m, std::size_t k) {
  std::uint64_t out = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < m; ++z)
      if ((r >> (x * m + z)) & 1u)
        for (std::size_t y = 0; y < k; ++y)
          if ((s >> (z * k + y)) & 1u) out |= std::uint64_t{1} << (x * k + y);
  return out;
}

inline std::string describe_relation(std::uint64_t mask, std::size_t n, std::size_t m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if ((mask >> (x * m + y)) & 1u) {
        os << (first ? "" : ",") << "(x" << x << ",y" << y << ")";
        first = false;
      }
  os << "}";
  return os.str();
}

/// Precomputed lifted relations for all carriers 0..bound.
class LiftTable {
 public:
  LiftTable(const FunctorDescriptor& f, std::size_t bound, std::uint64_t cap) : f_(f), bound_(bound) {
    if (bound * bound > 24) throw CapExceeded("axiom check bound too large");
    for (std::size_t n = 0; n <= bound; ++n) elems_.push_back(enumerate_t(f, n, cap));
    lifted_.resize((bound + 1) * (bound + 1));
    for (std::size_t n = 0; n <= bound; ++n)
      for (std::size_t m = 0; m <= bound; ++m) {
        auto& tab = lifted_[n * (bound + 1) + m];
        std::uint64_t count = std::uint64_t{1} << (n * m);
        tab.reserve(count);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
          Relation r = relation_from_mask(mask, n, m);
          BitMatrix b(elems_[n].size(), elems_[m].size());
          for (std::size_t i = 0; i < elems_[n].size(); ++i)
            for (std::size_t j = 0; j < elems_[m].size(); ++j)
              if (lift_unchecked(f, r, elems_[n][i], elems_[m][j])) b.set(i, j);
          tab.push_back(std::move(b));
        }
      }
  }
  const std::vector<TElem>& elems(std::size_t n) const { return elems_[n]; }
  const BitMatrix& lifted(std::size_t n, std::size_t m, std::uint64_t mask) const {
    return lifted_[n * (bound_ + 1) + m][mask];
  }
  std::size_t index_of(std::size_t n, const TElem& t) const {
    const auto& es = elems_[n];
    return static_cast<std::size_t>(std::lower_bound(es.begin(), es.end(), t) - es.begin());
  }
  std::string show(const TElem& t, char prefix) const {
    return print_telem(f_, t, [prefix](int i) { return std::string(1, prefix) + std::to_string(i); });
  }

 private:
  const FunctorDescriptor& f_;
  std::size_t bound_;
  std::vector<std::vector<TElem>> elems_;
  std::vector<std::vector<BitMatrix>> lifted_;
};

inline std::uint64_t graph_mask(const std::vector<int>& f, std::size_t m) {
  std::uint64_t mask = 0;
  for (std::size_t x = 0; x < f.size(); ++x) mask |= std::uint64_t{1} << (x * m + static_cast<std::size_t>(f[x]));
  return mask;
}

}  // namespace detail

/// Checks every lax extension law over all relations between carriers of
/// size at most `bound`.
inline LaxReport check_lax_axioms(const FunctorDescriptor& f, std::size_t bound, std::uint64_t cap = default_cap) {
  using detail::BitMatrix;
  detail::LiftTable table(f, bound, cap);
  LaxReport rep;
  auto note = [&](bool& flag, const std::string& what) {
    if (flag) rep.counterexamples.push_back(what);
    flag = false;
  };

  for (std::size_t n = 0; n <= bound; ++n)
    for (std::size_t m = 0; m <= bound; ++m) {
      const auto& tn = table.elems(n);
      const auto& tm = table.elems(m);
      std::uint64_t count = std::uint64_t{1} << (n * m);
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        const BitMatrix& lr = table.lifted(n, m, mask);
        // converse
        std::uint64_t conv = 0;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < m; ++y)
            if ((mask >> (x * m + y)) & 1u) conv |= std::uint64_t{1} << (y * n + x);
        const BitMatrix& lc = table.lifted(m, n, conv);
        for (std::size_t i = 0; i < tn.size() && rep.converse; ++i)
          for (std::size_t j = 0; j < tm.size(); ++j)
            if (lr.get(i, j) != lc.get(j, i)) {
              note(rep.converse, "converse: R=" + detail::describe_relation(mask, n, m) + " at " + table.show(tn[i], 'x') +
                                     " / " + table.show(tm[j], 'y'));
              break;
            }
        // L1 on one-pair extensions, which suffices by transitivity
        for (std::size_t b = 0; b < n * m && rep.l1_monotone; ++b) {
          std::uint64_t bigger = mask | (std::uint64_t{1} << b);
          if (bigger == mask) continue;
          const BitMatrix& lb = table.lifted(n, m, bigger);
          for (std::size_t w = 0; w < lr.data.size(); ++w)
            if (lr.data[w] & ~lb.data[w]) {
              note(rep.l1_monotone, "L1: R=" + detail::describe_relation(mask, n, m) + " R'=" +
                                        detail::describe_relation(bigger, n, m));
              break;
            }
        }
      }
      // L3, L4 consequence Lf = Tf
      for (const auto& fmap : all_maps(n, m)) {
        const BitMatrix& lf = table.lifted(n, m, detail::graph_mask(fmap, m));
        for (std::size_t i = 0; i < tn.size(); ++i) {
          std::size_t j = table.index_of(m, t_map(f, fmap, tn[i]));
          if (!lf.get(i, j) && rep.l3_graph_inclusion)
            note(rep.l3_graph_inclusion, "L3: " + table.show(tn[i], 'x') + " not related to its image");
          for (std::size_t k = 0; k < tm.size(); ++k)
            if (k != j && lf.get(i, k) && rep.lf_equals_tf) {
              note(rep.lf_equals_tf, "Lf=Tf: " + table.show(tn[i], 'x') + " related to " + table.show(tm[k], 'y'));
              break;
            }
        }
      }
    }
  // L4
  for (std::size_t n = 0; n <= bound && rep.l4_diagonal; ++n) {
    std::vector<int> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    const BitMatrix& ld = table.lifted(n, n, detail::graph_mask(id, n));
    for (std::size_t i = 0; i < table.elems(n).size(); ++i)
      for (std::size_t j = 0; j < table.elems(n).size(); ++j)
        if (i != j && ld.get(i, j) && rep.l4_diagonal)
          note(rep.l4_diagonal, "L4: " + table.show(table.elems(n)[i], 'x') + " related to " +
                                    table.show(table.elems(n)[j], 'x') + " by the lifted diagonal");
  }
  // L2, quasi-functoriality and functoriality over triples
  for (std::size_t n = 0; n <= bound; ++n)
    for (std::size_t m = 0; m <= bound; ++m)
      for (std::size_t k = 0; k <= bound; ++k) {
        std::uint64_t cr = std::uint64_t{1} << (n * m), cs = std::uint64_t{1} << (m * k);
        for (std::uint64_t r = 0; r < cr; ++r) {
          const BitMatrix& lr = table.lifted(n, m, r);
          for (std::uint64_t s = 0; s < cs; ++s) {
            const BitMatrix& ls = table.lifted(m, k, s);
            BitMatrix comp = lr.compose(ls);
            const BitMatrix& lrs = table.lifted(n, k, detail::compose_masks(r, s, n, m, k));
            if (!(comp == lrs)) rep.functorial = false;
            for (std::size_t i = 0; i < comp.rows; ++i) {
              bool in_dom = lr.row_nonempty(i);
              for (std::size_t j = 0; j < comp.cols; ++j) {
                bool c = comp.get(i, j), l = lrs.get(i, j);
                if (c && !l && rep.l2_lax_composition)
                  note(rep.l2_lax_composition, "L2: R=" + detail::describe_relation(r, n, m) +
                                                   " S=" + detail::describe_relation(s, m, k));
                if (l && !c && in_dom && ls.col_nonempty(j) && rep.quasi_functorial)
                  note(rep.quasi_functorial, "quasi-functoriality: R=" + detail::describe_relation(r, n, m) +
                                                 " S=" + detail::describe_relation(s, m, k) + " at " +
                                                 table.show(table.elems(n)[i], 'x') + " / " +
                                                 table.show(table.elems(k)[j], 'y'));
              }
            }
          }
        }
      }
  return rep;
}

/// Checks that lifting only depends on the relation restricted to
/// base(t) x base(u).
inline SupportReport check_support_restriction(const FunctorDescriptor& f, std::size_t bound,
                                               std::uint64_t cap = default_cap) {
  detail::LiftTable table(f, bound, cap);
  SupportReport rep;
  for (std::size_t n = 0; n <= bound; ++n)
    for (std::size_t m = 0; m <= bound; ++m) {
      const auto& tn = table.elems(n);
      const auto& tm = table.elems(m);
      for (std::size_t i = 0; i < tn.size(); ++i)
        for (std::size_t j = 0; j < tm.size(); ++j) {
          std::uint64_t keep = 0;
          for (int x : base(f, tn[i]))
            for (int y : base(f, tm[j])) keep |= std::uint64_t{1} << (static_cast<std::size_t>(x) * m + static_cast<std::size_t>(y));
          std::uint64_t count = std::uint64_t{1} << (n * m);
          for (std::uint64_t mask = 0; mask < count; ++mask) {
            ++rep.checked;
            if (table.lifted(n, m, mask).get(i, j) != table.lifted(n, m, mask & keep).get(i, j)) {
              if (rep.passed)
                rep.counterexamples.push_back("R=" + detail::describe_relation(mask, n, m) + " at " +
                                              table.show(tn[i], 'x') + " / " + table.show(tm[j], 'y'));
              rep.passed = false;
            }
          }
        }
    }
  return rep;
}

}  // namespace colfix
