#pragma once

// Formulas with atoms, negation, finite disjunction, nabla and mu, plus the
// concrete syntax.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "colfix/text.hh"

namespace colfix {

enum class FormulaKind { Atom, Neg, Or, Nabla, Mu };

class Formula;

namespace detail {
struct FormulaNode;
}

/// Immutable, shared formula handle. Equality is structural on the
/// canonical form built by the smart constructors below.
class Formula {
 public:
  Formula() = default;

  FormulaKind kind() const;
  /// Atom letter or Mu-bound letter.
  const std::string& name() const;
  /// Neg: {sub}; Or: the disjuncts; Nabla: the sorted base; Mu: {body}.
  const std::vector<Formula>& args() const;
  /// Nabla payload over indices into args().
  const TElem& shape() const;
  const FunctorDescriptor& functor() const;
  const Formula& arg(std::size_t i) const { return args().at(i); }
  const Formula& body() const { return arg(0); }

  std::uint64_t hash() const;
  /// Tree size (saturating), counting shared subterms once per occurrence.
  std::size_t size() const;
  /// Letters occurring free, sorted.
  const std::vector<std::string>& free_names() const;
  bool occurs_free(const std::string& p) const {
    const auto& f = free_names();
    return std::binary_search(f.begin(), f.end(), p);
  }

  const detail::FormulaNode* node() const { return node_.get(); }
  explicit operator bool() const { return static_cast<bool>(node_); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  friend Formula make_formula(detail::FormulaNode&&);
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {

struct FormulaNode {
  FormulaKind kind = FormulaKind::Atom;
  std::string name;
  std::vector<Formula> args;
  TElem shape;
  std::shared_ptr<const FunctorDescriptor> functor;
  std::uint64_t hash = 0;
  std::size_t size = 1;
  std::vector<std::string> free;
};

inline void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xffu;
    h *= 1099511628211ULL;
  }
}
inline void fnv(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  fnv(h, s.size());
}
inline void fnv(std::uint64_t& h, const TElem& t) {
  fnv(h, static_cast<std::uint64_t>(t.kind));
  fnv(h, static_cast<std::uint64_t>(t.value));
  for (int x : t.atoms) fnv(h, static_cast<std::uint64_t>(x));
  fnv(h, 0xabcdULL);
  for (const auto& g : t.gens) {
    for (int x : g) fnv(h, static_cast<std::uint64_t>(x));
    fnv(h, 0xfeedULL);
  }
  for (const auto& p : t.parts) fnv(h, p);
  fnv(h, t.parts.size());
}

}  // namespace detail

inline Formula make_formula(detail::FormulaNode&& n) {
  std::uint64_t h = 14695981039346656037ULL;
  detail::fnv(h, static_cast<std::uint64_t>(n.kind));
  detail::fnv(h, n.name);
  std::size_t size = 1;
  std::vector<std::string> free;
  for (const auto& a : n.args) {
    detail::fnv(h, a.hash());
    size = size + a.size() < size ? std::numeric_limits<std::size_t>::max() : size + a.size();
    free.insert(free.end(), a.free_names().begin(), a.free_names().end());
  }
  if (n.kind == FormulaKind::Nabla) detail::fnv(h, n.shape);
  if (n.kind == FormulaKind::Atom) free.push_back(n.name);
  std::sort(free.begin(), free.end());
  free.erase(std::unique(free.begin(), free.end()), free.end());
  if (n.kind == FormulaKind::Mu) free.erase(std::remove(free.begin(), free.end(), n.name), free.end());
  n.hash = h;
  n.size = size;
  n.free = std::move(free);
  Formula f;
  f.node_ = std::make_shared<const detail::FormulaNode>(std::move(n));
  return f;
}

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Formula>& Formula::args() const { return node_->args; }
inline const TElem& Formula::shape() const { return node_->shape; }
inline const FunctorDescriptor& Formula::functor() const {
  if (!node_->functor) throw Error("formula has no functor payload");
  return *node_->functor;
}
inline std::uint64_t Formula::hash() const { return node_->hash; }
inline std::size_t Formula::size() const { return node_->size; }
inline const std::vector<std::string>& Formula::free_names() const { return node_->free; }

inline std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.hash() <=> b.hash(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  if (a.kind() == FormulaKind::Nabla) {
    if (auto c = a.shape() <=> b.shape(); c != 0) return c;
    if (!(a.functor() == b.functor())) return print_functor(a.functor()) <=> print_functor(b.functor());
  }
  return std::strong_ordering::equal;
}
inline bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return static_cast<std::size_t>(f.hash()); }
};

// ---- smart constructors ----

inline Formula atom(const std::string& p) {
  detail::FormulaNode n;
  n.kind = FormulaKind::Atom;
  n.name = p;
  return make_formula(std::move(n));
}

inline Formula neg(const Formula& a) {
  if (a.kind() == FormulaKind::Neg) return a.body();
  detail::FormulaNode n;
  n.kind = FormulaKind::Neg;
  n.args = {a};
  return make_formula(std::move(n));
}

/// Finite disjunction; disjuncts are sorted and deduplicated, false
/// disjuncts dropped, a true disjunct absorbs the rest and a single disjunct
/// is returned as is.
inline Formula disj(std::vector<Formula> as) {
  auto is_false = [](const Formula& a) { return a.kind() == FormulaKind::Or && a.args().empty(); };
  as.erase(std::remove_if(as.begin(), as.end(), is_false), as.end());
  for (const auto& a : as)
    if (a.kind() == FormulaKind::Neg && is_false(a.body())) return a;
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  if (as.size() == 1) return as[0];
  detail::FormulaNode n;
  n.kind = FormulaKind::Or;
  n.args = std::move(as);
  return make_formula(std::move(n));
}
inline Formula disj(const Formula& a, const Formula& b) { return disj(std::vector<Formula>{a, b}); }
inline Formula bot() { return disj(std::vector<Formula>{}); }
inline Formula top() { return neg(bot()); }
inline Formula conj(std::vector<Formula> as) {
  for (auto& a : as) a = neg(a);
  return neg(disj(std::move(as)));
}
inline Formula conj(const Formula& a, const Formula& b) { return conj(std::vector<Formula>{a, b}); }

/// Nabla over `shape`, an element of T over indices into `carrier`. Equal
/// carrier formulas are merged and unused ones dropped.
inline Formula nabla(const FunctorDescriptor& f, const TElem& shape, const std::vector<Formula>& carrier) {
  if (!is_valid(f, shape, carrier.size())) throw CarrierMismatch("nabla payload is not over its formula carrier");
  std::vector<Formula> used;
  for (int i : base(f, shape)) used.push_back(carrier[static_cast<std::size_t>(i)]);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<int> to(carrier.size(), 0);
  for (std::size_t i = 0; i < carrier.size(); ++i) {
    auto it = std::lower_bound(used.begin(), used.end(), carrier[i]);
    if (it != used.end() && *it == carrier[i]) to[i] = static_cast<int>(it - used.begin());
  }
  detail::FormulaNode n;
  n.kind = FormulaKind::Nabla;
  n.shape = t_map(f, to, shape);
  n.args = std::move(used);
  n.functor = std::make_shared<const FunctorDescriptor>(f);
  return make_formula(std::move(n));
}

namespace detail {

// true when every free occurrence of p in a sits under an even number of
// negations
inline bool positive_in(const Formula& a, const std::string& p, bool negated,
                        std::unordered_map<const FormulaNode*, int>& seen) {
  if (!a.occurs_free(p)) return true;
  int bit = negated ? 2 : 1;
  int& mark = seen[a.node()];
  if (mark & bit) return true;
  mark |= bit;
  switch (a.kind()) {
    case FormulaKind::Atom: return !negated;
    case FormulaKind::Neg: return positive_in(a.body(), p, !negated, seen);
    case FormulaKind::Mu:
      return a.name() == p || positive_in(a.body(), p, negated, seen);
    default:
      for (const auto& b : a.args())
        if (!positive_in(b, p, negated, seen)) return false;
      return true;
  }
}

}  // namespace detail

inline bool is_positive_in(const Formula& a, const std::string& p) {
  std::unordered_map<const detail::FormulaNode*, int> seen;
  return detail::positive_in(a, p, false, seen);
}

/// mu p. body; throws PositivityError when p occurs negatively.
inline Formula mu(const std::string& p, const Formula& body) {
  if (!is_positive_in(body, p)) throw PositivityError("'" + p + "' occurs under an odd number of negations");
  detail::FormulaNode n;
  n.kind = FormulaKind::Mu;
  n.name = p;
  n.args = {body};
  return make_formula(std::move(n));
}

/// A name not in `avoid`, derived from `base`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

namespace detail {

inline Formula rebuild(const Formula& a, std::vector<Formula> args) {
  switch (a.kind()) {
    case FormulaKind::Atom: return a;
    case FormulaKind::Neg: return neg(args[0]);
    case FormulaKind::Or: return disj(std::move(args));
    case FormulaKind::Nabla: return nabla(a.functor(), a.shape(), args);
    case FormulaKind::Mu: return mu(a.name(), args[0]);
  }
  return a;
}

class Substituter {
 public:
  Substituter(std::string p, Formula b) : p_(std::move(p)), b_(std::move(b)) {}

  Formula run(const Formula& a) {
    if (!a.occurs_free(p_)) return a;
    if (auto it = memo_.find(a.node()); it != memo_.end()) return it->second;
    Formula out;
    if (a.kind() == FormulaKind::Atom) {
      out = b_;
    } else if (a.kind() == FormulaKind::Mu && b_.occurs_free(a.name())) {
      // rename the binder to avoid capture
      std::set<std::string> avoid(b_.free_names().begin(), b_.free_names().end());
      avoid.insert(a.body().free_names().begin(), a.body().free_names().end());
      avoid.insert(p_);
      std::string y = fresh_name(a.name(), avoid);
      Formula renamed = Substituter(a.name(), atom(y)).run(a.body());
      out = mu(y, run(renamed));
    } else {
      std::vector<Formula> args;
      for (const auto& c : a.args()) args.push_back(run(c));
      out = rebuild(a, std::move(args));
    }
    memo_.emplace(a.node(), out);
    return out;
  }

 private:
  std::string p_;
  Formula b_;
  std::unordered_map<const FormulaNode*, Formula> memo_;
};

}  // namespace detail

/// a[p := b], capture avoiding.
inline Formula subst(const Formula& a, const std::string& p, const Formula& b) {
  return detail::Substituter(p, b).run(a);
}

/// nu p. a, defined as ~mu p. ~a[p := ~p].
inline Formula nu(const std::string& p, const Formula& a) { return neg(mu(p, neg(subst(a, p, neg(atom(p)))))); }

// ---- printing ----

inline std::string to_string(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Atom: return a.name();
    case FormulaKind::Neg: {
      const Formula& b = a.body();
      if (b.kind() == FormulaKind::Or && b.args().empty()) return "true";
      if (b.kind() == FormulaKind::Or && b.args().size() == 2 && b.arg(0).kind() == FormulaKind::Neg &&
          b.arg(1).kind() == FormulaKind::Neg)
        return "(" + to_string(b.arg(0).body()) + " /\\ " + to_string(b.arg(1).body()) + ")";
      if (b.kind() == FormulaKind::Mu)
        return "nu " + b.name() + ". " + to_string(neg(subst(b.body(), b.name(), neg(atom(b.name())))));
      return "~" + to_string(b);
    }
    case FormulaKind::Or: {
      if (a.args().empty()) return "false";
      if (a.args().size() == 2) return "(" + to_string(a.arg(0)) + " \\/ " + to_string(a.arg(1)) + ")";
      std::string s = "\\/{";
      for (std::size_t i = 0; i < a.args().size(); ++i) s += (i ? ", " : "") + to_string(a.arg(i));
      return s + "}";
    }
    case FormulaKind::Nabla:
      return "nabla " + print_telem(a.functor(), a.shape(), [&](int i) { return to_string(a.arg(static_cast<std::size_t>(i))); });
    case FormulaKind::Mu: return "mu " + a.name() + ". " + to_string(a.body());
  }
  return {};
}

// ---- parsing ----

namespace detail {

inline bool is_keyword(const std::string& s) {
  return s == "mu" || s == "nu" || s == "nabla" || s == "true" || s == "false";
}

inline Formula parse_term(Lexer& lx, const FunctorDescriptor& f) {
  if (lx.accept("~")) return neg(parse_term(lx, f));
  if (lx.accept("\\/")) {
    lx.expect("{");
    std::vector<Formula> as;
    if (!lx.accept("}")) {
      do as.push_back(parse_term(lx, f));
      while (lx.accept(","));
      lx.expect("}");
    }
    return disj(std::move(as));
  }
  if (lx.accept("(")) {
    std::vector<Formula> as{parse_term(lx, f)};
    int op = 0;  // 1 or, 2 and
    for (;;) {
      int here = lx.accept("\\/") ? 1 : lx.accept("/\\") ? 2 : 0;
      if (here == 0) break;
      if (op != 0 && here != op) lx.fail("mixed connectives need parentheses");
      op = here;
      as.push_back(parse_term(lx, f));
    }
    lx.expect(")");
    if (op == 0) return as[0];
    return op == 1 ? disj(std::move(as)) : conj(std::move(as));
  }
  std::size_t at = lx.position();
  if (!std::isalpha(static_cast<unsigned char>(lx.peek()))) lx.fail("expected a formula");
  std::string id = lx.identifier();
  if (id == "true") return top();
  if (id == "false") return bot();
  if (id == "mu" || id == "nu") {
    std::size_t vat = lx.position();
    std::string x = lx.identifier();
    if (is_keyword(x)) throw ParseError("reserved word '" + x + "' used as a variable", vat);
    lx.expect(".");
    Formula body = parse_term(lx, f);
    try {
      return id == "mu" ? mu(x, body) : nu(x, body);
    } catch (const PositivityError& e) {
      throw PositivityError(std::string(e.what()) + " (binder at offset " + std::to_string(at) + ")");
    }
  }
  if (id == "nabla") {
    std::vector<Formula> carrier;
    TElem shape = parse_telem(f, lx, [&](Lexer& l) {
      carrier.push_back(parse_term(l, f));
      return static_cast<int>(carrier.size() - 1);
    });
    return nabla(f, shape, carrier);
  }
  return atom(id);
}

}  // namespace detail

/// Parses a formula; nabla payloads are read as elements of T for `f`.
inline Formula parse_formula(std::string_view src, const FunctorDescriptor& f) {
  Lexer lx(src);
  Formula a = detail::parse_term(lx, f);
  lx.expect_end();
  return a;
}

}  // namespace colfix
