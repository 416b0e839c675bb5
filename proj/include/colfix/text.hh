#pragma once

// Shared lexer and the textual form of T-elements.

#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "colfix/functor.hh"

namespace colfix {

/// Small hand-rolled scanner. Whitespace and `#` line comments are skipped
/// before every token.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::size_t position() const noexcept { return pos_; }
  void skip() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }
  bool at_end() {
    skip();
    return pos_ >= src_.size();
  }
  char peek() {
    skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool looking_at(std::string_view tok) {
    skip();
    return src_.substr(pos_, tok.size()) == tok;
  }
  /// Like looking_at but also requires a keyword boundary.
  bool looking_at_word(std::string_view word) {
    if (!looking_at(word)) return false;
    std::size_t end = pos_ + word.size();
    return end >= src_.size() || !is_ident_char(src_[end]);
  }
  bool accept(std::string_view tok) {
    if (!looking_at(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  bool accept_word(std::string_view word) {
    if (!looking_at_word(word)) return false;
    pos_ += word.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_]))) fail("expected identifier");
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }
  long long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && src_[start] == '-')) fail("expected integer");
    return std::stoll(std::string(src_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) {
    skip();
    throw ParseError(what, pos_);
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

using LeafPrinter = std::function<std::string(int)>;
/// Parses one carrier element and returns its index.
using LeafParser = std::function<int(Lexer&)>;

inline std::string print_telem(const FunctorDescriptor& f, const TElem& t, const LeafPrinter& leaf) {
  auto set = [&](const std::vector<int>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + leaf(xs[i]);
    return s + "}";
  };
  switch (f.kind()) {
    case FunctorKind::Powerset: return set(t.atoms);
    case FunctorKind::MonotoneNbhd: {
      std::string s = "{";
      for (std::size_t i = 0; i < t.gens.size(); ++i) s += (i ? ", " : "") + set(t.gens[i]);
      return s + "}";
    }
    case FunctorKind::Identity: return "id:" + leaf(t.atoms.at(0));
    case FunctorKind::Constant: return "const:" + f.constants().at(static_cast<std::size_t>(t.value));
    case FunctorKind::Product:
      return "(" + print_telem(f.left(), t.parts[0], leaf) + ", " + print_telem(f.right(), t.parts[1], leaf) + ")";
    case FunctorKind::Coproduct:
      return (t.value == 0 ? "inl:" : "inr:") + print_telem(t.value == 0 ? f.left() : f.right(), t.parts[0], leaf);
    case FunctorKind::Composition:
      return print_telem(f.outer(), t.parts[0], [&](int i) {
        return print_telem(f.inner(), t.parts.at(static_cast<std::size_t>(i) + 1), leaf);
      });
  }
  return {};
}

/// Parses the textual form directed by the functor; the result is canonical.
inline TElem parse_telem(const FunctorDescriptor& f, Lexer& lx, const LeafParser& leaf) {
  auto set = [&] {
    std::vector<int> xs;
    lx.expect("{");
    if (!lx.accept("}")) {
      do xs.push_back(leaf(lx));
      while (lx.accept(","));
      lx.expect("}");
    }
    return detail::sorted_unique(std::move(xs));
  };
  TElem t;
  t.kind = f.kind();
  switch (f.kind()) {
    case FunctorKind::Powerset: t.atoms = set(); break;
    case FunctorKind::MonotoneNbhd: {
      lx.expect("{");
      std::vector<std::vector<int>> fam;
      if (!lx.accept("}")) {
        do fam.push_back(set());
        while (lx.accept(","));
        lx.expect("}");
      }
      t.gens = detail::minimize_family(std::move(fam));
      break;
    }
    case FunctorKind::Identity:
      lx.expect("id:");
      t.atoms = {leaf(lx)};
      break;
    case FunctorKind::Constant: {
      lx.expect("const:");
      std::size_t at = lx.position();
      std::string d = lx.identifier();
      const auto& cs = f.constants();
      auto it = std::find(cs.begin(), cs.end(), d);
      if (it == cs.end()) throw ParseError("unknown constant '" + d + "'", at);
      t.value = static_cast<int>(it - cs.begin());
      break;
    }
    case FunctorKind::Product: {
      lx.expect("(");
      TElem l = parse_telem(f.left(), lx, leaf);
      lx.expect(",");
      TElem r = parse_telem(f.right(), lx, leaf);
      lx.expect(")");
      t.parts = {std::move(l), std::move(r)};
      break;
    }
    case FunctorKind::Coproduct:
      if (lx.accept("inl:")) {
        t.value = 0;
        t.parts = {parse_telem(f.left(), lx, leaf)};
      } else if (lx.accept("inr:")) {
        t.value = 1;
        t.parts = {parse_telem(f.right(), lx, leaf)};
      } else {
        lx.fail("expected 'inl:' or 'inr:'");
      }
      break;
    case FunctorKind::Composition: {
      std::vector<TElem> inner;
      TElem outer = parse_telem(f.outer(), lx, [&](Lexer& l) {
        inner.push_back(parse_telem(f.inner(), l, leaf));
        return static_cast<int>(inner.size() - 1);
      });
      return detail::canonical_composition(f, outer, inner);
    }
  }
  return t;
}

/// Functor descriptors in text: powerset | monotone | identity |
/// const{d1,d2} | product(F,G) | coproduct(F,G) | compose(F,G).
inline FunctorDescriptor parse_functor(Lexer& lx) {
  if (lx.accept_word("powerset")) return FunctorDescriptor::powerset();
  if (lx.accept_word("monotone")) return FunctorDescriptor::monotone();
  if (lx.accept_word("identity")) return FunctorDescriptor::identity();
  if (lx.accept_word("const")) {
    lx.expect("{");
    std::vector<std::string> vals;
    do vals.push_back(lx.identifier());
    while (lx.accept(","));
    lx.expect("}");
    return FunctorDescriptor::constant(std::move(vals));
  }
  for (auto [word, kind] : {std::pair{"product", 0}, std::pair{"coproduct", 1}, std::pair{"compose", 2}}) {
    if (!lx.accept_word(word)) continue;
    lx.expect("(");
    auto l = parse_functor(lx);
    lx.expect(",");
    auto r = parse_functor(lx);
    lx.expect(")");
    if (kind == 0) return FunctorDescriptor::product(std::move(l), std::move(r));
    if (kind == 1) return FunctorDescriptor::coproduct(std::move(l), std::move(r));
    return FunctorDescriptor::composition(std::move(l), std::move(r));
  }
  lx.fail("expected a functor");
}

inline FunctorDescriptor parse_functor(std::string_view src) {
  Lexer lx(src);
  auto f = parse_functor(lx);
  lx.expect_end();
  return f;
}

inline std::string print_functor(const FunctorDescriptor& f) {
  switch (f.kind()) {
    case FunctorKind::Powerset: return "powerset";
    case FunctorKind::MonotoneNbhd: return "monotone";
    case FunctorKind::Identity: return "identity";
    case FunctorKind::Constant: {
      std::string s = "const{";
      for (std::size_t i = 0; i < f.constants().size(); ++i) s += (i ? "," : "") + f.constants()[i];
      return s + "}";
    }
    case FunctorKind::Product: return "product(" + print_functor(f.left()) + "," + print_functor(f.right()) + ")";
    case FunctorKind::Coproduct: return "coproduct(" + print_functor(f.left()) + "," + print_functor(f.right()) + ")";
    case FunctorKind::Composition: return "compose(" + print_functor(f.outer()) + "," + print_functor(f.inner()) + ")";
  }
  return {};
}

}  // namespace colfix
