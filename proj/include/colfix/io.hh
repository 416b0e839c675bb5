#pragma once

// Text formats for models and automata.
//
//   functor powerset;
//   props {p, q};
//   state s0; sigma {s0, s1}; gamma {p};
//   state s1; sigma {}; gamma {};
//   point s0;
//
//   functor powerset;
//   props {p};
//   initial a;
//   state a priority 1;
//   delta a {p} : [{a}, {}];

#include "colfix/automaton.hh"
#include "colfix/text.hh"

namespace colfix {

namespace detail {

/// Names seen inside elements before their declaration get provisional
/// indices, fixed up once every state is known.
struct ForwardNames {
  std::vector<std::string> seen;
  std::vector<std::size_t> where;

  LeafParser parser() {
    return [this](Lexer& lx) {
      lx.skip();
      std::size_t at = lx.position();
      auto n = lx.identifier();
      auto it = std::find(seen.begin(), seen.end(), n);
      if (it != seen.end()) return static_cast<int>(it - seen.begin());
      seen.push_back(n);
      where.push_back(at);
      return static_cast<int>(seen.size() - 1);
    };
  }

  std::vector<int> resolve(const std::vector<std::string>& declared) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      auto it = std::find(declared.begin(), declared.end(), seen[i]);
      if (it == declared.end()) throw ParseError("unknown state '" + seen[i] + "'", where[i]);
      out.push_back(static_cast<int>(it - declared.begin()));
    }
    return out;
  }
};

inline std::vector<std::string> parse_name_set(Lexer& lx) {
  std::vector<std::string> out;
  lx.expect("{");
  if (!lx.accept("}")) {
    do out.push_back(lx.identifier());
    while (lx.accept(","));
    lx.expect("}");
  }
  return out;
}

inline std::string print_name_set(const std::vector<std::string>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s + "}";
}

inline Color parse_color(Lexer& lx, const std::vector<std::string>& props) {
  lx.skip();
  std::size_t at = lx.position();
  Color c = 0;
  for (const auto& p : parse_name_set(lx)) {
    auto it = std::lower_bound(props.begin(), props.end(), p);
    if (it == props.end() || *it != p) throw ParseError("unknown proposition '" + p + "'", at);
    c |= Color{1} << (it - props.begin());
  }
  return c;
}

inline std::string print_color(Color c, const std::vector<std::string>& props) {
  std::vector<std::string> xs;
  for (std::size_t i = 0; i < props.size(); ++i)
    if (c >> i & 1u) xs.push_back(props[i]);
  return print_name_set(xs);
}

inline void check_unique(const std::vector<std::string>& names, const char* what, std::size_t at) {
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ParseError(std::string("duplicate ") + what, at);
}

inline std::vector<std::string> parse_header(Lexer& lx, FunctorDescriptor& f) {
  if (!lx.accept_word("functor")) lx.fail("expected 'functor'");
  f = parse_functor(lx);
  lx.expect(";");
  if (!lx.accept_word("props")) lx.fail("expected 'props'");
  lx.skip();
  std::size_t at = lx.position();
  auto props = parse_name_set(lx);
  check_unique(props, "proposition", at);
  std::sort(props.begin(), props.end());
  lx.expect(";");
  return props;
}

}  // namespace detail

struct ModelFile {
  ColoredModel model;
  std::optional<int> point;
};

inline ModelFile parse_model(std::string_view src) {
  Lexer lx(src);
  ModelFile out;
  auto& m = out.model;
  m.props = detail::parse_header(lx, m.functor);
  detail::ForwardNames names;
  std::optional<std::string> point;
  std::size_t point_at = 0;
  std::vector<bool> has_sigma;
  while (!lx.at_end()) {
    if (lx.accept_word("state")) {
      lx.skip();
      std::size_t at = lx.position();
      m.state_names.push_back(lx.identifier());
      detail::check_unique(m.state_names, "state", at);
      m.sigma.emplace_back();
      m.gamma.push_back(0);
      has_sigma.push_back(false);
    } else if (lx.accept_word("sigma")) {
      if (m.state_names.empty()) lx.fail("'sigma' before any 'state'");
      m.sigma.back() = parse_telem(m.functor, lx, names.parser());
      has_sigma.back() = true;
    } else if (lx.accept_word("gamma")) {
      if (m.state_names.empty()) lx.fail("'gamma' before any 'state'");
      m.gamma.back() = detail::parse_color(lx, m.props);
    } else if (lx.accept_word("point")) {
      point_at = lx.position();
      point = lx.identifier();
    } else {
      lx.fail("expected 'state', 'sigma', 'gamma' or 'point'");
    }
    lx.expect(";");
  }
  for (std::size_t s = 0; s < has_sigma.size(); ++s)
    if (!has_sigma[s]) throw ParseError("state '" + m.state_names[s] + "' has no sigma", src.size());
  auto remap = names.resolve(m.state_names);
  for (auto& t : m.sigma) t = t_map(m.functor, remap, t);
  if (point) {
    int i = m.state_index(*point);
    if (i < 0) throw ParseError("unknown point '" + *point + "'", point_at);
    out.point = i;
  }
  m.validate();
  return out;
}

inline std::string print_model(const ColoredModel& m, std::optional<int> point = std::nullopt) {
  std::string out = "functor " + print_functor(m.functor) + ";\nprops " + detail::print_name_set(m.props) + ";\n";
  LeafPrinter leaf = [&](int i) { return m.name(static_cast<std::size_t>(i)); };
  for (std::size_t s = 0; s < m.size(); ++s)
    out += "state " + m.name(s) + "; sigma " + print_telem(m.functor, m.sigma[s], leaf) + "; gamma " +
           detail::print_color(m.gamma[s], m.props) + ";\n";
  if (point) out += "point " + m.name(static_cast<std::size_t>(*point)) + ";\n";
  return out;
}

inline std::string print_model(const PointedModel& pm) { return print_model(pm.model, pm.point); }

inline Automaton parse_automaton(std::string_view src) {
  Lexer lx(src);
  Automaton aut;
  aut.props = detail::parse_header(lx, aut.functor);
  if (aut.props.size() > 16) lx.fail("too many propositions");
  if (!lx.accept_word("initial")) lx.fail("expected 'initial'");
  std::size_t initial_at = lx.position();
  std::string initial = lx.identifier();
  lx.expect(";");
  detail::ForwardNames names;
  struct Cell {
    std::string state;
    std::size_t at;
    Color color;
    std::vector<TElem> elems;
  };
  std::vector<Cell> cells;
  while (!lx.at_end()) {
    if (lx.accept_word("state")) {
      lx.skip();
      std::size_t at = lx.position();
      auto n = lx.identifier();
      if (!lx.accept_word("priority")) lx.fail("expected 'priority'");
      long long prio = lx.integer();
      if (prio < 0 || prio > 1'000'000) throw ParseError("priority out of range", at);
      aut.add_state(n, static_cast<int>(prio));
      detail::check_unique(aut.state_names, "state", at);
    } else if (lx.accept_word("delta")) {
      Cell c;
      c.at = lx.position();
      c.state = lx.identifier();
      c.color = detail::parse_color(lx, aut.props);
      lx.expect(":");
      lx.expect("[");
      if (!lx.accept("]")) {
        do c.elems.push_back(parse_telem(aut.functor, lx, names.parser()));
        while (lx.accept(","));
        lx.expect("]");
      }
      cells.push_back(std::move(c));
    } else {
      lx.fail("expected 'state' or 'delta'");
    }
    lx.expect(";");
  }
  if (aut.size() == 0) throw ParseError("automaton without states", src.size());
  int init = aut.state_index(initial);
  if (init < 0) throw ParseError("unknown initial state '" + initial + "'", initial_at);
  aut.initial = init;
  auto remap = names.resolve(aut.state_names);
  for (const auto& c : cells) {
    int a = aut.state_index(c.state);
    if (a < 0) throw ParseError("unknown state '" + c.state + "'", c.at);
    for (const auto& e : c.elems) aut.add_transition(static_cast<std::size_t>(a), c.color, t_map(aut.functor, remap, e));
  }
  aut.validate();
  return aut;
}

/// Empty cells are left out.
inline std::string print_automaton(const Automaton& aut) {
  std::string out = "functor " + print_functor(aut.functor) + ";\nprops " + detail::print_name_set(aut.props) +
                    ";\ninitial " + aut.name(static_cast<std::size_t>(aut.initial)) + ";\n";
  for (std::size_t a = 0; a < aut.size(); ++a)
    out += "state " + aut.name(a) + " priority " + std::to_string(aut.priority[a]) + ";\n";
  LeafPrinter leaf = [&](int i) { return aut.name(static_cast<std::size_t>(i)); };
  for (std::size_t a = 0; a < aut.size(); ++a)
    for (Color c = 0; c < aut.colors(); ++c) {
      if (aut.delta[a][c].empty()) continue;
      out += "delta " + aut.name(a) + " " + detail::print_color(c, aut.props) + " : [";
      for (std::size_t i = 0; i < aut.delta[a][c].size(); ++i)
        out += (i ? ", " : "") + print_telem(aut.functor, aut.delta[a][c][i], leaf);
      out += "];\n";
    }
  return out;
}

}  // namespace colfix
