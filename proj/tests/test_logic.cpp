#include <catch2/catch_amalgamated.hpp>

#include "support.hh"

using namespace colfix;
using namespace testsupport;

namespace {

const FunctorDescriptor P = FunctorDescriptor::powerset();
const FunctorDescriptor M = FunctorDescriptor::monotone();

Formula parse(const std::string& s, const FunctorDescriptor& f = P) { return parse_formula(s, f); }

// Oracle: direct semantics, least fixpoints as the meet of all prefixpoints.
StateSet naive(const ColoredModel& m, const Formula& a, std::map<std::string, StateSet> env = {}) {
  std::size_t n = m.size();
  StateSet out(n, false);
  switch (a.kind()) {
    case FormulaKind::Atom:
      if (env.count(a.name())) return env[a.name()];
      for (std::size_t s = 0; s < n; ++s) out[s] = m.holds(s, a.name());
      return out;
    case FormulaKind::Neg:
      out = naive(m, a.body(), env);
      out.flip();
      return out;
    case FormulaKind::Or:
      for (const auto& c : a.args()) {
        auto v = naive(m, c, env);
        for (std::size_t s = 0; s < n; ++s) out[s] = out[s] || v[s];
      }
      return out;
    case FormulaKind::Nabla: {
      Relation r(n, a.args().size());
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        auto v = naive(m, a.arg(i), env);
        for (std::size_t s = 0; s < n; ++s)
          if (v[s]) r.insert(int(s), int(i));
      }
      for (std::size_t s = 0; s < n; ++s) out[s] = lift_member(m.functor, r, m.sigma[s], a.shape());
      return out;
    }
    case FormulaKind::Mu: {
      out.assign(n, true);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        StateSet y(n);
        for (std::size_t s = 0; s < n; ++s) y[s] = mask >> s & 1u;
        env[a.name()] = y;
        auto v = naive(m, a.body(), env);
        bool pre = true;
        for (std::size_t s = 0; s < n; ++s) pre = pre && (!v[s] || y[s]);
        if (pre)
          for (std::size_t s = 0; s < n; ++s) out[s] = out[s] && y[s];
      }
      return out;
    }
  }
  return out;
}

StateSet set_of(std::size_t n, std::initializer_list<int> xs) {
  StateSet s(n, false);
  for (int x : xs) s[std::size_t(x)] = true;
  return s;
}

}  // namespace

TEST_CASE("parsing and printing") {
  auto a = parse("mu x. (p \\/ nabla {x})");
  REQUIRE(a.kind() == FormulaKind::Mu);
  CHECK(a.name() == "x");
  CHECK(a.body().kind() == FormulaKind::Or);
  CHECK(a.body() == disj(atom("p"), nabla(P, pset({0}), {atom("x")})));
  CHECK_THROWS_AS(parse("mu x. ~x"), PositivityError);
  CHECK_THROWS_AS(parse("nu x. ~x"), PositivityError);
  CHECK_NOTHROW(parse("mu x. ~~x"));
  CHECK_NOTHROW(parse("mu x. ~nu y. ~x"));
  CHECK_THROWS_AS(parse("(p \\/ q"), ParseError);
  CHECK_THROWS_AS(parse("(p \\/ q /\\ r)"), ParseError);
  CHECK_THROWS_AS(parse("mu mu. p"), ParseError);
  try {
    parse("p \\/");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  for (std::string s : {"p", "~p", "true", "false", "(p \\/ q)", "\\/{p, q, r}", "nabla {}",
                        "nabla {p, ~q}", "mu x. nabla {x}"})
    CHECK(to_string(parse(s)) == s);
  for (std::string s : {"nu x. (p /\\ nabla {x})", "mu x. (p \\/ nu y. nabla {x, y})", "nabla {(p \\/ q)}",
                        "(p /\\ q)", "(p /\\ q /\\ r)", "(p \\/ false)", "(p /\\ true)"}) {
    auto once = to_string(parse(s));
    CHECK(to_string(parse(once)) == once);
    CHECK(parse(once) == parse(s));
  }
  CHECK(parse("(p \\/ false)") == atom("p"));
  CHECK(parse("(p \\/ true)") == top());
  CHECK(to_string(parse("nabla {{p}, {p, q}}", M)) == "nabla {{p}}");
  CHECK(to_string(parse("nabla {q, p, p}")) == "nabla {p, q}");
  CHECK(to_string(parse("nabla (id:p, const:b)", FunctorDescriptor::product(FunctorDescriptor::identity(),
                                                                             FunctorDescriptor::constant({"a", "b"})))) ==
        "nabla (id:p, const:b)");
}

TEST_CASE("printing round trips on random formulas") {
  std::mt19937 rng(3);
  for (const auto& f : {P, M})
    for (int i = 0; i < 300; ++i) {
      auto a = random_formula(f, {"p", "q"}, 4, rng);
      auto b = parse_formula(to_string(a), f);
      CHECK(b == a);
      CHECK(to_string(b) == to_string(a));
    }
}

TEST_CASE("subformulas and free letters") {
  auto p = atom("p");
  CHECK(subformulas(p) == std::vector<Formula>{p});
  CHECK(free_props(p) == std::vector<std::string>{"p"});
  auto n = parse("nabla {p, q}");
  auto sf = subformulas(n);
  CHECK(sf.size() == 3);
  CHECK(std::count(sf.begin(), sf.end(), atom("q")) == 1);
  CHECK(free_props(parse("mu x. (x \\/ p)")) == std::vector<std::string>{"p"});
  CHECK(free_props(parse("(x \\/ mu x. nabla {x})")) == std::vector<std::string>{"x"});
}

TEST_CASE("guardedness") {
  CHECK(is_guarded(parse("mu x. nabla {x}")));
  CHECK_FALSE(is_guarded(parse("mu x. (x \\/ p)")));
  CHECK(is_guarded(parse("p")));
  auto g = guard(parse("mu x. (x \\/ p)"));
  CHECK(is_guarded(g));
  CHECK(g == mu("x", atom("p")));
}

TEST_CASE("guarding preserves meaning on small models") {
  std::mt19937 rng(5);
  std::vector<Formula> corpus = {parse("mu x. (x \\/ p)"), parse("nu x. (x /\\ nabla {x})"),
                                 parse("mu x. (p \\/ nu y. (x /\\ nabla {y}))"),
                                 parse("nu x. mu y. (nabla {x} \\/ (y /\\ p))")};
  for (int i = 0; i < 150; ++i) corpus.push_back(random_formula(P, {"p"}, 4, rng));
  for (const auto& a : corpus) {
    auto g = guard(a);
    REQUIRE(is_guarded(g));
    for_each_model_up_to(P, {"p"}, 3, [&](const ColoredModel& m) {
      CHECK(eval(m, a) == eval(m, g));
      return true;
    });
  }
  for (int i = 0; i < 60; ++i) {
    auto a = random_formula(M, {"p"}, 3, rng);
    auto g = guard(a);
    REQUIRE(is_guarded(g));
    for_each_model_up_to(M, {"p"}, 2, [&](const ColoredModel& m) {
      CHECK(eval(m, a) == eval(m, g));
      return true;
    });
  }
}

TEST_CASE("evaluation examples") {
  auto m = kripke({{1}, {}}, {"p"}, {{}, {"p"}});
  CHECK(eval(m, parse("nabla {p}")) == set_of(2, {0}));
  CHECK(eval(m, parse("nabla {}")) == set_of(2, {1}));
  CHECK(eval(m, parse("mu x. x")) == set_of(2, {}));
  auto loop = kripke({{0}}, {"p"}, {{"p"}});
  CHECK(satisfies({loop, 0}, atom("p")));
  CHECK_FALSE(satisfies({loop, 0}, neg(atom("p"))));
  CHECK(satisfies({m, 0}, parse("nabla {p}")));
  CHECK_THROWS_AS(eval(m, atom("q")), UnboundProp);
  CHECK_THROWS_AS(eval(m, parse("nabla {{p}}", M)), CarrierMismatch);
  // nu x. nabla{x}: infinite paths only
  auto chain = kripke({{1}, {1}, {}}, {}, {{}, {}, {}});
  CHECK(eval(chain, parse("nu x. nabla {x}")) == set_of(3, {0, 1}));
  CHECK(eval(chain, parse("mu x. (nabla {} \\/ nabla {x})")) == set_of(3, {2}));
}

TEST_CASE("evaluation agrees with the prefixpoint oracle") {
  std::mt19937 rng(9);
  for (const auto& f : {P, M})
    for (int i = 0; i < 120; ++i) {
      auto a = random_formula(f, {"p", "q"}, 4, rng);
      auto m = random_model(f, {"p", "q"}, 1 + i % 3, rng);
      CHECK(eval(m, a) == naive(m, a));
      // boolean clauses
      auto v = eval(m, a);
      auto nv = eval(m, neg(a));
      for (std::size_t s = 0; s < m.size(); ++s) CHECK(nv[s] == !v[s]);
    }
}

TEST_CASE("fixpoint properties") {
  std::mt19937 rng(13);
  for (int i = 0; i < 80; ++i) {
    auto m = random_model(P, {"p"}, 3, rng);
    auto body = random_formula(P, {"p"}, 3, rng, {"x"});
    auto fix = eval(m, mu("x", body));
    auto with = [&](const StateSet& x) {
      ColoredModel ext = m;
      ext.props = {"p", "x"};
      for (std::size_t s = 0; s < m.size(); ++s) ext.gamma[s] = m.gamma[s] | (x[s] ? 2u : 0u);
      return eval(ext, body);
    };
    CHECK(with(fix) == fix);
    for (unsigned mask = 0; mask < 8; ++mask) {
      StateSet y(3);
      for (std::size_t s = 0; s < 3; ++s) y[s] = mask >> s & 1u;
      auto fy = with(y);
      bool prefix = true;
      for (std::size_t s = 0; s < 3; ++s) prefix = prefix && (!fy[s] || y[s]);
      if (prefix)
        for (std::size_t s = 0; s < 3; ++s) CHECK((!fix[s] || y[s]));
      // monotone in x
      for (unsigned bigger = mask; bigger < 8; bigger = (bigger + 1) | mask) {
        StateSet z(3);
        for (std::size_t s = 0; s < 3; ++s) z[s] = bigger >> s & 1u;
        auto fz = with(z);
        for (std::size_t s = 0; s < 3; ++s) CHECK((!fy[s] || fz[s]));
      }
    }
    // nu duality
    auto nv = eval(m, nu("x", body));
    auto dual = eval(m, mu("x", neg(subst(body, "x", neg(atom("x"))))));
    for (std::size_t s = 0; s < 3; ++s) CHECK(nv[s] == !dual[s]);
  }
}

TEST_CASE("bisimilar states satisfy the same formulas") {
  std::mt19937 rng(17);
  for (const auto& f : {P, M}) {
    std::vector<Formula> corpus;
    for (int i = 0; i < 40; ++i) corpus.push_back(random_formula(f, {"p", "q"}, 3, rng));
    for (int i = 0; i < 30; ++i) {
      auto a = random_model(f, {"p", "q"}, 1 + i % 3, rng);
      auto b = random_model(f, {"p", "q"}, 1 + (i / 3) % 3, rng);
      auto g = greatest_bisimulation(a, b, {"p", "q"});
      for (const auto& phi : corpus) {
        auto va = eval(a, phi), vb = eval(b, phi);
        for (auto [s, t] : g.pairs()) CHECK(va[std::size_t(s)] == vb[std::size_t(t)]);
      }
    }
  }
}

TEST_CASE("capture avoiding substitution") {
  auto a = parse("mu y. (x \\/ nabla {y})");
  auto b = subst(a, "x", atom("y"));
  REQUIRE(b.kind() == FormulaKind::Mu);
  CHECK(b.name() != "y");
  CHECK(b.occurs_free("y"));
}
