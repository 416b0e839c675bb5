#include <catch2/catch_amalgamated.hpp>

#include "colfix/io.hh"
#include "support.hh"

using namespace colfix;
using namespace testsupport;

namespace {

const FunctorDescriptor P = FunctorDescriptor::powerset();
const FunctorDescriptor M = FunctorDescriptor::monotone();

std::size_t error_position(const std::string& src, bool automaton) {
  try {
    if (automaton)
      parse_automaton(src);
    else
      parse_model(src);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for: " << src);
  return 0;
}

}  // namespace

TEST_CASE("model files: forward references and points") {
  auto mf = parse_model(
      "functor powerset; props {q, p};\n"
      "# s0 sees s1 before it is declared\n"
      "state s0; sigma {s1, s0}; gamma {p};\n"
      "state s1; sigma {}; gamma {};\n"
      "point s1;\n");
  CHECK(mf.model.props == std::vector<std::string>{"p", "q"});
  CHECK(mf.model.sigma[0] == pset({0, 1}));
  CHECK(mf.model.sigma[1] == pset({}));
  CHECK(mf.model.holds(0, "p"));
  CHECK_FALSE(mf.model.holds(0, "q"));
  CHECK(mf.point == 1);
  CHECK_FALSE(parse_model("functor monotone; props {}; state a; sigma {{a}, {}};").point);
}

TEST_CASE("model files: round trips") {
  std::mt19937 rng(4);
  for (const auto& f : {P, M, FunctorDescriptor::product(FunctorDescriptor::identity(), FunctorDescriptor::constant({"x", "y"})),
                        FunctorDescriptor::composition(P, FunctorDescriptor::coproduct(FunctorDescriptor::identity(), FunctorDescriptor::constant({"u"})))}) {
    for (int round = 0; round < 20; ++round) {
      auto m = random_model(f, {"p", "q"}, 3, rng);
      auto text = print_model(m, 2);
      auto back = parse_model(text);
      CHECK(back.model.sigma == m.sigma);
      CHECK(back.model.gamma == m.gamma);
      CHECK(back.model.state_names == m.state_names);
      CHECK(back.point == 2);
      CHECK(print_model(back.model, back.point) == text);
    }
  }
}

TEST_CASE("model files: errors") {
  CHECK(error_position("functor powerset; props {}; state a; sigma {b};", false) == 44);
  CHECK(error_position("functor powerset; props {p}; state a; sigma {}; gamma {r};", false) == 54);
  CHECK(error_position("functor powerset; props {}; state a; sigma {}; state a; sigma {};", false) == 53);
  CHECK_THROWS_AS(parse_model("functor powerset; props {}; state a;"), ParseError);
  CHECK_THROWS_AS(parse_model("functor powerset; props {}; sigma {};"), ParseError);
  CHECK_THROWS_AS(parse_model("functor powerset; props {}; state a; sigma {}; point b;"), ParseError);
  CHECK_THROWS_AS(parse_model("functor frob; props {};"), ParseError);
  CHECK_THROWS_AS(parse_model("functor powerset; props {p, p};"), ParseError);
  CHECK_THROWS_AS(parse_model("functor powerset; props {}; state a; sigma {a}"), ParseError);
}

TEST_CASE("automaton files") {
  auto aut = parse_automaton(
      "functor powerset; props {p}; initial a;\n"
      "state a priority 1;\n"
      "state b priority 2;\n"
      "delta a {p} : [{a, b}, {}];\n"
      "delta b {} : [{b}];\n");
  CHECK(aut.size() == 2);
  CHECK(aut.initial == 0);
  CHECK(aut.priority == std::vector<int>{1, 2});
  CHECK(aut.delta[0][1] == std::vector<TElem>{pset({}), pset({0, 1})});
  CHECK(aut.delta[0][0].empty());
  CHECK(aut.delta[1][0] == std::vector<TElem>{pset({1})});
  CHECK(parse_automaton(print_automaton(aut)).delta == aut.delta);

  std::mt19937 rng(9);
  for (const auto& f : {P, M})
    for (int round = 0; round < 20; ++round) {
      auto r = random_automaton(f, {"p", "q"}, 3, rng);
      r.initial = 2;
      auto text = print_automaton(r);
      auto back = parse_automaton(text);
      CHECK(back.delta == r.delta);
      CHECK(back.priority == r.priority);
      CHECK(back.initial == 2);
      CHECK(print_automaton(back) == text);
    }

  CHECK(error_position("functor powerset; props {}; initial a; state a priority 0; delta a {} : [{c}];", true) == 74);
  CHECK_THROWS_AS(parse_automaton("functor powerset; props {}; initial z; state a priority 0;"), ParseError);
  CHECK_THROWS_AS(parse_automaton("functor powerset; props {}; initial a; state a priority -1;"), ParseError);
  CHECK_THROWS_AS(parse_automaton("functor powerset; props {}; initial a;"), ParseError);
  CHECK_THROWS_AS(parse_automaton("functor powerset; props {}; initial a; state a priority 0; delta b {} : [];"),
                  ParseError);
}
