#pragma once

// Fixed formula corpus shared by the interpolation tests and the acceptance
// binary. Every entry is guarded, in negation normal form, and inside the
// fragment the formula-to-automaton translation accepts.

#include <string>
#include <vector>

namespace testsupport {

struct CorpusEntry {
  const char* functor;
  const char* formula;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = {
      {"powerset", "p"},
      {"powerset", "~p"},
      {"powerset", "true"},
      {"powerset", "false"},
      {"powerset", "(p /\\ q)"},
      {"powerset", "(p \\/ ~q)"},
      {"powerset", "nabla {}"},
      {"powerset", "nabla {p}"},
      {"powerset", "nabla {p, q}"},
      {"powerset", "nabla {p, true}"},
      {"powerset", "(~q /\\ nabla {(p /\\ q), ~p})"},
      {"powerset", "(nabla {} \\/ nabla {~p})"},
      {"powerset", "(nabla {p} /\\ nabla {q, true})"},
      {"powerset", "nabla {nabla {p}, nabla {}}"},
      {"powerset", "mu x. nabla {x}"},
      {"powerset", "nu x. nabla {x}"},
      {"powerset", "mu x. (p \\/ nabla {x, true})"},
      {"powerset", "mu x. (p \\/ (nabla {} \\/ nabla {x}))"},
      {"powerset", "nu x. (p /\\ nabla {x})"},
      {"powerset", "nu x. (p /\\ (nabla {} \\/ nabla {x}))"},
      {"powerset", "nu x. (q /\\ nabla {x, true})"},
      {"powerset", "mu x. (q \\/ (p /\\ nabla {x, true}))"},
      {"powerset", "nu x. mu y. ((p /\\ nabla {x, true}) \\/ nabla {y, true})"},
      {"powerset", "mu x. nu y. ((p /\\ nabla {x}) \\/ (~p /\\ nabla {y}))"},
      {"powerset", "nu x. (nabla {x, p} \\/ nabla {})"},
      {"powerset", "(p /\\ nu x. (nabla {} \\/ nabla {(~p /\\ x)}))"},
      {"powerset", "mu x. (nabla {} \\/ nabla {(q /\\ x), ~q})"},
      {"powerset", "nu x. ((p /\\ nabla {~p, x}) \\/ (~p /\\ nabla {p, x}))"},
      {"monotone", "p"},
      {"monotone", "nabla {}"},
      {"monotone", "nabla {{}}"},
      {"monotone", "nabla {{p}}"},
      {"monotone", "nabla {{p}, {q}}"},
      {"monotone", "nabla {{p, ~p}}"},
      {"monotone", "mu x. (p \\/ nabla {{x}})"},
      {"monotone", "nu x. (p /\\ nabla {{x}})"},
      {"monotone", "nu x. (nabla {{x}} \\/ nabla {{x, ~p}})"},
  };
  return c;
}

}  // namespace testsupport
