// colfix: command-line front end for the library.
//
// Exit codes: 0 yes / ok, 1 no, 2 error, 3 outside the supported fragment.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "colfix/colfix.hh"

using namespace colfix;
using json = nlohmann::json;

namespace {

struct RunConfig {
  std::string functor = "powerset";
  std::string format = "human";
  std::size_t witness_bound = 3;
  std::size_t max_model_size = 3;
  std::uint64_t cap = default_cap;

  bool structured() const { return format == "structured"; }
  FunctorDescriptor f() const { return parse_functor(functor); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A formula argument is literal text, or @file.
std::string formula_text(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? slurp(arg.substr(1)) : arg; }

std::string set_text(const std::vector<std::string>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s + "}";
}

std::vector<std::string> parse_set_arg(const std::string& arg) {
  Lexer lx(arg);
  std::vector<std::string> out;
  bool braces = lx.accept("{");
  if (!lx.at_end() && !(braces && lx.looking_at("}"))) {
    do out.push_back(lx.identifier());
    while (lx.accept(","));
  }
  if (braces) lx.expect("}");
  lx.expect_end();
  return out;
}

int emit(const RunConfig& cfg, const json& j, const std::string& human, int code) {
  if (cfg.structured())
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
  return code;
}

std::vector<std::string> extension_names(const ColoredModel& m, const StateSet& e) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (e[s]) out.push_back(m.name(s));
  return out;
}

int cmd_check(const RunConfig& cfg, const std::string& model_path, const std::string& formula_arg) {
  auto mf = parse_model(slurp(model_path));
  const auto& m = mf.model;
  auto a = parse_formula(formula_text(formula_arg), m.functor);
  auto e = eval(m, a);
  int point = mf.point.value_or(0);
  bool holds = e[static_cast<std::size_t>(point)];
  auto ext = extension_names(m, e);
  json j = {{"command", "check"},
            {"formula", to_string(a)},
            {"extension", ext},
            {"point", m.name(static_cast<std::size_t>(point))},
            {"holds", holds}};
  std::string human = "formula:   " + to_string(a) + "\nextension: " + set_text(ext) + "\npoint " +
                      m.name(static_cast<std::size_t>(point)) + ": " + (holds ? "satisfied" : "not satisfied") + "\n";
  return emit(cfg, j, human, holds ? 0 : 1);
}

int cmd_bisim(const RunConfig& cfg, const std::string& pa, const std::string& pb,
              const std::vector<std::string>& disregard) {
  auto a = parse_model(slurp(pa));
  auto b = parse_model(slurp(pb));
  if (!(a.model.functor == b.model.functor)) throw CarrierMismatch("the models use different functors");
  auto q = a.model.props;
  q.insert(q.end(), b.model.props.begin(), b.model.props.end());
  q = detail::sorted_names(q);
  for (const auto& p : disregard) q.erase(std::remove(q.begin(), q.end(), p), q.end());
  auto z = greatest_bisimulation(a.model, b.model, q);
  int sa = a.point.value_or(0), sb = b.point.value_or(0);
  bool related = z.contains(sa, sb);
  json pairs = json::array();
  std::string human = "letters compared: " + set_text(q) + "\nbisimulation:\n";
  for (auto [x, y] : z.pairs()) {
    auto nx = a.model.name(static_cast<std::size_t>(x)), ny = b.model.name(static_cast<std::size_t>(y));
    pairs.push_back({nx, ny});
    human += "  " + nx + " ~ " + ny + "\n";
  }
  human += "points " + a.model.name(static_cast<std::size_t>(sa)) + ", " + b.model.name(static_cast<std::size_t>(sb)) +
           (related ? ": bisimilar\n" : ": not bisimilar\n");
  json j = {{"command", "bisim"}, {"letters", q}, {"relation", pairs}, {"related", related}};
  return emit(cfg, j, human, related ? 0 : 1);
}

int print_automaton_result(const RunConfig& cfg, const std::string& command, const Automaton& aut) {
  auto text = print_automaton(aut);
  json j = {{"command", command}, {"automaton", text}, {"states", aut.size()}};
  return emit(cfg, j, text, 0);
}

int cmd_automaton_accept(const RunConfig& cfg, const std::string& aut_path, const std::string& model_path) {
  auto aut = parse_automaton(slurp(aut_path));
  auto mf = parse_model(slurp(model_path));
  int point = mf.point.value_or(0);
  auto w = accepting_relation(aut, mf.model);
  bool ok = w.contains(point, aut.initial);
  std::vector<std::string> from;
  for (std::size_t s = 0; s < mf.model.size(); ++s)
    if (w.contains(static_cast<int>(s), aut.initial)) from.push_back(mf.model.name(s));
  json j = {{"command", "automaton accept"},
            {"accepted", ok},
            {"point", mf.model.name(static_cast<std::size_t>(point))},
            {"accepted_states", from}};
  std::string human = std::string(ok ? "accepted" : "rejected") + " at " +
                      mf.model.name(static_cast<std::size_t>(point)) + "\naccepting states: " + set_text(from) + "\n";
  return emit(cfg, j, human, ok ? 0 : 1);
}

int cmd_automaton_to_formula(const RunConfig& cfg, const std::string& aut_path) {
  auto aut = parse_automaton(slurp(aut_path));
  auto a = automaton_to_formula(aut);
  json j = {{"command", "automaton to-formula"}, {"formula", to_string(a)}};
  return emit(cfg, j, to_string(a) + "\n", 0);
}

int cmd_to_automaton(const RunConfig& cfg, const std::string& formula_arg, const std::vector<std::string>& props) {
  auto f = cfg.f();
  auto a = parse_formula(formula_text(formula_arg), f);
  std::optional<std::vector<std::string>> vocab;
  if (!props.empty()) vocab = props;
  return print_automaton_result(cfg, "to-automaton", formula_to_automaton(a, f, vocab, cfg.cap));
}

int cmd_interpolate(const RunConfig& cfg, const std::string& formula_arg, const std::vector<std::string>& keep) {
  auto f = cfg.f();
  auto a = parse_formula(formula_text(formula_arg), f);
  auto aq = uniform_interpolant(a, keep, f, cfg.witness_bound, cfg.cap);
  auto vocab = free_props(aq);
  bool entailed = entails_bounded(a, aq, f, cfg.max_model_size, cfg.cap);
  json j = {{"command", "interpolate"},
            {"keep", detail::sorted_names(keep)},
            {"interpolant", to_string(aq)},
            {"vocabulary", vocab},
            {"entailed", entailed},
            {"checked_up_to", cfg.max_model_size}};
  std::string human = "interpolant: " + to_string(aq) + "\nvocabulary:  " + set_text(vocab) + "\nentailed by input up to " +
                      std::to_string(cfg.max_model_size) + " states: " + (entailed ? "yes" : "NO") + "\n";
  return emit(cfg, j, human, entailed ? 0 : 1);
}

int cmd_entails(const RunConfig& cfg, const std::string& lhs, const std::string& rhs) {
  auto f = cfg.f();
  auto a = parse_formula(formula_text(lhs), f);
  auto b = parse_formula(formula_text(rhs), f);
  auto cm = bounded_countermodel(a, b, f, cfg.max_model_size, cfg.cap);
  json j = {{"command", "entails"}, {"entails", !cm}, {"checked_up_to", cfg.max_model_size}};
  std::string human = std::string(cm ? "does not entail" : "entails") + " (models up to " +
                      std::to_string(cfg.max_model_size) + " states)\n";
  if (cm) {
    j["countermodel"] = print_model(*cm);
    human += "countermodel:\n" + print_model(*cm);
  }
  return emit(cfg, j, human, cm ? 1 : 0);
}

int cmd_selftest(const RunConfig& cfg, std::size_t bound) {
  auto f = cfg.f();
  auto lax = check_lax_axioms(f, bound, cfg.cap);
  auto sup = check_support_restriction(f, bound, cfg.cap);
  bool ok = lax.passed() && sup.passed;
  json j = {{"command", "selftest"},
            {"functor", print_functor(f)},
            {"carrier_bound", bound},
            {"converse", lax.converse},
            {"monotone", lax.l1_monotone},
            {"lax_composition", lax.l2_lax_composition},
            {"graph_inclusion", lax.l3_graph_inclusion},
            {"diagonal", lax.l4_diagonal},
            {"graphs_match_maps", lax.lf_equals_tf},
            {"quasi_functorial", lax.quasi_functorial},
            {"functorial", lax.functorial},
            {"support_restriction", sup.passed},
            {"counterexamples", lax.counterexamples},
            {"passed", ok}};
  auto yn = [](bool b) { return b ? "pass" : "FAIL"; };
  std::ostringstream h;
  h << "functor " << print_functor(f) << ", carriers up to " << bound << "\n"
    << "  converse            " << yn(lax.converse) << "\n"
    << "  monotone            " << yn(lax.l1_monotone) << "\n"
    << "  lax composition     " << yn(lax.l2_lax_composition) << "\n"
    << "  graph inclusion     " << yn(lax.l3_graph_inclusion) << "\n"
    << "  diagonal            " << yn(lax.l4_diagonal) << "\n"
    << "  graphs match maps   " << yn(lax.lf_equals_tf) << "\n"
    << "  quasi-functorial    " << yn(lax.quasi_functorial) << "\n"
    << "  support restriction " << yn(sup.passed) << " (" << sup.checked << " checks)\n"
    << "  functorial          " << (lax.functorial ? "yes" : "no") << "\n";
  for (const auto& c : lax.counterexamples) h << "  " << c << "\n";
  for (const auto& c : sup.counterexamples) h << "  " << c << "\n";
  return emit(cfg, j, h.str(), ok ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coalgebraic fixpoint logic toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--functor", cfg.functor, "functor tag, e.g. powerset, monotone, product(identity,const{a,b})");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--witness-bound", cfg.witness_bound, "state bound for witnessing coalgebras")->check(CLI::PositiveNumber);
  app.add_option("--max-model-size", cfg.max_model_size, "state bound for entailment checks")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "enumeration cap")->check(CLI::PositiveNumber);

  std::string model, model2, aut, formula, formula2, letter;
  std::vector<std::string> disregard;
  std::string keep, props;
  std::size_t carrier_bound = 2;
  std::function<int()> run;

  auto* check = app.add_subcommand("check", "evaluate a formula on a model");
  check->add_option("model", model)->required()->check(CLI::ExistingFile);
  check->add_option("formula", formula, "formula text, or @file")->required();
  check->callback([&] { run = [&] { return cmd_check(cfg, model, formula); }; });

  auto* bisim = app.add_subcommand("bisim", "greatest bisimulation between two models");
  bisim->add_option("a", model)->required()->check(CLI::ExistingFile);
  bisim->add_option("b", model2)->required()->check(CLI::ExistingFile);
  bisim->add_option("--disregard", disregard, "letters to ignore");
  bisim->callback([&] { run = [&] { return cmd_bisim(cfg, model, model2, disregard); }; });

  auto* automaton = app.add_subcommand("automaton", "automaton operations");
  automaton->require_subcommand(1);
  auto* accept = automaton->add_subcommand("accept", "run the acceptance game");
  accept->add_option("automaton", aut)->required()->check(CLI::ExistingFile);
  accept->add_option("model", model)->required()->check(CLI::ExistingFile);
  accept->callback([&] { run = [&] { return cmd_automaton_accept(cfg, aut, model); }; });
  auto* to_formula = automaton->add_subcommand("to-formula", "equivalent fixpoint formula");
  to_formula->add_option("automaton", aut)->required()->check(CLI::ExistingFile);
  to_formula->callback([&] { run = [&] { return cmd_automaton_to_formula(cfg, aut); }; });
  auto* project = automaton->add_subcommand("project", "automaton for the existential quantifier over a letter");
  project->add_option("automaton", aut)->required()->check(CLI::ExistingFile);
  project->add_option("letter", letter)->required();
  project->callback([&] {
    run = [&] {
      return print_automaton_result(cfg, "automaton project",
                                    project_automaton(parse_automaton(slurp(aut)), letter, cfg.witness_bound, cfg.cap));
    };
  });
  auto* norm = automaton->add_subcommand("normalize", "add a true state and drop unsatisfiable transitions");
  norm->add_option("automaton", aut)->required()->check(CLI::ExistingFile);
  norm->callback([&] {
    run = [&] {
      return print_automaton_result(cfg, "automaton normalize", normalize(parse_automaton(slurp(aut)), cfg.witness_bound, cfg.cap));
    };
  });

  auto* to_aut = app.add_subcommand("to-automaton", "translate a formula into an automaton");
  to_aut->add_option("formula", formula, "formula text, or @file")->required();
  to_aut->add_option("--props", props, "vocabulary, a superset of the free letters");
  to_aut->callback([&] { run = [&] { return cmd_to_automaton(cfg, formula, props.empty() ? std::vector<std::string>{} : parse_set_arg(props)); }; });

  auto* interp = app.add_subcommand("interpolate", "uniform interpolant over the kept letters");
  interp->add_option("formula", formula, "formula text, or @file")->required();
  interp->add_option("--keep", keep, "letters to keep, e.g. {q,r}")->required();
  interp->callback([&] { run = [&] { return cmd_interpolate(cfg, formula, parse_set_arg(keep)); }; });

  auto* entails = app.add_subcommand("entails", "bounded consequence check");
  entails->add_option("lhs", formula)->required();
  entails->add_option("rhs", formula2)->required();
  entails->callback([&] { run = [&] { return cmd_entails(cfg, formula, formula2); }; });

  auto* selftest = app.add_subcommand("selftest", "exhaustive axiom checks for a functor");
  selftest->add_option("--carrier-bound", carrier_bound, "largest carrier")->check(CLI::PositiveNumber);
  selftest->callback([&] { run = [&] { return cmd_selftest(cfg, carrier_bound); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const UnsupportedFragment& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
