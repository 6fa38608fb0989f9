// dlm: command-line front end for checking, finding and exploring models of
// the dialectical schemes.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dialectic/consequence.hpp"
#include "dialectic/dlm.hpp"
#include "dialectic/finder.hpp"
#include "dialectic/schemes.hpp"
#include "dialectic/semantics.hpp"
#include "dialectic/zoo.hpp"

using namespace dialectic;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFormat = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FiniteStructure load_structure(const std::string& path) {
  try {
    auto parsed = parse_dlm(read_file(path));
    for (const auto& w : parsed.warnings) std::cerr << path << ": warning: " << w << "\n";
    return std::move(parsed.structure);
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

SchemeId scheme_id(const std::string& text) {
  try {
    return parse_scheme_id(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("unknown scheme '" + text + "' (expected tas1, tas2 or tas3)");
  }
}

Scheme make_scheme(const std::string& text, bool with_extension) {
  const SchemeId id = scheme_id(text);
  if (with_extension && id != SchemeId::kTas3) throw UsageError("--with-extension applies to tas3 only");
  return tas_scheme(id, with_extension);
}

BigInt parse_big(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("expected a non-negative integer, got '" + text + "'");
  return BigInt(text);
}

json structure_json(const FiniteStructure& s) {
  json tables = json::object();
  for (const auto& [name, arity] : dlm_relations())
    if (s.has_table(name)) tables[name] = s.labelled_tuples(name);
  return {{"schema", 1}, {"domain", s.domain()}, {"tables", tables}};
}

std::string join(const std::vector<std::string>& items, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

struct Globals {
  bool json = false;
};

// --- zoo -------------------------------------------------------------------

struct ZooArgs {
  std::string model;
  std::string k = "2";
  std::size_t window = 0;
  bool alternative_n = false;
};

int run_zoo(const Globals& g, const ZooArgs& a) {
  std::optional<FiniteStructure> s;
  if (a.model == "a") {
    s = a.alternative_n ? model_a_with_alternative_n() : build_model(ModelId::kA);
  } else if (a.model == "b") {
    s = build_model(ModelId::kB);
  } else if (a.model == "c") {
    const auto cs = build_model_c();
    s = cs.restrict_to(cs.window(a.window ? a.window : 4));
  } else if (a.model == "d") {
    const BigInt k = parse_big(a.k);
    if (k < 2) throw UsageError("--k must be at least 2");
    if (a.window == 0 && k <= kModelDExtensionalLimit) {
      s = build_model_d_finite(k);
    } else {
      const auto cs = build_model_d_computable(k);
      s = cs.restrict_to(cs.window(a.window ? a.window : 8));
    }
  } else {
    throw UsageError("unknown model '" + a.model + "' (expected a, b, c or d)");
  }
  if (a.alternative_n && a.model != "a") throw UsageError("--alternative-n applies to model a only");
  if (g.json)
    std::cout << structure_json(*s).dump(2) << "\n";
  else
    std::cout << emit_dlm(*s);
  return kExitOk;
}

// --- check / bounded-check / derive-n --------------------------------------

struct CheckArgs {
  std::string file;
  std::string scheme;
  bool with_extension = false;
  bool no_cross_check = false;
  std::string axiom_file;
};

int print_report(const Globals& g, const CheckReport& r) {
  if (g.json)
    std::cout << report_json(r).dump(2) << "\n";
  else
    std::cout << format_report(r);
  return r.all_pass() ? kExitOk : kExitFail;
}

int run_check(const Globals& g, const CheckArgs& a) {
  if (a.scheme.empty() && a.axiom_file.empty()) throw UsageError("check needs --scheme, --axiom-file or both");
  Scheme scheme;
  if (!a.scheme.empty()) {
    scheme = make_scheme(a.scheme, a.with_extension);
  } else {
    if (a.with_extension) throw UsageError("--with-extension needs --scheme tas3");
    scheme.name = "custom";
  }
  if (!a.axiom_file.empty()) {
    std::vector<Axiom> extra;
    try {
      extra = parse_axiom_file(read_file(a.axiom_file));
    } catch (const FormatError& e) {
      throw InputError(a.axiom_file + ": " + e.what());
    }
    for (auto& ax : extra) {
      if (scheme.has_axiom(ax.label)) throw InputError(a.axiom_file + ": axiom '" + ax.label + "' clashes with the scheme");
      scheme.axioms.push_back(std::move(ax));
    }
    if (!a.scheme.empty()) scheme.name += "+" + std::filesystem::path(a.axiom_file).filename().string();
  }
  const FiniteStructure s = load_structure(a.file);
  return print_report(g, check_scheme(s, scheme, {.cross_check_n = !a.no_cross_check}));
}

struct BoundedArgs {
  std::string model;
  std::string k = "2";
  std::string scheme;
  bool with_extension = false;
  std::size_t universal = 20;
  std::size_t existential = 22;
};

int run_bounded(const Globals& g, const BoundedArgs& a) {
  const Scheme scheme = make_scheme(a.scheme, a.with_extension);
  if (a.universal > a.existential) throw UsageError("--universal must not exceed --existential");
  ComputableStructure cs = [&] {
    if (a.model == "c") return build_model_c();
    if (a.model == "d") {
      const BigInt k = parse_big(a.k);
      if (k < 2) throw UsageError("--k must be at least 2");
      return build_model_d_computable(k);
    }
    throw UsageError("bounded-check supports models c and d");
  }();
  return print_report(g, bounded_check(cs, scheme, a.universal, a.existential));
}

int run_derive_n(const Globals& g, const std::string& file) {
  const FiniteStructure s = load_structure(file);
  if (!s.has_table("S") || !s.has_table("D")) throw InputError(file + ": derive-n needs S and D tables");
  const auto derived = derived_n(s);
  const bool declared = s.has_table("N");
  std::vector<std::string> declared_n;
  if (declared)
    for (const auto& t : s.labelled_tuples("N")) declared_n.push_back(t[0]);
  const bool agree = !declared || declared_n == derived;
  if (g.json) {
    json j = {{"schema", 1}, {"derived_n", derived}, {"cross_check", declared ? (agree ? "PASS" : "FAIL") : "NONE"}};
    if (declared) j["declared_n"] = declared_n;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "derived N: {" << join(derived, ", ") << "}\n";
    if (declared) {
      std::cout << "declared N: {" << join(declared_n, ", ") << "}\n";
      std::cout << "cross-check " << (agree ? "PASS" : "FAIL") << "\n";
    } else {
      std::cout << "cross-check NONE (no declared N)\n";
    }
  }
  return agree ? kExitOk : kExitFail;
}

// --- find / prove-unsat / ground -------------------------------------------

struct FindArgs {
  std::string scheme;
  bool with_extension = false;
  std::size_t size = 0;
  std::size_t limit = 1;
  bool dedup = false;
  bool pin_witness = false;
  std::optional<std::uint64_t> seed;
};

int run_find(const Globals& g, const FindArgs& a) {
  const Scheme scheme = make_scheme(a.scheme, a.with_extension);
  if (a.size == 0) throw UsageError("--size must be at least 1");
  if (a.dedup && a.size > kMaxDedupSize) throw UsageError("--dedup is limited to --size <= 5");
  const auto models =
      find_models(scheme, a.size, a.limit, {.dedup = a.dedup, .pin_witness = a.pin_witness, .seed = a.seed});
  if (g.json) {
    json list = json::array();
    for (const auto& m : models) list.push_back(structure_json(m));
    std::cout << json{{"schema", 1}, {"scheme", scheme.name}, {"size", a.size}, {"count", models.size()},
                      {"models", list}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "# " << scheme.name << " n=" << a.size << ": " << models.size() << " model(s)"
              << (a.dedup ? " up to isomorphism" : "") << "\n";
    for (std::size_t i = 0; i < models.size(); ++i) std::cout << "\n# model " << i + 1 << "\n" << emit_dlm(models[i]);
  }
  return models.empty() && a.limit > 0 ? kExitFail : kExitOk;
}

struct ProveArgs {
  std::string scheme;
  bool with_extension = false;
  bool core = false;
  std::size_t min_size = 1;
  std::size_t max_size = 0;
  double time_limit = 0;
};

int run_prove_unsat(const Globals& g, const ProveArgs& a) {
  if (a.core && (!a.scheme.empty() || a.with_extension)) throw UsageError("--core replaces --scheme");
  if (!a.core && a.scheme.empty()) throw UsageError("one of --scheme or --core is required");
  const Scheme scheme = a.core ? infinity_core_scheme() : make_scheme(a.scheme, a.with_extension);
  if (a.min_size == 0 || a.max_size < a.min_size) throw UsageError("need 1 <= --min-size <= --max-size");
  SolveOptions opts;
  if (a.time_limit > 0) opts.time_limit = std::chrono::milliseconds(static_cast<long long>(a.time_limit * 1000));

  bool all_unsat = true;
  json rows = json::array();
  for (std::size_t n = a.min_size; n <= a.max_size; ++n) {
    const auto outcome = solve(ground(scheme, n), opts);
    all_unsat = all_unsat && outcome.status == SolveStatus::kUnsat;
    const auto& st = outcome.stats;
    if (g.json) {
      rows.push_back({{"n", n},
                      {"status", status_name(outcome.status)},
                      {"decisions", st.decisions},
                      {"propagations", st.propagations},
                      {"conflicts", st.conflicts},
                      {"seconds", outcome.seconds}});
    } else {
      std::cout << "n=" << n << " " << status_name(outcome.status) << " decisions=" << st.decisions
                << " propagations=" << st.propagations << " conflicts=" << st.conflicts << " time=" << outcome.seconds
                << "s" << std::endl;
    }
  }
  if (g.json) std::cout << json{{"schema", 1}, {"scheme", scheme.name}, {"sizes", rows}}.dump(2) << "\n";
  return all_unsat ? kExitOk : kExitFail;
}

int run_ground(const FindArgs& a) {
  const Scheme scheme = make_scheme(a.scheme, a.with_extension);
  if (a.size == 0) throw UsageError("--size must be at least 1");
  std::cout << ground(scheme, a.size, {.pin_witness = a.pin_witness}).to_dimacs();
  return kExitOk;
}

// --- closure / seq ---------------------------------------------------------

struct ClosureArgs {
  std::string model;
  std::string k = "2";
  std::string structure;
  std::string rules;
  std::string premises;
};

int run_closure(const Globals& g, const ClosureArgs& a) {
  const int sources = !a.model.empty() + !a.structure.empty() + !a.rules.empty();
  if (sources != 1) throw UsageError("give exactly one of --model, --structure, --rules");
  const LogicSystem ls = [&] {
    if (!a.rules.empty()) {
      try {
        return parse_rules(read_file(a.rules));
      } catch (const RulesFormatError& e) {
        throw InputError(a.rules + ": " + e.what());
      } catch (const std::invalid_argument& e) {
        throw InputError(a.rules + ": " + e.what());
      }
    }
    if (!a.structure.empty()) {
      const auto s = load_structure(a.structure);
      if (!s.has_table("S")) throw InputError(a.structure + ": no S table");
      return rules_from_synthesis(s);
    }
    if (a.model == "a") return rules_from_synthesis(build_model(ModelId::kA));
    if (a.model == "b") return rules_from_synthesis(build_model(ModelId::kB));
    if (a.model == "d") {
      const BigInt k = parse_big(a.k);
      if (k < 2 || k > 10'000) throw UsageError("--k must be in 2..10000 for closure");
      return rules_from_synthesis(build_model_d_finite(k));
    }
    throw UsageError("closure supports models a, b and d");
  }();

  std::set<std::string> premises;
  std::string cleaned = a.premises;
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::istringstream in(cleaned);
  for (std::string t; in >> t;) {
    if (!ls.contains(t)) throw UsageError("premise '" + t + "' is not in the language");
    premises.insert(t);
  }
  const auto result = ls.ordered(closure(ls, premises));
  if (g.json) {
    std::vector<std::string> rules;
    for (const auto& r : ls.rules()) rules.push_back(format_rule(r));
    std::cout << json{{"schema", 1}, {"rules", rules}, {"premises", ls.ordered(premises)}, {"closure", result}}.dump(2)
              << "\n";
  } else {
    std::vector<std::string> rules;
    for (const auto& r : ls.rules()) rules.push_back(format_rule(r));
    std::cout << "rules: " << join(rules) << "\n";
    std::cout << "closure: {" << join(result, ", ") << "}\n";
  }
  return kExitOk;
}

int run_seq(const Globals& g, std::size_t max_i) {
  const auto triples = model_c_sequence_prefix(max_i + 1);
  if (g.json) {
    json rows = json::array();
    for (const auto& t : triples)
      rows.push_back({{"i", t.index}, {"a", t.a.str()}, {"b", t.b.str()}, {"c", t.c.str()}});
    std::cout << json{{"schema", 1}, {"sequences", rows}}.dump(2) << "\n";
  } else {
    std::cout << "i a b c\n";
    for (const auto& t : triples) std::cout << t.index << " " << t.a << " " << t.b << " " << t.c << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check, find and explore finite and computable models of the dialectical axiom schemes"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "Structured JSON output");

  ZooArgs zoo;
  auto* zoo_cmd = app.add_subcommand("zoo", "Emit a model from the zoo as a .dlm structure");
  zoo_cmd->add_option("model", zoo.model, "a, b, c or d")->required();
  zoo_cmd->add_option("--k", zoo.k, "Parameter k of model d (arbitrary precision)");
  zoo_cmd->add_option("--window", zoo.window, "Emit the substructure on the first M window elements");
  zoo_cmd->add_flag("--alternative-n", zoo.alternative_n, "Model a with N = {1, 2}");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a .dlm structure against a scheme");
  check_cmd->add_option("file", check.file, ".dlm structure file")->required();
  check_cmd->add_option("--scheme", check.scheme, "tas1, tas2 or tas3");
  check_cmd->add_option("--axiom-file", check.axiom_file, "Extra axioms, one 'LABEL: formula' per line");
  check_cmd->add_flag("--with-extension", check.with_extension, "Add the antithesis progression axiom (tas3)");
  check_cmd->add_flag("--no-n-cross-check", check.no_cross_check, "Do not compare a declared N with the derived N");

  BoundedArgs bounded;
  auto* bounded_cmd = app.add_subcommand("bounded-check", "Windowed check of an infinite or huge model");
  bounded_cmd->add_option("--model", bounded.model, "c or d")->required();
  bounded_cmd->add_option("--k", bounded.k, "Parameter k of model d (arbitrary precision)");
  bounded_cmd->add_option("--scheme", bounded.scheme, "tas1, tas2 or tas3")->required();
  bounded_cmd->add_flag("--with-extension", bounded.with_extension, "Add the antithesis progression axiom (tas3)");
  bounded_cmd->add_option("--universal", bounded.universal, "Universal window size");
  bounded_cmd->add_option("--existential", bounded.existential, "Existential window size");

  std::string derive_file;
  auto* derive_cmd = app.add_subcommand("derive-n", "Print the derived nodal points and cross-check a declared N");
  derive_cmd->add_option("file", derive_file, ".dlm structure file")->required();

  FindArgs find;
  auto* find_cmd = app.add_subcommand("find", "Find models of a scheme at a fixed domain size");
  find_cmd->add_option("--scheme", find.scheme, "tas1, tas2 or tas3")->required();
  find_cmd->add_flag("--with-extension", find.with_extension, "Add the antithesis progression axiom (tas3)");
  find_cmd->add_option("--size", find.size, "Domain size")->required();
  find_cmd->add_option("--limit", find.limit, "Maximum number of models");
  find_cmd->add_flag("--dedup", find.dedup, "One model per isomorphism class (size <= 5)");
  find_cmd->add_flag("--pin-witness", find.pin_witness, "Assert T(0)");
  find_cmd->add_option("--seed", find.seed, "Randomize the branching order");

  ProveArgs prove;
  auto* prove_cmd = app.add_subcommand("prove-unsat", "Show a scheme has no model of each size up to a bound");
  prove_cmd->add_option("--scheme", prove.scheme, "tas1, tas2 or tas3");
  prove_cmd->add_flag("--with-extension", prove.with_extension, "Add the antithesis progression axiom (tas3)");
  prove_cmd->add_flag("--core", prove.core, "Use the sub-theory {E4, E5.1, R3.1, R4.1} with N primitive");
  prove_cmd->add_option("--min-size", prove.min_size, "Smallest size");
  prove_cmd->add_option("--max-size", prove.max_size, "Largest size")->required();
  prove_cmd->add_option("--time-limit", prove.time_limit, "Seconds per size; 0 means none");

  FindArgs ground_args;
  auto* ground_cmd = app.add_subcommand("ground", "Print the ground problem in DIMACS form");
  ground_cmd->add_option("--scheme", ground_args.scheme, "tas1, tas2 or tas3")->required();
  ground_cmd->add_flag("--with-extension", ground_args.with_extension, "Add the antithesis progression axiom (tas3)");
  ground_cmd->add_option("--size", ground_args.size, "Domain size")->required();
  ground_cmd->add_flag("--pin-witness", ground_args.pin_witness, "Assert T(0)");

  ClosureArgs clos;
  auto* closure_cmd = app.add_subcommand("closure", "Deductive closure under the rules read off S");
  closure_cmd->add_option("--model", clos.model, "a, b or d");
  closure_cmd->add_option("--k", clos.k, "Parameter k of model d");
  closure_cmd->add_option("--structure", clos.structure, ".dlm structure whose S gives the rules");
  closure_cmd->add_option("--rules", clos.rules, "Rules file, one tuple per line, conclusion last");
  closure_cmd->add_option("--premises", clos.premises, "Comma-separated premises")->required();

  std::size_t max_i = 10;
  auto* seq_cmd = app.add_subcommand("seq", "Print the model c sequences a_i, b_i, c_i");
  seq_cmd->add_option("--max-i", max_i, "Last index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*zoo_cmd) return run_zoo(g, zoo);
    if (*check_cmd) return run_check(g, check);
    if (*bounded_cmd) return run_bounded(g, bounded);
    if (*derive_cmd) return run_derive_n(g, derive_file);
    if (*find_cmd) return run_find(g, find);
    if (*prove_cmd) return run_prove_unsat(g, prove);
    if (*ground_cmd) return run_ground(ground_args);
    if (*closure_cmd) return run_closure(g, clos);
    if (*seq_cmd) return run_seq(g, max_i);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFormat;
  }
  return kExitUsage;
}
