// qdrinfeld: command-line front end.

#include <CLI11.hpp>
#include <iostream>

#include "qdrinfeld/qdrinfeld.hpp"

using namespace qdrinfeld;

namespace {

struct ErrorKind {
  std::string kind;
  int exit_code;
};

int report_error(const std::string& message, const ErrorKind& e, bool json) {
  std::cerr << "qdrinfeld: " << message << "\n";
  if (json) {
    Json j;
    j["error"] = message;
    j["kind"] = e.kind;
    j["exit_code"] = e.exit_code;
    std::cout << j.dump(2) << "\n";
  }
  return e.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for quantum Drinfeld orbifold algebras"};
  app.require_subcommand(1);

  std::string spec_path, expr;
  bool json = false;
  RunOptions opt;
  std::vector<std::string> instantiate;

  auto add_spec = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "spec file")->required();
    sub->add_flag("--json", json, "print a JSON report");
  };
  auto add_degree = [&](CLI::App* sub) { sub->add_option("--degree,-d", opt.degree, "degree bound (default 3)"); };
  auto add_instantiate = [&](CLI::App* sub) {
    sub->add_option("--instantiate", instantiate, "parameter value, name=expr (repeatable)");
  };

  auto* check = app.add_subcommand("check", "PBW conditions, vanishing conditions and the overlap oracle");
  add_spec(check);
  auto* lie = app.add_subcommand("lie", "build the color Lie ring and check its axioms");
  add_spec(lie);
  lie->add_flag("--quotient", opt.quotient, "also check the grading by A/N");
  auto* uea = app.add_subcommand("uea", "enveloping algebra: isomorphism with H and the dimension oracle");
  add_spec(uea);
  add_degree(uea);
  add_instantiate(uea);
  auto* hopf = app.add_subcommand("hopf", "braided Hopf axioms up to a degree bound");
  add_spec(hopf);
  add_degree(hopf);
  auto* converse = app.add_subcommand("converse", "rebuild the spec from its color Lie ring");
  add_spec(converse);
  auto* nf = app.add_subcommand("normal-form", "normal form of an expression");
  add_spec(nf);
  nf->add_option("expr", expr, "expression, e.g. v2*v1*g[1]")->required();
  auto* fmt = app.add_subcommand("fmt", "print the canonical form of a spec");
  add_spec(fmt);
  auto* all = app.add_subcommand("all", "check, lie, uea and hopf in order");
  add_spec(all);
  add_degree(all);
  add_instantiate(all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    for (const auto& item : instantiate) {
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw SpecError("--instantiate expects name=expr, got '" + item + "'");
      opt.instantiate[detail::trim(item.substr(0, eq))] = item.substr(eq + 1);
    }
    if (opt.degree < 1) throw SpecError("--degree must be at least 1");
    ParsedSpec parsed = parse_spec_file(spec_path);

    RunReport rep;
    if (command == "normal-form") {
      rep.command = command;
      rep.output = normal_form_text(parsed, expr);
    } else {
      rep = run_command(command, parsed, opt);
    }
    rep.spec_path = spec_path;
    if (opt.degree > kDegreeSoftLimit && (command == "uea" || command == "hopf" || command == "all"))
      rep.warnings.push_back("degree " + std::to_string(opt.degree) + " is above " + std::to_string(kDegreeSoftLimit) +
                             "; cost grows like |G|^2 n^d");

    if (json)
      std::cout << rep.to_json().dump(2) << "\n";
    else if (command == "fmt" || command == "normal-form")
      std::cout << rep.output << (rep.output.empty() || rep.output.back() != '\n' ? "\n" : "");
    else
      std::cout << rep.to_text();
    return rep.exit_code;
  } catch (const ParseError& e) {
    return report_error(e.what(), {"parse", kExitInputError}, json);
  } catch (const SymbolicParameter& e) {
    return report_error(e.what(), {"symbolic-parameter", kExitInputError}, json);
  } catch (const SpecError& e) {
    return report_error(e.what(), {"spec", kExitInputError}, json);
  } catch (const HypothesisNotMet& e) {
    return report_error(e.what(), {"hypothesis-not-met", kExitMathFailure}, json);
  } catch (const AxiomsFailed& e) {
    return report_error(e.what(), {"axioms-failed", kExitMathFailure}, json);
  } catch (const NotPurelyPositive& e) {
    return report_error(e.what(), {"not-purely-positive", kExitMathFailure}, json);
  } catch (const NonUnitEpsilon& e) {
    return report_error(e.what(), {"non-unit-epsilon", kExitMathFailure}, json);
  } catch (const ValueNotSign& e) {
    return report_error(e.what(), {"value-not-sign", kExitMathFailure}, json);
  } catch (const NotAUnit& e) {
    return report_error(e.what(), {"not-a-unit", kExitInputError}, json);
  }
}
