#pragma once

// Command stages (check, lie, uea, hopf, converse, all) and their JSON / text reports.

#include <chrono>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "qdrinfeld/colorlie.hpp"
#include "qdrinfeld/hopf.hpp"
#include "qdrinfeld/spec_io.hpp"
#include "qdrinfeld/uea.hpp"

namespace qdrinfeld {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitMathFailure = 2;
inline constexpr int kDegreeSoftLimit = 4;

struct Check {
  std::string name;
  bool ok = true;
  bool required = true;  // informational checks never change the status
  std::vector<std::string> certificates;
};

struct Stage {
  std::string name;
  bool exploratory = false;
  std::vector<Check> checks;
  Json details = Json::object();
  std::vector<std::string> notes;
  double millis = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (c.required && !c.ok) return false;
    return true;
  }
  std::string status() const {
    if (exploratory) return passed() ? "exploratory-pass" : "exploratory-fail";
    return passed() ? "pass" : "fail";
  }
  void add(std::string name, bool ok, std::vector<std::string> certs = {}, bool required = true) {
    checks.push_back(Check{std::move(name), ok, required, std::move(certs)});
  }
  void add(std::string name, const CheckResult& r, bool required = true) {
    std::vector<std::string> certs;
    for (const auto& v : r.violations) certs.push_back(v.to_string());
    add(std::move(name), r.ok, std::move(certs), required);
  }
};

struct RunReport {
  std::string command;
  std::string spec_path;
  std::vector<Stage> stages;
  std::vector<std::string> warnings;
  int exit_code = kExitPass;
  std::string output;  // command payload, e.g. canonical text or a normal form

  /// Unless `count_exploratory`, exploratory stages are reported without affecting the exit code.
  void finish(bool count_exploratory = false) {
    exit_code = kExitPass;
    for (const auto& s : stages)
      if ((count_exploratory || !s.exploratory) && !s.passed()) exit_code = kExitMathFailure;
  }

  Json to_json(bool with_timing = true) const {
    Json j;
    j["command"] = command;
    j["spec"] = spec_path;
    if (!output.empty()) j["output"] = output;
    j["warnings"] = warnings;
    Json st = Json::array();
    for (const auto& s : stages) {
      Json o;
      o["name"] = s.name;
      o["status"] = s.status();
      Json checks = Json::object();
      for (const auto& c : s.checks) {
        Json cj;
        cj["ok"] = c.ok;
        cj["required"] = c.required;
        cj["certificates"] = c.certificates;
        checks[c.name] = cj;
      }
      o["checks"] = checks;
      o["details"] = s.details;
      if (!s.notes.empty()) o["notes"] = s.notes;
      st.push_back(o);
    }
    j["stages"] = st;
    j["exit_code"] = exit_code;
    if (with_timing) {
      Json t = Json::object();
      for (const auto& s : stages) t[s.name] = s.millis;
      j["timing_ms"] = t;
    }
    return j;
  }

  std::string to_text(std::size_t max_certificates = 5) const {
    std::string out;
    if (!spec_path.empty()) out += "spec: " + spec_path + "\n";
    for (const auto& w : warnings) out += "warning: " + w + "\n";
    if (!output.empty()) out += output + (output.back() == '\n' ? "" : "\n");
    for (const auto& s : stages) {
      out += "[" + s.name + "] " + s.status() + "\n";
      for (const auto& n : s.notes) out += "  note: " + n + "\n";
      for (const auto& c : s.checks) {
        std::string label = c.name + (c.required ? "" : " (info)");
        label.resize(std::max<std::size_t>(label.size() + 1, 30), ' ');
        out += "  " + label + (c.ok ? "yes" : "no") + "\n";
        for (std::size_t k = 0; k < c.certificates.size() && k < max_certificates; ++k)
          out += "      " + c.certificates[k] + "\n";
        if (c.certificates.size() > max_certificates)
          out += "      ... " + std::to_string(c.certificates.size() - max_certificates) + " more\n";
      }
    }
    out += "exit: " + std::to_string(exit_code) + "\n";
    return out;
  }
};

namespace detail {

template <class F>
Stage timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Stage s = f();
  s.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

inline const AlgebraSpec& need_algebra(const ParsedSpec& spec, const std::string& command) {
  if (!std::holds_alternative<AlgebraSpec>(spec))
    throw SpecError("'" + command + "' needs an algebra spec, not a generic-lie spec");
  return std::get<AlgebraSpec>(spec);
}

}  // namespace detail

inline Stage stage_check(const AlgebraSpec& spec) {
  return detail::timed([&] {
    Stage s;
    s.name = "check";
    PBWReport r = check_pbw(spec);
    s.add("invariance", r.cond1);
    s.add("condition2", r.cond2);
    s.add("condition3", r.cond3);
    s.add("pbw", r.verdict, {});
    std::vector<std::string> oracle_certs = r.oracle.failures;
    s.add("overlap_oracle_agrees", r.verdict == r.oracle.confluent, oracle_certs);
    s.add("vanishing", r.vanishing, false);
    s.add("strong_vanishing", r.strong_vanishing, false);
    s.add("condition3_per_g", r.cond3_per_g, false);
    s.add("alternative_forms_agree", r.alt_forms_agree, {}, false);
    s.add("corollary_consistent", r.corollary_consistent, {}, false);
    s.details["n"] = spec.n();
    s.details["group_order"] = spec.group().size();
    s.details["fixed_point_free"] = r.fixed_point_free;
    s.details["overlap_oracle_confluent"] = r.oracle.confluent;
    if (r.lemma_applicable) s.details["fixed_point_free_lemma_agrees"] = r.lemma_agrees;
    return s;
  });
}

/// With `quotient`, also checks the grading by A/N; those checks count toward the status only when
/// `quotient_required` is set.
inline Stage stage_lie(const ParsedSpec& parsed, bool quotient, bool quotient_required = true) {
  return detail::timed([&] {
    Stage s;
    s.name = "lie";
    if (const auto* gl = std::get_if<GenericLieSpec>(&parsed)) {
      ColorLieRing L = build_color_lie_ring(*gl);
      AxiomReport ax = check_color_axioms(L, GradingMode::full);
      s.add("antisymmetry", ax.antisymmetry);
      s.add("jacobi", ax.jacobi);
      s.add("grading", ax.grading);
      auto parts = split_parts(L);
      s.details["dim"] = L.dim();
      s.details["positive"] = parts.positive.size();
      s.details["negative"] = parts.negative.size();
      return s;
    }
    const auto& spec = std::get<AlgebraSpec>(parsed);
    ColorLieRing L = build_color_lie_ring(spec, true);
    s.add("hypothesis", L.hypothesis_met, L.hypothesis_notes);
    AxiomReport ax = check_color_axioms(L);
    s.add("antisymmetry", ax.antisymmetry);
    s.add("jacobi", ax.jacobi);
    s.add("bimodule", ax.bimodule);
    s.add("yetter_drinfeld", ax.yetter_drinfeld);
    auto pp = check_prop_positive(L);
    s.add("positive_self_brackets_vanish", pp.holds, pp.failures, false);
    s.details["dim"] = L.dim();
    auto parts = split_parts(L);
    s.details["positive"] = parts.positive.size();
    s.details["negative"] = parts.negative.size();
    if (quotient) {
      QuotientReport q = build_N_and_quotient(spec);
      s.add("epsilon_on_A_mod_N", q.well_defined, q.failures, quotient_required);
      AxiomReport g = check_color_axioms(L, GradingMode::quotient, &q.N);
      s.add("bracket_homogeneous_mod_N", g.grading, quotient_required);
      Json gens = Json::array();
      for (const auto& d : q.N.generators()) gens.push_back(q.N.ambient().to_string(d));
      s.details["N_generators"] = gens;
    }
    return s;
  });
}

inline Stage stage_uea(const ParsedSpec& parsed, int degree, const std::map<std::string, Scalar>& overrides) {
  return detail::timed([&] {
    Stage s;
    s.name = "uea";
    if (const auto* gl = std::get_if<GenericLieSpec>(&parsed)) {
      ColorLieRing L = build_color_lie_ring(*gl);
      UEA U = build_uea(L);
      OverlapReport ov = rewrite_overlaps(U.system);
      s.add("overlaps_resolve", ov.confluent, ov.failures);
      s.details["relations"] = U.relations;
      Json nil = Json::array();
      for (int x : split_parts(L).negative) {
        NCElement sq = U.system.multiply(U.system.letter(x), U.system.letter(x));
        if (sq.is_zero()) nil.push_back(L.labels[x]);
      }
      s.details["square_zero_generators"] = nil;
      return s;
    }
    const auto& spec = std::get<AlgebraSpec>(parsed);
    ColorLieRing L = build_color_lie_ring(spec, true);
    s.add("hypothesis", L.hypothesis_met, L.hypothesis_notes);
    AxiomReport ax = check_color_axioms(L);
    if (!ax.ok()) {
      s.add("color_axioms", false, {ax.all_violations().front().to_string()});
      return s;
    }
    IsoReport iso = iso_check(spec, L);
    s.add("isomorphism", iso.ok(), iso.residues);
    DimensionReport dim = dimension_oracle(spec, degree, overrides);
    std::vector<std::string> dim_cert;
    if (!dim.matches())
      dim_cert.push_back("quotient_dim " + std::to_string(dim.quotient_dim) + " != pbw_count " + std::to_string(dim.pbw_count));
    s.add("dimension", dim.matches(), dim_cert);
    UEAPBWReport pu = pbw_for_uea(L);
    s.add("uea_overlaps_resolve", pu.overlaps.confluent, pu.overlaps.failures);
    s.details["degree"] = degree;
    s.details["pbw_count"] = dim.pbw_count;
    s.details["quotient_dim"] = dim.quotient_dim;
    s.details["relation_rows"] = dim.rows;
    return s;
  });
}

inline Stage stage_hopf(const AlgebraSpec& spec, int degree) {
  return detail::timed([&] {
    Stage s;
    s.name = "hopf";
    CheckResult strong = check_vanishing(spec, true);
    s.exploratory = !strong.ok;
    if (s.exploratory) s.notes.push_back("strong vanishing fails; no braided Hopf structure is expected");
    s.add("braiding_compatibility", check_braiding_compatibility(spec));
    HopfReport r = check_hopf_axioms(spec, degree);
    s.add("coproduct_well_defined", r.well_defined);
    s.add("coassociativity", r.coassociativity);
    s.add("counit", r.counit);
    s.add("antipode", r.antipode);
    s.details["degree"] = degree;
    return s;
  });
}

inline Stage stage_converse(const ParsedSpec& parsed) {
  return detail::timed([&] {
    Stage s;
    s.name = "converse";
    if (const auto* gl = std::get_if<GenericLieSpec>(&parsed)) converse_construct(build_color_lie_ring(*gl));
    const auto& spec = detail::need_algebra(parsed, "converse");
    ColorLieRing L = build_color_lie_ring(spec);
    ConverseResult c = converse_construct(L);
    s.add("invariance", c.invariance);
    s.add("vanishing", c.vanishing);
    s.add("jacobi", c.jacobi);
    const std::string original = format_spec(spec), rebuilt = format_spec(c.spec);
    s.add("round_trip", original == rebuilt, original == rebuilt ? std::vector<std::string>{} : std::vector<std::string>{rebuilt});
    s.details["spec"] = rebuilt;
    return s;
  });
}

struct RunOptions {
  int degree = 3;
  bool quotient = false;
  std::map<std::string, std::string> instantiate;  // name -> expression text
};

inline std::map<std::string, Scalar> parse_overrides(const ParsedSpec& parsed, const std::map<std::string, std::string>& text) {
  std::map<std::string, Scalar> out;
  if (text.empty()) return out;
  const auto& spec = detail::need_algebra(parsed, "--instantiate");
  for (const auto& [name, expr] : text) {
    const auto& params = spec.params();
    if (std::find(params.begin(), params.end(), name) == params.end())
      throw SpecError("--instantiate: unknown parameter '" + name + "'");
    Scalar v = parse_scalar(expr, spec.ctx());
    if (!v.is_constant()) throw SpecError("--instantiate: value for '" + name + "' must not involve parameters");
    out.emplace(name, v);
  }
  return out;
}

/// check -> lie -> uea -> hopf; hopf runs in exploratory mode when strong vanishing fails.
inline RunReport run_all(const ParsedSpec& parsed, const RunOptions& opt = {}) {
  RunReport rep;
  rep.command = "all";
  auto overrides = parse_overrides(parsed, opt.instantiate);
  if (const auto* spec = std::get_if<AlgebraSpec>(&parsed)) {
    rep.stages.push_back(stage_check(*spec));
    // the A/N grading is only expected under strong vanishing
    rep.stages.push_back(stage_lie(parsed, true, check_vanishing(*spec, true).ok));
    rep.stages.push_back(stage_uea(parsed, opt.degree, overrides));
    rep.stages.push_back(stage_hopf(*spec, opt.degree));
  } else {
    rep.stages.push_back(stage_lie(parsed, false));
    rep.stages.push_back(stage_uea(parsed, opt.degree, overrides));
  }
  rep.finish();
  return rep;
}

inline RunReport run_command(const std::string& command, const ParsedSpec& parsed, const RunOptions& opt = {}) {
  if (command == "all") return run_all(parsed, opt);
  RunReport rep;
  rep.command = command;
  if (command == "check") {
    rep.stages.push_back(stage_check(detail::need_algebra(parsed, command)));
  } else if (command == "lie") {
    rep.stages.push_back(stage_lie(parsed, opt.quotient));
  } else if (command == "uea") {
    rep.stages.push_back(stage_uea(parsed, opt.degree, parse_overrides(parsed, opt.instantiate)));
  } else if (command == "hopf") {
    rep.stages.push_back(stage_hopf(detail::need_algebra(parsed, command), opt.degree));
  } else if (command == "converse") {
    rep.stages.push_back(stage_converse(parsed));
    rep.output = rep.stages.back().details["spec"].get<std::string>();
  } else if (command == "fmt") {
    rep.output = format_spec(parsed);
  } else {
    throw SpecError("unknown command '" + command + "'");
  }
  rep.finish(true);
  return rep;
}

/// Normal form of an expression in H, or in U(L) for a generic ring.
inline std::string normal_form_text(const ParsedSpec& parsed, const std::string& expr) {
  if (const auto* spec = std::get_if<AlgebraSpec>(&parsed)) {
    RewriteSystem sys = make_h_system(*spec);
    return sys.to_string(sys.normal_form(parse_element(expr, sys)));
  }
  UEA U = build_uea(build_color_lie_ring(std::get<GenericLieSpec>(parsed)));
  return U.system.to_string(U.system.normal_form(parse_element(expr, U.system)));
}

}  // namespace qdrinfeld
