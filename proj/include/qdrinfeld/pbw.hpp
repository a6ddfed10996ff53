#pragma once

// PBW criteria for H_{q,kappa}: the closed-form conditions, their alternative
// forms, the vanishing conditions, and an independent overlap-resolution check.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdrinfeld/algebra.hpp"

namespace qdrinfeld {

/// A failed identity. Indices are 0-based; -1 means "not part of this tuple".
struct Violation {
  std::string condition;
  int i = -1, j = -1, k = -1, r = -1;
  std::optional<GroupElement> g;
  std::string lhs, rhs;

  std::string tuple_string() const {
    std::string out = "(";
    auto add = [&out](const std::string& s) { out += (out.size() > 1 ? "," : "") + s; };
    if (i >= 0) add("i=" + std::to_string(i + 1));
    if (j >= 0) add("j=" + std::to_string(j + 1));
    if (k >= 0) add("k=" + std::to_string(k + 1));
    if (g) {
      std::string gs = "g=[";
      for (std::size_t t = 0; t < g->exps.size(); ++t) gs += (t ? "," : "") + std::to_string(g->exps[t]);
      add(gs + "]");
    }
    if (r >= 0) add("r=" + std::to_string(r + 1));
    return out + ")";
  }

  std::string to_string() const { return condition + " " + tuple_string() + ": " + lhs + " != " + rhs; }
};

struct CheckResult {
  bool ok = true;
  std::vector<Violation> violations;

  void fail(Violation v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

namespace detail {

inline std::string int_list_string(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t t = 0; t < v.size(); ++t) out += (t ? "," : "") + std::to_string(v[t]);
  return out + "]";
}

inline std::vector<std::array<int, 3>> distinct_triples(int n) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k && i != k) out.push_back({i, j, k});
  return out;
}

inline std::array<std::array<int, 3>, 3> cyclic(const std::array<int, 3>& t) {
  return {{{t[0], t[1], t[2]}, {t[1], t[2], t[0]}, {t[2], t[0], t[1]}}};
}

inline void vg_add_scaled(VGElement& acc, const VGElement& x, const Scalar& s) {
  for (const auto& [rg, c] : x) vg_add(acc, rg.first, rg.second, c * s);
}

/// kappa(v_k, sum_r a_r v_r) with the coefficients a_r given densely.
inline VGElement kappa_left(const AlgebraSpec& spec, int k, const std::vector<Scalar>& a) {
  VGElement out;
  for (int r = 0; r < spec.n(); ++r)
    if (!a[r].is_zero()) vg_add_scaled(out, kappa_as_vg(spec, k, r), a[r]);
  return out;
}

inline VGElement kappa_right(const AlgebraSpec& spec, const std::vector<Scalar>& a, int k) {
  VGElement out;
  for (int r = 0; r < spec.n(); ++r)
    if (!a[r].is_zero()) vg_add_scaled(out, kappa_as_vg(spec, r, k), a[r]);
  return out;
}

}  // namespace detail

/// Condition (1) in the form chi_i chi_j = chi_r on the support of kappa.
inline CheckResult check_invariance(const AlgebraSpec& spec) {
  CheckResult res;
  const auto& G = spec.group();
  for (const auto& [ij, value] : spec.kappa_table())
    for (const auto& t : value) {
      Character prod = character_product(G, spec.chi(ij.first), spec.chi(ij.second));
      if (!(prod == spec.chi(t.r))) {
        Violation v{"invariance", ij.first, ij.second, -1, t.r, t.g, "", ""};
        v.lhs = "chi_" + std::to_string(ij.first + 1) + "*chi_" + std::to_string(ij.second + 1) + " = " +
                detail::int_list_string(prod.exps);
        v.rhs = "chi_" + std::to_string(t.r + 1) + " = " + detail::int_list_string(spec.chi(t.r).exps);
        res.fail(std::move(v));
      }
    }
  return res;
}

/// G-invariance checked literally: kappa(^h v_i, ^h v_j) = ^h kappa(v_i, v_j) for all h, i < j.
inline CheckResult check_invariance_direct(const AlgebraSpec& spec) {
  CheckResult res;
  const auto& G = spec.group();
  for (const auto& h : G.elements())
    for (const auto& [ij, value] : spec.kappa_table()) {
      Scalar lhs_scale = spec.chi_value(ij.first, h) * spec.chi_value(ij.second, h);
      for (const auto& t : value) {
        Scalar lhs = lhs_scale * t.c, rhs = spec.chi_value(t.r, h) * t.c;
        if (!(lhs == rhs)) res.fail(Violation{"invariance", ij.first, ij.second, -1, t.r, h, lhs.to_string(), rhs.to_string()});
      }
    }
  return res;
}

/// Condition (2): the first family for r not in {i, j}, the second family covering r in {i, j}.
inline CheckResult check_condition2(const AlgebraSpec& spec) {
  CheckResult res;
  const int n = spec.n();
  for (const auto& g : spec.group().elements())
    for (const auto& [i, j, k] : detail::distinct_triples(n)) {
      const Scalar chik = spec.chi_value(k, g);
      for (int r = 0; r < n; ++r) {
        if (r == i || r == j) continue;
        Scalar c = spec.coeff(r, i, j, g);
        if (c.is_zero()) continue;
        Scalar lhs = (chik - spec.q(j, k) * spec.q(i, k) * spec.q(k, r)) * c;
        if (!lhs.is_zero())
          res.fail(Violation{"condition2a", i, j, k, r, g,
                             "chi_k(g) = " + chik.to_string(),
                             "q_jk*q_ik*q_kr = " + (spec.q(j, k) * spec.q(i, k) * spec.q(k, r)).to_string()});
      }
      Scalar ck = spec.coeff(k, j, k, g), ci = spec.coeff(i, i, j, g);
      Scalar lhs = (Scalar::one(spec.ctx()) - spec.q(i, j) * spec.chi_value(i, g)) * ck + (spec.q(j, k) - chik) * ci;
      if (!lhs.is_zero()) res.fail(Violation{"condition2b", i, j, k, -1, g, lhs.to_string(), "0"});
    }
  return res;
}

/// The cyclic sum of condition (3) at a fixed g:
///   sum (chi_k(g) - q_jk) c_i^{ijg} kappa(v_k, v_i) + sum q_jk kappa(v_k, kappa_g(v_i, v_j)).
inline VGElement condition3_sum(const AlgebraSpec& spec, const std::array<int, 3>& t, const GroupElement& g) {
  VGElement acc;
  for (const auto& [i, j, k] : detail::cyclic(t)) {
    Scalar c = spec.coeff(i, i, j, g);
    if (!c.is_zero()) detail::vg_add_scaled(acc, kappa_as_vg(spec, k, i), (spec.chi_value(k, g) - spec.q(j, k)) * c);
    detail::vg_add_scaled(acc, detail::kappa_left(spec, k, spec.kappa_g(i, j, g)), spec.q(j, k));
  }
  return acc;
}

/// Degree-one part of the overlap v_k v_j v_i: the fixed-g sums above, each carried by its own
/// g on the right, added over all of G. Terms coming from different g can cancel here.
inline VGElement condition3_total(const AlgebraSpec& spec, const std::array<int, 3>& t) {
  const auto& G = spec.group();
  VGElement acc;
  for (const auto& g : G.elements()) {
    const int gi = G.index(g);
    for (const auto& [rh, c] : condition3_sum(spec, t, g)) vg_add(acc, rh.first, G.index(G.mul(G.element(rh.second), G.element(gi))), c);
  }
  return acc;
}

/// Condition (3): condition3_total vanishes for all distinct i, j, k.
inline CheckResult check_condition3(const AlgebraSpec& spec) {
  CheckResult res;
  auto sys = make_h_system(spec);
  for (const auto& t : detail::distinct_triples(spec.n())) {
    VGElement s = condition3_total(spec, t);
    if (!s.empty()) res.fail(Violation{"condition3", t[0], t[1], t[2], -1, std::nullopt, sys.vg_to_string(s), "0"});
  }
  return res;
}

/// Condition (3) read separately for every g; stronger than condition3 when kappa has several group components.
inline CheckResult check_condition3_per_g(const AlgebraSpec& spec) {
  CheckResult res;
  auto sys = make_h_system(spec);
  for (const auto& g : spec.group().elements())
    for (const auto& t : detail::distinct_triples(spec.n())) {
      VGElement s = condition3_sum(spec, t, g);
      if (!s.empty()) res.fail(Violation{"condition3-per-g", t[0], t[1], t[2], -1, g, sys.vg_to_string(s), "0"});
    }
  return res;
}

/// Alternative form of (2): sum q_jk v_k kappa_g(v_i,v_j) - q_ki chi_k(g) kappa_g(v_i,v_j) v_k = 0 in S_q(V).
inline CheckResult check_condition2_alt(const AlgebraSpec& spec) {
  CheckResult res;
  const int n = spec.n();
  for (const auto& g : spec.group().elements())
    for (const auto& t : detail::distinct_triples(n)) {
      std::map<std::pair<int, int>, Scalar> acc;  // coefficient of v_a v_b, a <= b
      auto add = [&acc, &spec](int a, int b, const Scalar& c) {
        // v_a v_b = q_ab v_b v_a in S_q(V)
        Scalar s = c;
        if (a > b) {
          s = s * spec.q(a, b);
          std::swap(a, b);
        }
        auto& slot = acc[{a, b}];
        slot += s;
      };
      for (const auto& [i, j, k] : detail::cyclic(t)) {
        auto kg = spec.kappa_g(i, j, g);
        for (int r = 0; r < n; ++r) {
          if (kg[r].is_zero()) continue;
          add(k, r, spec.q(j, k) * kg[r]);
          add(r, k, -(spec.q(k, i) * spec.chi_value(k, g) * kg[r]));
        }
      }
      for (const auto& [ab, c] : acc)
        if (!c.is_zero())
          res.fail(Violation{"condition2-alt", t[0], t[1], t[2], -1, g,
                             "coefficient of v" + std::to_string(ab.first + 1) + "v" + std::to_string(ab.second + 1) +
                                 " = " + c.to_string(),
                             "0"});
    }
  return res;
}

/// Alternative form of (3) at a fixed g:
///   sum q_ki chi_k(g) kappa(kappa_g(v_i,v_j), v_k) - q_jk kappa(v_k, kappa_g(v_i,v_j)).
inline VGElement condition3_alt_sum(const AlgebraSpec& spec, const std::array<int, 3>& t, const GroupElement& g) {
  VGElement acc;
  for (const auto& [i, j, k] : detail::cyclic(t)) {
    auto kg = spec.kappa_g(i, j, g);
    detail::vg_add_scaled(acc, detail::kappa_right(spec, kg, k), spec.q(k, i) * spec.chi_value(k, g));
    detail::vg_add_scaled(acc, detail::kappa_left(spec, k, kg), -spec.q(j, k));
  }
  return acc;
}

inline VGElement condition3_alt_total(const AlgebraSpec& spec, const std::array<int, 3>& t) {
  const auto& G = spec.group();
  VGElement acc;
  for (const auto& g : G.elements())
    for (const auto& [rh, c] : condition3_alt_sum(spec, t, g))
      vg_add(acc, rh.first, G.index(G.mul(G.element(rh.second), g)), c);
  return acc;
}

inline CheckResult check_condition3_alt(const AlgebraSpec& spec) {
  CheckResult res;
  auto sys = make_h_system(spec);
  for (const auto& t : detail::distinct_triples(spec.n())) {
    VGElement s = condition3_alt_total(spec, t);
    if (!s.empty()) res.fail(Violation{"condition3-alt", t[0], t[1], t[2], -1, std::nullopt, sys.vg_to_string(s), "0"});
  }
  return res;
}

inline CheckResult check_condition3_alt_per_g(const AlgebraSpec& spec) {
  CheckResult res;
  auto sys = make_h_system(spec);
  for (const auto& g : spec.group().elements())
    for (const auto& t : detail::distinct_triples(spec.n())) {
      VGElement s = condition3_alt_sum(spec, t, g);
      if (!s.empty()) res.fail(Violation{"condition3-alt-per-g", t[0], t[1], t[2], -1, g, sys.vg_to_string(s), "0"});
    }
  return res;
}

/// (3'): sum q_jk kappa(v_k, kappa(v_i, v_j)) = 0 in V (x) kG, where kappa(v_k, v_r g) = kappa(v_k, v_r) g.
inline VGElement jacobi_sum(const AlgebraSpec& spec, const std::array<int, 3>& t) {
  VGElement acc;
  const auto& G = spec.group();
  for (const auto& [i, j, k] : detail::cyclic(t))
    for (const auto& term : spec.kappa(i, j))
      for (const auto& inner : spec.kappa(k, term.r))
        vg_add(acc, inner.r, G.index(G.mul(inner.g, term.g)), spec.q(j, k) * term.c * inner.c);
  return acc;
}

inline CheckResult check_condition3_prime(const AlgebraSpec& spec) {
  CheckResult res;
  auto sys = make_h_system(spec);
  for (const auto& t : detail::distinct_triples(spec.n())) {
    VGElement s = jacobi_sum(spec, t);
    if (!s.empty()) res.fail(Violation{"condition3'", t[0], t[1], t[2], -1, std::nullopt, sys.vg_to_string(s), "0"});
  }
  return res;
}

/// chi_k(g) = q_ik q_jk q_kr whenever c_r^{ijg} != 0; k ranges over k not in {i,j}, or over all k if strong.
inline CheckResult check_vanishing(const AlgebraSpec& spec, bool strong) {
  CheckResult res;
  for (const auto& [ij, value] : spec.kappa_table()) {
    const auto [i, j] = ij;
    for (const auto& t : value)
      for (int k = 0; k < spec.n(); ++k) {
        if (!strong && (k == i || k == j)) continue;
        Scalar lhs = spec.chi_value(k, t.g), rhs = spec.q(i, k) * spec.q(j, k) * spec.q(k, t.r);
        if (!(lhs == rhs))
          res.fail(Violation{strong ? "strong-vanishing" : "vanishing", i, j, k, t.r, t.g,
                             "chi_k(g) = " + lhs.to_string(), "q_ik*q_jk*q_kr = " + rhs.to_string()});
      }
  }
  return res;
}

inline bool fixed_point_free(const AlgebraSpec& spec) {
  for (const auto& chi : spec.chars())
    if (is_trivial(chi)) return false;
  return true;
}

struct OverlapReport {
  bool confluent = true;
  std::vector<std::string> failures;
};

/// Resolves every ambiguity of the rewriting system directly:
///   (a) v_k v_j v_i for k > j > i, rewritten first at the left pair or first at the right pair;
///   (b) (g h) v_i against g (h v_i);
///   (c) g (v_j v_i) with g pushed first or the relation applied first.
inline OverlapReport overlap_oracle(const AlgebraSpec& spec) {
  OverlapReport rep;
  const int n = spec.n();
  const auto sys = make_h_system(spec);
  const auto& G = spec.group();
  const auto& ctx = spec.ctx();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        NCKey key{Word{k, j, i}, 0};
        NCElement left(ctx), right(ctx);
        sys.rewrite_at(key, Scalar::one(ctx), 0, left);
        sys.rewrite_at(key, Scalar::one(ctx), 1, right);
        NCElement a = sys.normal_form(left), b = sys.normal_form(right);
        if (!(a == b))
          rep.failures.push_back("v" + std::to_string(k + 1) + "v" + std::to_string(j + 1) + "v" + std::to_string(i + 1) +
                                 ": " + sys.to_string(a) + " vs " + sys.to_string(b));
      }
  for (const auto& g : G.elements())
    for (const auto& h : G.elements())
      for (int i = 0; i < n; ++i) {
        Scalar direct = spec.chi_value(i, G.mul(g, h));
        Scalar stepwise = spec.chi_value(i, h) * spec.chi_value(i, g);
        if (!(direct == stepwise))
          rep.failures.push_back("(gh)v" + std::to_string(i + 1) + " with g=" + G.to_string(g) + ", h=" + G.to_string(h));
      }
  for (const auto& g : G.elements()) {
    const int gi = G.index(g);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        NCElement pushed = sys.normal_form(sys.push_group_right(gi, Word{j, i}));
        NCElement relation_first = sys.normal_form(sys.t_multiply(sys.group_element(gi), sys.normal_form(sys.word(Word{j, i}))));
        if (!(pushed == relation_first))
          rep.failures.push_back("g" + G.to_string(g) + "*v" + std::to_string(j + 1) + "v" + std::to_string(i + 1) + ": " +
                                 sys.to_string(pushed) + " vs " + sys.to_string(relation_first));
      }
  }
  rep.confluent = rep.failures.empty();
  return rep;
}

struct PBWReport {
  CheckResult cond1, cond2, cond3;
  CheckResult vanishing, strong_vanishing;
  CheckResult cond2_alt, cond3_alt, cond3_prime;
  /// (3) required separately for each g; sufficient for PBW but not necessary.
  CheckResult cond3_per_g;
  bool fixed_point_free = false;
  OverlapReport oracle;
  bool verdict = false;
  /// Alternative (2) against (2), and alternative (3) against (3) wherever (2) holds.
  bool alt_forms_agree = true;
  /// Fixed-point-free and invariant: condition (2) should match the vanishing condition.
  bool lemma_applicable = false;
  bool lemma_agrees = true;
  /// (1) with vanishing and (3') should force the verdict.
  bool corollary_consistent = true;
};

inline PBWReport check_pbw(const AlgebraSpec& spec) {
  PBWReport rep;
  rep.cond1 = check_invariance(spec);
  rep.cond2 = check_condition2(spec);
  rep.cond3 = check_condition3(spec);
  rep.vanishing = check_vanishing(spec, false);
  rep.strong_vanishing = check_vanishing(spec, true);
  rep.cond2_alt = check_condition2_alt(spec);
  rep.cond3_alt = check_condition3_alt(spec);
  rep.cond3_prime = check_condition3_prime(spec);
  rep.cond3_per_g = check_condition3_per_g(spec);
  rep.fixed_point_free = fixed_point_free(spec);
  rep.oracle = overlap_oracle(spec);
  rep.verdict = rep.cond1.ok && rep.cond2.ok && rep.cond3.ok;
  rep.alt_forms_agree = rep.cond2_alt.ok == rep.cond2.ok && (!rep.cond2.ok || rep.cond3_alt.ok == rep.cond3.ok);
  rep.lemma_applicable = rep.fixed_point_free && rep.cond1.ok;
  rep.lemma_agrees = !rep.lemma_applicable || rep.cond2.ok == rep.vanishing.ok;
  rep.corollary_consistent = !(rep.cond1.ok && rep.vanishing.ok && rep.cond3_prime.ok) || rep.verdict;
  return rep;
}

}  // namespace qdrinfeld
