#pragma once

// Bicharacters on A = Z^a x G, color Lie rings (built from a spec as L = V (x) kG,
// or given generically), their axioms, the subgroup N and the positive/negative split.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/group.hpp"
#include "qdrinfeld/pbw.hpp"
#include "qdrinfeld/spec_io.hpp"

namespace qdrinfeld {

/// eps(x, y) = prod_{s,t} E[s][t]^(x_s y_t) over the generators of A.
class Bicharacter {
 public:
  Bicharacter() = default;
  Bicharacter(ContextPtr ctx, GradingGroup A, std::vector<std::vector<Scalar>> table)
      : ctx_(std::move(ctx)), A_(std::move(A)), table_(std::move(table)) {
    const std::size_t n = A_.generator_count();
    if (table_.size() != n) throw SpecError("epsilon table needs " + std::to_string(n) + " rows");
    for (const auto& row : table_) {
      if (row.size() != n) throw SpecError("epsilon table needs " + std::to_string(n) + " columns");
      for (const auto& e : row)
        if (!e.is_unit()) throw NonUnitEpsilon("epsilon entry '" + e.to_string() + "' is not a unit");
    }
  }

  const GradingGroup& grading() const { return A_; }
  const ContextPtr& ctx() const { return ctx_; }
  const std::vector<std::vector<Scalar>>& table() const { return table_; }

  Scalar operator()(const ADegree& x, const ADegree& y) const {
    auto cx = A_.coordinates(x), cy = A_.coordinates(y);
    Scalar out = Scalar::one(ctx_);
    for (std::size_t s = 0; s < cx.size(); ++s) {
      if (cx[s] == 0) continue;
      for (std::size_t t = 0; t < cy.size(); ++t)
        if (cy[t] != 0) out *= table_[s][t].pow(cx[s] * cy[t]);
    }
    return out;
  }

  /// Antisymmetry on generators, plus E[s][t]^{m} = 1 whenever s or t is a torsion generator of order m.
  std::vector<std::string> validate() const {
    std::vector<std::string> problems;
    const std::size_t n = A_.generator_count(), a = A_.free_rank();
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (!(table_[s][t] * table_[t][s]).is_one())
          problems.push_back("eps(e" + std::to_string(s + 1) + ",e" + std::to_string(t + 1) + ")*eps(e" +
                             std::to_string(t + 1) + ",e" + std::to_string(s + 1) + ") != 1");
        for (std::size_t u : {s, t}) {
          if (u < a) continue;
          int m = A_.torsion().orders()[u - a];
          if (!table_[s][t].pow(m).is_one())
            problems.push_back("eps(e" + std::to_string(s + 1) + ",e" + std::to_string(t + 1) + ")^" +
                               std::to_string(m) + " != 1");
        }
      }
    return problems;
  }

 private:
  ContextPtr ctx_;
  GradingGroup A_;
  std::vector<std::vector<Scalar>> table_;
};

/// eps on A = Z^n x G from q and the characters; eps(|g|, |h|) = 1 on G.
inline Bicharacter build_bicharacter(const AlgebraSpec& spec) {
  const int n = spec.n();
  const auto& G = spec.group();
  GradingGroup A(n, G);
  const std::size_t gens = A.generator_count();
  std::vector<std::vector<Scalar>> E(gens, std::vector<Scalar>(gens, Scalar::one(spec.ctx())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E[i][j] = spec.q(i, j);
  for (std::size_t t = 0; t < G.rank(); ++t) {
    GroupElement f = G.generator(t);
    for (int j = 0; j < n; ++j) {
      E[n + t][j] = spec.chi_value(j, f);
      E[j][n + t] = spec.chi_value(j, f).inverse();
    }
  }
  return Bicharacter(spec.ctx(), A, E);
}

using LieVector = std::map<int, Scalar>;

inline void lie_add(LieVector& acc, int x, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(x, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

inline LieVector lie_scaled(const LieVector& v, const Scalar& s) {
  LieVector out;
  for (const auto& [x, c] : v) lie_add(out, x, c * s);
  return out;
}

/// Spec data kept by rings built as V (x) kG.
struct YDData {
  int n = 0;
  AbelianGroup group;
  std::vector<Character> chars;
  std::map<std::string, Scalar> instantiation;
};

enum class LieMode { from_spec, generic };

class ColorLieRing {
 public:
  LieMode mode = LieMode::generic;
  ContextPtr ctx;
  Bicharacter eps;
  std::vector<std::string> labels;
  std::vector<ADegree> degrees;
  std::vector<std::vector<LieVector>> bracket;  // bracket[x][y] = [x, y]
  std::optional<YDData> yd;
  bool hypothesis_met = true;
  std::vector<std::string> hypothesis_notes;

  int dim() const { return static_cast<int>(labels.size()); }
  const GradingGroup& grading() const { return eps.grading(); }

  /// eps(|x|, |y|) for basis elements, tabulated on first use.
  const Scalar& eps_basis(int x, int y) const {
    if (eps_cache_.empty()) {
      eps_cache_.assign(dim(), std::vector<Scalar>(dim()));
      for (int a = 0; a < dim(); ++a)
        for (int b = 0; b < dim(); ++b) eps_cache_[a][b] = eps(degrees[a], degrees[b]);
    }
    return eps_cache_[x][y];
  }

  LieVector bracket_of(const LieVector& u, const LieVector& v) const {
    LieVector out;
    for (const auto& [x, a] : u)
      for (const auto& [y, b] : v)
        for (const auto& [z, c] : bracket[x][y]) lie_add(out, z, a * b * c);
    return out;
  }

  // from_spec layout: basis index of v_i (x) g is i * |G| + index(g)
  int basis_index(int i, int g) const { return i * yd->group.size() + g; }
  int vec_of(int x) const { return x / yd->group.size(); }
  int group_of(int x) const { return x % yd->group.size(); }

  /// g . (v_i (x) h) = chi_i(g) v_i (x) gh
  LieVector act_left(int g, int x) const {
    const auto& G = yd->group;
    int i = vec_of(x), h = group_of(x);
    long e = character_exponent(G, yd->chars[i], G.element(g), ctx->conductor());
    return LieVector{{basis_index(i, G.index(G.mul(G.element(g), G.element(h)))), Scalar::zeta(ctx, e)}};
  }

  /// (v_i (x) h) . g = v_i (x) hg
  LieVector act_right(int x, int g) const {
    const auto& G = yd->group;
    return LieVector{{basis_index(vec_of(x), G.index(G.mul(G.element(group_of(x)), G.element(g)))), Scalar::one(ctx)}};
  }

  std::string vector_to_string(const LieVector& v) const {
    NCElement e(ctx);
    for (const auto& [x, c] : v) e.add_term(NCKey{Word{x}, 0}, c);
    return RewriteSystem::element_to_string(e, [this](const NCKey& k) { return labels.at(k.word.at(0)); });
  }

 private:
  mutable std::vector<std::vector<Scalar>> eps_cache_;
};

/// L = V (x) kG with [v_i g, v_j h] = kappa(v_i, ^g v_j) gh. The construction needs PBW and the
/// vanishing condition; otherwise HypothesisNotMet unless `exploratory` is set.
inline ColorLieRing build_color_lie_ring(const AlgebraSpec& spec, bool exploratory = false) {
  ColorLieRing L;
  PBWReport pbw = check_pbw(spec);
  if (!pbw.verdict) L.hypothesis_notes.push_back("PBW property fails");
  if (!pbw.vanishing.ok) L.hypothesis_notes.push_back("vanishing condition fails");
  L.hypothesis_met = L.hypothesis_notes.empty();
  if (!L.hypothesis_met && !exploratory)
    throw HypothesisNotMet("color Lie ring construction needs PBW and the vanishing condition: " + L.hypothesis_notes.front());

  const auto& G = spec.group();
  const int n = spec.n(), order = G.size();
  L.mode = LieMode::from_spec;
  L.ctx = spec.ctx();
  L.eps = build_bicharacter(spec);
  L.yd = YDData{n, G, spec.chars(), spec.instantiation()};
  const auto& A = L.eps.grading();
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < order; ++g) {
      const GroupElement ge = G.element(g);
      std::string label = spec.vname(i);
      if (g != 0) label += "g" + G.to_string(ge);
      L.labels.push_back(label);
      L.degrees.push_back(A.mul(A.free_generator(i), A.of_group(ge)));
    }
  L.bracket.assign(n * order, std::vector<LieVector>(n * order));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h) {
          LieVector v;
          for (const auto& [rg, c] : extended_kappa(spec, i, G.element(g), j, G.element(h)))
            lie_add(v, rg.first * order + rg.second, c);
          L.bracket[i * order + g][j * order + h] = std::move(v);
        }
  return L;
}

/// A generic ring from its table; [y, x] is filled from [x, y] by antisymmetry when not given.
inline ColorLieRing build_color_lie_ring(const GenericLieSpec& gl) {
  ColorLieRing L;
  L.mode = LieMode::generic;
  L.ctx = gl.ctx;
  GradingGroup A(gl.free_rank, AbelianGroup(gl.torsion));
  L.eps = Bicharacter(gl.ctx, A, gl.epsilon);
  auto problems = L.eps.validate();
  if (!problems.empty()) throw SpecError("epsilon is not an antisymmetric bicharacter: " + problems.front());
  L.labels = gl.labels;
  for (const auto& d : gl.degrees) {
    std::vector<long> free(d.begin(), d.begin() + static_cast<long>(gl.free_rank));
    std::vector<int> tors(d.begin() + static_cast<long>(gl.free_rank), d.end());
    L.degrees.push_back(A.make(free, tors));
  }
  const int dim = L.dim();
  L.bracket.assign(dim, std::vector<LieVector>(dim));
  std::vector<std::vector<bool>> given(dim, std::vector<bool>(dim, false));
  for (const auto& b : gl.brackets) {
    L.bracket[b.x][b.y] = b.value;
    given[b.x][b.y] = true;
  }
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      if (given[x][y] && !given[y][x]) L.bracket[y][x] = lie_scaled(L.bracket[x][y], -L.eps_basis(y, x));
  return L;
}

enum class GradingMode { ungraded, full, quotient };

struct AxiomReport {
  CheckResult antisymmetry, jacobi, bimodule, grading, yetter_drinfeld;
  bool grading_checked = false;
  bool ok() const { return antisymmetry.ok && jacobi.ok && bimodule.ok && grading.ok && yetter_drinfeld.ok; }
  std::vector<Violation> all_violations() const {
    std::vector<Violation> out;
    for (const auto* r : {&antisymmetry, &jacobi, &bimodule, &grading, &yetter_drinfeld})
      out.insert(out.end(), r->violations.begin(), r->violations.end());
    return out;
  }
};

/// Exhaustive check of eps-antisymmetry, eps-Jacobi, bimodule compatibility, the grading
/// (against A, A/N, or skipped), and for V (x) kG the law ^g v = eps(|g|, |v|) v.
inline AxiomReport check_color_axioms(const ColorLieRing& L, GradingMode mode = GradingMode::ungraded,
                                      const SubgroupN* N = nullptr) {
  AxiomReport rep;
  const int d = L.dim();
  auto name = [&L](int x) { return L.labels[x]; };
  auto viol = [](const std::string& cond, const std::string& where, const std::string& lhs, const std::string& rhs) {
    Violation v;
    v.condition = cond + " " + where;
    v.lhs = lhs;
    v.rhs = rhs;
    return v;
  };

  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      LieVector s = L.bracket[x][y];
      for (const auto& [z, c] : L.bracket[y][x]) lie_add(s, z, c * L.eps_basis(x, y));
      if (!s.empty())
        rep.antisymmetry.fail(viol("antisymmetry", "[" + name(x) + "," + name(y) + "]", L.vector_to_string(L.bracket[x][y]),
                                   L.vector_to_string(lie_scaled(L.bracket[y][x], -L.eps_basis(x, y)))));
    }

  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z) {
        LieVector s;
        const int t[3] = {x, y, z};
        for (int c = 0; c < 3; ++c) {
          int a = t[c], b = t[(c + 1) % 3], e = t[(c + 2) % 3];
          // eps(|e|, |a|) [a, [b, e]]
          for (const auto& [w, k] : L.bracket[b][e])
            for (const auto& [u, m] : L.bracket[a][w]) lie_add(s, u, L.eps_basis(e, a) * k * m);
        }
        if (!s.empty())
          rep.jacobi.fail(viol("jacobi", "(" + name(x) + "," + name(y) + "," + name(z) + ")", L.vector_to_string(s), "0"));
      }

  if (L.mode == LieMode::from_spec) {
    const int order = L.yd->group.size();
    for (int g = 0; g < order; ++g)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          const std::string where = "(g=" + L.yd->group.to_string(L.yd->group.element(g)) + "," + name(x) + "," + name(y) + ")";
          LieVector lhs = L.bracket_of(L.act_left(g, x), LieVector{{y, Scalar::one(L.ctx)}});
          LieVector rhs;
          for (const auto& [z, c] : L.bracket[x][y])
            for (const auto& [w, k] : L.act_left(g, z)) lie_add(rhs, w, c * k);
          if (!(lhs == rhs)) rep.bimodule.fail(viol("[g.x,y]=g.[x,y]", where, L.vector_to_string(lhs), L.vector_to_string(rhs)));

          lhs = L.bracket_of(L.act_right(x, g), LieVector{{y, Scalar::one(L.ctx)}});
          rhs = L.bracket_of(LieVector{{x, Scalar::one(L.ctx)}}, L.act_left(g, y));
          if (!(lhs == rhs)) rep.bimodule.fail(viol("[x.g,y]=[x,g.y]", where, L.vector_to_string(lhs), L.vector_to_string(rhs)));

          lhs = L.bracket_of(LieVector{{x, Scalar::one(L.ctx)}}, L.act_right(y, g));
          rhs.clear();
          for (const auto& [z, c] : L.bracket[x][y])
            for (const auto& [w, k] : L.act_right(z, g)) lie_add(rhs, w, c * k);
          if (!(lhs == rhs)) rep.bimodule.fail(viol("[x,y.g]=[x,y].g", where, L.vector_to_string(lhs), L.vector_to_string(rhs)));
        }

    // g (v (x) h) g^-1 = eps(|g|, |v (x) h|) v (x) h
    const auto& A = L.grading();
    const auto& G = L.yd->group;
    for (int g = 0; g < order; ++g)
      for (int x = 0; x < d; ++x) {
        LieVector conj;
        for (const auto& [z, c] : L.act_left(g, x))
          for (const auto& [w, k] : L.act_right(z, G.index(G.inv(G.element(g))))) lie_add(conj, w, c * k);
        LieVector expect{{x, L.eps(A.of_group(G.element(g)), L.degrees[x])}};
        if (!(conj == expect))
          rep.yetter_drinfeld.fail(viol("yetter-drinfeld", "(g=" + G.to_string(G.element(g)) + "," + name(x) + ")",
                                        L.vector_to_string(conj), L.vector_to_string(expect)));
      }
  }

  if (mode == GradingMode::quotient && !N) throw std::invalid_argument("quotient grading check needs the subgroup N");
  if (mode != GradingMode::ungraded) {
    rep.grading_checked = true;
    const auto& A = L.grading();
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        ADegree target = A.mul(L.degrees[x], L.degrees[y]);
        for (const auto& [z, c] : L.bracket[x][y]) {
          bool same = N && mode == GradingMode::quotient ? N->congruent(L.degrees[z], target) : L.degrees[z] == target;
          if (!same)
            rep.grading.fail(viol(mode == GradingMode::full ? "grading" : "grading mod N",
                                  "[" + name(x) + "," + name(y) + "] term " + name(z), A.to_string(L.degrees[z]),
                                  A.to_string(target)));
        }
      }
  }
  return rep;
}

struct QuotientReport {
  SubgroupN N;
  bool well_defined = true;
  std::vector<std::string> failures;  // generator pairings with value != 1
};

/// N = < |v_i||v_j||v_r|^-1|g|^-1 : c_r^{ijg} != 0 >, and whether eps descends to A/N.
inline QuotientReport build_N_and_quotient(const AlgebraSpec& spec) {
  Bicharacter eps = build_bicharacter(spec);
  const auto& A = eps.grading();
  std::vector<ADegree> gens;
  for (const auto& [ij, value] : spec.kappa_table())
    for (const auto& t : value) {
      ADegree d = A.mul(A.free_generator(ij.first), A.free_generator(ij.second));
      d = A.mul(d, A.inv(A.free_generator(t.r)));
      d = A.mul(d, A.inv(A.of_group(t.g)));
      if (std::find(gens.begin(), gens.end(), d) == gens.end()) gens.push_back(d);
    }
  QuotientReport rep{SubgroupN(A, gens), true, {}};
  for (const auto& nd : gens)
    for (std::size_t s = 0; s < A.generator_count(); ++s) {
      ADegree x = A.generator(s);
      Scalar a = eps(nd, x), b = eps(x, nd);
      if (!a.is_one())
        rep.failures.push_back("eps(" + A.to_string(nd) + ", " + A.to_string(x) + ") = " + a.to_string());
      if (!b.is_one())
        rep.failures.push_back("eps(" + A.to_string(x) + ", " + A.to_string(nd) + ") = " + b.to_string());
    }
  rep.well_defined = rep.failures.empty();
  return rep;
}

struct GradedDecomposition {
  std::vector<int> positive, negative;
};

inline GradedDecomposition split_parts(const ColorLieRing& L) {
  GradedDecomposition out;
  for (int x = 0; x < L.dim(); ++x) {
    const Scalar& e = L.eps_basis(x, x);
    if (e.is_one())
      out.positive.push_back(x);
    else if (e.is_minus_one())
      out.negative.push_back(x);
    else
      throw ValueNotSign("eps(|" + L.labels[x] + "|, |" + L.labels[x] + "|) = " + e.to_string());
  }
  return out;
}

struct PositivePropReport {
  bool applicable = false;
  bool holds = true;
  std::vector<std::string> failures;
};

/// [v_i (x) 1, v_i (x) g] = 0 for all i, g; applies to V (x) kG with purely positive part.
inline PositivePropReport check_prop_positive(const ColorLieRing& L) {
  PositivePropReport rep;
  rep.applicable = L.mode == LieMode::from_spec && split_parts(L).negative.empty();
  if (!rep.applicable) return rep;
  const int order = L.yd->group.size();
  for (int i = 0; i < L.yd->n; ++i)
    for (int g = 0; g < order; ++g) {
      const auto& v = L.bracket[L.basis_index(i, 0)][L.basis_index(i, g)];
      if (!v.empty()) rep.failures.push_back("[" + L.labels[L.basis_index(i, 0)] + "," + L.labels[L.basis_index(i, g)] + "] = " + L.vector_to_string(v));
    }
  rep.holds = rep.failures.empty();
  return rep;
}

/// eps(|v_k|, |v_r (x) g|) = eps(|v_k|, |v_i|) eps(|v_k|, |v_j|) on the support of kappa, for all k.
inline CheckResult check_braiding_compatibility(const AlgebraSpec& spec) {
  CheckResult res;
  Bicharacter eps = build_bicharacter(spec);
  const auto& A = eps.grading();
  for (const auto& [ij, value] : spec.kappa_table())
    for (const auto& t : value)
      for (int k = 0; k < spec.n(); ++k) {
        ADegree vk = A.free_generator(k);
        Scalar lhs = eps(vk, A.mul(A.free_generator(t.r), A.of_group(t.g)));
        Scalar rhs = eps(vk, A.free_generator(ij.first)) * eps(vk, A.free_generator(ij.second));
        if (!(lhs == rhs)) res.fail(Violation{"braiding", ij.first, ij.second, k, t.r, t.g, lhs.to_string(), rhs.to_string()});
      }
  return res;
}

}  // namespace qdrinfeld
