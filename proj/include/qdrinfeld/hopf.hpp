#pragma once

// Braided tensor powers of H over R = kG, the coproduct, counit and antipode, and
// degree-bounded checks of the braided Hopf axioms.

#include <map>
#include <string>
#include <vector>

#include "qdrinfeld/pbw.hpp"

namespace qdrinfeld {

/// w_1 (x) ... (x) w_k g over R: every factor a normal word, all group letters collected at the right end.
struct TensorKey {
  std::vector<Word> words;
  int g = 0;

  friend bool operator<(const TensorKey& a, const TensorKey& b) {
    if (a.words != b.words) return a.words < b.words;
    return a.g < b.g;
  }
  friend bool operator==(const TensorKey&, const TensorKey&) = default;
};

using TensorElement = std::map<TensorKey, Scalar>;
using BraidedTensorElement = TensorElement;

inline void tensor_add(TensorElement& acc, TensorKey key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(std::move(key), c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

class HopfEngine {
 public:
  explicit HopfEngine(const AlgebraSpec& spec) : spec_(spec), sys_(make_h_system(spec)) {
    for (int i = 0; i < spec.n(); ++i) {
      TensorElement d;
      tensor_add(d, TensorKey{{Word{i}, Word{}}, 0}, Scalar::one(spec.ctx()));
      tensor_add(d, TensorKey{{Word{}, Word{i}}, 0}, Scalar::one(spec.ctx()));
      delta_letter_.push_back(std::move(d));
    }
  }

  const AlgebraSpec& spec() const { return spec_; }
  const RewriteSystem& system() const { return sys_; }

  /// eps(|b h|, |c|) for words b, c and a group element h.
  Scalar eps(const Word& b, int h, const Word& c) const {
    Scalar out = sys_.zeta(sys_.word_chi_exponent(c, h));
    for (int x : b)
      for (int y : c) out *= spec_.q(x, y);
    return out;
  }

  TensorElement unit(std::size_t arity = 2) const {
    TensorElement out;
    tensor_add(out, TensorKey{std::vector<Word>(arity), 0}, Scalar::one(spec_.ctx()));
    return out;
  }

  /// (a (x) b)(c (x) d) = eps(|b|, |c|) ac (x) bd, both factors normalised and group letters moved right.
  TensorElement braided_product(const TensorElement& x, const TensorElement& y) const {
    TensorElement out;
    for (const auto& [kx, cx] : x)
      for (const auto& [ky, cy] : y) {
        const Word& a = kx.words.at(0);
        const Word& c = ky.words.at(0);
        NCElement left = sys_.normal_form(sys_.word(concat(a, c)));
        NCElement right = sys_.normal_form(sys_.t_multiply(sys_.word(kx.words.at(1), kx.g), sys_.word(ky.words.at(1), ky.g)));
        const Scalar coef = cx * cy * eps(kx.words[1], kx.g, c);
        for (const auto& [kl, cl] : left.terms())
          for (const auto& [kr, cr] : right.terms())
            tensor_add(out, TensorKey{{kl.word, kr.word}, sys_.group_mul(kl.g, kr.g)},
                       coef * cl * cr * sys_.zeta(sys_.word_chi_exponent(kr.word, kl.g)));
      }
    return out;
  }

  /// Coproduct of an element of T(V) # G, letter by letter from the left: Delta(v) = v (x) 1 + 1 (x) v, Delta(g) = 1 (x) g.
  TensorElement coproduct_free(const NCElement& x) const {
    TensorElement out;
    for (const auto& [k, c] : x.terms()) {
      TensorElement acc = unit();
      for (int letter : k.word) acc = braided_product(acc, delta_letter_[letter]);
      for (auto& [key, v] : acc) tensor_add(out, TensorKey{key.words, sys_.group_mul(key.g, k.g)}, v * c);
    }
    return out;
  }

  /// Coproduct on H, evaluated on the normal form.
  TensorElement coproduct(const NCElement& x) const { return coproduct_free(sys_.normal_form(x)); }

  /// Counit H -> kG: drops every term of positive word degree.
  NCElement counit(const NCElement& x) const {
    NCElement out(spec_.ctx());
    const NCElement nx = sys_.normal_form(x);
    for (const auto& [k, c] : nx.terms())
      if (k.word.empty()) out.add_term(k, c);
    return out;
  }

  /// S(v) = -v, S(g) = g, S(x y) = eps(|x|, |y|) S(y) S(x).
  NCElement antipode(const NCElement& x) const {
    NCElement out(spec_.ctx());
    const NCElement nx = sys_.normal_form(x);
    for (const auto& [k, c] : nx.terms())
      out += sys_.t_multiply(antipode_word(k.word), sys_.group_element(k.g)).scaled(c);
    return sys_.normal_form(out);
  }

  std::string to_string(const TensorElement& t) const {
    if (t.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : t) {
      std::string mono;
      for (std::size_t f = 0; f < k.words.size(); ++f) {
        NCKey piece{k.words[f], f + 1 == k.words.size() ? k.g : 0};
        std::string s = sys_.key_to_string(piece);
        mono += (f ? " (x) " : "") + (s.empty() ? std::string("1") : s);
      }
      out = RewriteSystem::join_term(out, c, mono);
    }
    return out;
  }

 private:
  static Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
  }

  NCElement antipode_word(const Word& w) const {
    auto it = antipode_cache_.find(w);
    if (it != antipode_cache_.end()) return it->second;
    NCElement out = sys_.one();
    if (!w.empty()) {
      Word rest(w.begin() + 1, w.end());
      NCElement s_first = sys_.letter(w[0]).scaled(Scalar::constant(spec_.ctx(), -1));
      out = sys_.normal_form(sys_.t_multiply(antipode_word(rest), s_first)).scaled(eps(Word{w[0]}, 0, rest));
    }
    antipode_cache_.emplace(w, out);
    return out;
  }

  AlgebraSpec spec_;
  RewriteSystem sys_;
  std::vector<TensorElement> delta_letter_;
  mutable std::map<Word, NCElement> antipode_cache_;
};

struct HopfReport {
  int degree = 0;
  bool exploratory = false;  // strong vanishing fails, so no Hopf structure is expected
  CheckResult well_defined, coassociativity, counit, antipode;
  bool ok() const { return well_defined.ok && coassociativity.ok && counit.ok && antipode.ok; }
};

/// (a) Delta kills h w1 rel w2 k for |w1| + |w2| + 2 <= d; (b)-(d) coassociativity, counit and
/// antipode laws on every PBW monomial of word degree <= d times every group element.
inline HopfReport check_hopf_axioms(const AlgebraSpec& spec, int d) {
  HopfReport rep;
  rep.degree = d;
  rep.exploratory = !check_vanishing(spec, true).ok;
  HopfEngine H(spec);
  const auto& sys = H.system();
  const auto& G = spec.group();
  const int n = spec.n(), order = G.size();
  auto violation = [](std::string cond, std::string lhs, std::string rhs) {
    Violation v;
    v.condition = std::move(cond);
    v.lhs = std::move(lhs);
    v.rhs = std::move(rhs);
    return v;
  };

  auto monomial_name = [&sys](const NCKey& k) {
    std::string s = sys.key_to_string(k);
    return s.empty() ? std::string("1") : s;
  };

  std::vector<std::vector<Word>> words(std::max(d, 0) + 1);
  for (int len = 0; len <= d; ++len) words[len] = all_words_of_length(n, len);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const NCElement rel = defining_relation(spec, i, j);
      for (int h = 0; h < order; ++h)
        for (int a = 0; a + 2 <= d; ++a)
          for (const auto& w1 : words[a]) {
            const NCElement left = sys.t_multiply(sys.push_group_right(h, w1), rel);
            for (int b = 0; a + b + 2 <= d; ++b)
              for (const auto& w2 : words[b])
                for (int k = 0; k < order; ++k) {
                  NCElement row = sys.t_multiply(left, sys.word(w2, k));
                  TensorElement r = H.coproduct_free(row);
                  if (r.empty()) continue;
                  Violation v = violation("coproduct on " + monomial_name(NCKey{w1, h}) + " | rel | " +
                                              monomial_name(NCKey{w2, k}),
                                          H.to_string(r), "0");
                  v.i = i;
                  v.j = j;
                  rep.well_defined.fail(std::move(v));
                }
          }
    }

  for (int len = 0; len <= d; ++len)
    for (const auto& w : pbw_words_of_length(n, len))
      for (int g = 0; g < order; ++g) {
        const NCElement x = sys.word(w, g);
        const std::string name = monomial_name(NCKey{w, g});
        const TensorElement dx = H.coproduct(x);

        // (b) coassociativity
        TensorElement lhs, rhs;
        for (const auto& [k, c] : dx) {
          const Word& a = k.words[0];
          const Word& b = k.words[1];
          for (const auto& [ka, ca] : H.coproduct_free(sys.word(a)))
            tensor_add(lhs, TensorKey{{ka.words[0], ka.words[1], b}, sys.group_mul(ka.g, k.g)},
                       c * ca * sys.zeta(sys.word_chi_exponent(b, ka.g)));
          for (const auto& [kb, cb] : H.coproduct_free(sys.word(b, k.g)))
            tensor_add(rhs, TensorKey{{a, kb.words[0], kb.words[1]}, kb.g}, c * cb);
        }
        if (lhs != rhs) rep.coassociativity.fail(violation("coassociativity on " + name, H.to_string(lhs), H.to_string(rhs)));

        // (c) counit laws
        NCElement left_unit(spec.ctx()), right_unit(spec.ctx());
        for (const auto& [k, c] : dx) {
          if (k.words[0].empty()) left_unit.add_term(NCKey{k.words[1], k.g}, c);
          if (k.words[1].empty()) right_unit.add_term(NCKey{k.words[0], k.g}, c);
        }
        const NCElement nx = sys.normal_form(x);
        if (!(left_unit == nx)) rep.counit.fail(violation("(counit (x) 1) coproduct on " + name, sys.to_string(left_unit), sys.to_string(nx)));
        if (!(right_unit == nx)) rep.counit.fail(violation("(1 (x) counit) coproduct on " + name, sys.to_string(right_unit), sys.to_string(nx)));

        // (d) antipode laws
        NCElement sl(spec.ctx()), sr(spec.ctx());
        for (const auto& [k, c] : dx) {
          sl += sys.t_multiply(H.antipode(sys.word(k.words[0])), sys.word(k.words[1], k.g)).scaled(c);
          sr += sys.t_multiply(sys.word(k.words[0]), H.antipode(sys.word(k.words[1], k.g))).scaled(c);
        }
        sl = sys.normal_form(sl);
        sr = sys.normal_form(sr);
        const NCElement e = H.counit(x);
        if (!(sl == e)) rep.antipode.fail(violation("m(S (x) 1) coproduct on " + name, sys.to_string(sl), sys.to_string(e)));
        if (!(sr == e)) rep.antipode.fail(violation("m(1 (x) S) coproduct on " + name, sys.to_string(sr), sys.to_string(e)));
      }
  return rep;
}

}  // namespace qdrinfeld
