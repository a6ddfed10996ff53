#pragma once

// Presentation of H_{q,kappa} = T(V) # G / (v_i v_j - q_ij v_j v_i - kappa(v_i, v_j))
// and the rewriting engine producing PBW normal forms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/group.hpp"
#include "qdrinfeld/parse.hpp"
#include "qdrinfeld/scalar.hpp"

namespace qdrinfeld {

/// One summand c * (v_r (x) g) of a kappa value.
struct KappaTerm {
  int r = 0;
  GroupElement g;
  Scalar c;
};

using KappaValue = std::vector<KappaTerm>;

/// Unvalidated spec data, 1-based indices, with source lines for error messages.
struct RawSpec {
  struct QEntry {
    int i, j;
    Scalar value;
    int line = 0;
  };
  struct KappaEntry {
    int i, j;
    std::vector<std::tuple<int, std::vector<int>, Scalar>> terms;  // r, group exps, coefficient
    int line = 0;
  };

  ContextPtr ctx;
  std::vector<int> orders;
  std::vector<std::vector<int>> characters;
  std::vector<QEntry> q;
  std::vector<KappaEntry> kappa;
  std::vector<std::pair<std::string, Scalar>> instantiate;
};

class AlgebraSpec {
 public:
  AlgebraSpec() = default;

  int n() const { return static_cast<int>(chars_.size()); }
  const ContextPtr& ctx() const { return ctx_; }
  const AbelianGroup& group() const { return group_; }
  const std::vector<Character>& chars() const { return chars_; }
  const Character& chi(int i) const { return chars_.at(i); }
  const std::vector<std::vector<Scalar>>& q_matrix() const { return q_; }
  const Scalar& q(int i, int j) const { return q_.at(i).at(j); }
  const std::vector<std::string>& params() const { return ctx_->params(); }

  /// Stored values kappa(v_i, v_j), i < j, nonzero only.
  const std::map<std::pair<int, int>, KappaValue>& kappa_table() const { return kappa_; }

  /// kappa(v_i, v_j) for any i, j; kappa(v_j, v_i) = -q_ji kappa(v_i, v_j).
  KappaValue kappa(int i, int j) const {
    if (i == j) return {};
    if (i < j) {
      auto it = kappa_.find({i, j});
      return it == kappa_.end() ? KappaValue{} : it->second;
    }
    KappaValue out = kappa(j, i);
    for (auto& t : out) t.c = -(q(i, j) * t.c);
    return out;
  }

  /// The coefficient c_r^{ijg} of v_r (x) g in kappa(v_i, v_j).
  Scalar coeff(int r, int i, int j, const GroupElement& g) const {
    for (const auto& t : kappa(i, j))
      if (t.r == r && t.g == g) return t.c;
    return Scalar::zero(ctx_);
  }

  /// kappa_g(v_i, v_j): the part of kappa(v_i, v_j) on g, as coefficients of v_0..v_{n-1}.
  std::vector<Scalar> kappa_g(int i, int j, const GroupElement& g) const {
    std::vector<Scalar> out(n(), Scalar::zero(ctx_));
    for (const auto& t : kappa(i, j))
      if (t.g == g) out[t.r] = t.c;
    return out;
  }

  bool kappa_is_zero() const { return kappa_.empty(); }

  Scalar chi_value(int i, const GroupElement& g) const { return char_eval(ctx_, group_, chars_.at(i), g); }
  long chi_exponent(int i, const GroupElement& g) const {
    return character_exponent(group_, chars_.at(i), g, ctx_->conductor());
  }

  const std::map<std::string, Scalar>& instantiation() const { return instantiation_; }

  /// Concrete values for every parameter; throws SymbolicParameter when one is missing.
  std::vector<CyclotomicNumber> instantiation_values(const std::map<std::string, Scalar>& overrides = {}) const {
    std::vector<CyclotomicNumber> out;
    for (const auto& name : params()) {
      auto it = overrides.find(name);
      if (it == overrides.end()) it = instantiation_.find(name);
      if (it == instantiation_.end())
        throw SymbolicParameter("no value for parameter '" + name + "'; supply --instantiate " + name + "=...");
      out.push_back(it->second.constant_value());
    }
    return out;
  }

  std::string vname(int i) const { return "v" + std::to_string(i + 1); }

  friend AlgebraSpec validate_spec(const RawSpec& raw);

 private:
  ContextPtr ctx_;
  AbelianGroup group_;
  std::vector<Character> chars_;
  std::vector<std::vector<Scalar>> q_;
  std::map<std::pair<int, int>, KappaValue> kappa_;
  std::map<std::string, Scalar> instantiation_;
};

namespace detail {

inline std::string at_line(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : ""; }

inline void sort_and_merge(KappaValue& v) {
  std::sort(v.begin(), v.end(), [](const KappaTerm& a, const KappaTerm& b) {
    return std::tie(a.r, a.g) < std::tie(b.r, b.g);
  });
  KappaValue merged;
  for (auto& t : v) {
    if (!merged.empty() && merged.back().r == t.r && merged.back().g == t.g)
      merged.back().c += t.c;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const KappaTerm& t) { return t.c.is_zero(); }),
               merged.end());
  v = std::move(merged);
}

inline bool same_kappa(const KappaValue& a, const KappaValue& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].r != b[k].r || !(a[k].g == b[k].g) || !(a[k].c == b[k].c)) return false;
  return true;
}

}  // namespace detail

/// Checks every invariant of the presentation and fills derived entries.
inline AlgebraSpec validate_spec(const RawSpec& raw) {
  using detail::at_line;
  AlgebraSpec s;
  if (!raw.ctx) throw SpecError("missing [field] section");
  s.ctx_ = raw.ctx;
  s.group_ = AbelianGroup(raw.orders);
  if (s.ctx_->conductor() % s.group_.exponent() != 0)
    throw SpecError("conductor " + std::to_string(s.ctx_->conductor()) + " is not a multiple of the group exponent " +
                    std::to_string(s.group_.exponent()));
  if (raw.characters.empty()) throw SpecError("[action] declares no characters (n must be >= 1)");
  for (const auto& row : raw.characters) s.chars_.push_back(make_character(s.group_, row));
  const int n = s.n();
  const auto& ctx = s.ctx_;

  auto check_index = [n](int i, int line, const char* what) {
    if (i < 1 || i > n)
      throw SpecError(at_line(line) + what + " index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
  };

  std::vector<std::vector<std::optional<Scalar>>> given(n, std::vector<std::optional<Scalar>>(n));
  for (const auto& e : raw.q) {
    check_index(e.i, e.line, "q");
    check_index(e.j, e.line, "q");
    const int i = e.i - 1, j = e.j - 1;
    if (given[i][j]) throw SpecError(at_line(e.line) + "q " + std::to_string(e.i) + " " + std::to_string(e.j) + " given twice");
    if (!e.value.is_unit())
      throw SpecError(at_line(e.line) + "q_" + std::to_string(e.i) + std::to_string(e.j) + " = " + e.value.to_string() +
                      " is not a unit");
    if (i == j && !e.value.is_one())
      throw SpecError(at_line(e.line) + "q_" + std::to_string(e.i) + std::to_string(e.i) + " must be 1, got " +
                      e.value.to_string());
    given[i][j] = e.value;
  }
  s.q_.assign(n, std::vector<Scalar>(n, Scalar::one(ctx)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (given[i][j] && given[j][i] && !((*given[i][j]) * (*given[j][i])).is_one())
        throw SpecError("q_" + std::to_string(i + 1) + std::to_string(j + 1) + " and q_" + std::to_string(j + 1) +
                        std::to_string(i + 1) + " are not mutually inverse");
      Scalar qij = given[i][j] ? *given[i][j] : given[j][i] ? given[j][i]->inverse() : Scalar::one(ctx);
      s.q_[i][j] = qij;
      s.q_[j][i] = qij.inverse();
    }

  std::map<std::pair<int, int>, int> seen_line;
  for (const auto& e : raw.kappa) {
    check_index(e.i, e.line, "kappa");
    check_index(e.j, e.line, "kappa");
    const int i = e.i - 1, j = e.j - 1;
    if (seen_line.count({i, j}))
      throw SpecError(at_line(e.line) + "kappa " + std::to_string(e.i) + " " + std::to_string(e.j) + " given twice");
    seen_line[{i, j}] = e.line;
    KappaValue v;
    for (const auto& [r, gexps, c] : e.terms) {
      check_index(r, e.line, "kappa target");
      if (gexps.size() != s.group_.rank())
        throw SpecError(at_line(e.line) + "group element has " + std::to_string(gexps.size()) + " components, expected " +
                        std::to_string(s.group_.rank()));
      v.push_back(KappaTerm{r - 1, s.group_.make(gexps), c});
    }
    detail::sort_and_merge(v);
    if (i == j) {
      if (!v.empty()) throw SpecError(at_line(e.line) + "kappa(v_i, v_i) must be zero");
      continue;
    }
    if (i > j) {
      // kappa(v_i, v_j) = -q_ij kappa(v_j, v_i) stored under (j, i)
      for (auto& t : v) t.c = -(s.q_[j][i] * t.c);
      detail::sort_and_merge(v);
    }
    const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    auto it = s.kappa_.find(key);
    bool other_given = seen_line.count({key.second, key.first}) && seen_line.count({key.first, key.second});
    if (other_given) {
      KappaValue existing = it == s.kappa_.end() ? KappaValue{} : it->second;
      if (!detail::same_kappa(existing, v))
        throw SpecError(at_line(e.line) + "kappa " + std::to_string(e.i) + " " + std::to_string(e.j) +
                        " contradicts quantum antisymmetry with kappa " + std::to_string(e.j) + " " + std::to_string(e.i));
      continue;
    }
    if (!v.empty()) s.kappa_[key] = std::move(v);
  }

  for (const auto& [name, value] : raw.instantiate) {
    if (!ctx->param_index(name)) throw SpecError("instantiate: unknown parameter '" + name + "'");
    if (!value.is_constant()) throw SpecError("instantiate: value of '" + name + "' must not involve parameters");
    s.instantiation_[name] = value;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Elements of T(V) # G

using Word = std::vector<int>;

/// A word in the generators followed by a group element (by index in the group).
struct NCKey {
  Word word;
  int g = 0;

  friend bool operator==(const NCKey&, const NCKey&) = default;
  /// Degree-lexicographic, then group index.
  friend bool operator<(const NCKey& a, const NCKey& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return a.word < b.word;
    return a.g < b.g;
  }
};

class NCElement {
 public:
  using TermMap = std::map<NCKey, Scalar>;

  NCElement() = default;
  explicit NCElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static NCElement monomial(ContextPtr ctx, Word w, int g, Scalar c) {
    NCElement e(std::move(ctx));
    e.add_term(NCKey{std::move(w), g}, c);
    return e;
  }

  const ContextPtr& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const NCKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar::zero(ctx_) : it->second;
  }

  void add_term(const NCKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(k, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add_term(NCKey&& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(k), c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  NCElement& operator+=(const NCElement& o) {
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  NCElement& operator-=(const NCElement& o) {
    if (!ctx_) ctx_ = o.ctx_;
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend NCElement operator+(NCElement a, const NCElement& b) { return a += b; }
  friend NCElement operator-(NCElement a, const NCElement& b) { return a -= b; }
  NCElement operator-() const {
    NCElement out = *this;
    for (auto& [k, c] : out.terms_) c = -c;
    return out;
  }

  NCElement scaled(const Scalar& s) const {
    NCElement out(ctx_ ? ctx_ : s.context());
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.add_term(k, c * s);
    return out;
  }

  std::pair<NCKey, Scalar> pop_largest() {
    auto node = terms_.extract(std::prev(terms_.end()));
    return {std::move(node.key()), std::move(node.mapped())};
  }

  /// Largest word length present, -1 for zero.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.word.size()); }

  friend bool operator==(const NCElement& a, const NCElement& b) { return a.terms_ == b.terms_; }

 private:
  ContextPtr ctx_;
  TermMap terms_;
};

/// Combination of (v_r, g) pairs: elements of V (x) kG.
using VGElement = std::map<std::pair<int, int>, Scalar>;

inline void vg_add(VGElement& acc, int r, int g, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace({r, g}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

inline bool vg_is_zero(const VGElement& v) { return v.empty(); }

enum class Strategy { leftmost, rightmost, random };

/// Rewriting system on words in generators with a diagonal group action:
///   x y -> swap[x][y] * y x + tail[x][y]   for x > y
///   x x -> square[x]                       for letters with a square rule
/// and g x = chi_x(g) x g. Normal words are nondecreasing (strictly so on squared letters)
/// followed by a single group element.
class RewriteSystem {
 public:
  RewriteSystem() = default;

  RewriteSystem(ContextPtr ctx, AbelianGroup group, std::vector<Character> letter_chars,
                std::vector<std::string> names)
      : ctx_(std::move(ctx)), group_(std::move(group)), chars_(std::move(letter_chars)), names_(std::move(names)) {
    const int L = letters(), G = group_.size(), m = ctx_->conductor();
    chi_exp_.assign(L, std::vector<long>(G, 0));
    for (int x = 0; x < L; ++x)
      for (int g = 0; g < G; ++g) chi_exp_[x][g] = character_exponent(group_, chars_[x], group_.element(g), m);
    mul_.assign(G, std::vector<int>(G, 0));
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) mul_[a][b] = group_.index(group_.mul(group_.element(a), group_.element(b)));
    swap_.assign(L, std::vector<Scalar>(L, Scalar::one(ctx_)));
    tail_.assign(L, std::vector<VGElement>(L));
    square_.assign(L, std::nullopt);
    zeta_.reserve(m);
    for (int k = 0; k < m; ++k) zeta_.push_back(Scalar::zeta(ctx_, k));
  }

  int letters() const { return static_cast<int>(chars_.size()); }
  const ContextPtr& ctx() const { return ctx_; }
  const AbelianGroup& group() const { return group_; }
  const std::vector<std::string>& names() const { return names_; }
  const Character& letter_char(int x) const { return chars_.at(x); }
  int identity_index() const { return 0; }
  int group_mul(int a, int b) const { return mul_[a][b]; }

  void set_swap(int x, int y, Scalar coefficient, VGElement tail) {
    swap_.at(x).at(y) = std::move(coefficient);
    tail_.at(x).at(y) = std::move(tail);
  }
  void set_square(int x, VGElement tail) { square_.at(x) = std::move(tail); }
  bool has_square(int x) const { return square_.at(x).has_value(); }
  const Scalar& swap_coefficient(int x, int y) const { return swap_[x][y]; }
  const VGElement& tail(int x, int y) const { return tail_[x][y]; }

  /// Exponent of zeta_m in chi_w(g) = prod chi_{w_k}(g).
  long word_chi_exponent(const Word& w, int g, std::size_t from = 0) const {
    long e = 0;
    for (std::size_t k = from; k < w.size(); ++k) e += chi_exp_[w[k]][g];
    return e % ctx_->conductor();
  }

  const Scalar& zeta(long k) const { return zeta_[static_cast<std::size_t>(mod_floor(k, ctx_->conductor()))]; }

  bool is_redex(const Word& w, std::size_t p) const {
    return w[p] > w[p + 1] || (w[p] == w[p + 1] && square_[w[p]].has_value());
  }

  bool is_normal(const Word& w) const {
    for (std::size_t p = 0; p + 1 < w.size(); ++p)
      if (is_redex(w, p)) return false;
    return true;
  }

  /// Product in T(V) # G: (u g)(w h) = chi_w(g) (u w)(g h).
  NCElement t_multiply(const NCElement& a, const NCElement& b) const {
    NCElement out(ctx_);
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        NCKey k{ka.word, mul_[ka.g][kb.g]};
        k.word.insert(k.word.end(), kb.word.begin(), kb.word.end());
        out.add_term(std::move(k), ca * cb * zeta(word_chi_exponent(kb.word, ka.g)));
      }
    return out;
  }

  NCElement letter(int x) const { return NCElement::monomial(ctx_, Word{x}, 0, Scalar::one(ctx_)); }
  NCElement group_element(int g) const { return NCElement::monomial(ctx_, Word{}, g, Scalar::one(ctx_)); }
  NCElement one() const { return group_element(0); }
  NCElement scalar(const Scalar& s) const { return NCElement::monomial(ctx_, Word{}, 0, s); }
  NCElement word(const Word& w, int g = 0) const { return NCElement::monomial(ctx_, w, g, Scalar::one(ctx_)); }

  /// g * w: the group letter moved to the right end.
  NCElement push_group_right(int g, const Word& w) const {
    return NCElement::monomial(ctx_, w, g, zeta(word_chi_exponent(w, g)));
  }

  /// Applies the rule at position p of a single term (coefficient c).
  void rewrite_at(const NCKey& key, const Scalar& c, std::size_t p, NCElement& out) const {
    const Word& w = key.word;
    const int x = w[p], y = w[p + 1];
    const VGElement* tail;
    if (x == y) {
      tail = &*square_[x];
    } else {
      NCKey swapped = key;
      std::swap(swapped.word[p], swapped.word[p + 1]);
      out.add_term(std::move(swapped), c * swap_[x][y]);
      tail = &tail_[x][y];
    }
    for (const auto& [rg, s] : *tail) {
      const auto [r, h] = rg;
      NCKey k;
      k.word.reserve(w.size() - 1);
      k.word.insert(k.word.end(), w.begin(), w.begin() + static_cast<long>(p));
      k.word.push_back(r);
      k.word.insert(k.word.end(), w.begin() + static_cast<long>(p) + 2, w.end());
      // h sits right after v_r; pushing it through the suffix picks up chi_suffix(h)
      long e = word_chi_exponent(w, h, p + 2);
      k.g = mul_[h][key.g];
      out.add_term(std::move(k), c * s * zeta(e));
    }
  }

  /// Normal form. Every rule application either replaces an inversion x y (x > y) by y x,
  /// which lowers the word in the deglex order at fixed length, or shortens the word; group
  /// letters never appear inside words. So the largest term always decreases and the
  /// loop terminates. The result is independent of `strategy` exactly when the system is
  /// confluent on the inputs involved.
  NCElement normal_form(const NCElement& x, Strategy strategy = Strategy::leftmost, std::uint64_t seed = 0) const {
    std::mt19937_64 rng(seed);
    NCElement todo = x, done(ctx_);
    std::vector<std::size_t> redexes;
    while (!todo.is_zero()) {
      auto [key, c] = todo.pop_largest();
      redexes.clear();
      for (std::size_t p = 0; p + 1 < key.word.size(); ++p)
        if (is_redex(key.word, p)) redexes.push_back(p);
      if (redexes.empty()) {
        done.add_term(key, c);
        continue;
      }
      std::size_t p = redexes.front();
      if (strategy == Strategy::rightmost)
        p = redexes.back();
      else if (strategy == Strategy::random)
        p = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
      rewrite_at(key, c, p, todo);
    }
    return done;
  }

  bool is_normal_form(const NCElement& x) const {
    for (const auto& [k, c] : x.terms())
      if (!is_normal(k.word)) return false;
    return true;
  }

  NCElement multiply(const NCElement& a, const NCElement& b) const { return normal_form(t_multiply(a, b)); }

  std::string key_to_string(const NCKey& k) const {
    std::string out;
    for (int x : k.word) out += (out.empty() ? "" : "*") + names_.at(x);
    if (k.g != 0) out += (out.empty() ? "g" : "*g") + group_.to_string(group_.element(k.g));
    return out;
  }

  std::string to_string(const NCElement& e) const { return element_to_string(e, [this](const NCKey& k) { return key_to_string(k); }); }

  template <class KeyPrinter>
  static std::string element_to_string(const NCElement& e, KeyPrinter&& print_key) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [k, c] : e.terms()) {
      std::string mono = print_key(k);
      out = join_term(out, c, mono);
    }
    return out;
  }

  static std::string join_term(const std::string& acc, const Scalar& c, const std::string& mono) {
    std::string cs = c.to_string();
    std::string piece;
    if (mono.empty())
      piece = acc.empty() || cs.find(' ') == std::string::npos ? cs : "(" + cs + ")";
    else if (c.is_one())
      piece = mono;
    else if (c.is_minus_one())
      piece = "-" + mono;
    else if (cs.find(' ') == std::string::npos)
      piece = cs + "*" + mono;
    else
      piece = "(" + cs + ")*" + mono;
    if (acc.empty()) return piece;
    if (piece[0] == '-') return acc + " - " + piece.substr(1);
    return acc + " + " + piece;
  }

  std::string vg_to_string(const VGElement& v) const {
    NCElement e(ctx_);
    for (const auto& [rg, c] : v) e.add_term(NCKey{Word{rg.first}, rg.second}, c);
    return to_string(e);
  }

 private:
  ContextPtr ctx_;
  AbelianGroup group_;
  std::vector<Character> chars_;
  std::vector<std::string> names_;
  std::vector<std::vector<long>> chi_exp_;
  std::vector<std::vector<int>> mul_;
  std::vector<std::vector<Scalar>> swap_;
  std::vector<std::vector<VGElement>> tail_;
  std::vector<std::optional<VGElement>> square_;
  std::vector<Scalar> zeta_;
};

inline VGElement kappa_as_vg(const AlgebraSpec& spec, int i, int j) {
  VGElement out;
  for (const auto& t : spec.kappa(i, j)) vg_add(out, t.r, spec.group().index(t.g), t.c);
  return out;
}

/// The rewriting system of H_{q,kappa}: v_j v_i -> q_ji v_i v_j + kappa(v_j, v_i) for j > i.
inline RewriteSystem make_h_system(const AlgebraSpec& spec) {
  std::vector<std::string> names;
  for (int i = 0; i < spec.n(); ++i) names.push_back(spec.vname(i));
  RewriteSystem sys(spec.ctx(), spec.group(), spec.chars(), names);
  for (int j = 0; j < spec.n(); ++j)
    for (int i = 0; i < j; ++i) sys.set_swap(j, i, spec.q(j, i), kappa_as_vg(spec, j, i));
  return sys;
}

/// Defining relation v_i v_j - q_ij v_j v_i - kappa(v_i, v_j) as an element of T(V) # G.
inline NCElement defining_relation(const AlgebraSpec& spec, int i, int j) {
  const auto& ctx = spec.ctx();
  NCElement rel = NCElement::monomial(ctx, Word{i, j}, 0, Scalar::one(ctx));
  rel.add_term(NCKey{Word{j, i}, 0}, -spec.q(i, j));
  for (const auto& t : spec.kappa(i, j)) rel.add_term(NCKey{Word{t.r}, spec.group().index(t.g)}, -t.c);
  return rel;
}

inline NCElement push_group_right(const AlgebraSpec& spec, const GroupElement& g, const Word& w) {
  return make_h_system(spec).push_group_right(spec.group().index(g), w);
}

inline NCElement normal_form(const NCElement& x, const AlgebraSpec& spec) { return make_h_system(spec).normal_form(x); }

inline NCElement h_multiply(const NCElement& a, const NCElement& b, const AlgebraSpec& spec) {
  return make_h_system(spec).multiply(a, b);
}

/// kappa(v_i g, v_j h) = chi_j(g) kappa(v_i, v_j) g h, as a combination of (v_r, group index).
inline VGElement extended_kappa(const AlgebraSpec& spec, int i, const GroupElement& g, int j, const GroupElement& h) {
  const auto& G = spec.group();
  VGElement out;
  Scalar twist = spec.chi_value(j, g);
  for (const auto& t : spec.kappa(i, j))
    vg_add(out, t.r, G.index(G.mul(G.mul(t.g, g), h)), twist * t.c);
  return out;
}

/// Nondecreasing words of length exactly d over n letters.
inline std::vector<Word> pbw_words_of_length(int n, int d) {
  std::vector<Word> out;
  Word w(d, 0);
  if (d == 0) return {Word{}};
  if (n == 0) return out;
  for (;;) {
    out.push_back(w);
    int p = d - 1;
    while (p >= 0 && w[p] == n - 1) --p;
    if (p < 0) break;
    ++w[p];
    for (int k = p + 1; k < d; ++k) w[k] = w[p];
  }
  return out;
}

/// All words of length exactly d over n letters, in lexicographic order.
inline std::vector<Word> all_words_of_length(int n, int d) {
  std::vector<Word> out;
  Word w(d, 0);
  if (d == 0) return {Word{}};
  if (n == 0) return out;
  for (;;) {
    out.push_back(w);
    int p = d - 1;
    while (p >= 0 && w[p] == n - 1) --p;
    if (p < 0) break;
    ++w[p];
    for (int k = p + 1; k < d; ++k) w[k] = 0;
  }
  return out;
}

/// Exponent vector form v_1^{m_1} ... v_n^{m_n} g of a PBW monomial.
struct PBWMonomial {
  std::vector<int> exps;
  GroupElement g;
};

inline PBWMonomial to_pbw_monomial(const AlgebraSpec& spec, const NCKey& k) {
  PBWMonomial m{std::vector<int>(spec.n(), 0), spec.group().element(k.g)};
  for (int x : k.word) ++m.exps[x];
  return m;
}

inline ADegree pbw_degree(const AlgebraSpec& spec, const PBWMonomial& m) {
  GradingGroup A(spec.n(), spec.group());
  return A.make(std::vector<long>(m.exps.begin(), m.exps.end()), m.g.exps);
}

// ---------------------------------------------------------------------------
// Element expressions: v1*v2*g[1,0] - q*v3 ...

struct ElementOps {
  using Value = NCElement;
  const RewriteSystem* sys;

  Value from_rational(const Rational& r) const { return sys->scalar(Scalar::constant(sys->ctx(), r)); }

  Value atom(Cursor& cur) const {
    cur.skip_space();
    std::size_t pos = cur.position();
    std::string name = cur.ident();
    const auto& ctx = sys->ctx();
    if (name == "zeta") return sys->scalar(parse_zeta_call(ctx, cur));
    if (auto idx = ctx->param_index(name)) return sys->scalar(Scalar::param(ctx, *idx));
    const auto& names = sys->names();
    for (std::size_t x = 0; x < names.size(); ++x)
      if (names[x] == name) return sys->letter(static_cast<int>(x));
    if (name == "g" && cur.peek() == '[') {
      cur.expect('[');
      std::vector<int> exps;
      if (!cur.accept(']')) {
        do {
          bool neg = cur.accept('-');
          long v = cur.small_integer();
          exps.push_back(static_cast<int>(neg ? -v : v));
        } while (cur.accept(','));
        cur.expect(']');
      }
      if (exps.size() != sys->group().rank())
        cur.fail_at(pos, "group element needs " + std::to_string(sys->group().rank()) + " components");
      return sys->group_element(sys->group().index(sys->group().make(exps)));
    }
    cur.fail_at(pos, "unknown identifier '" + name + "'");
  }

  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return sys->t_multiply(a, b); }
  Value neg(const Value& a) const { return -a; }

  Value power(const Value& base, long e, Cursor& cur, std::size_t pos) const {
    if (e < 0) {
      const auto& t = base.terms();
      if (t.size() != 1 || !t.begin()->first.word.empty() || t.begin()->first.g != 0 || !t.begin()->second.is_unit())
        cur.fail_at(pos, "negative power of a non-invertible element");
      return sys->scalar(t.begin()->second.pow(e));
    }
    Value acc = sys->one();
    for (long k = 0; k < e; ++k) acc = sys->t_multiply(acc, base);
    return acc;
  }
};

/// Parses an element of T(V) # G over the letters of `sys` (no normal form applied).
inline NCElement parse_element(std::string_view text, const RewriteSystem& sys) {
  Cursor cur(text);
  ElementOps ops{&sys};
  ExpressionParser<ElementOps> parser(ops, cur);
  return parser.parse_all();
}

}  // namespace qdrinfeld
