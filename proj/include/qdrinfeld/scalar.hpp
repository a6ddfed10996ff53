#pragma once

// Exact coefficients: Laurent polynomials in named parameters over the
// cyclotomic field Q(zeta_m).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdrinfeld/errors.hpp"

namespace qdrinfeld {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Dense polynomial over Q; entry k is the coefficient of x^k. Kept trimmed.
using RatPoly = std::vector<Rational>;

namespace poly {

inline void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

inline RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

/// Quotient and remainder of a by nonzero b.
inline std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  RatPoly quot;
  if (degree(a) >= db) quot.assign(a.size() - b.size() + 1, Rational(0));
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    Rational factor = a.back() / b.back();
    quot[shift] = factor;
    for (int k = 0; k <= db; ++k) a[shift + k] -= factor * b[k];
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

}  // namespace poly

/// Q(zeta_m) presented as Q[x]/(Phi_m). Instances are shared and immutable.
class CyclotomicField {
 public:
  explicit CyclotomicField(int m) : conductor_(m) {
    if (m < 1) throw SpecError("conductor must be positive, got " + std::to_string(m));
    phi_ = cyclotomic_polynomial(m);
    degree_ = poly::degree(phi_);
    // x^k mod Phi_m for k < 2*degree - 1, the range a product of reduced elements reaches.
    const int top = std::max(2 * degree_ - 1, m);
    powers_.reserve(top);
    std::vector<Rational> cur(degree_, Rational(0));
    cur[0] = 1;
    for (int k = 0; k < top; ++k) {
      powers_.push_back(cur);
      cur = times_x(cur);
    }
  }

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const RatPoly& phi() const { return phi_; }

  /// Coefficients of x^k reduced mod Phi_m, for 0 <= k < 2*degree - 1 (and k < m).
  const std::vector<Rational>& power(int k) const { return powers_.at(k); }

  /// Phi_d for any d >= 1, computed by exact division of x^d - 1 and cached process-wide.
  static const RatPoly& cyclotomic_polynomial(int d) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<RatPoly>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    return cyclotomic_polynomial_locked(d, cache);
  }

 private:
  static const RatPoly& cyclotomic_polynomial_locked(int d,
                                                     std::map<int, std::unique_ptr<RatPoly>>& cache) {
    if (auto it = cache.find(d); it != cache.end()) return *it->second;
    RatPoly num(d + 1, Rational(0));
    num[0] = -1;
    num[d] = 1;
    for (int e = 1; e < d; ++e) {
      if (d % e != 0) continue;
      auto [q, r] = poly::divmod(num, cyclotomic_polynomial_locked(e, cache));
      if (!r.empty()) throw std::logic_error("inexact cyclotomic division");
      num = std::move(q);
    }
    auto [it, inserted] = cache.emplace(d, std::make_unique<RatPoly>(std::move(num)));
    return *it->second;
  }

  std::vector<Rational> times_x(const std::vector<Rational>& v) const {
    // shift up by one and fold x^degree using the monic Phi_m
    std::vector<Rational> out(degree_, Rational(0));
    const Rational& top = v[degree_ - 1];
    for (int k = degree_ - 1; k >= 1; --k) out[k] = v[k - 1];
    out[0] = 0;
    if (top != 0) {
      for (int k = 0; k < degree_; ++k) out[k] -= top * phi_[k];
    }
    return out;
  }

  int conductor_;
  int degree_ = 0;
  RatPoly phi_;
  std::vector<std::vector<Rational>> powers_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

inline FieldPtr cyclotomic_field(int m) {
  static std::mutex mutex;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_shared<const CyclotomicField>(m);
  return slot;
}

/// Element of Q(zeta_m) in the power basis {zeta_m^k : k < phi(m)}, always reduced.
class CyclotomicNumber {
 public:
  CyclotomicNumber() = default;

  explicit CyclotomicNumber(FieldPtr field)
      : field_(std::move(field)), coeffs_(field_->degree(), Rational(0)) {}

  CyclotomicNumber(FieldPtr field, const Rational& value) : CyclotomicNumber(std::move(field)) {
    coeffs_[0] = value;
  }

  CyclotomicNumber(FieldPtr field, std::vector<Rational> coeffs)
      : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    reduce_in_place();
  }

  /// zeta_m^k for any integer k.
  static CyclotomicNumber zeta_power(const FieldPtr& field, long k) {
    const int m = field->conductor();
    long e = ((k % m) + m) % m;
    CyclotomicNumber out(field);
    out.coeffs_ = field->power(static_cast<int>(e));
    return out;
  }

  const FieldPtr& field() const { return field_; }
  int conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }
  bool is_rational() const {
    return std::all_of(coeffs_.begin() + (coeffs_.empty() ? 0 : 1), coeffs_.end(),
                       [](const Rational& c) { return c == 0; });
  }
  bool is_one() const { return is_rational() && !coeffs_.empty() && coeffs_[0] == 1; }
  bool is_minus_one() const { return is_rational() && !coeffs_.empty() && coeffs_[0] == -1; }
  std::size_t nonzero_count() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; }));
  }

  CyclotomicNumber operator-() const {
    CyclotomicNumber out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  CyclotomicNumber& operator+=(const CyclotomicNumber& o) {
    check_same(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) {
    check_same(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) {
    *this = *this * o;
    return *this;
  }

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }

  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    a.check_same(b);
    const int d = a.field_->degree();
    std::vector<Rational> conv(2 * d - 1, Rational(0));
    for (int i = 0; i < d; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b.coeffs_[j] == 0) continue;
        conv[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    CyclotomicNumber out(a.field_);
    for (int k = 0; k < 2 * d - 1; ++k) {
      if (conv[k] == 0) continue;
      if (k < d) {
        out.coeffs_[k] += conv[k];
        continue;
      }
      const auto& red = a.field_->power(k);
      for (int t = 0; t < d; ++t)
        if (red[t] != 0) out.coeffs_[t] += conv[k] * red[t];
    }
    return out;
  }

  CyclotomicNumber scaled(const Rational& r) const {
    CyclotomicNumber out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm in Q[x] modulo Phi_m.
  CyclotomicNumber inverse() const {
    if (is_zero()) throw NotAUnit("zero has no inverse in Q(zeta_" + std::to_string(conductor()) + ")");
    if (is_rational()) return CyclotomicNumber(field_, Rational(1) / coeffs_[0]);
    RatPoly r0 = field_->phi(), r1(coeffs_.begin(), coeffs_.end());
    poly::trim(r1);
    RatPoly s0, s1{Rational(1)};  // invariant: s_k * a == r_k (mod Phi_m)
    while (poly::degree(r1) > 0) {
      auto [q, r] = poly::divmod(r0, r1);
      RatPoly s2 = poly::sub(s0, poly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r1 is a nonzero constant since Phi_m is irreducible
    const Rational c = r1.at(0);
    std::vector<Rational> inv(field_->degree(), Rational(0));
    for (std::size_t k = 0; k < s1.size(); ++k) inv[k] = s1[k] / c;
    return CyclotomicNumber(field_, std::move(inv));
  }

  /// k in [0, m) with this == zeta_m^k, if this is an m-th root of unity.
  std::optional<int> root_of_unity_exponent() const {
    for (int k = 0; k < conductor(); ++k)
      if (field_->power(k) == coeffs_) return k;
    return std::nullopt;
  }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.field_ && b.field_ && a.field_->conductor() != b.field_->conductor()) return false;
    return a.coeffs_ == b.coeffs_;
  }

  /// Power-basis rendering, e.g. "-1 - zeta(3)" or "1/2*zeta(4)".
  std::string to_string() const {
    std::string out;
    const std::string z = "zeta(" + std::to_string(conductor()) + ")";
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      std::string piece;
      if (k == 0) {
        piece = c.get_str();
      } else {
        std::string zk = z + (k > 1 ? "^" + std::to_string(k) : "");
        if (c == 1)
          piece = zk;
        else if (c == -1)
          piece = "-" + zk;
        else
          piece = c.get_str() + "*" + zk;
      }
      if (out.empty())
        out = piece;
      else if (piece[0] == '-')
        out += " - " + piece.substr(1);
      else
        out += " + " + piece;
    }
    return out.empty() ? "0" : out;
  }

 private:
  void check_same(const CyclotomicNumber& o) const {
    if (field_->conductor() != o.field_->conductor())
      throw SpecError("conductor mismatch: " + std::to_string(field_->conductor()) + " vs " +
                      std::to_string(o.field_->conductor()));
  }

  void reduce_in_place() {
    const int d = field_->degree();
    if (static_cast<int>(coeffs_.size()) <= d) {
      coeffs_.resize(d, Rational(0));
      return;
    }
    RatPoly p(coeffs_.begin(), coeffs_.end());
    auto [q, r] = poly::divmod(p, field_->phi());
    coeffs_.assign(d, Rational(0));
    for (std::size_t k = 0; k < r.size(); ++k) coeffs_[k] = r[k];
  }

  FieldPtr field_;
  std::vector<Rational> coeffs_;
};

/// Conductor plus the ordered list of symbolic parameter names.
class ScalarContext {
 public:
  ScalarContext(int conductor, std::vector<std::string> params)
      : field_(cyclotomic_field(conductor)), params_(std::move(params)) {
    for (std::size_t i = 0; i < params_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (params_[i] == params_[j]) throw SpecError("duplicate parameter name '" + params_[i] + "'");
  }

  int conductor() const { return field_->conductor(); }
  const FieldPtr& field() const { return field_; }
  const std::vector<std::string>& params() const { return params_; }

  std::optional<std::size_t> param_index(std::string_view name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (params_[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const ScalarContext& a, const ScalarContext& b) {
    return a.conductor() == b.conductor() && a.params_ == b.params_;
  }

 private:
  FieldPtr field_;
  std::vector<std::string> params_;
};

using ContextPtr = std::shared_ptr<const ScalarContext>;

inline ContextPtr make_context(int conductor, std::vector<std::string> params = {}) {
  return std::make_shared<const ScalarContext>(conductor, std::move(params));
}

/// Laurent polynomial in the context's parameters with Q(zeta_m) coefficients.
///
/// A default-constructed Scalar has no context and is the zero of every ring;
/// it combines with any other Scalar. Nonzero values always carry a context.
class Scalar {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, CyclotomicNumber>;

  Scalar() = default;

  static Scalar zero(ContextPtr ctx) {
    Scalar s;
    s.ctx_ = std::move(ctx);
    return s;
  }

  static Scalar constant(ContextPtr ctx, const Rational& value) {
    return from_cyclotomic(ctx, CyclotomicNumber(ctx->field(), value));
  }

  static Scalar one(ContextPtr ctx) { return constant(std::move(ctx), Rational(1)); }

  static Scalar from_cyclotomic(ContextPtr ctx, const CyclotomicNumber& c) {
    Scalar s = zero(ctx);
    if (!c.is_zero()) s.terms_.emplace(Exponents(s.ctx_->params().size(), 0), c);
    return s;
  }

  /// zeta_m^k
  static Scalar zeta(ContextPtr ctx, long k) {
    return from_cyclotomic(ctx, CyclotomicNumber::zeta_power(ctx->field(), k));
  }

  /// The Laurent monomial param^exponent.
  static Scalar param(ContextPtr ctx, std::size_t index, int exponent = 1) {
    Scalar s = zero(ctx);
    Exponents e(s.ctx_->params().size(), 0);
    e.at(index) = exponent;
    s.terms_.emplace(std::move(e), CyclotomicNumber(s.ctx_->field(), Rational(1)));
    return s;
  }

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Single term: a Laurent monomial with nonzero cyclotomic coefficient.
  bool is_unit() const { return terms_.size() == 1; }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_trivial(terms_.begin()->first));
  }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second.is_one(); }
  bool is_minus_one() const {
    return is_constant() && !terms_.empty() && terms_.begin()->second.is_minus_one();
  }

  /// Value of a constant Scalar as a cyclotomic number.
  CyclotomicNumber constant_value() const {
    if (!is_constant()) throw SymbolicParameter("scalar '" + to_string() + "' is not a constant");
    if (terms_.empty()) return CyclotomicNumber(ctx_->field());
    return terms_.begin()->second;
  }

  Scalar operator-() const {
    Scalar out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  Scalar& operator+=(const Scalar& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, c);
    return *this;
  }

  Scalar& operator-=(const Scalar& o) {
    adopt(o);
    for (const auto& [e, c] : o.terms_) accumulate(e, -c);
    return *this;
  }

  Scalar& operator*=(const Scalar& o) {
    *this = *this * o;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    out.ctx_ = a.ctx_ ? a.ctx_ : b.ctx_;
    if (a.ctx_ && b.ctx_) check_compatible(*a.ctx_, *b.ctx_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      const auto& [ea, ca] = *a.terms_.begin();
      const auto& [eb, cb] = *b.terms_.begin();
      out.terms_.emplace(add_exponents(ea, eb), ca * cb);
      return out;
    }
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.accumulate(add_exponents(ea, eb), ca * cb);
    return out;
  }

  Scalar scaled(const Rational& r) const {
    if (r == 0) return zero(ctx_);
    Scalar out = *this;
    for (auto& [e, c] : out.terms_) c = c.scaled(r);
    return out;
  }

  Scalar inverse() const {
    if (terms_.size() != 1)
      throw NotAUnit("'" + to_string() + "' is not a unit (needs exactly one Laurent term)");
    const auto& [e, c] = *terms_.begin();
    Exponents neg(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) neg[k] = -e[k];
    Scalar out = zero(ctx_);
    out.terms_.emplace(std::move(neg), c.inverse());
    return out;
  }

  /// Integer power; negative exponents require a unit.
  Scalar pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar base = *this, acc = ctx_ ? one(ctx_) : Scalar();
    if (!ctx_) return n == 0 ? acc : Scalar();
    while (n > 0) {
      if (n & 1) acc *= base;
      n >>= 1;
      if (n) base *= base;
    }
    return acc;
  }

  /// Substitute concrete values for every parameter.
  CyclotomicNumber evaluate(const std::vector<CyclotomicNumber>& values) const {
    if (!ctx_) throw SymbolicParameter("cannot evaluate a context-free zero without a field");
    CyclotomicNumber acc(ctx_->field());
    for (const auto& [e, c] : terms_) {
      CyclotomicNumber term = c;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        const CyclotomicNumber& v = values.at(k);
        CyclotomicNumber base = e[k] > 0 ? v : v.inverse();
        for (int t = 0; t < std::abs(e[k]); ++t) term *= base;
      }
      acc += term;
    }
    return acc;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
    return a.terms_ == b.terms_;
  }

  /// Canonical text: terms in lexicographic exponent order, coefficients in the power basis.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string mono;
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += ctx_->params()[k];
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      std::string piece;
      if (mono.empty())
        piece = c.to_string();
      else if (c.is_one())
        piece = mono;
      else if (c.is_minus_one())
        piece = "-" + mono;
      else if (c.nonzero_count() == 1)
        piece = c.to_string() + "*" + mono;
      else
        piece = "(" + c.to_string() + ")*" + mono;
      if (out.empty())
        out = piece;
      else if (piece[0] == '-')
        out += " - " + piece.substr(1);
      else
        out += " + " + piece;
    }
    return out;
  }

 private:
  static bool is_trivial(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
  }

  static Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
    return out;
  }

  static void check_compatible(const ScalarContext& a, const ScalarContext& b) {
    if (&a == &b) return;
    if (a.conductor() != b.conductor())
      throw SpecError("conductor mismatch: " + std::to_string(a.conductor()) + " vs " +
                      std::to_string(b.conductor()));
    if (a.params() != b.params()) throw SpecError("parameter-list mismatch between scalars");
  }

  void adopt(const Scalar& o) {
    if (!o.ctx_) return;
    if (!ctx_) {
      ctx_ = o.ctx_;
      return;
    }
    check_compatible(*ctx_, *o.ctx_);
  }

  void accumulate(const Exponents& e, const CyclotomicNumber& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  ContextPtr ctx_;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& c) { return os << c.to_string(); }

enum class ArithOp { add, sub, mul, neg };

/// Dispatching form of the ring operations (neg ignores b).
inline Scalar scalar_arith(ArithOp op, const Scalar& a, const Scalar& b = Scalar()) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
  }
  return {};
}

inline Scalar scalar_inv(const Scalar& a) { return a.inverse(); }

}  // namespace qdrinfeld
