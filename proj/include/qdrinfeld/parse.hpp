#pragma once

// Small recursive-descent parser shared by scalar and algebra-element expressions.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary ('*' unary)*
//   unary := '-' unary | power
//   power := atom ('^' '-'? INT)?
//   atom  := INT ('/' INT)? | '(' expr ')' | IDENT ...    (identifiers resolved by the caller)

#include <cctype>
#include <string>
#include <string_view>

#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/scalar.hpp"

namespace qdrinfeld {

class Cursor {
 public:
  Cursor(std::string_view text, int line = 1, int column_offset = 0)
      : text_(text), line_(line), column_offset_(column_offset) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
  }

  bool peek_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  bool peek_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer" + found());
    return std::string(text_.substr(start, pos_ - start));
  }

  long small_integer() {
    std::string digits = integer();
    if (digits.size() > 9) fail("integer too large: " + digits);
    return std::stol(digits);
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier" + found());
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_offset_ + static_cast<int>(pos_) + 1);
  }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
    throw ParseError(what, line_, column_offset_ + static_cast<int>(pos) + 1);
  }

  std::string found() {
    if (at_end()) return ", found end of input";
    return std::string(", found '") + text_[pos_] + "'";
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_offset_;
};

/// Ops must provide: Value from_rational(const Rational&), Value atom(Cursor&) for
/// identifiers, add/sub/mul/neg, and Value power(const Value&, long, Cursor&, pos).
template <class Ops>
class ExpressionParser {
 public:
  using Value = typename Ops::Value;

  ExpressionParser(Ops& ops, Cursor& cur) : ops_(ops), cur_(cur) {}

  Value parse_all() {
    Value v = expr();
    if (!cur_.at_end()) {
      if (cur_.peek() == '/') cur_.fail("division not supported outside rational literals");
      cur_.fail("unexpected token" + cur_.found());
    }
    return v;
  }

  Value expr() {
    Value acc = term();
    for (;;) {
      if (cur_.accept('+'))
        acc = ops_.add(acc, term());
      else if (cur_.accept('-'))
        acc = ops_.sub(acc, term());
      else
        return acc;
    }
  }

 private:
  Value term() {
    Value acc = unary();
    while (cur_.accept('*')) acc = ops_.mul(acc, unary());
    return acc;
  }

  Value unary() {
    if (cur_.accept('-')) return ops_.neg(unary());
    return power();
  }

  Value power() {
    Value base = atom();
    cur_.skip_space();
    std::size_t pos = cur_.position();
    if (!cur_.accept('^')) return base;
    bool negative = cur_.accept('-');
    long e = cur_.small_integer();
    return ops_.power(base, negative ? -e : e, cur_, pos);
  }

  Value atom() {
    if (cur_.accept('(')) {
      Value v = expr();
      if (cur_.peek() == '/') cur_.fail("division not supported outside rational literals");
      cur_.expect(')');
      return v;
    }
    if (cur_.peek_digit()) {
      Rational r(cur_.integer());
      std::size_t pos = cur_.position();
      if (cur_.accept('/')) {
        if (!cur_.peek_digit()) cur_.fail_at(pos, "division not supported outside rational literals");
        Rational den(cur_.integer());
        if (den == 0) cur_.fail("zero denominator");
        r /= den;
        r.canonicalize();
      }
      return ops_.from_rational(r);
    }
    if (cur_.peek_ident()) return ops_.atom(cur_);
    if (cur_.at_end()) cur_.fail("unexpected end of expression");
    cur_.fail("unexpected token" + cur_.found());
  }

  Ops& ops_;
  Cursor& cur_;
};

/// Parses zeta(d) after the identifier "zeta" has been read; d must divide the conductor.
inline Scalar parse_zeta_call(const ContextPtr& ctx, Cursor& cur) {
  cur.expect('(');
  std::size_t pos = cur.position();
  long d = cur.small_integer();
  cur.expect(')');
  if (d < 1 || ctx->conductor() % d != 0)
    cur.fail_at(pos, "zeta(" + std::to_string(d) + "): " + std::to_string(d) +
                         " does not divide conductor " + std::to_string(ctx->conductor()));
  return Scalar::zeta(ctx, ctx->conductor() / d);
}

struct ScalarOps {
  using Value = Scalar;
  ContextPtr ctx;

  Value from_rational(const Rational& r) const { return Scalar::constant(ctx, r); }

  Value atom(Cursor& cur) const {
    cur.skip_space();
    std::size_t pos = cur.position();
    std::string name = cur.ident();
    if (name == "zeta") return parse_zeta_call(ctx, cur);
    if (auto idx = ctx->param_index(name)) return Scalar::param(ctx, *idx);
    cur.fail_at(pos, "unknown identifier '" + name + "'");
  }

  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value neg(const Value& a) const { return -a; }

  Value power(const Value& base, long e, Cursor& cur, std::size_t pos) const {
    if (e < 0 && !base.is_unit())
      cur.fail_at(pos, "negative power of non-unit '" + base.to_string() + "'");
    Value b = base;
    if (!b.context()) b = Scalar::zero(ctx);
    return b.pow(e);
  }
};

/// Parses a scalar expression. `line`/`column` locate the text inside a larger file.
inline Scalar parse_scalar(std::string_view text, const ContextPtr& ctx, int line = 1,
                           int column_offset = 0) {
  Cursor cur(text, line, column_offset);
  ScalarOps ops{ctx};
  ExpressionParser<ScalarOps> parser(ops, cur);
  Scalar s = parser.parse_all();
  if (!s.context()) s = Scalar::zero(ctx);
  return s;
}

}  // namespace qdrinfeld
