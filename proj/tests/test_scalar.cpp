#include <catch_amalgamated.hpp>

#include <random>

#include "qdrinfeld/parse.hpp"
#include "qdrinfeld/scalar.hpp"

using namespace qdrinfeld;

namespace {

// Schoolbook reduction of a polynomial modulo a monic one, kept separate from the library code.
std::vector<Rational> reduce_mod(std::vector<Rational> p, const std::vector<Rational>& monic) {
  const std::size_t d = monic.size() - 1;
  for (std::size_t top = p.size(); top-- > d;) {
    Rational lead = p[top];
    if (lead == 0) continue;
    for (std::size_t k = 0; k <= d; ++k) p[top - d + k] -= lead * monic[k];
  }
  p.resize(d, Rational(0));
  return p;
}

Scalar random_scalar(const ContextPtr& ctx, std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(0, 3), coef(-3, 3), expo(-2, 2), zexp(0, ctx->conductor() - 1);
  Scalar s = Scalar::zero(ctx);
  int t = nterms(rng);
  for (int k = 0; k < t; ++k) {
    Scalar term = Scalar::zeta(ctx, zexp(rng)).scaled(Rational(coef(rng)));
    for (std::size_t p = 0; p < ctx->params().size(); ++p) term *= Scalar::param(ctx, p, expo(rng));
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("cyclotomic polynomials multiply to x^m - 1", "[scalar]") {
  for (int m : {1, 2, 3, 4, 6, 8, 9, 12, 15}) {
    RatPoly prod{Rational(1)};
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) prod = poly::mul(prod, CyclotomicField::cyclotomic_polynomial(d));
    RatPoly expect(m + 1, Rational(0));
    expect[0] = -1;
    expect[m] = 1;
    CHECK(prod == expect);
  }
  CHECK(cyclotomic_field(12)->degree() == 4);
  CHECK(cyclotomic_field(9)->degree() == 6);
}

TEST_CASE("basic cyclotomic identities", "[scalar]") {
  auto c4 = make_context(4);
  auto c3 = make_context(3);
  CHECK(scalar_arith(ArithOp::mul, Scalar::zeta(c4, 1), Scalar::zeta(c4, 1)) == Scalar::constant(c4, -1));
  Scalar z3sq = Scalar::zeta(c3, 1) * Scalar::zeta(c3, 1);
  CHECK(z3sq == Scalar::constant(c3, -1) - Scalar::zeta(c3, 1));
  CHECK(z3sq.to_string() == "-1 - zeta(3)");
  CHECK(Scalar::zeta(c4, 1).scaled(make_rational(1, 2)).to_string() == "1/2*zeta(4)");
}

TEST_CASE("additive inverse of a monomial", "[scalar]") {
  auto ctx = make_context(4, {"q", "lambda"});
  Scalar ql = Scalar::param(ctx, 0) * Scalar::param(ctx, 1);
  Scalar r = scalar_arith(ArithOp::add, ql, scalar_arith(ArithOp::neg, ql));
  CHECK(r.is_zero());
  CHECK(r.to_string() == "0");
}

TEST_CASE("inverses", "[scalar]") {
  auto ctx = make_context(6, {"q", "lambda"});
  for (int k = 0; k < 6; ++k) CHECK(scalar_inv(Scalar::zeta(ctx, k)) == Scalar::zeta(ctx, (6 - k) % 6));
  CHECK(scalar_inv(Scalar::param(ctx, 0, -1)) == Scalar::param(ctx, 0));
  CHECK_THROWS_AS(scalar_inv(Scalar::one(ctx) + Scalar::param(ctx, 1)), NotAUnit);
  CHECK_THROWS_AS(scalar_inv(Scalar::zero(ctx)), NotAUnit);
  // a non-root-of-unity cyclotomic unit: 1 + zeta(6) has norm 3 and an inverse in the field
  Scalar u = Scalar::one(ctx) + Scalar::zeta(ctx, 1);
  CHECK(u * u.inverse() == Scalar::one(ctx));
}

TEST_CASE("parsing literals", "[scalar][parse]") {
  auto ctx = make_context(12, {"q", "p"});
  Scalar qinv = parse_scalar("q^-1", ctx);
  CHECK(qinv == Scalar::param(ctx, 0, -1));
  CHECK(qinv.to_string() == "q^-1");

  auto c4 = make_context(4, {"p"});
  Scalar s = parse_scalar("-(1/2)*zeta(4)*p^2", c4);
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms().begin()->first == std::vector<int>{2});
  CHECK(s.terms().begin()->second == CyclotomicNumber::zeta_power(c4->field(), 1).scaled(make_rational(-1, 2)));
  CHECK(s.to_string() == "-1/2*zeta(4)*p^2");
}

TEST_CASE("zeta(3) + zeta(3)^2 reduces to -1", "[scalar][parse]") {
  auto c3 = make_context(3);
  // independent check: x + x^2 mod x^2 + x + 1
  auto red = reduce_mod({0, 1, 1}, {1, 1, 1});
  CHECK(red == std::vector<Rational>{-1, 0});
  CHECK(parse_scalar("zeta(3)+zeta(3)^2", c3) == Scalar::constant(c3, -1));
  // same value seen from a larger conductor
  auto c6 = make_context(6);
  CHECK(parse_scalar("zeta(3)+zeta(3)^2", c6) == Scalar::constant(c6, -1));
}

TEST_CASE("parse errors", "[scalar][parse]") {
  auto ctx = make_context(4, {"q"});
  CHECK_THROWS_AS(parse_scalar("r", ctx), ParseError);
  CHECK_THROWS_AS(parse_scalar("zeta(3)", ctx), ParseError);
  CHECK_THROWS_AS(parse_scalar("q/2", ctx), ParseError);
  CHECK_THROWS_AS(parse_scalar("(1+q)^-1", ctx), ParseError);
  CHECK_THROWS_AS(parse_scalar("q^", ctx), ParseError);
  CHECK_THROWS_AS(parse_scalar("", ctx), ParseError);
  try {
    parse_scalar("q^", ctx, 7, 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() == 13);
  }
  CHECK(parse_scalar("3/6", ctx) == Scalar::constant(ctx, make_rational(1, 2)));
}

TEST_CASE("ring axioms on random scalars", "[scalar][property]") {
  auto ctx = make_context(12, {"p", "q"});
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 1000; ++trial) {
    Scalar a = random_scalar(ctx, rng), b = random_scalar(ctx, rng), c = random_scalar(ctx, rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a + b) * c == a * c + b * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
    REQUIRE((a - a).is_zero());
  }
}

TEST_CASE("unit group: inverse is an involution and a two-sided inverse", "[scalar][property]") {
  auto ctx = make_context(12, {"p", "q"});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> zexp(0, 11), expo(-3, 3), coef(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    Scalar u = Scalar::zeta(ctx, zexp(rng)).scaled(Rational(coef(rng))) * Scalar::param(ctx, 0, expo(rng)) *
               Scalar::param(ctx, 1, expo(rng));
    REQUIRE(u.is_unit());
    REQUIRE(u * u.inverse() == Scalar::one(ctx));
    REQUIRE(u.inverse().inverse() == u);
  }
}

TEST_CASE("parse-print-parse is a fixed point", "[scalar][parse][property]") {
  auto ctx = make_context(12, {"p", "q"});
  std::mt19937 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Scalar a = random_scalar(ctx, rng);
    std::string text = a.to_string();
    Scalar b = parse_scalar(text, ctx);
    REQUIRE(b == a);
    REQUIRE(b.to_string() == text);
  }
}

TEST_CASE("context mismatch is rejected", "[scalar]") {
  auto a = make_context(3), b = make_context(4);
  CHECK_THROWS_AS(Scalar::one(a) + Scalar::one(b), SpecError);
  auto c = make_context(3, {"q"});
  CHECK_THROWS_AS(Scalar::one(a) * Scalar::one(c), SpecError);
  // the context-free zero is neutral everywhere
  CHECK(Scalar() + Scalar::one(a) == Scalar::one(a));
}

TEST_CASE("evaluation at an instantiation", "[scalar]") {
  auto ctx = make_context(4, {"q", "lambda"});
  Scalar s = parse_scalar("q^-1*lambda + q^2", ctx);
  auto F = ctx->field();
  CyclotomicNumber v = s.evaluate({CyclotomicNumber::zeta_power(F, 1), CyclotomicNumber(F, Rational(1))});
  // zeta^-1 + zeta^2 = -zeta - 1
  CHECK(v.to_string() == "-1 - zeta(4)");
}
