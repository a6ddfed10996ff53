#include <catch_amalgamated.hpp>

#include <random>
#include <string>

#include "qdrinfeld/colorlie.hpp"
#include "qdrinfeld/fixtures.hpp"
#include "qdrinfeld/pbw.hpp"
#include "qdrinfeld/spec_io.hpp"
#include "support/random_spec.hpp"
#include "support/spec_text.hpp"

using namespace qdrinfeld;
using qdrinfeld::testing::replace_section;

namespace {

NCElement el(const RewriteSystem& sys, const std::string& text) { return parse_element(text, sys); }

Word random_word(std::mt19937& rng, int n, int max_len) {
  Word w(std::uniform_int_distribution<int>(0, max_len)(rng));
  for (auto& x : w) x = std::uniform_int_distribution<int>(0, n - 1)(rng);
  return w;
}

}  // namespace

TEST_CASE("Example 2 spec validates with the expected data", "[algebra]") {
  AlgebraSpec s = fixture_spec("ex2");
  const auto& ctx = s.ctx();
  Scalar q = Scalar::param(ctx, 0), lambda = Scalar::param(ctx, 1);
  CHECK(s.n() == 3);
  CHECK(s.q(0, 1) == q.inverse());
  CHECK(s.q(0, 2) == -q.inverse());
  CHECK(s.q(1, 2) == -q);
  CHECK(s.q(1, 0) == q);
  CHECK(s.q(0, 0).is_one());
  CHECK(s.coeff(2, 0, 1, s.group().make({1})) == lambda);
  // derived entry kappa(v2, v1) = -q_21 kappa(v1, v2)
  CHECK(s.coeff(2, 1, 0, s.group().make({1})) == -(q * lambda));
  CHECK(s.kappa(0, 0).empty());
}

TEST_CASE("spec validation rejects inconsistent data", "[algebra]") {
  const std::string ex2 = fixture_text("ex2");
  SECTION("q_ii must be 1") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[q]", "1 1 = 2\n1 2 = q^-1\n")), SpecError);
  }
  SECTION("kappa(2,1) given inconsistently with antisymmetry") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[kappa]", "1 2 -> 3 [1] lambda\n2 1 -> 3 [1] lambda\n")),
                    SpecError);
  }
  SECTION("kappa(2,1) given consistently is accepted") {
    AlgebraSpec s = parse_algebra_spec(replace_section(ex2, "[kappa]", "1 2 -> 3 [1] lambda\n2 1 -> 3 [1] -q*lambda\n"));
    CHECK(s.kappa_table().size() == 1);
  }
  SECTION("q_ij and q_ji must be inverse") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[q]", "1 2 = q\n2 1 = q\n")), SpecError);
  }
  SECTION("index out of range") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[kappa]", "1 4 -> 3 [1] lambda\n")), SpecError);
  }
  SECTION("kappa(v_i, v_i) must vanish") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[kappa]", "2 2 -> 3 [1] lambda\n")), SpecError);
  }
  SECTION("group element arity") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[kappa]", "1 2 -> 3 [1, 0] lambda\n")), SpecError);
  }
  SECTION("conductor must be a multiple of the group exponent") {
    CHECK_THROWS_AS(parse_algebra_spec(replace_section(ex2, "[group]", "orders = [3]\n")), SpecError);
  }
  SECTION("malformed text reports a position") {
    try {
      parse_algebra_spec(replace_section(ex2, "[q]", "1 2 = q^-1 +\n"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() > 0);
    }
  }
}

TEST_CASE("group letters move right", "[algebra]") {
  AlgebraSpec e1 = fixture_spec("ex1");
  auto sys1 = make_h_system(e1);
  const auto& G1 = e1.group();
  CHECK(push_group_right(e1, G1.make({1, 0}), Word{0}) == el(sys1, "zeta(3)*v1*g[1,0]"));
  CHECK(push_group_right(e1, G1.identity(), Word{1}) == el(sys1, "v2"));

  AlgebraSpec e2 = fixture_spec("ex2");
  auto sys2 = make_h_system(e2);
  CHECK(push_group_right(e2, e2.group().make({1}), Word{0, 1}) == el(sys2, "v1*v2*g[1]"));
  CHECK(push_group_right(e2, e2.group().make({1}), Word{0, 2}) == el(sys2, "-v1*v3*g[1]"));
}

TEST_CASE("normal forms of the examples", "[algebra]") {
  AlgebraSpec e1 = fixture_spec("ex1");
  auto sys1 = make_h_system(e1);
  CHECK(normal_form(el(sys1, "v2*v1"), e1) == el(sys1, "zeta(3)^-1*v1*v2 - v3*g[1,0]"));

  AlgebraSpec e2 = fixture_spec("ex2");
  auto sys2 = make_h_system(e2);
  CHECK(h_multiply(el(sys2, "v1"), sys2.one(), e2) == el(sys2, "v1"));
  CHECK(h_multiply(el(sys2, "v1"), el(sys2, "v2"), e2) == el(sys2, "v1*v2"));
  CHECK(h_multiply(el(sys2, "v2"), el(sys2, "v1"), e2) == el(sys2, "q*v1*v2 - lambda*q*v3*g[1]"));
  CHECK(sys2.to_string(h_multiply(el(sys2, "v2"), el(sys2, "v1"), e2)) == "-q*lambda*v3*g[1] + q*v1*v2");

  // the three-letter example: two reduction strategies must agree
  const NCElement x = el(sys2, "v2*v1*v3");
  const NCElement left = sys2.normal_form(x, Strategy::leftmost);
  CHECK(left == sys2.normal_form(x, Strategy::rightmost));
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(left == sys2.normal_form(x, Strategy::random, seed));
  CHECK(left == el(sys2, "q*v1*v2*v3 - lambda*q*v3*v3*g[1]"));

  for (const auto& name : {"ex1", "ex2", "ex3", "ex4", "zero-kappa"}) {
    AlgebraSpec s = fixture_spec(name);
    for (int i = 0; i < s.n(); ++i)
      for (int j = 0; j < s.n(); ++j)
        if (i != j) CHECK(normal_form(defining_relation(s, i, j), s).is_zero());
  }
}

TEST_CASE("extended kappa", "[algebra]") {
  AlgebraSpec e2 = fixture_spec("ex2");
  const auto& ctx2 = e2.ctx();
  auto g = e2.group().make({1}), one = e2.group().identity();
  VGElement expect;
  vg_add(expect, 2, 1, -Scalar::param(ctx2, 1));
  CHECK(extended_kappa(e2, 0, g, 1, g) == expect);
  CHECK(extended_kappa(e2, 0, one, 1, one) == kappa_as_vg(e2, 0, 1));

  AlgebraSpec e3 = fixture_spec("ex3");
  const auto& G3 = e3.group();
  VGElement expect3;
  vg_add(expect3, 0, G3.index(G3.make({2})), Scalar::param(e3.ctx(), 0));
  CHECK(extended_kappa(e3, 0, G3.make({1}), 1, G3.identity()) == expect3);
}

TEST_CASE("normal form is a projection and respects the filtration", "[algebra][property]") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    AlgebraSpec s = testing::random_spec(rng);
    auto sys = make_h_system(s);
    for (int k = 0; k < 5; ++k) {
      Word w = random_word(rng, s.n(), 4);
      const int g = std::uniform_int_distribution<int>(0, s.group().size() - 1)(rng);
      NCElement x = sys.word(w, g);
      NCElement nf = sys.normal_form(x);
      REQUIRE(sys.is_normal_form(nf));
      REQUIRE(sys.normal_form(nf) == nf);
      for (const auto& [key, c] : nf.terms()) REQUIRE(key.word.size() <= w.size());
    }
  }
}

TEST_CASE("multiplication is associative and strategy-independent when PBW holds", "[algebra][property]") {
  std::mt19937 rng(202);
  int specs = 0, triples = 0;
  while (triples < 200) {
    AlgebraSpec s = testing::random_spec(rng, testing::KappaShape::vanishing);
    if (!check_pbw(s).verdict) continue;
    ++specs;
    auto sys = make_h_system(s);
    std::vector<NCElement> basis;
    for (int len = 0; len <= 3; ++len)
      for (const auto& w : pbw_words_of_length(s.n(), len))
        for (int g = 0; g < s.group().size(); ++g) basis.push_back(sys.word(w, g));
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int k = 0; k < 10; ++k, ++triples) {
      const auto &a = basis[pick(rng)], &b = basis[pick(rng)], &c = basis[pick(rng)];
      REQUIRE(sys.multiply(sys.multiply(a, b), c) == sys.multiply(a, sys.multiply(b, c)));
      NCElement abc = sys.t_multiply(sys.t_multiply(a, b), c);
      REQUIRE(sys.normal_form(abc, Strategy::rightmost) == sys.normal_form(abc));
      REQUIRE(sys.normal_form(abc, Strategy::random, k) == sys.normal_form(abc));
    }
  }
  CHECK(specs >= 10);
}

TEST_CASE("normal form preserves the degree in A/N under strong vanishing", "[algebra][property]") {
  std::mt19937 rng(303);
  int tested = 0;
  while (tested < 40) {
    AlgebraSpec s = testing::random_spec(rng, testing::KappaShape::vanishing);
    if (!check_vanishing(s, true).ok || !check_pbw(s).verdict) continue;
    ++tested;
    auto sys = make_h_system(s);
    const SubgroupN N = build_N_and_quotient(s).N;
    for (int k = 0; k < 5; ++k) {
      Word w = random_word(rng, s.n(), 4);
      const int g = std::uniform_int_distribution<int>(0, s.group().size() - 1)(rng);
      const NCKey key{w, g};
      const ADegree d = pbw_degree(s, to_pbw_monomial(s, key));
      const NCElement nf = sys.normal_form(sys.word(w, g));
      for (const auto& [out, c] : nf.terms())
        REQUIRE(N.congruent(pbw_degree(s, to_pbw_monomial(s, out)), d));
    }
  }
}

TEST_CASE("element parser", "[algebra]") {
  AlgebraSpec e2 = fixture_spec("ex2");
  auto sys = make_h_system(e2);
  CHECK(el(sys, "(v1 + v2)^2") == el(sys, "v1*v1 + v1*v2 + v2*v1 + v2*v2"));
  CHECK(el(sys, "g[1]*v1") == el(sys, "-v1*g[1]"));
  CHECK(el(sys, "q^-1*q*v3") == el(sys, "v3"));
  CHECK_THROWS_AS(el(sys, "v4"), ParseError);
  CHECK_THROWS_AS(el(sys, "g[1,1]"), ParseError);
  CHECK_THROWS_AS(el(sys, "v1^-1"), ParseError);
}
