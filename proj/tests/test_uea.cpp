#include <catch_amalgamated.hpp>

#include <random>

#include "qdrinfeld/fixtures.hpp"
#include "qdrinfeld/uea.hpp"
#include "support/random_spec.hpp"
#include "support/spec_text.hpp"

using namespace qdrinfeld;
using qdrinfeld::testing::replace_section;

namespace {

const std::vector<std::string> kFixtures = {"ex1", "ex2", "ex3", "ex4", "zero-kappa"};

ColorLieRing scaled_ring(ColorLieRing L, long factor) {
  for (auto& row : L.bracket)
    for (auto& v : row) v = lie_scaled(v, Scalar::constant(L.ctx, factor));
  return L;
}

}  // namespace

TEST_CASE("enveloping algebra presentations", "[uea]") {
  AlgebraSpec s = fixture_spec("ex2");
  UEA U = build_uea(build_color_lie_ring(s));
  CHECK(U.over_group);
  CHECK(U.system.letters() == 3);
  const auto H = make_h_system(s);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < j; ++i) {
      CHECK(U.system.swap_coefficient(j, i) == H.swap_coefficient(j, i));
      CHECK(U.system.tail(j, i) == H.tail(j, i));
    }
  CHECK(U.relations.size() == 3);

  GenericLieSpec abelian;
  abelian.ctx = make_context(2);
  abelian.free_rank = 1;
  abelian.epsilon = {{Scalar::one(abelian.ctx)}};
  abelian.labels = {"x", "y"};
  abelian.degrees = {{1}, {1}};
  UEA A = build_uea(build_color_lie_ring(abelian));
  CHECK_FALSE(A.over_group);
  CHECK(A.system.swap_coefficient(1, 0).is_one());
  CHECK(A.system.tail(1, 0).empty());
  CHECK(A.system.multiply(A.system.letter(1), A.system.letter(0)) == A.system.word(Word{0, 1}));
}

TEST_CASE("gl(1|1) has a nilpotent element", "[uea]") {
  ColorLieRing L = build_color_lie_ring(std::get<GenericLieSpec>(load_fixture("gl11")));
  UEA U = build_uea(L);
  const auto& sys = U.system;
  const NCElement M = sys.letter(2);
  CHECK(sys.to_string(M) == "E21");
  CHECK_FALSE(sys.normal_form(M).is_zero());
  CHECK(sys.multiply(M, M).is_zero());
  CHECK(sys.has_square(1));
  CHECK(sys.has_square(2));
  CHECK_FALSE(sys.has_square(0));
  CHECK(rewrite_overlaps(sys).confluent);
  CHECK(sys.to_string(sys.normal_form(parse_element("E21*E21 + E21*E12", sys))) == "E11 + E22 - E12*E21");
  auto pbw = pbw_for_uea(L);
  CHECK(pbw.ok());
  CHECK_FALSE(pbw.spec_verdict.has_value());
}

TEST_CASE("U(L) is isomorphic to H on the fixtures", "[uea]") {
  for (const auto& name : kFixtures) {
    INFO(name);
    AlgebraSpec s = fixture_spec(name);
    ColorLieRing L = build_color_lie_ring(s);
    IsoReport rep = iso_check(s, L);
    CHECK(rep.ok());
    CHECK(rep.residues.empty());
    CHECK(pbw_for_uea(L).ok());
  }
}

TEST_CASE("a rescaled bracket breaks the isomorphism", "[uea]") {
  AlgebraSpec s = fixture_spec("ex2");
  ColorLieRing L = scaled_ring(build_color_lie_ring(s), 2);
  CHECK(check_color_axioms(L).ok());
  IsoReport rep = iso_check(s, L);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.residues.empty());
  CHECK(rep.residues.front().find("lambda") != std::string::npos);
}

TEST_CASE("a ring failing the axioms has no enveloping algebra here", "[uea]") {
  AlgebraSpec s = fixture_spec("ex2");
  ColorLieRing L = build_color_lie_ring(s);
  L.bracket[L.basis_index(0, 0)][L.basis_index(1, 0)] = LieVector{{L.basis_index(1, 1), Scalar::one(L.ctx)}};
  CHECK_THROWS_AS(build_uea(L), AxiomsFailed);
  CHECK_THROWS_AS(pbw_for_uea(L), AxiomsFailed);
}

TEST_CASE("dimension oracle", "[uea]") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(5, 3) == 10);

  DimensionReport r2 = dimension_oracle(fixture_spec("ex2"), 3);
  CHECK(r2.pbw_count == 40);
  CHECK(r2.quotient_dim == 40);
  CHECK(r2.matches());

  DimensionReport r1 = dimension_oracle(fixture_spec("ex1"), 2);
  CHECK(r1.pbw_count == 90);
  CHECK(r1.matches());

  for (const auto& name : kFixtures) {
    INFO(name);
    DimensionReport r = dimension_oracle(fixture_spec(name), 3);
    CHECK(r.matches());
    CHECK(r.quotient_dim == r.columns - r.rank);
  }

  // chi_3 changed so that kappa is no longer invariant
  AlgebraSpec broken = parse_algebra_spec(replace_section(fixture_text("ex2"), "[action]", "characters = [[1], [1], [1]]\n"));
  DimensionReport rb = dimension_oracle(broken, 3);
  CHECK(rb.quotient_dim < rb.pbw_count);
}

TEST_CASE("instantiation", "[uea]") {
  AlgebraSpec s = fixture_spec("ex2");
  AlgebraSpec c = instantiate_spec(s);
  CHECK(c.params().empty());
  CHECK(c.q(0, 1) == Scalar::zeta(c.ctx(), 3));
  AlgebraSpec d = instantiate_spec(s, {{"lambda", Scalar::constant(s.ctx(), 5)}});
  CHECK(d.coeff(2, 0, 1, d.group().make({1})) == Scalar::constant(d.ctx(), 5));

  RawSpec raw;
  raw.ctx = make_context(4, {"q"});
  raw.orders = {2};
  raw.characters = {{1}, {1}};
  raw.q.push_back({1, 2, Scalar::param(raw.ctx, 0), 0});
  CHECK_THROWS_AS(dimension_oracle(validate_spec(raw), 2), SymbolicParameter);
}

TEST_CASE("converse construction round trip", "[uea]") {
  for (const auto& name : kFixtures) {
    INFO(name);
    AlgebraSpec s = fixture_spec(name);
    ConverseResult r = converse_construct(build_color_lie_ring(s));
    CHECK(r.ok());
    CHECK(format_spec(r.spec) == format_spec(s));
  }
  ConverseResult z = converse_construct(build_color_lie_ring(fixture_spec("zero-kappa")));
  CHECK(z.spec.kappa_is_zero());
  CHECK(check_pbw(z.spec).verdict);

  ColorLieRing gl = build_color_lie_ring(std::get<GenericLieSpec>(load_fixture("gl11")));
  CHECK_THROWS_AS(converse_construct(gl), NotPurelyPositive);
}

TEST_CASE("random rings: isomorphism, confluence and round trip", "[uea][property]") {
  std::mt19937 rng(59);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 40; ++trial) {
    AlgebraSpec s = testing::random_spec(rng, testing::KappaShape::vanishing);
    PBWReport pbw = check_pbw(s);
    if (!pbw.verdict || !pbw.vanishing.ok) continue;
    ++tested;
    INFO(format_spec(s));
    ColorLieRing L = build_color_lie_ring(s);
    REQUIRE(iso_check(s, L).ok());
    REQUIRE(pbw_for_uea(L).ok());
    ConverseResult r = converse_construct(L);
    REQUIRE(r.ok());
    REQUIRE(format_spec(r.spec) == format_spec(s));
  }
  CHECK(tested >= 30);
}

TEST_CASE("dimension oracle agrees with the PBW verdict", "[uea][property]") {
  std::mt19937 rng(61);
  int broken = 0;
  for (int trial = 0; trial < 60; ++trial) {
    AlgebraSpec s = testing::random_spec(rng);
    const bool verdict = check_pbw(s).verdict;
    DimensionReport r = dimension_oracle(s, 3);
    INFO(format_spec(s));
    REQUIRE(r.matches() == verdict);
    REQUIRE(r.quotient_dim <= r.pbw_count);
    if (!verdict) ++broken;
  }
  CHECK(broken >= 5);
}
