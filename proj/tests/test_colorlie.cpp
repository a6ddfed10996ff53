#include <catch_amalgamated.hpp>

#include <random>

#include "qdrinfeld/colorlie.hpp"
#include "qdrinfeld/fixtures.hpp"
#include "support/random_spec.hpp"

using namespace qdrinfeld;

namespace {

const std::vector<std::string> kFixtures = {"ex1", "ex2", "ex3", "ex4", "zero-kappa"};

ADegree random_degree(std::mt19937& rng, const GradingGroup& A) {
  std::uniform_int_distribution<long> f(-3, 3);
  std::vector<long> free(A.free_rank());
  for (auto& x : free) x = f(rng);
  std::vector<int> tors;
  for (int o : A.torsion().orders()) tors.push_back(std::uniform_int_distribution<int>(0, o - 1)(rng));
  return A.make(free, tors);
}

}  // namespace

TEST_CASE("bicharacter from a spec", "[colorlie]") {
  AlgebraSpec s = fixture_spec("ex1");
  Bicharacter eps = build_bicharacter(s);
  CHECK(eps.validate().empty());
  const auto& A = eps.grading();
  const auto& G = s.group();
  for (const auto& g : G.elements())
    for (const auto& h : G.elements()) {
      ADegree x = A.mul(A.free_generator(0), A.of_group(g));
      ADegree y = A.mul(A.free_generator(1), A.of_group(h));
      CHECK(eps(x, y) == s.q(0, 1) * s.chi_value(0, h).inverse() * s.chi_value(1, g));
      CHECK(eps(A.of_group(g), A.of_group(h)).is_one());
    }

  AlgebraSpec s2 = fixture_spec("ex2");
  Bicharacter eps2 = build_bicharacter(s2);
  const auto& A2 = eps2.grading();
  CHECK(eps2(A2.free_generator(0), A2.free_generator(1)) == Scalar::param(s2.ctx(), 0).inverse());
}

TEST_CASE("bicharacter laws on random degrees", "[colorlie][property]") {
  std::mt19937 rng(8);
  for (const auto& name : kFixtures) {
    AlgebraSpec s = fixture_spec(name);
    Bicharacter eps = build_bicharacter(s);
    const auto& A = eps.grading();
    for (int trial = 0; trial < 120; ++trial) {
      ADegree a = random_degree(rng, A), b = random_degree(rng, A), c = random_degree(rng, A);
      REQUIRE(eps(a, A.identity()).is_one());
      REQUIRE((eps(a, b) * eps(b, a)).is_one());
      REQUIRE(eps(A.mul(a, b), c) == eps(a, c) * eps(b, c));
      REQUIRE(eps(a, A.mul(b, c)) == eps(a, b) * eps(a, c));
    }
  }
}

TEST_CASE("brackets of the Example 2 ring", "[colorlie]") {
  AlgebraSpec s = fixture_spec("ex2");
  ColorLieRing L = build_color_lie_ring(s);
  const Scalar lambda = Scalar::param(s.ctx(), 1);
  CHECK(L.dim() == 6);
  CHECK(L.bracket[L.basis_index(0, 0)][L.basis_index(1, 0)] == LieVector{{L.basis_index(2, 1), lambda}});
  CHECK(L.bracket[L.basis_index(0, 1)][L.basis_index(1, 1)] == LieVector{{L.basis_index(2, 1), -lambda}});
  for (int i = 0; i < s.n(); ++i) CHECK(L.bracket[L.basis_index(i, 0)][L.basis_index(i, 0)].empty());
  CHECK(L.vector_to_string(L.bracket[0][2]) == "lambda*v3g[1]");
}

TEST_CASE("color axioms hold on the fixtures", "[colorlie]") {
  for (const auto& name : kFixtures) {
    INFO(name);
    ColorLieRing L = build_color_lie_ring(fixture_spec(name));
    AxiomReport rep = check_color_axioms(L);
    CHECK(rep.antisymmetry.ok);
    CHECK(rep.jacobi.ok);
    CHECK(rep.bimodule.ok);
    CHECK(rep.yetter_drinfeld.ok);
    CHECK(split_parts(L).negative.empty());
  }
}

TEST_CASE("gl(1|1)", "[colorlie]") {
  ColorLieRing L = build_color_lie_ring(std::get<GenericLieSpec>(load_fixture("gl11")));
  AxiomReport rep = check_color_axioms(L, GradingMode::full);
  CHECK(rep.ok());
  CHECK(rep.grading_checked);
  auto parts = split_parts(L);
  CHECK(parts.positive == std::vector<int>{0, 3});
  CHECK(parts.negative == std::vector<int>{1, 2});
  // [E21, E12] filled in by antisymmetry: -eps(odd, odd) [E12, E21] = E11 + E22
  CHECK(L.vector_to_string(L.bracket[2][1]) == "E11 + E22");
  CHECK_FALSE(check_prop_positive(L).applicable);
}

TEST_CASE("a negative generator over Z", "[colorlie]") {
  GenericLieSpec g;
  g.ctx = make_context(2);
  g.free_rank = 1;
  g.epsilon = {{Scalar::constant(g.ctx, -1)}};
  g.labels = {"x", "y"};
  g.degrees = {{1}, {2}};
  ColorLieRing L = build_color_lie_ring(g);
  auto parts = split_parts(L);
  CHECK(parts.negative == std::vector<int>{0});
  CHECK(parts.positive == std::vector<int>{1});

  g.epsilon = {{Scalar::constant(g.ctx, 2)}};
  CHECK_THROWS_AS(build_color_lie_ring(g), SpecError);
}

TEST_CASE("a perturbed bracket yields a certificate", "[colorlie]") {
  AlgebraSpec s = fixture_spec("ex2");
  ColorLieRing L = build_color_lie_ring(s);
  L.bracket[L.basis_index(0, 0)][L.basis_index(1, 0)] = LieVector{{L.basis_index(1, 1), Scalar::param(s.ctx(), 1)}};
  AxiomReport rep = check_color_axioms(L);
  CHECK_FALSE(rep.ok());
  auto v = rep.all_violations();
  REQUIRE_FALSE(v.empty());
  CHECK_FALSE(v.front().to_string().empty());
  CHECK_FALSE(rep.antisymmetry.ok);
}

TEST_CASE("hypotheses of the construction", "[colorlie]") {
  const std::string text = R"([field]
conductor = 2
[group]
orders = [2]
[action]
characters = [[1], [1], [1]]
[q]
[kappa]
1 2 -> 3 [1] 1
)";
  AlgebraSpec s = parse_algebra_spec(text);
  CHECK_THROWS_AS(build_color_lie_ring(s), HypothesisNotMet);
  ColorLieRing L = build_color_lie_ring(s, true);
  CHECK_FALSE(L.hypothesis_met);
  CHECK_FALSE(L.hypothesis_notes.empty());
}

TEST_CASE("subgroup N and the quotient", "[colorlie]") {
  AlgebraSpec s2 = fixture_spec("ex2");
  QuotientReport q2 = build_N_and_quotient(s2);
  CHECK(q2.well_defined);
  const auto A = build_bicharacter(s2).grading();
  CHECK(q2.N.contains(A.make({1, 1, -1}, {1})));
  CHECK_FALSE(q2.N.contains(A.make({1, 0, 0}, {0})));
  CHECK_FALSE(q2.N.contains(A.make({0, 0, 0}, {1})));

  QuotientReport q0 = build_N_and_quotient(fixture_spec("zero-kappa"));
  CHECK(q0.well_defined);
  CHECK_FALSE(q0.N.contains(A.make({0, 0, 0}, {1})));

  QuotientReport q1 = build_N_and_quotient(fixture_spec("ex1"));
  CHECK_FALSE(q1.well_defined);
  REQUIRE_FALSE(q1.failures.empty());
  CHECK(q1.failures.front().find("eps(") == 0);

  for (const auto& name : {"ex2", "ex3"}) {
    AlgebraSpec s = fixture_spec(name);
    QuotientReport q = build_N_and_quotient(s);
    CHECK(q.well_defined);
    CHECK(check_color_axioms(build_color_lie_ring(s), GradingMode::quotient, &q.N).grading.ok);
  }
}

TEST_CASE("positive self-brackets vanish on purely positive rings", "[colorlie]") {
  for (const auto& name : {"ex3", "ex4", "ex2"}) {
    auto rep = check_prop_positive(build_color_lie_ring(fixture_spec(name)));
    CHECK(rep.applicable);
    CHECK(rep.holds);
  }
}

TEST_CASE("braiding compatibility", "[colorlie]") {
  CHECK(check_braiding_compatibility(fixture_spec("ex3")).ok);
  CHECK(check_braiding_compatibility(fixture_spec("zero-kappa")).ok);
  CHECK_FALSE(check_braiding_compatibility(fixture_spec("ex1")).ok);
  // Example 4 satisfies strong vanishing, so it is braiding compatible as well
  CHECK(check_braiding_compatibility(fixture_spec("ex4")).ok);
  for (const auto& name : kFixtures) {
    AlgebraSpec s = fixture_spec(name);
    CHECK(check_braiding_compatibility(s).ok == check_vanishing(s, true).ok);
  }
}

TEST_CASE("braiding compatibility is strong vanishing", "[colorlie][property]") {
  std::mt19937 rng(31);
  int yes = 0;
  for (int trial = 0; trial < 300; ++trial) {
    AlgebraSpec s = testing::random_spec(rng);
    const bool strong = check_vanishing(s, true).ok;
    REQUIRE(check_braiding_compatibility(s).ok == strong);
    if (strong && !s.kappa_is_zero()) ++yes;
  }
  CHECK(yes >= 10);
}

TEST_CASE("random rings: axioms, Yetter-Drinfeld law and grading mod N", "[colorlie][property]") {
  std::mt19937 rng(47);
  int built = 0, graded = 0;
  for (int trial = 0; trial < 400 && built < 60; ++trial) {
    AlgebraSpec s = testing::random_spec(rng, testing::KappaShape::vanishing);
    PBWReport pbw = check_pbw(s);
    if (!pbw.verdict || !pbw.vanishing.ok) continue;
    ++built;
    ColorLieRing L = build_color_lie_ring(s);
    AxiomReport rep = check_color_axioms(L);
    INFO(format_spec(s));
    REQUIRE(rep.antisymmetry.ok);
    REQUIRE(rep.jacobi.ok);
    REQUIRE(rep.bimodule.ok);
    REQUIRE(rep.yetter_drinfeld.ok);
    if (pbw.strong_vanishing.ok) {
      ++graded;
      QuotientReport q = build_N_and_quotient(s);
      REQUIRE(q.well_defined);
      REQUIRE(check_color_axioms(L, GradingMode::quotient, &q.N).grading.ok);
    }
  }
  CHECK(built >= 30);
  CHECK(graded >= 10);
}
