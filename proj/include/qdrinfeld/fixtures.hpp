#pragma once

// The bundled fixture corpus; the same texts live in fixtures/*.qdo.

#include <string>
#include <utility>
#include <vector>

#include "qdrinfeld/spec_io.hpp"

namespace qdrinfeld {

struct Fixture {
  std::string name;
  std::string text;
};

inline const std::vector<Fixture>& fixture_corpus() {
  static const std::vector<Fixture> corpus = {
      {"ex1", R"qdo(# V = k^3, G = Z/3 x Z/3 generated by g1 = diag(q,1,q), g2 = diag(1,q,q), q = zeta(3)
[field]
conductor = 3

[group]
orders = [3, 3]

[action]
characters = [[1, 0], [0, 1], [1, 1]]

[q]
1 2 = zeta(3)
1 3 = zeta(3)
2 3 = 1

[kappa]
1 2 -> 3 [1, 0] zeta(3)
)qdo"},
      {"ex2", R"qdo(# V = k^3, G = Z/2 acting by g = diag(-1,-1,1); q and lambda symbolic
[field]
conductor = 4
params = q, lambda

[group]
orders = [2]

[action]
characters = [[1], [1], [0]]

[q]
1 2 = q^-1
1 3 = -q^-1
2 3 = -q

[kappa]
1 2 -> 3 [1] lambda

[instantiate]
q = zeta(4)
lambda = 1
)qdo"},
      {"ex3", R"qdo(# V = k^3, G = Z/3 acting by g = diag(zeta(3),1,1); lambda and p symbolic
[field]
conductor = 3
params = lambda, p

[group]
orders = [3]

[action]
characters = [[1], [0], [0]]

[q]
1 2 = zeta(3)^-1
1 3 = p
2 3 = 1

[kappa]
1 2 -> 1 [1] lambda

[instantiate]
lambda = 1
p = zeta(3)
)qdo"},
      {"ex4", R"qdo(# V = k^4, G = (Z/2)^2 with g_i negating v_i; q_13 = q_24 = -1
[field]
conductor = 2
params = lambda1, lambda2

[group]
orders = [2, 2]

[action]
characters = [[1, 0], [0, 1], [0, 0], [0, 0]]

[q]
1 3 = -1
2 4 = -1

[kappa]
1 3 -> 1 [1, 0] lambda1
2 4 -> 2 [0, 1] lambda2

[instantiate]
lambda1 = 1
lambda2 = 1
)qdo"},
      {"gl11", R"qdo(# gl(1|1): 2x2 matrices, E12 and E21 odd, bracket = super commutator
[field]
conductor = 2

[generic-lie]
free_rank = 0
torsion = [2]
epsilon = [[-1]]
basis E11 = [0]
basis E12 = [1]
basis E21 = [1]
basis E22 = [0]
bracket E11 E12 = E12
bracket E11 E21 = -E21
bracket E12 E21 = E11 + E22
bracket E12 E22 = E12
bracket E21 E22 = -E21
)qdo"},
      {"zero-kappa", R"qdo(# skew group algebra S_q(V) # Z/2 with no deformation
[field]
conductor = 2

[group]
orders = [2]

[action]
characters = [[1], [0], [1]]

[q]
1 2 = -1

[kappa]
)qdo"},
  };
  return corpus;
}

inline const std::string& fixture_text(const std::string& name) {
  for (const auto& f : fixture_corpus())
    if (f.name == name) return f.text;
  throw SpecError("no fixture named '" + name + "'");
}

inline ParsedSpec load_fixture(const std::string& name) { return parse_spec_text(fixture_text(name)); }

inline AlgebraSpec fixture_spec(const std::string& name) { return parse_algebra_spec(fixture_text(name)); }

}  // namespace qdrinfeld
