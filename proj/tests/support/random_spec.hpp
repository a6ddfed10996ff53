#pragma once

// Random small specs for property tests: n <= 3, |G| <= 4, root-of-unity data.

#include <random>
#include <vector>

#include "qdrinfeld/algebra.hpp"

namespace qdrinfeld::testing {

enum class KappaShape { unstructured, invariant, vanishing };

inline AlgebraSpec random_spec(std::mt19937& rng, KappaShape shape, int max_n = 3) {
  static const std::vector<std::vector<int>> group_choices = {{2}, {3}, {4}, {2, 2}, {1}};
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  RawSpec raw;
  raw.orders = group_choices[pick(0, static_cast<int>(group_choices.size()) - 1)];
  AbelianGroup G(raw.orders);
  int m = G.exponent() % 2 ? 2 * G.exponent() : G.exponent();
  raw.ctx = make_context(m);
  const int n = pick(2, max_n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> row;
    for (int o : raw.orders) row.push_back(pick(0, o - 1));
    raw.characters.push_back(row);
  }
  // q entries: often a character-compatible sign, sometimes an arbitrary root of unity
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Scalar v = pick(0, 2) == 0 ? Scalar::zeta(raw.ctx, pick(0, m - 1))
                                 : Scalar::constant(raw.ctx, pick(0, 1) ? 1 : -1);
      raw.q.push_back({i, j, v, 0});
    }
  AlgebraSpec base = validate_spec(raw);

  auto coefficient = [&]() {
    Scalar c = Scalar::zeta(raw.ctx, pick(0, m - 1));
    if (pick(0, 3) == 0) c = c.scaled(Rational(pick(2, 3)));
    return c;
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (pick(0, 2) == 0) continue;
      RawSpec::KappaEntry entry{i + 1, j + 1, {}, 0};
      const int terms = pick(1, 2);
      for (int t = 0; t < terms; ++t) {
        std::vector<std::pair<int, GroupElement>> options;
        for (int r = 0; r < n; ++r)
          for (const auto& g : G.elements()) {
            if (shape != KappaShape::unstructured &&
                !(character_product(G, base.chi(i), base.chi(j)) == base.chi(r)))
              continue;
            if (shape == KappaShape::vanishing) {
              bool ok = true;
              for (int k = 0; k < n && ok; ++k)
                if (k != i && k != j)
                  ok = base.chi_value(k, g) == base.q(i, k) * base.q(j, k) * base.q(k, r);
              if (!ok) continue;
            }
            options.emplace_back(r, g);
          }
        if (options.empty()) break;
        const auto& [r, g] = options[pick(0, static_cast<int>(options.size()) - 1)];
        entry.terms.emplace_back(r + 1, g.exps, coefficient());
      }
      if (!entry.terms.empty()) raw.kappa.push_back(entry);
    }
  return validate_spec(raw);
}

inline AlgebraSpec random_spec(std::mt19937& rng, int max_n = 3) {
  static const KappaShape shapes[] = {KappaShape::unstructured, KappaShape::invariant, KappaShape::vanishing,
                                      KappaShape::vanishing};
  return random_spec(rng, shapes[std::uniform_int_distribution<int>(0, 3)(rng)], max_n);
}

}  // namespace qdrinfeld::testing
