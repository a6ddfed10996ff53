#pragma once

// Finite abelian groups as products of cyclic groups, diagonal characters,
// the grading group Z^a x G and subgroups of it.

#include <gmpxx.h>

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/scalar.hpp"

namespace qdrinfeld {

inline long mod_floor(long a, long m) { return ((a % m) + m) % m; }

struct GroupElement {
  std::vector<int> exps;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z/m_1 x ... x Z/m_k. An empty order list is the trivial group.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  explicit AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    exponent_ = 1;
    size_ = 1;
    for (int m : orders_) {
      if (m < 1) throw SpecError("cyclic factor order must be >= 1, got " + std::to_string(m));
      exponent_ = std::lcm(exponent_, m);
      size_ *= m;
    }
  }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  int exponent() const { return exponent_; }
  int size() const { return size_; }

  GroupElement identity() const { return GroupElement{std::vector<int>(orders_.size(), 0)}; }

  GroupElement make(std::vector<int> exps) const {
    if (exps.size() != orders_.size())
      throw SpecError("group element has " + std::to_string(exps.size()) + " components, expected " +
                      std::to_string(orders_.size()));
    for (std::size_t t = 0; t < exps.size(); ++t) exps[t] = static_cast<int>(mod_floor(exps[t], orders_[t]));
    return GroupElement{std::move(exps)};
  }

  /// Generator t, i.e. the element with a single 1 in slot t.
  GroupElement generator(std::size_t t) const {
    GroupElement g = identity();
    g.exps.at(t) = orders_[t] == 1 ? 0 : 1;
    return g;
  }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement out = a;
    for (std::size_t t = 0; t < orders_.size(); ++t) out.exps[t] = (a.exps[t] + b.exps[t]) % orders_[t];
    return out;
  }

  GroupElement inv(const GroupElement& a) const {
    check(a);
    GroupElement out = a;
    for (std::size_t t = 0; t < orders_.size(); ++t) out.exps[t] = (orders_[t] - a.exps[t]) % orders_[t];
    return out;
  }

  GroupElement pow(const GroupElement& a, long n) const {
    check(a);
    GroupElement out = a;
    for (std::size_t t = 0; t < orders_.size(); ++t)
      out.exps[t] = static_cast<int>(mod_floor(static_cast<long>(a.exps[t]) * n, orders_[t]));
    return out;
  }

  /// Mixed-radix index in [0, size); slot 0 varies slowest.
  int index(const GroupElement& g) const {
    check(g);
    int idx = 0;
    for (std::size_t t = 0; t < orders_.size(); ++t) idx = idx * orders_[t] + g.exps[t];
    return idx;
  }

  GroupElement element(int idx) const {
    GroupElement g = identity();
    for (std::size_t t = orders_.size(); t-- > 0;) {
      g.exps[t] = idx % orders_[t];
      idx /= orders_[t];
    }
    return g;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(size_);
    for (int i = 0; i < size_; ++i) out.push_back(element(i));
    return out;
  }

  void check(const GroupElement& g) const {
    if (g.exps.size() != orders_.size()) throw SpecError("group element does not belong to this group");
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.orders_ == b.orders_; }

  std::string to_string(const GroupElement& g) const {
    std::string out = "[";
    for (std::size_t t = 0; t < g.exps.size(); ++t) out += (t ? "," : "") + std::to_string(g.exps[t]);
    return out + "]";
  }

 private:
  std::vector<int> orders_;
  int exponent_ = 1;
  int size_ = 1;
};

enum class GroupOp { mul, inv };

inline GroupElement group_op(const AbelianGroup& G, GroupOp op, const GroupElement& g,
                             const GroupElement& h = {}) {
  return op == GroupOp::mul ? G.mul(g, h) : G.inv(g);
}

/// chi(generator t) = zeta_{m_t}^{exps[t]}.
struct Character {
  std::vector<int> exps;

  friend bool operator==(const Character&, const Character&) = default;
};

inline Character make_character(const AbelianGroup& G, std::vector<int> exps) {
  if (exps.size() != G.rank())
    throw SpecError("character has " + std::to_string(exps.size()) + " entries, expected " +
                    std::to_string(G.rank()));
  for (std::size_t t = 0; t < exps.size(); ++t) exps[t] = static_cast<int>(mod_floor(exps[t], G.orders()[t]));
  return Character{std::move(exps)};
}

/// Exponent k with chi(g) = zeta_m^k, for m a multiple of the group exponent.
inline long character_exponent(const AbelianGroup& G, const Character& chi, const GroupElement& g, int m) {
  G.check(g);
  long k = 0;
  for (std::size_t t = 0; t < G.rank(); ++t)
    k += static_cast<long>(chi.exps[t]) * g.exps[t] * (m / G.orders()[t]);
  return mod_floor(k, m);
}

inline Scalar char_eval(const ContextPtr& ctx, const AbelianGroup& G, const Character& chi,
                        const GroupElement& g) {
  return Scalar::zeta(ctx, character_exponent(G, chi, g, ctx->conductor()));
}

inline Character character_product(const AbelianGroup& G, const Character& a, const Character& b) {
  Character out = a;
  for (std::size_t t = 0; t < G.rank(); ++t) out.exps[t] = (a.exps[t] + b.exps[t]) % G.orders()[t];
  return out;
}

inline bool is_trivial(const Character& chi) {
  for (int e : chi.exps)
    if (e != 0) return false;
  return true;
}

/// Element of Z^a x G.
struct ADegree {
  std::vector<long> free;
  GroupElement tors;

  friend bool operator==(const ADegree&, const ADegree&) = default;
  friend auto operator<=>(const ADegree&, const ADegree&) = default;
};

/// The grading group A = Z^a x G.
class GradingGroup {
 public:
  GradingGroup() = default;
  GradingGroup(std::size_t free_rank, AbelianGroup torsion) : free_rank_(free_rank), torsion_(std::move(torsion)) {}

  std::size_t free_rank() const { return free_rank_; }
  const AbelianGroup& torsion() const { return torsion_; }
  /// Number of generators: a free ones followed by one per cyclic factor.
  std::size_t generator_count() const { return free_rank_ + torsion_.rank(); }

  ADegree identity() const { return ADegree{std::vector<long>(free_rank_, 0), torsion_.identity()}; }

  ADegree free_generator(std::size_t i) const {
    ADegree d = identity();
    d.free.at(i) = 1;
    return d;
  }

  ADegree of_group(const GroupElement& g) const { return ADegree{std::vector<long>(free_rank_, 0), g}; }

  /// Generator s in the combined numbering (free first, then torsion factors).
  ADegree generator(std::size_t s) const {
    if (s < free_rank_) return free_generator(s);
    return of_group(torsion_.generator(s - free_rank_));
  }

  ADegree make(std::vector<long> free, std::vector<int> tors) const {
    if (free.size() != free_rank_) throw SpecError("degree has wrong free rank");
    return ADegree{std::move(free), torsion_.make(std::move(tors))};
  }

  ADegree mul(const ADegree& a, const ADegree& b) const {
    check(a);
    check(b);
    ADegree out{a.free, torsion_.mul(a.tors, b.tors)};
    for (std::size_t i = 0; i < free_rank_; ++i) out.free[i] += b.free[i];
    return out;
  }

  ADegree inv(const ADegree& a) const {
    check(a);
    ADegree out{a.free, torsion_.inv(a.tors)};
    for (auto& x : out.free) x = -x;
    return out;
  }

  ADegree pow(const ADegree& a, long n) const {
    check(a);
    ADegree out{a.free, torsion_.pow(a.tors, n)};
    for (auto& x : out.free) x *= n;
    return out;
  }

  /// Coordinates in Z^{a+k}: free part then torsion exponents.
  std::vector<long> coordinates(const ADegree& a) const {
    std::vector<long> out(a.free.begin(), a.free.end());
    for (int e : a.tors.exps) out.push_back(e);
    return out;
  }

  void check(const ADegree& a) const {
    if (a.free.size() != free_rank_) throw SpecError("degree does not belong to this grading group");
    torsion_.check(a.tors);
  }

  std::string to_string(const ADegree& a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < a.free.size(); ++i) out += (i ? "," : "") + std::to_string(a.free[i]);
    return out + "; " + torsion_.to_string(a.tors) + ")";
  }

  friend bool operator==(const GradingGroup& a, const GradingGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  AbelianGroup torsion_;
};

enum class DegreeOp { mul, inv };

inline ADegree degree_op(const GradingGroup& A, DegreeOp op, const ADegree& a, const ADegree& b = {}) {
  return op == DegreeOp::mul ? A.mul(a, b) : A.inv(a);
}

/// Subgroup of A generated by finitely many degrees, kept as an integer lattice in
/// row echelon (Hermite) form including the torsion relations m_t e_{a+t}.
class SubgroupN {
 public:
  SubgroupN() = default;

  SubgroupN(GradingGroup A, std::vector<ADegree> generators)
      : A_(std::move(A)), generators_(std::move(generators)) {
    const std::size_t width = A_.generator_count();
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& g : generators_) {
      A_.check(g);
      std::vector<mpz_class> row;
      for (long x : A_.coordinates(g)) row.emplace_back(x);
      rows.push_back(std::move(row));
    }
    for (std::size_t t = 0; t < A_.torsion().rank(); ++t) {
      std::vector<mpz_class> row(width, 0);
      row[A_.free_rank() + t] = A_.torsion().orders()[t];
      rows.push_back(std::move(row));
    }
    echelon_ = hermite(std::move(rows), width);
  }

  const GradingGroup& ambient() const { return A_; }
  const std::vector<ADegree>& generators() const { return generators_; }
  const std::vector<std::vector<mpz_class>>& lattice() const { return echelon_; }

  bool contains(const ADegree& a) const {
    A_.check(a);
    std::vector<mpz_class> x;
    for (long v : A_.coordinates(a)) x.emplace_back(v);
    for (const auto& row : echelon_) {
      std::size_t c = pivot(row);
      for (std::size_t k = 0; k < c; ++k)
        if (x[k] != 0) return false;
      if (x[c] == 0) continue;
      if (x[c] % row[c] != 0) return false;
      mpz_class f = x[c] / row[c];
      for (std::size_t k = c; k < x.size(); ++k) x[k] -= f * row[k];
    }
    for (const auto& v : x)
      if (v != 0) return false;
    return true;
  }

  /// a == b in A/N.
  bool congruent(const ADegree& a, const ADegree& b) const { return contains(A_.mul(a, A_.inv(b))); }

 private:
  static std::size_t pivot(const std::vector<mpz_class>& row) {
    for (std::size_t k = 0; k < row.size(); ++k)
      if (row[k] != 0) return k;
    return row.size();
  }

  static std::vector<std::vector<mpz_class>> hermite(std::vector<std::vector<mpz_class>> rows,
                                                     std::size_t width) {
    std::vector<std::vector<mpz_class>> out;
    for (std::size_t c = 0; c < width; ++c) {
      // Euclid on column c among the remaining rows until one nonzero entry survives.
      for (;;) {
        std::size_t best = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
          if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
        if (best == rows.size()) break;
        bool reduced = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          if (r == best || rows[r][c] == 0) continue;
          mpz_class f;
          mpz_fdiv_q(f.get_mpz_t(), rows[r][c].get_mpz_t(), rows[best][c].get_mpz_t());
          for (std::size_t k = c; k < width; ++k) rows[r][k] -= f * rows[best][k];
          reduced = true;
        }
        if (!reduced) {
          auto row = std::move(rows[best]);
          rows.erase(rows.begin() + static_cast<long>(best));
          if (row[c] < 0)
            for (auto& v : row) v = -v;
          out.push_back(std::move(row));
          break;
        }
      }
    }
    // reduce entries above pivots into [0, pivot) so the form is canonical
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::size_t c = pivot(out[i]);
      for (std::size_t j = 0; j < i; ++j) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), out[j][c].get_mpz_t(), out[i][c].get_mpz_t());
        if (f == 0) continue;
        for (std::size_t k = c; k < width; ++k) out[j][k] -= f * out[i][k];
      }
    }
    return out;
  }

  GradingGroup A_;
  std::vector<ADegree> generators_;
  std::vector<std::vector<mpz_class>> echelon_;
};

inline bool n_membership(const SubgroupN& N, const ADegree& a) { return N.contains(a); }

}  // namespace qdrinfeld
