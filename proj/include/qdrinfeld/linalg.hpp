#pragma once

// Exact incremental row reduction over Q(zeta_m) with sparse rows.

#include <map>
#include <stdexcept>

#include "qdrinfeld/scalar.hpp"

namespace qdrinfeld {

using SparseRow = std::map<int, CyclotomicNumber>;

/// Keeps a reduced basis of the row space seen so far. Pivots are the largest column of each row.
class RowEchelon {
 public:
  explicit RowEchelon(FieldPtr field) : field_(std::move(field)) {}

  /// Reduces `row` against the current pivots; stores it if something survives. Returns whether it did.
  bool add(SparseRow row) {
    prune(row);
    while (!row.empty()) {
      auto lead = std::prev(row.end());
      const int col = lead->first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        CyclotomicNumber inv = lead->second.inverse();
        for (auto& [c, v] : row) v = v * inv;
        pivots_.emplace(col, std::move(row));
        return true;
      }
      const CyclotomicNumber f = lead->second;
      for (const auto& [c, v] : it->second) {
        auto [slot, inserted] = row.try_emplace(c, field_);
        slot->second = slot->second - f * v;
        if (slot->second.is_zero()) row.erase(slot);
      }
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<int, SparseRow>& pivots() const { return pivots_; }

 private:
  static void prune(SparseRow& row) {
    for (auto it = row.begin(); it != row.end();) it = it->second.is_zero() ? row.erase(it) : std::next(it);
  }

  FieldPtr field_;
  std::map<int, SparseRow> pivots_;
};

}  // namespace qdrinfeld
