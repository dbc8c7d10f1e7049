#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dimpoly/binompoly.hpp"

namespace dimpoly::detail {

// Sparse row, entries sorted by ascending column; the pivot is the largest column.
using SparseRow = std::vector<std::pair<std::uint32_t, Rational>>;

class Echelon {
 public:
  // Reduces the row against stored pivots; stores it and returns its pivot
  // column, or returns -1 if it reduces to zero.
  long insert(SparseRow row) {
    while (!row.empty()) {
      const std::uint32_t col = row.back().first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        pivots_.emplace(col, std::move(row));
        return col;
      }
      const SparseRow& piv = it->second;
      const Rational factor = row.back().second / piv.back().second;
      row = combine(row, piv, factor);
    }
    return -1;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::unordered_map<std::uint32_t, SparseRow>& pivots() const { return pivots_; }

 private:
  static SparseRow combine(const SparseRow& a, const SparseRow& b, const Rational& factor) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -factor * b[j].second);
        ++j;
      } else {
        Rational v = a[i].second - factor * b[j].second;
        if (v != 0) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::unordered_map<std::uint32_t, SparseRow> pivots_;
};

}  // namespace dimpoly::detail
