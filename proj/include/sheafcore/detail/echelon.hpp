#pragma once

// Incremental sparse row echelon form over a field. Rows are reduced by
// their leading (smallest) column against stored pivot rows, which are kept
// normalised to a leading one.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "sheafcore/matrix.hpp"

namespace sheafcore::detail {

template <class A>
class Echelon {
 public:
  using T = typename A::value_type;
  using Row = SparseMatrix::Row<T>;

  Echelon(A arith, std::size_t cols) : arith_(arith), pivot_of_(cols, kNone) {}

  /// Reduces `row` and keeps it when it is independent. Returns true then.
  bool insert(Row row) {
    while (!row.empty()) {
      const auto lead = row.front().first;
      const auto p = pivot_of_[lead];
      if (p == kNone) {
        const T inv = arith_.inv(row.front().second);
        for (auto& e : row) e.second = arith_.mul(e.second, inv);
        pivot_of_[lead] = pivots_.size();
        pivots_.push_back(std::move(row));
        return true;
      }
      const T factor = row.front().second;
      subtract_multiple(row, factor, pivots_[p], 0);
    }
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }

  /// Kernel of the matrix whose rows were inserted, as columns of a
  /// cols × k dense matrix ordered by free column.
  Matrix kernel(const Coefficients& coeffs) {
    to_reduced_form();
    const std::size_t cols = pivot_of_.size();
    std::vector<std::size_t> slot(cols, kNone);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols; ++c)
      if (pivot_of_[c] == kNone) slot[c] = k++;
    Matrix basis(coeffs, cols, k);
    auto& b = basis.values<T>();
    for (std::size_t c = 0; c < cols; ++c)
      if (slot[c] != kNone) b[c * k + slot[c]] = arith_.one();
    for (const auto& row : pivots_) {
      const auto lead = row.front().first;
      for (std::size_t i = 1; i < row.size(); ++i) {
        const auto [col, value] = row[i];
        b[lead * k + slot[col]] = arith_.neg(value);
      }
    }
    return basis;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // row -= factor * pivot, where pivot's entries all sit at columns >= the
  // entry being eliminated. `from` is a hint: entries of row before it are
  // left of the pivot's support.
  void subtract_multiple(Row& row, const T& factor, const Row& pivot, std::size_t from) {
    Row out;
    out.reserve(row.size() + pivot.size());
    out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(from));
    std::size_t i = from, j = 0;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.push_back(std::move(row[i++]));
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, arith_.neg(arith_.mul(factor, pivot[j].second)));
        ++j;
      } else {
        T v = arith_.sub(row[i].second, arith_.mul(factor, pivot[j].second));
        if (!arith_.is_zero(v)) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    row = std::move(out);
  }

  // Back substitution: clear every pivot column from the other pivot rows.
  void to_reduced_form() {
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivots_[a].front().first > pivots_[b].front().first;
    });
    for (auto idx : order) {
      Row& row = pivots_[idx];
      std::size_t pos = 1;
      while (pos < row.size()) {
        const auto col = row[pos].first;
        const auto p = pivot_of_[col];
        if (p == kNone) {
          ++pos;
          continue;
        }
        const T factor = row[pos].second;
        subtract_multiple(row, factor, pivots_[p], pos);
      }
    }
  }

  A arith_;
  std::vector<std::size_t> pivot_of_;
  std::vector<Row> pivots_;
};

}  // namespace sheafcore::detail
