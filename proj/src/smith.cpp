#include <map>
#include <set>

#include "sheafcore/error.hpp"
#include "sheafcore/linalg.hpp"

namespace sheafcore {

namespace {

int cmp_abs(const Integer& a, const Integer& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

// Working copy of an integer matrix with row maps and column supports, so
// that both row and column eliminations only touch nonzero entries.
class SmithReducer {
 public:
  explicit SmithReducer(const SparseMatrix& m) : rows_(m.rows()), col_rows_(m.cols()) {
    const auto& src = m.rows_as<Integer>();
    for (std::size_t i = 0; i < src.size(); ++i)
      for (const auto& [j, x] : src[i]) {
        rows_[i].emplace(j, x);
        col_rows_[j].insert(static_cast<std::uint32_t>(i));
      }
  }

  std::vector<Integer> run() {
    std::vector<Integer> diagonal;
    std::uint32_t r = 0, c = 0;
    while (find_min_pivot(r, c)) {
      while (true) {
        if (clear_column(r, c)) {
          r = min_in_column(c);
          continue;
        }
        if (clear_row(r, c)) {
          c = min_in_row(r);
          continue;
        }
        break;
      }
      Integer d = abs(rows_[r].at(c));
      rows_[r].erase(c);
      col_rows_[c].erase(r);
      diagonal.push_back(std::move(d));
    }
    return diagonal;
  }

 private:
  bool find_min_pivot(std::uint32_t& r, std::uint32_t& c) const {
    bool found = false;
    Integer best;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [j, x] : rows_[i]) {
        if (!found || cmp_abs(x, best) < 0) {
          best = abs(x);
          r = static_cast<std::uint32_t>(i);
          c = j;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }

  std::uint32_t min_in_column(std::uint32_t c) const {
    std::uint32_t best_row = *col_rows_[c].begin();
    for (auto i : col_rows_[c])
      if (cmp_abs(rows_[i].at(c), rows_[best_row].at(c)) < 0) best_row = i;
    return best_row;
  }

  std::uint32_t min_in_row(std::uint32_t r) const {
    auto best = rows_[r].begin();
    for (auto it = rows_[r].begin(); it != rows_[r].end(); ++it)
      if (cmp_abs(it->second, best->second) < 0) best = it;
    return best->first;
  }

  void set_entry(std::uint32_t i, std::uint32_t j, Integer v) {
    if (sgn(v) == 0) {
      rows_[i].erase(j);
      col_rows_[j].erase(i);
    } else {
      rows_[i][j] = std::move(v);
      col_rows_[j].insert(i);
    }
  }

  // Row operations: row_i -= q * row_r for every other row with an entry in
  // column c. Returns true if a nonzero remainder survived.
  bool clear_column(std::uint32_t r, std::uint32_t c) {
    const Integer pivot = rows_[r].at(c);
    bool remainder = false;
    std::vector<std::uint32_t> targets(col_rows_[c].begin(), col_rows_[c].end());
    const auto pivot_row = rows_[r];
    for (auto i : targets) {
      if (i == r) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows_[i].at(c).get_mpz_t(), pivot.get_mpz_t());
      for (const auto& [j, x] : pivot_row) {
        auto it = rows_[i].find(j);
        Integer v = (it == rows_[i].end() ? Integer(0) : it->second) - q * x;
        set_entry(i, j, std::move(v));
      }
      if (rows_[i].count(c)) remainder = true;
    }
    return remainder;
  }

  // Column operations. Column c holds only the pivot here, so subtracting a
  // multiple of it changes row r alone.
  bool clear_row(std::uint32_t r, std::uint32_t c) {
    const Integer pivot = rows_[r].at(c);
    bool remainder = false;
    std::vector<std::pair<std::uint32_t, Integer>> entries(rows_[r].begin(), rows_[r].end());
    for (auto& [j, x] : entries) {
      if (j == c) continue;
      Integer rem;
      mpz_fdiv_r(rem.get_mpz_t(), x.get_mpz_t(), pivot.get_mpz_t());
      if (sgn(rem) != 0) remainder = true;
      set_entry(r, j, std::move(rem));
    }
    return remainder;
  }

  std::vector<std::map<std::uint32_t, Integer>> rows_;
  std::vector<std::set<std::uint32_t>> col_rows_;
};

// Turns a list of nonzero diagonal entries into the divisibility chain.
std::vector<Integer> invariant_factors(std::vector<Integer> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer l = lcm(d[i], d[j]);
      d[i] = std::move(g);
      d[j] = std::move(l);
    }
  return d;
}

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m) {
  if (m.coefficients().kind() != ScalarKind::integer)
    throw KindMismatch("Smith normal form requires integer coefficients, got " +
                       m.coefficients().tag());
  SmithReducer reducer(m);
  return SmithForm{invariant_factors(reducer.run())};
}

}  // namespace sheafcore
