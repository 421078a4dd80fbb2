#include "sheafcore/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sheafcore/detail/arith.hpp"
#include "sheafcore/detail/echelon.hpp"
#include "sheafcore/error.hpp"

namespace sheafcore {

namespace {

// Fraction-free rank: clear denominators row by row, then Bareiss.
std::size_t bareiss_rank(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<Integer> a(rows * cols);
  const auto& src = m.values<Rational>();
  for (std::size_t i = 0; i < rows; ++i) {
    Integer lcm = 1;
    for (std::size_t j = 0; j < cols; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), src[i * cols + j].get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) {
      const Rational& q = src[i * cols + j];
      a[i * cols + j] = q.get_num() * (lcm / q.get_den());
    }
  }
  std::size_t r = 0;
  Integer prev = 1, t;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const Integer pivot = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Integer lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& x = a[i * cols + j];
        t = pivot * x - lead * a[r * cols + j];
        mpz_divexact(x.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = pivot;
    ++r;
  }
  return r;
}

// In-place reduced row echelon form over a field. Returns pivot columns.
template <class A>
std::vector<std::size_t> rref(A arith, std::vector<typename A::value_type>& a, std::size_t rows,
                              std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && arith.is_zero(a[p * cols + c])) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
    const auto inv = arith.inv(a[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = arith.mul(a[r * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || arith.is_zero(a[i * cols + c])) continue;
      const auto f = a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = arith.sub(a[i * cols + j], arith.mul(f, a[r * cols + j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::vector<Integer> SmithForm::torsion() const {
  std::vector<Integer> out;
  for (const auto& d : diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    if (!m.coefficients().is_field()) throw KindMismatch("rank requires field coefficients, got Z");
    return 0;
  }
  switch (m.coefficients().kind()) {
    case ScalarKind::rational:
      return bareiss_rank(m);
    case ScalarKind::prime_field: {
      auto a = m.values<std::uint32_t>();
      return rref(detail::ModArith{m.coefficients().modulus()}, a, m.rows(), m.cols()).size();
    }
    case ScalarKind::integer:
      break;
  }
  throw KindMismatch("rank requires field coefficients, got Z");
}

std::size_t rank(const SparseMatrix& m) {
  return detail::with_field(m.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    detail::Echelon<decltype(arith)> ech(arith, m.cols());
    for (const auto& row : m.rows_as<T>()) ech.insert(row);
    return ech.rank();
  });
}

Matrix kernel_basis(const Matrix& m) {
  return detail::with_field(m.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    auto a = m.values<T>();
    auto pivots = rref(arith, a, m.rows(), m.cols());
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(m.coefficients(), m.cols(), free_cols.size());
    auto& b = basis.values<T>();
    const std::size_t k = free_cols.size();
    for (std::size_t idx = 0; idx < k; ++idx) {
      const std::size_t f = free_cols[idx];
      b[f * k + idx] = arith.one();
      for (std::size_t r = 0; r < pivots.size(); ++r)
        b[pivots[r] * k + idx] = arith.neg(a[r * m.cols() + f]);
    }
    return basis;
  });
}

Matrix kernel_basis(const SparseMatrix& m) {
  return detail::with_field(m.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    detail::Echelon<decltype(arith)> ech(arith, m.cols());
    for (const auto& row : m.rows_as<T>()) ech.insert(row);
    return ech.kernel(m.coefficients());
  });
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

SmithForm smith_normal_form(const Matrix& m) {
  return smith_normal_form(SparseMatrix::from_dense(m));
}

}  // namespace sheafcore
