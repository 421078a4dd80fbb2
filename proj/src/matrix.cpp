#include "sheafcore/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "sheafcore/detail/arith.hpp"
#include "sheafcore/error.hpp"

namespace sheafcore {

namespace {

void require_same_kind(const Coefficients& a, const Coefficients& b, const char* what) {
  if (!(a == b))
    throw KindMismatch(std::string(what) + ": coefficient kinds differ (" + a.tag() + " vs " +
                       b.tag() + ")");
}

template <class Fn>
decltype(auto) visit_kind(const Coefficients& coeffs, Fn&& fn) {
  return detail::with_arith(coeffs, std::forward<Fn>(fn));
}

}  // namespace

Matrix::Matrix(Coefficients coeffs, std::size_t rows, std::size_t cols)
    : coeffs_(coeffs), rows_(rows), cols_(cols) {
  visit_kind(coeffs_, [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    entries_ = std::vector<T>(rows * cols, arith.zero());
  });
}

Matrix Matrix::identity(Coefficients coeffs, std::size_t n) {
  Matrix m(coeffs, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(Coefficients coeffs,
                         std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(coeffs, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged matrix literal");
    std::size_t j = 0;
    for (long v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

Matrix Matrix::from_values(Coefficients coeffs, std::size_t rows, std::size_t cols,
                           std::span<const long> values) {
  if (values.size() != rows * cols)
    throw DimensionMismatch("expected " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(values.size()));
  Matrix m(coeffs, rows, cols);
  for (std::size_t k = 0; k < values.size(); ++k) m.set(k / cols, k % cols, values[k]);
  return m;
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  std::size_t k = r * cols_ + c;
  switch (coeffs_.kind()) {
    case ScalarKind::rational:
      return Scalar(values<Rational>()[k]);
    case ScalarKind::integer:
      return Scalar(values<Integer>()[k]);
    case ScalarKind::prime_field:
      return Scalar::residue(coeffs_, values<std::uint32_t>()[k]);
  }
  throw KindMismatch("unreachable");
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& value) {
  require_same_kind(coeffs_, value.coefficients(), "Matrix::set");
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
  std::size_t k = r * cols_ + c;
  std::visit(
      [&](auto& vec) {
        using T = typename std::decay_t<decltype(vec)>::value_type;
        vec[k] = std::get<T>(value.value_);
      },
      entries_);
}

void Matrix::set(std::size_t r, std::size_t c, long value) { set(r, c, Scalar(coeffs_, value)); }

bool Matrix::is_zero() const {
  return visit_kind(coeffs_, [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    const auto& v = values<T>();
    return std::all_of(v.begin(), v.end(), [&](const T& x) { return arith.is_zero(x); });
  });
}

bool Matrix::is_identity() const {
  return rows_ == cols_ && *this == identity(coeffs_, rows_);
}

Matrix Matrix::transpose() const {
  Matrix t(coeffs_, cols_, rows_);
  std::visit(
      [&](const auto& src) {
        using T = typename std::decay_t<decltype(src)>::value_type;
        auto& dst = t.values<T>();
        for (std::size_t i = 0; i < rows_; ++i)
          for (std::size_t j = 0; j < cols_; ++j) dst[j * rows_ + i] = src[i * cols_ + j];
      },
      entries_);
  return t;
}

Matrix Matrix::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw DimensionMismatch("column block out of range");
  Matrix out(coeffs_, rows_, count);
  std::visit(
      [&](const auto& src) {
        using T = typename std::decay_t<decltype(src)>::value_type;
        auto& dst = out.values<T>();
        for (std::size_t i = 0; i < rows_; ++i)
          for (std::size_t j = 0; j < count; ++j) dst[i * count + j] = src[i * cols_ + first + j];
      },
      entries_);
  return out;
}

Matrix Matrix::converted(Coefficients target) const {
  if (target == coeffs_) return *this;
  if (coeffs_.kind() != ScalarKind::integer)
    throw KindMismatch("only integer matrices can be converted, got " + coeffs_.tag());
  Matrix out(target, rows_, cols_);
  const auto& src = values<Integer>();
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (target.kind() == ScalarKind::rational) {
      out.values<Rational>()[k] = Rational(src[k]);
    } else if (target.kind() == ScalarKind::prime_field) {
      Integer r = src[k] % target.modulus();
      if (r < 0) r += target.modulus();
      out.values<std::uint32_t>()[k] = static_cast<std::uint32_t>(r.get_ui());
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.coeffs_ == b.coeffs_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.entries_ == b.entries_;
}

Matrix compose(const Matrix& a, const Matrix& b) {
  require_same_kind(a.coefficients(), b.coefficients(), "compose");
  if (a.cols() != b.rows())
    throw DimensionMismatch("compose: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  Matrix out(a.coefficients(), a.rows(), b.cols());
  visit_kind(a.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    const auto& av = a.values<T>();
    const auto& bv = b.values<T>();
    auto& ov = out.values<T>();
    const std::size_t n = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const T& x = av[i * n + k];
        if (arith.is_zero(x)) continue;
        for (std::size_t j = 0; j < m; ++j)
          ov[i * m + j] = arith.add(ov[i * m + j], arith.mul(x, bv[k * m + j]));
      }
  });
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return compose(a, b); }

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_kind(a.coefficients(), b.coefficients(), "subtract");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("subtract: shapes differ");
  Matrix out = a;
  visit_kind(a.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    auto& ov = out.values<T>();
    const auto& bv = b.values<T>();
    for (std::size_t k = 0; k < ov.size(); ++k) ov[k] = arith.sub(ov[k], bv[k]);
  });
  return out;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.at(i, j).str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// --- SparseMatrix -----------------------------------------------------------

SparseMatrix::SparseMatrix(Coefficients coeffs, std::size_t rows, std::size_t cols)
    : coeffs_(coeffs), rows_(rows), cols_(cols) {
  visit_kind(coeffs_, [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    rows_data_ = Rows<T>(rows);
  });
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s(m.coefficients(), m.rows(), m.cols());
  visit_kind(m.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    const auto& v = m.values<T>();
    auto& rows = s.rows_as<T>();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const T& x = v[i * m.cols() + j];
        if (!arith.is_zero(x)) rows[i].emplace_back(static_cast<std::uint32_t>(j), x);
      }
  });
  return s;
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(coeffs_, rows_, cols_);
  std::visit(
      [&](const auto& rows) {
        using T = typename std::decay_t<decltype(rows)>::value_type::value_type::second_type;
        auto& v = m.values<T>();
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (const auto& [j, x] : rows[i]) v[i * cols_ + j] = x;
      },
      rows_data_);
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  return std::visit(
      [](const auto& rows) {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.size();
        return n;
      },
      rows_data_);
}

template <class T>
void SparseMatrix::add(std::size_t r, std::size_t c, const T& value) {
  if (r >= rows_ || c >= cols_) throw DimensionMismatch("sparse index out of range");
  visit_kind(coeffs_, [&](auto arith) {
    using V = typename decltype(arith)::value_type;
    if constexpr (std::is_same_v<V, T>) {
      auto& row = rows_as<V>()[r];
      auto col = static_cast<std::uint32_t>(c);
      auto it = std::lower_bound(row.begin(), row.end(), col,
                                 [](const auto& e, std::uint32_t k) { return e.first < k; });
      if (it != row.end() && it->first == col) {
        it->second = arith.add(it->second, value);
        if (arith.is_zero(it->second)) row.erase(it);
      } else if (!arith.is_zero(value)) {
        row.emplace(it, col, value);
      }
    } else {
      throw KindMismatch("sparse add: value type does not match " + coeffs_.tag());
    }
  });
}

template void SparseMatrix::add<Rational>(std::size_t, std::size_t, const Rational&);
template void SparseMatrix::add<std::uint32_t>(std::size_t, std::size_t, const std::uint32_t&);
template void SparseMatrix::add<Integer>(std::size_t, std::size_t, const Integer&);

void SparseMatrix::add(std::size_t r, std::size_t c, long value) {
  visit_kind(coeffs_, [&](auto arith) { add(r, c, arith.from_long(value)); });
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(coeffs_, cols_, rows_);
  std::visit(
      [&](const auto& rows) {
        using T = typename std::decay_t<decltype(rows)>::value_type::value_type::second_type;
        auto& out = t.rows_as<T>();
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (const auto& [j, x] : rows[i]) out[j].emplace_back(static_cast<std::uint32_t>(i), x);
      },
      rows_data_);
  return t;
}

bool SparseMatrix::is_zero() const { return nonzeros() == 0; }

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  require_same_kind(a.coefficients(), b.coefficients(), "multiply");
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  SparseMatrix out(a.coefficients(), a.rows(), b.cols());
  visit_kind(a.coefficients(), [&](auto arith) {
    using T = typename decltype(arith)::value_type;
    const auto& ar = a.rows_as<T>();
    const auto& br = b.rows_as<T>();
    auto& orows = out.rows_as<T>();
    std::vector<T> acc(b.cols(), arith.zero());
    std::vector<char> touched(b.cols(), 0);
    std::vector<std::uint32_t> cols;
    for (std::size_t i = 0; i < ar.size(); ++i) {
      cols.clear();
      for (const auto& [k, x] : ar[i])
        for (const auto& [j, y] : br[k]) {
          if (!touched[j]) {
            touched[j] = 1;
            cols.push_back(j);
          }
          acc[j] = arith.add(acc[j], arith.mul(x, y));
        }
      std::sort(cols.begin(), cols.end());
      for (auto j : cols) {
        if (!arith.is_zero(acc[j])) orows[i].emplace_back(j, acc[j]);
        acc[j] = arith.zero();
        touched[j] = 0;
      }
    }
  });
  return out;
}

}  // namespace sheafcore
