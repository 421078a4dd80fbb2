#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sheafcore/scalar.hpp"

namespace sheafcore {

/// Dense row-major matrix over a single coefficient domain. Matrices act on
/// column vectors. 0×n and n×0 shapes are legal.
class Matrix {
 public:
  Matrix() = default;
  /// Zero matrix.
  Matrix(Coefficients coeffs, std::size_t rows, std::size_t cols);

  static Matrix identity(Coefficients coeffs, std::size_t n);
  static Matrix from_rows(Coefficients coeffs,
                          std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_values(Coefficients coeffs, std::size_t rows,
                            std::size_t cols, std::span<const long> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& value);
  void set(std::size_t r, std::size_t c, long value);

  bool is_zero() const;
  bool is_identity() const;
  Matrix transpose() const;
  /// Columns [first, first + count) as a new matrix.
  Matrix column_block(std::size_t first, std::size_t count) const;

  /// Reinterprets integer entries in another domain (Z → Q or GF(p)).
  Matrix converted(Coefficients target) const;

  template <class T>
  const std::vector<T>& values() const {
    return std::get<std::vector<T>>(entries_);
  }
  template <class T>
  std::vector<T>& values() {
    return std::get<std::vector<T>>(entries_);
  }

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  using Storage = std::variant<std::vector<Rational>, std::vector<std::uint32_t>,
                               std::vector<Integer>>;

  Coefficients coeffs_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Storage entries_ = std::vector<Rational>{};
};

/// a·b. Throws KindMismatch / DimensionMismatch.
Matrix compose(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

std::string to_string(const Matrix& m);

/// Sparse matrix stored as sorted rows. Used for coboundary operators,
/// which are far too large for dense storage on realistic posets.
class SparseMatrix {
 public:
  template <class T>
  using Row = std::vector<std::pair<std::uint32_t, T>>;
  template <class T>
  using Rows = std::vector<Row<T>>;

  SparseMatrix() = default;
  SparseMatrix(Coefficients coeffs, std::size_t rows, std::size_t cols);

  static SparseMatrix from_dense(const Matrix& m);
  Matrix to_dense() const;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  std::size_t nonzeros() const;

  /// Adds `value` to entry (r, c). Rows are kept sorted by column.
  template <class T>
  void add(std::size_t r, std::size_t c, const T& value);
  void add(std::size_t r, std::size_t c, long value);

  SparseMatrix transpose() const;
  bool is_zero() const;

  template <class T>
  const Rows<T>& rows_as() const {
    return std::get<Rows<T>>(rows_data_);
  }
  template <class T>
  Rows<T>& rows_as() {
    return std::get<Rows<T>>(rows_data_);
  }

 private:
  using Storage = std::variant<Rows<Rational>, Rows<std::uint32_t>, Rows<Integer>>;

  Coefficients coeffs_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Storage rows_data_ = Rows<Rational>{};
};

/// a·b for sparse operands.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace sheafcore
