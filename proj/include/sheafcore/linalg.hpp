#pragma once

#include <cstddef>
#include <vector>

#include "sheafcore/matrix.hpp"

namespace sheafcore {

/// Invariant factors d_1 | d_2 | ... | d_r of an integer matrix.
struct SmithForm {
  std::vector<Integer> diagonal;
  std::size_t rank() const noexcept { return diagonal.size(); }
  /// Invariant factors greater than one.
  std::vector<Integer> torsion() const;
};

/// Dimension of the column span. Fraction-free Bareiss elimination over Q,
/// plain Gaussian elimination over GF(p). Throws KindMismatch on Z.
std::size_t rank(const Matrix& m);

/// Same quantity through the sparse elimination engine.
std::size_t rank(const SparseMatrix& m);

/// Basis of {x : m·x = 0}, returned as the columns of a cols × k matrix.
Matrix kernel_basis(const Matrix& m);
Matrix kernel_basis(const SparseMatrix& m);

/// Square matrix of full rank.
bool is_invertible(const Matrix& m);

/// Elementary-operation reduction with minimal-absolute-value pivots.
SmithForm smith_normal_form(const Matrix& m);
SmithForm smith_normal_form(const SparseMatrix& m);

}  // namespace sheafcore
