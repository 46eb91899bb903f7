#pragma once

// Dense integer matrices with overflow-checked arithmetic and Smith normal
// form, the lattice engine under every abelian computation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hgk {

using Int = std::int64_t;
using Vector = std::vector<Int>;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
/// Representative of a modulo m in [0, m); m == 0 leaves a unchanged.
Int reduce_mod(Int a, Int m);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// Throws InvalidArgument on ragged input.
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  /// The matrix whose columns are the given vectors, all of length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  std::vector<Vector> to_rows() const;
  bool is_zero() const;
  Matrix transpose() const;
  /// Columns of `this` followed by those of `other`; equal row counts.
  Matrix hconcat(const Matrix& other) const;
  /// Rows of `this` followed by those of `other`; equal column counts.
  Matrix vconcat(const Matrix& other) const;
  /// Rows [r0, r1) and columns [c0, c1).
  Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix scale(const Matrix& a, Int s);

/// U * A * V = D with U, V unimodular, D diagonal with positive entries
/// d_0 | d_1 | ... | d_{rank-1} followed by zeros.
struct SmithForm {
  Matrix U;
  Matrix U_inverse;
  Matrix V;
  Matrix D;
  Vector diagonal;  // the first `rank` diagonal entries
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const Matrix& A);

/// Columns form a basis of the lattice {x : A x = 0}.
Matrix kernel_basis(const Matrix& A);
/// Columns form a basis of the lattice spanned by the columns of A.
Matrix image_basis(const Matrix& A);
/// Basis of {x : A x = 0 mod moduli} (componentwise; modulus 0 = exact).
Matrix kernel_basis_mod(const Matrix& A, const Vector& moduli);
/// An integer solution of A x = b, if one exists.
std::optional<Vector> solve(const Matrix& A, const Vector& b);

std::string to_string(const Matrix& m);

}  // namespace hgk
