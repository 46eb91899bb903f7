#include "hgk/intmat.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "hgk/error.hpp"

namespace hgk {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

Int reduce_mod(Int a, Int m) {
  if (m == 0) return a;
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidArgument("matrix rows have unequal lengths");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InvalidArgument("matrix columns have unequal lengths");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Vector> Matrix::to_rows() const {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

bool Matrix::is_zero() const {
  for (Int x : data_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::hconcat(const Matrix& other) const {
  if (rows_ != other.rows_) throw InvalidArgument("hconcat: row counts differ");
  Matrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

Matrix Matrix::vconcat(const Matrix& other) const {
  if (cols_ != other.cols_) throw InvalidArgument("vconcat: column counts differ");
  Matrix m(rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = other(i, j);
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
  Matrix m(r1 - r0, c1 - c0);
  for (std::size_t i = r0; i < r1; ++i)
    for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*this)(i, j);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: shapes do not match");
  Matrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) m(i, j) = checked_add(m(i, j), checked_mul(x, b(k, j)));
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("matrix sum: shapes differ");
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = checked_add(a(i, j), b(i, j));
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + scale(b, -1); }

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: shapes do not match");
  Vector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && x[j] != 0) y[i] = checked_add(y[i], checked_mul(a(i, j), x[j]));
  return y;
}

Matrix scale(const Matrix& a, Int s) {
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = checked_mul(a(i, j), s);
  return m;
}

namespace {

// Elementary operations applied to D while keeping U, U^{-1}, V in sync.
struct Reducer {
  Matrix D, U, Ui, V;

  void add_row(std::size_t dst, std::size_t src, Int q) {  // row_dst += q row_src
    if (q == 0) return;
    for (std::size_t j = 0; j < D.cols(); ++j) D(dst, j) = checked_add(D(dst, j), checked_mul(q, D(src, j)));
    for (std::size_t j = 0; j < U.cols(); ++j) U(dst, j) = checked_add(U(dst, j), checked_mul(q, U(src, j)));
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, src) = checked_sub(Ui(i, src), checked_mul(q, Ui(i, dst)));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (std::size_t i = 0; i < Ui.rows(); ++i) std::swap(Ui(i, a), Ui(i, b));
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(a, j) = -D(a, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
    for (std::size_t i = 0; i < Ui.rows(); ++i) Ui(i, a) = -Ui(i, a);
  }
  void add_col(std::size_t dst, std::size_t src, Int q) {  // col_dst += q col_src
    if (q == 0) return;
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, dst) = checked_add(D(i, dst), checked_mul(q, D(i, src)));
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, dst) = checked_add(V(i, dst), checked_mul(q, V(i, src)));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
};

}  // namespace

SmithForm smith_normal_form(const Matrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  Reducer r{A, Matrix::identity(m), Matrix::identity(m), Matrix::identity(n)};
  std::size_t t = 0;
  for (; t < m && t < n; ++t) {
    // Smallest nonzero entry of the remaining block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (r.D(i, j) != 0 && (!found || std::llabs(r.D(i, j)) < std::llabs(r.D(pi, pj)))) {
          found = true;
          pi = i;
          pj = j;
        }
    if (!found) break;
    r.swap_rows(t, pi);
    r.swap_cols(t, pj);
    while (true) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (r.D(i, t) == 0) continue;
        r.add_row(i, t, -(r.D(i, t) / r.D(t, t)));
        if (r.D(i, t) != 0) {
          r.swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (r.D(t, j) == 0) continue;
        r.add_col(j, t, -(r.D(t, j) / r.D(t, t)));
        if (r.D(t, j) != 0) {
          r.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // Pivot must divide the rest of the block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (r.D(i, j) % r.D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      r.add_row(t, bad, 1);
    }
    if (r.D(t, t) < 0) r.negate_row(t);
  }
  SmithForm out{std::move(r.U), std::move(r.Ui), std::move(r.V), std::move(r.D), {}, t};
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(out.D(i, i));
  return out;
}

Matrix kernel_basis(const Matrix& A) {
  const auto s = smith_normal_form(A);
  return s.V.block(0, A.cols(), s.rank, A.cols());
}

Matrix image_basis(const Matrix& A) {
  const auto s = smith_normal_form(A);
  Matrix out(A.rows(), s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < A.rows(); ++i) out(i, j) = checked_mul(s.U_inverse(i, j), s.diagonal[j]);
  return out;
}

Matrix kernel_basis_mod(const Matrix& A, const Vector& moduli) {
  if (moduli.size() != A.rows()) throw InvalidArgument("kernel_basis_mod: modulus count");
  std::vector<Vector> rel;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) {
      Vector c(A.rows(), 0);
      c[i] = -moduli[i];
      rel.push_back(c);
    }
  const Matrix K = kernel_basis(A.hconcat(Matrix::from_columns(A.rows(), rel)));
  return image_basis(K.block(0, A.cols(), 0, K.cols()));
}

std::optional<Vector> solve(const Matrix& A, const Vector& b) {
  const auto s = smith_normal_form(A);
  const Vector y = s.U * b;
  Vector c(A.cols(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      if (y[i] % s.diagonal[i] != 0) return std::nullopt;
      c[i] = y[i] / s.diagonal[i];
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * c;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace hgk
