#pragma once

// Exact linear algebra over Z: dense matrices with arbitrary-precision
// entries, Smith normal form, kernels and cokernels.

#include "fibresum/abgroups.hpp"
#include "fibresum/integer.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fsum {

using IntVector = std::vector<Int>;

/// Dense row-major integer matrix. Shapes 0 x n and n x 0 are valid.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(std::size_t rows, std::size_t cols, const IntVector& diag) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Int& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const Int& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVector col(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<IntVector> to_rows() const {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  /// row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const Int& c) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) += c * (*this)(k, j);
  }
  /// col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const Int& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) += c * (*this)(i, k);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Rows of `top` followed by rows of `bottom`; column counts must agree.
inline IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack column mismatch");
  IntMatrix m(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) m(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) m(top.rows() + i, j) = bottom(i, j);
  return m;
}

inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline Int dot(const IntVector& u, const IntVector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dot product length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., zeros last.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  /// Diagonal of D (length min(rows, cols)).
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Saturated basis of a subgroup of Z^ambient_dim.
struct IntBasis {
  std::size_t ambient_dim = 0;
  std::vector<IntVector> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
  bool empty() const noexcept { return vectors.empty(); }
  friend bool operator==(const IntBasis&, const IntBasis&) = default;
};

namespace detail {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in the trailing submatrix starting at (t, t); ties
// broken by lowest row, then lowest column.
inline std::optional<Position> smallest_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<Position> best;
  Int best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int v = abs_value(a(i, j));
      if (!best || v < best_abs) {
        best = Position{i, j};
        best_abs = std::move(v);
      }
    }
  return best;
}

}  // namespace detail

/// Smith normal form with the fixed pivot rule above, so the output is a
/// deterministic function of the input.
inline SnfDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < m && t < n; ++t) {
    bool done = false;
    for (;;) {
      auto pivot = detail::smallest_pivot(d, t);
      if (!pivot) {
        done = true;
        break;
      }
      d.swap_rows(t, pivot->row);
      u.swap_rows(t, pivot->row);
      d.swap_cols(t, pivot->col);
      v.swap_cols(t, pivot->col);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce the divisibility chain: fold a non-divisible row into row t
      // so the next round picks a strictly smaller pivot.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < m && !offending; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) % d(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      d.add_row(t, *offending, 1);
      u.add_row(t, *offending, 1);
    }
    if (done) break;
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return SnfDecomposition{std::move(u), std::move(d), std::move(v)};
}

inline std::size_t rank(const IntMatrix& a) {
  std::size_t r = 0;
  for (const auto& x : smith_normal_form(a).diagonal())
    if (x != 0) ++r;
  return r;
}

/// Canonical (Hermite) echelon basis of the row lattice of linearly
/// independent rows: positive pivots, entries above each pivot reduced into
/// [0, pivot).
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    // Euclid among rows r.. on column c until a single nonzero remains.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (!best || abs_value(rows[i][c]) < abs_value(rows[*best][c]))) best = i;
      if (!best) break;
      std::swap(rows[r], rows[*best]);
      bool reduced = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(rows[i][c], rows[r][c]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  return rows;
}

/// Saturated basis of {v in Z^cols : A v = 0}, in Hermite echelon form so the
/// result does not depend on the elimination path.
inline IntBasis kernel_basis(const IntMatrix& a) {
  const auto snf = smith_normal_form(a);
  std::size_t r = 0;
  for (const auto& x : snf.diagonal())
    if (x != 0) ++r;
  std::vector<IntVector> cols;
  for (std::size_t j = r; j < a.cols(); ++j) cols.push_back(snf.V.col(j));
  return IntBasis{a.cols(), hermite_rows(std::move(cols), a.cols())};
}

/// Cokernel of A : Z^cols -> Z^rows.
inline AbGroup cokernel_presentation(const IntMatrix& a) {
  const auto diag = smith_normal_form(a).diagonal();
  std::size_t r = 0;
  std::vector<Int> torsion;
  for (const auto& x : diag) {
    if (x == 0) continue;
    ++r;
    if (x > 1) torsion.push_back(x);
  }
  return AbGroup(a.rows() - r, std::move(torsion));
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
    s += "]";
  }
  return s + "]";
}

}  // namespace fsum
