#pragma once

// Dense exact matrices over mpq_class / mpz_class.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fincat/error.hpp"

namespace fincat {

using Integer = mpz_class;
using Rational = mpq_class;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorKind::SizeMismatch, "ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix column(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::SizeMismatch, "matrix product shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Horizontal concatenation [a | b].
template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::SizeMismatch, "hconcat rows");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

namespace detail {

inline int abs_cmp(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Fraction-free elimination in place; returns the rank. Division by the
// previous pivot is exact at every step.
inline std::size_t bareiss_rank_inplace(IntMatrix& m) {
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = npos;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      if (p == npos || abs_cmp(m(i, c), m(p, c)) < 0) p = i;
    }
    if (p == npos) continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        Integer t = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref_inplace(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = npos;
    for (std::size_t i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p == npos) continue;
    m.swap_rows(p, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const IntMatrix& m) {
  IntMatrix w = m;
  return detail::bareiss_rank_inplace(w);
}

// Rows are cleared of denominators first, which does not change the rank.
inline std::size_t rank(const RatMatrix& m) {
  IntMatrix w(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = m(i, j) * l;
      w(i, j) = s.get_num();
    }
  }
  return detail::bareiss_rank_inplace(w);
}

// Columns of the result form a basis of {v : m v = 0}.
inline RatMatrix nullspace(const RatMatrix& m) {
  RatMatrix r = m;
  auto pivots = detail::rref_inplace(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, f);
  }
  return basis;
}

// Some x with m x = b, or nullopt. b may have several columns.
inline std::optional<RatMatrix> solve(const RatMatrix& m, const RatMatrix& b) {
  if (b.rows() != m.rows()) throw Error(ErrorKind::SizeMismatch, "solve: rhs rows");
  RatMatrix aug = hconcat(m, b);
  RatMatrix r = aug;
  // Eliminate only over the coefficient columns.
  std::vector<std::size_t> pivots;
  {
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < r.rows(); ++c) {
      std::size_t p = npos;
      for (std::size_t i = row; i < r.rows(); ++i)
        if (r(i, c) != 0) { p = i; break; }
      if (p == npos) continue;
      r.swap_rows(p, row);
      Rational inv = 1 / r(row, c);
      for (std::size_t j = c; j < r.cols(); ++j) r(row, j) *= inv;
      for (std::size_t i = 0; i < r.rows(); ++i) {
        if (i == row || r(i, c) == 0) continue;
        Rational f = r(i, c);
        for (std::size_t j = c; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
      }
      pivots.push_back(c);
      ++row;
    }
  }
  for (std::size_t i = pivots.size(); i < r.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (r(i, m.cols() + j) != 0) return std::nullopt;
  RatMatrix x(m.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[i], j) = r(i, m.cols() + j);
  return x;
}

struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

// U * M * V = D with D diagonal, d_i >= 0 and d_i | d_{i+1}.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();

  auto row_addmul = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < cols; ++j) d(dst, j) += q * d(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += q * u(src, j);
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < rows; ++i) d(i, dst) += q * d(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) += q * v(i, src);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    std::size_t pi = npos, pj = npos;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) == 0) continue;
        if (pi == npos || detail::abs_cmp(d(i, j), d(pi, pj)) < 0) { pi = i; pj = j; }
      }
    if (pi == npos) break;
    d.swap_rows(t, pi); u.swap_rows(t, pi);
    d.swap_cols(t, pj); v.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_addmul(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_addmul(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move a smaller remainder into the pivot and repeat.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && detail::abs_cmp(d(i, t), d(bi, bj)) < 0) { bi = i; bj = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && detail::abs_cmp(d(t, j), d(bi, bj)) < 0) { bi = t; bj = j; }
        if (bi != t) { d.swap_rows(t, bi); u.swap_rows(t, bi); }
        if (bj != t) { d.swap_cols(t, bj); v.swap_cols(t, bj); }
        continue;
      }
      std::size_t bad = npos;
      for (std::size_t i = t + 1; i < rows && bad == npos; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) { bad = i; break; }
      if (bad == npos) break;
      row_addmul(t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

// Nonzero diagonal entries of the Smith form, in order.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (s.d(i, i) != 0) out.push_back(s.d(i, i));
  return out;
}

// Text format: "rows cols" then row-major entries, integers or p/q.
template <typename T>
void write_matrix(std::ostream& os, const Matrix<T>& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).get_str();
    }
    os << '\n';
  }
}

template <typename T>
Matrix<T> read_matrix(std::istream& is) {
  std::size_t r = 0, c = 0;
  if (!(is >> r >> c)) throw Error(ErrorKind::Parse, "matrix header");
  Matrix<T> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::string tok;
      if (!(is >> tok)) throw Error(ErrorKind::Parse, "matrix entry missing");
      T x;
      if (x.set_str(tok, 10) != 0) throw Error(ErrorKind::Parse, "bad matrix entry '" + tok + "'");
      if constexpr (std::is_same_v<T, Rational>) {
        if (x.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator '" + tok + "'");
        x.canonicalize();
      }
      m(i, j) = x;
    }
  return m;
}

template <typename T>
std::string to_text(const Matrix<T>& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

}  // namespace fincat
