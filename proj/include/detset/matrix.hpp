#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "detset/ring.hpp"

namespace detset {

// Dense row-major matrix over a ring context. Entries stay canonical for
// the ring; values are immutable by convention once handed out.
template <class R>
class Matrix {
public:
  using Elem = typename R::Elem;

  Matrix(R ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0)
      raise(Errc::shape_mismatch, "matrix dimensions must be positive");
    a_.assign(rows * cols, ring_.zero());
  }

  static Matrix identity(R ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
  }

  static Matrix from_rows(R ring, const std::vector<std::vector<Elem>>& rows) {
    if (rows.empty() || rows[0].empty())
      raise(Errc::shape_mismatch, "matrix dimensions must be positive");
    Matrix m(ring, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        raise(Errc::shape_mismatch, "ragged rows");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const R& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.ring_.spec() == y.ring_.spec() && x.rows_ == y.rows_ &&
           x.cols_ == y.cols_ && x.a_ == y.a_;
  }

private:
  R ring_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

template <class R>
Matrix<R> transpose(const Matrix<R>& m) {
  Matrix<R> t(m.ring(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

// entrywise difference
template <class R>
Matrix<R> sub(const Matrix<R>& x, const Matrix<R>& y) {
  require_same_ring(x.ring(), y.ring());
  if (x.rows() != y.rows() || x.cols() != y.cols())
    raise(Errc::shape_mismatch, "entrywise difference needs equal shapes");
  Matrix<R> out(x.ring(), x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out.at(i, j) = x.ring().sub(x.at(i, j), y.at(i, j));
  return out;
}

// entrywise scaling c * M
template <class R>
Matrix<R> scale_matrix(const typename R::Elem& c, const Matrix<R>& m) {
  Matrix<R> out(m.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(i, j) = m.ring().mul(c, m.at(i, j));
  return out;
}

template <class R>
Matrix<R> block2x2(const Matrix<R>& m00, const Matrix<R>& m01,
                   const Matrix<R>& m10, const Matrix<R>& m11) {
  require_same_ring(m00.ring(), m01.ring());
  require_same_ring(m00.ring(), m10.ring());
  require_same_ring(m00.ring(), m11.ring());
  if (m00.rows() != m01.rows() || m10.rows() != m11.rows() ||
      m00.cols() != m10.cols() || m01.cols() != m11.cols())
    raise(Errc::shape_mismatch, "block shapes are not conformable");
  Matrix<R> out(m00.ring(), m00.rows() + m10.rows(), m00.cols() + m01.cols());
  auto paste = [&](const Matrix<R>& src, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < src.rows(); ++i)
      for (std::size_t j = 0; j < src.cols(); ++j)
        out.at(r0 + i, c0 + j) = src.at(i, j);
  };
  paste(m00, 0, 0);
  paste(m01, 0, m00.cols());
  paste(m10, m00.rows(), 0);
  paste(m11, m00.rows(), m00.cols());
  return out;
}

namespace detail {

// Gaussian elimination with modular inverses; first nonzero pivot, row-swap
// sign tracked (p = 2 needs none, but -1 == 1 makes the code uniform).
inline Fp::Elem det_field(const Matrix<Fp>& m) {
  const Fp& ring = m.ring();
  std::size_t n = m.rows();
  std::vector<Fp::Elem> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  Fp::Elem det = ring.one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return ring.zero();
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j)
        std::swap(a[piv * n + j], a[k * n + j]);
      det = ring.neg(det);
    }
    det = ring.mul(det, a[k * n + k]);
    Fp::Elem pinv = ring.inv(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i * n + k] == 0) continue;
      Fp::Elem f = ring.mul(a[i * n + k], pinv);
      for (std::size_t j = k; j < n; ++j)
        a[i * n + j] = ring.sub(a[i * n + j], ring.mul(f, a[k * n + j]));
    }
  }
  return det;
}

// Fraction-free elimination; every division is exact and audited, so all
// intermediates stay integral.
inline Int det_bareiss(const Matrix<ZRing>& m) {
  std::size_t n = m.rows();
  std::vector<Int> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  bool negate_result = false;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv * n + k] == 0) ++piv;
    if (piv == n) return Int(0);
    if (piv != k) {
      for (std::size_t j = k; j < n; ++j)
        std::swap(a[piv * n + j], a[k * n + j]);
      negate_result = !negate_result;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        Int q, r;
        boost::multiprecision::divide_qr(num, prev, q, r);
        if (r != 0) raise(Errc::degenerate, "inexact division in elimination");
        a[i * n + j] = q;
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  Int det = a[n * n - 1];
  return negate_result ? Int(-det) : det;
}

template <class R>
typename R::Elem det_expand(const Matrix<R>& m, std::size_t row,
                            std::uint32_t used_cols) {
  const R& ring = m.ring();
  std::size_t n = m.rows();
  if (row == n) return ring.one();
  typename R::Elem acc = ring.zero();
  bool plus = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (used_cols & (std::uint32_t{1} << j)) continue;
    if (!ring.is_zero(m.at(row, j))) {
      typename R::Elem term = ring.mul(
          m.at(row, j), det_expand(m, row + 1, used_cols | (1u << j)));
      acc = plus ? ring.add(acc, term) : ring.sub(acc, term);
    }
    plus = !plus;
  }
  return acc;
}

template <class R>
typename R::Elem perm_expand(const Matrix<R>& m, std::size_t row,
                             std::uint32_t used_cols) {
  const R& ring = m.ring();
  std::size_t n = m.rows();
  if (row == n) return ring.one();
  typename R::Elem acc = ring.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (used_cols & (std::uint32_t{1} << j)) continue;
    if (!ring.is_zero(m.at(row, j)))
      acc = ring.add(acc, ring.mul(m.at(row, j),
                                   perm_expand(m, row + 1, used_cols |
                                                               (1u << j))));
  }
  return acc;
}

}  // namespace detail

template <class R>
typename R::Elem det(const Matrix<R>& m) {
  if (!m.square()) raise(Errc::not_square, "determinant needs a square matrix");
  if constexpr (is_prime_field_v<R>) {
    return detail::det_field(m);
  } else {
    return detail::det_bareiss(m);
  }
}

// Independent check: full permutation expansion, n <= 8.
template <class R>
typename R::Elem det_oracle(const Matrix<R>& m) {
  if (!m.square()) raise(Errc::not_square, "determinant needs a square matrix");
  if (m.rows() > 8)
    raise(Errc::unsupported, "expansion oracle supports n <= 8");
  return detail::det_expand(m, 0, 0);
}

// Inclusion-exclusion over column subsets with Gray-code row-sum updates,
// O(2^n * n); n <= 24.
template <class R>
typename R::Elem permanent(const Matrix<R>& m) {
  if (!m.square()) raise(Errc::not_square, "permanent needs a square matrix");
  std::size_t n = m.rows();
  if (n > 24) raise(Errc::unsupported, "permanent supports n <= 24");
  const R& ring = m.ring();
  std::vector<typename R::Elem> rowsum(n, ring.zero());
  typename R::Elem acc = ring.zero();
  std::uint32_t prev_gray = 0;
  for (std::uint32_t k = 1; k < (std::uint32_t{1} << n); ++k) {
    std::uint32_t gray = k ^ (k >> 1);
    std::uint32_t diff = gray ^ prev_gray;
    unsigned j = static_cast<unsigned>(std::countr_zero(diff));
    bool added = gray & diff;
    for (std::size_t i = 0; i < n; ++i) {
      rowsum[i] = added ? ring.add(rowsum[i], m.at(i, j))
                        : ring.sub(rowsum[i], m.at(i, j));
    }
    prev_gray = gray;
    typename R::Elem term = rowsum[0];
    for (std::size_t i = 1; i < n; ++i) term = ring.mul(term, rowsum[i]);
    bool even_subset = (std::popcount(gray) & 1) == 0;
    acc = even_subset ? ring.add(acc, term) : ring.sub(acc, term);
  }
  return (n % 2 == 0) ? acc : ring.neg(acc);
}

// naive expansion, n <= 8
template <class R>
typename R::Elem permanent_oracle(const Matrix<R>& m) {
  if (!m.square()) raise(Errc::not_square, "permanent needs a square matrix");
  if (m.rows() > 8)
    raise(Errc::unsupported, "expansion oracle supports n <= 8");
  return detail::perm_expand(m, 0, 0);
}

}  // namespace detset
