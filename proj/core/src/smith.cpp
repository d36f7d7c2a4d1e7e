#include "grpdef/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "grpdef/errors.hpp"

namespace grpdef {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InputError("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& lhs, const IntegerMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) throw InputError("matrix shape mismatch");
  IntegerMatrix out(lhs.rows_, rhs.cols_);
  for (std::size_t i = 0; i < lhs.rows_; ++i)
    for (std::size_t k = 0; k < lhs.cols_; ++k) {
      const BigInt& a = lhs(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

BigInt determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }
std::int64_t magnitude(std::int64_t a) { return a < 0 ? checked_neg(a) : a; }

BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
BigInt checked_neg(const BigInt& a) { return -a; }
BigInt magnitude(const BigInt& a) { return abs(a); }

template <class T>
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  T& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, a), at(i, b));
  }
  // row[dst] -= q * row[src]
  void row_axpy(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t j = 0; j < cols; ++j)
      if (at(src, j) != 0) at(dst, j) = checked_sub(at(dst, j), checked_mul(q, at(src, j)));
  }
  void col_axpy(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t i = 0; i < rows; ++i)
      if (at(i, src) != 0) at(i, dst) = checked_sub(at(i, dst), checked_mul(q, at(i, src)));
  }
  void row_add(std::size_t dst, std::size_t src) {
    for (std::size_t j = 0; j < cols; ++j)
      if (at(src, j) != 0) at(dst, j) = checked_add(at(dst, j), at(src, j));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) at(r, j) = checked_neg(at(r, j));
  }
};

// Reduces `a` in place to Smith form. When `u`/`v` are given, row operations
// are mirrored on `u` and column operations on `v`.
template <class T>
void reduce_to_smith(Dense<T>& a, Dense<T>* u, Dense<T>* v) {
  const std::size_t limit = std::min(a.rows, a.cols);
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (u) u->swap_rows(x, y);
  };
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (v) v->swap_cols(x, y);
  };

  for (std::size_t t = 0; t < limit; ++t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    T best_abs(0);
    for (std::size_t i = t; i < a.rows; ++i)
      for (std::size_t j = t; j < a.cols; ++j) {
        const T& x = a.at(i, j);
        if (x == 0) continue;
        T m = magnitude(x);
        if (!best || m < best_abs) {
          best = {i, j};
          best_abs = m;
          if (best_abs == 1) goto found;
        }
      }
  found:
    if (!best) break;
    swap_rows(t, best->first);
    swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (a.at(i, t) == 0) continue;
        const T q = a.at(i, t) / a.at(t, t);
        if (q != 0) {
          a.row_axpy(i, t, q);
          if (u) u->row_axpy(i, t, q);
        }
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (a.at(t, j) == 0) continue;
        const T q = a.at(t, j) / a.at(t, t);
        if (q != 0) {
          a.col_axpy(j, t, q);
          if (v) v->col_axpy(j, t, q);
        }
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t into the pivot.
        std::size_t bi = t, bj = t;
        T m = magnitude(a.at(t, t));
        for (std::size_t i = t + 1; i < a.rows; ++i)
          if (a.at(i, t) != 0 && magnitude(a.at(i, t)) < m) {
            m = magnitude(a.at(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (a.at(t, j) != 0 && magnitude(a.at(t, j)) < m) {
            m = magnitude(a.at(t, j));
            bi = t;
            bj = j;
          }
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Divisibility: pull a non-multiple into row t and go again.
      std::optional<std::size_t> bad_row;
      const T pivot = a.at(t, t);
      for (std::size_t i = t + 1; i < a.rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < a.cols; ++j)
          if (a.at(i, j) % pivot != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.row_add(t, *bad_row);
      if (u) u->row_add(t, *bad_row);
    }
    if (a.at(t, t) < 0) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

template <class T>
Dense<T> to_dense(const IntegerMatrix& m) {
  Dense<T> d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, std::int64_t>) {
        if (m(i, j) > INT64_MAX || m(i, j) < INT64_MIN) throw Overflow{};
        d.at(i, j) = static_cast<std::int64_t>(m(i, j));
      } else {
        d.at(i, j) = m(i, j);
      }
    }
  return d;
}

template <class T>
IntegerMatrix to_matrix(const Dense<T>& d) {
  IntegerMatrix m(d.rows, d.cols);
  for (std::size_t i = 0; i < d.rows; ++i)
    for (std::size_t j = 0; j < d.cols; ++j) m(i, j) = BigInt(d.at(i, j));
  return m;
}

template <class T>
std::vector<BigInt> diagonal_of(const IntegerMatrix& m) {
  Dense<T> d = to_dense<T>(m);
  reduce_to_smith<T>(d, nullptr, nullptr);
  std::vector<BigInt> out;
  for (std::size_t t = 0; t < std::min(d.rows, d.cols); ++t) out.emplace_back(d.at(t, t));
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
  Dense<BigInt> s = to_dense<BigInt>(a);
  Dense<BigInt> u = to_dense<BigInt>(IntegerMatrix::identity(a.rows()));
  Dense<BigInt> v = to_dense<BigInt>(IntegerMatrix::identity(a.cols()));
  reduce_to_smith<BigInt>(s, &u, &v);
  return {to_matrix(s), to_matrix(u), to_matrix(v)};
}

std::vector<BigInt> smith_diagonal(const IntegerMatrix& a) {
  try {
    return diagonal_of<std::int64_t>(a);
  } catch (const Overflow&) {
    return diagonal_of<BigInt>(a);
  }
}

}  // namespace grpdef
