#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "grpdef/numeric.hpp"

namespace grpdef {

/// Dense rows x cols matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntegerMatrix operator*(const IntegerMatrix& lhs, const IntegerMatrix& rhs);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Exact determinant (Bareiss). Square matrices only.
BigInt determinant(const IntegerMatrix& m);

struct SmithForm {
  IntegerMatrix S;  // diagonal, d1 | d2 | ..., all >= 0
  IntegerMatrix U;  // rows x rows, unimodular
  IntegerMatrix V;  // cols x cols, unimodular
};

/// U * A * V = S.
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Diagonal of the Smith form, without transforms. Length min(rows, cols).
/// Runs in 64-bit arithmetic and restarts with big integers on overflow.
std::vector<BigInt> smith_diagonal(const IntegerMatrix& a);

}  // namespace grpdef
