#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <vector>

#include "growthlab/error.hpp"

namespace growthlab {

// Arbitrary precision is mandatory here: Smith normal form pivoting can blow
// up intermediate entries well past 64 bits even for small inputs.
using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i -= q * row k ; col j -= q * col k
  void row_axpy(std::size_t i, std::size_t k, const Int& q);
  void col_axpy(std::size_t j, std::size_t k, const Int& q);
  void negate_row(std::size_t i);

  bool is_zero() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> e_;
};

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);

/// Exact determinant (fraction-free Bareiss elimination); square input only.
Int int_det(const IntMatrix& a);

}  // namespace growthlab
