#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/error.hpp"

namespace growthlab {

// Dense vector over GF(2), packed 64 bits per word. Padding bits above
// size() are kept zero so whole-word comparisons are valid.
class F2Vec {
public:
  F2Vec() = default;
  explicit F2Vec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  F2Vec(std::initializer_list<int> bits);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void xor_with(const F2Vec& other);
  bool is_zero() const;
  std::size_t popcount() const;

  std::uint64_t* words() { return w_.data(); }
  const std::uint64_t* words() const { return w_.data(); }
  std::size_t word_count() const { return w_.size(); }

  friend bool operator==(const F2Vec& a, const F2Vec& b);
  friend bool operator!=(const F2Vec& a, const F2Vec& b) { return !(a == b); }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Dense row-major bit matrix over GF(2).
class F2Matrix {
public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}
  // Convenience for tests/fixtures: rows of 0/1.
  static F2Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static F2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  bool get(std::size_t i, std::size_t j) const {
    return (w_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    std::uint64_t m = std::uint64_t{1} << (j & 63);
    if (v)
      w_[i * wpr_ + (j >> 6)] |= m;
    else
      w_[i * wpr_ + (j >> 6)] &= ~m;
  }

  std::uint64_t* row(std::size_t i) { return w_.data() + i * wpr_; }
  const std::uint64_t* row(std::size_t i) const { return w_.data() + i * wpr_; }

  void swap_rows(std::size_t i, std::size_t j);
  void xor_row_into(std::size_t src, std::size_t dst);  // row dst ^= row src

  bool is_zero() const;
  bool is_identity() const;

  // Row-major 0/1 serialization used by the JSON schemas.
  std::vector<int> to_flat() const;
  static F2Matrix from_flat(std::size_t rows, std::size_t cols, const std::vector<int>& flat);

  friend bool operator==(const F2Matrix& a, const F2Matrix& b);
  friend bool operator!=(const F2Matrix& a, const F2Matrix& b) { return !(a == b); }

private:
  std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> w_;
};

F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b);
F2Vec f2_mul(const F2Matrix& a, const F2Vec& x);

/// Rank over GF(2); the input is taken by value and eliminated in place.
std::size_t f2_rank(F2Matrix m);

/// Some x with a·x = b, or nullopt when b is outside the column span.
/// A returned solution is re-multiplied against a before being handed back.
std::optional<F2Vec> f2_solve(const F2Matrix& a, const F2Vec& b);

/// Some nonzero kernel vector of a, or nullopt when a has full column rank.
std::optional<F2Vec> f2_kernel_vector(const F2Matrix& a);

std::string to_string(const F2Matrix& m);

}  // namespace growthlab
