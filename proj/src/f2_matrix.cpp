#include "growthlab/f2_matrix.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "growthlab/f2_kernels.hpp"

namespace growthlab {

F2Vec::F2Vec(std::initializer_list<int> bits) : F2Vec(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) set(i++, b != 0);
}

void F2Vec::xor_with(const F2Vec& other) {
  if (other.n_ != n_) fail(ErrorKind::shape, "F2Vec xor: size mismatch");
  f2kern::active().xor_rows(w_.data(), other.w_.data(), w_.size());
}

bool F2Vec::is_zero() const { return f2kern::active().is_zero(w_.data(), w_.size()); }

std::size_t F2Vec::popcount() const { return f2kern::active().popcount(w_.data(), w_.size()); }

bool operator==(const F2Vec& a, const F2Vec& b) {
  if (a.n_ != b.n_) return false;
  return f2kern::active().equal(a.w_.data(), b.w_.data(), a.w_.size());
}

F2Matrix F2Matrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  F2Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) fail(ErrorKind::shape, "from_rows: ragged rows");
    std::size_t j = 0;
    for (int b : row) m.set(i, j++, b != 0);
    ++i;
  }
  return m;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void F2Matrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  std::swap_ranges(w_.begin() + i * wpr_, w_.begin() + (i + 1) * wpr_, w_.begin() + j * wpr_);
}

void F2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
  f2kern::active().xor_rows(row(dst), row(src), wpr_);
}

bool F2Matrix::is_zero() const { return f2kern::active().is_zero(w_.data(), w_.size()); }

bool F2Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

std::vector<int> F2Matrix::to_flat() const {
  std::vector<int> out(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i * cols_ + j] = get(i, j) ? 1 : 0;
  return out;
}

F2Matrix F2Matrix::from_flat(std::size_t rows, std::size_t cols, const std::vector<int>& flat) {
  if (flat.size() != rows * cols) fail(ErrorKind::shape, "from_flat: size mismatch");
  F2Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      int v = flat[i * cols + j];
      if (v != 0 && v != 1) fail(ErrorKind::input, "matrix entries must be 0 or 1");
      m.set(i, j, v == 1);
    }
  return m;
}

bool operator==(const F2Matrix& a, const F2Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  return f2kern::active().equal(a.w_.data(), b.w_.data(), a.w_.size());
}

F2Matrix f2_mul(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::shape, "f2_mul: inner dimensions disagree");
  F2Matrix c(a.rows(), b.cols());
  const auto& k = f2kern::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t* out = c.row(i);
    const std::uint64_t* ar = a.row(i);
    for (std::size_t w = 0; w < a.words_per_row(); ++w) {
      std::uint64_t bits = ar[w];
      while (bits) {
        std::size_t j = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits));
        bits &= bits - 1;
        k.xor_rows(out, b.row(j), b.words_per_row());
      }
    }
  }
  return c;
}

F2Vec f2_mul(const F2Matrix& a, const F2Vec& x) {
  if (a.cols() != x.size()) fail(ErrorKind::shape, "f2_mul: vector length mismatch");
  F2Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::uint64_t* ar = a.row(i);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_per_row(); ++w) acc ^= ar[w] & x.words()[w];
    y.set(i, std::popcount(acc) & 1);
  }
  return y;
}

namespace {

// In-place reduction to row echelon form with natural column pivot order.
// Returns pivot (row, col) pairs in elimination order.
std::vector<std::pair<std::size_t, std::size_t>> echelonize(F2Matrix& m) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, col)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, col)) m.xor_row_into(r, i);
    pivots.emplace_back(r, col);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t f2_rank(F2Matrix m) { return echelonize(m).size(); }

std::optional<F2Vec> f2_solve(const F2Matrix& a, const F2Vec& b) {
  if (b.size() != a.rows()) fail(ErrorKind::shape, "f2_solve: rhs length must equal row count");
  // Augment with b as an extra column.
  F2Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.row(i), a.row(i) + a.words_per_row(), aug.row(i));
    // Clear potential overlap then set augmented bit.
    for (std::size_t j = a.cols(); j < aug.cols(); ++j) aug.set(i, j, false);
    aug.set(i, a.cols(), b.get(i));
  }
  auto pivots = echelonize(aug);
  F2Vec x(a.cols());
  for (auto [row, col] : pivots) {
    if (col == a.cols()) return std::nullopt;  // 0 = 1 row: inconsistent
    x.set(col, aug.get(row, a.cols()));
  }
  F2Vec check = f2_mul(a, x);
  if (check != b) fail(ErrorKind::shape, "f2_solve: verification failed (internal)");
  return x;
}

std::optional<F2Vec> f2_kernel_vector(const F2Matrix& a) {
  F2Matrix m = a;
  auto pivots = echelonize(m);
  if (pivots.size() == a.cols()) return std::nullopt;
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto [row, col] : pivots) is_pivot[col] = true;
  std::size_t free_col = 0;
  while (free_col < a.cols() && is_pivot[free_col]) ++free_col;
  F2Vec x(a.cols());
  x.set(free_col, true);
  for (auto [row, col] : pivots) x.set(col, m.get(row, free_col));
  F2Vec check = f2_mul(a, x);
  if (!check.is_zero() || x.is_zero())
    fail(ErrorKind::shape, "f2_kernel_vector: verification failed (internal)");
  return x;
}

std::string to_string(const F2Matrix& m) {
  std::string s;
  s.reserve(m.rows() * (m.cols() + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s += m.get(i, j) ? '1' : '0';
    s += '\n';
  }
  return s;
}

}  // namespace growthlab
