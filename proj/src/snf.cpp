#include "growthlab/snf.hpp"

namespace growthlab {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// Smallest nonzero |entry| in the trailing submatrix starting at (k,k).
bool find_pivot(const IntMatrix& d, std::size_t k, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = k; i < d.rows(); ++i)
    for (std::size_t j = k; j < d.cols(); ++j) {
      const Int& v = d.at(i, j);
      if (v == 0) continue;
      Int a = abs_int(v);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  return found;
}

// Normalize diagonal signs at the end (keeps U unimodular).
void finalize(SnfDecomposition& s) {
  std::size_t steps = std::min(s.d.rows(), s.d.cols());
  for (std::size_t k = 0; k < steps; ++k)
    if (s.d.at(k, k) < 0) {
      s.d.negate_row(k);
      s.u.negate_row(k);
    }
}

}  // namespace

SnfDecomposition snf(const IntMatrix& a) {
  SnfDecomposition s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = s.d;
  std::size_t steps = std::min(a.rows(), a.cols());

  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      std::size_t pi = k, pj = k;
      if (!find_pivot(d, k, pi, pj)) return finalize(s), s;  // trailing block zero
      if (pi != k) {
        d.swap_rows(k, pi);
        s.u.swap_rows(k, pi);
      }
      if (pj != k) {
        d.swap_cols(k, pj);
        s.v.swap_cols(k, pj);
      }
      const Int pivot = d.at(k, k);

      bool dirty = false;
      for (std::size_t i = k + 1; i < d.rows(); ++i) {
        if (d.at(i, k) == 0) continue;
        Int q = d.at(i, k) / pivot;  // truncated: |remainder| < |pivot|
        d.row_axpy(i, k, q);
        s.u.row_axpy(i, k, q);
        if (d.at(i, k) != 0) dirty = true;
      }
      for (std::size_t j = k + 1; j < d.cols(); ++j) {
        if (d.at(k, j) == 0) continue;
        Int q = d.at(k, j) / pivot;
        d.col_axpy(j, k, q);
        s.v.col_axpy(j, k, q);
        if (d.at(k, j) != 0) dirty = true;
      }
      if (dirty) continue;  // a strictly smaller remainder exists; re-pivot

      // Row k and column k are clear; enforce divisibility of the rest.
      bool fixed = false;
      for (std::size_t i = k + 1; i < d.rows() && !fixed; ++i)
        for (std::size_t j = k + 1; j < d.cols() && !fixed; ++j)
          if (d.at(i, j) % pivot != 0) {
            // Fold row i into row k; the next gcd pass shrinks the pivot.
            d.row_axpy(k, i, Int(-1));
            s.u.row_axpy(k, i, Int(-1));
            fixed = true;
          }
      if (!fixed) break;
    }
  }
  return finalize(s), s;
}

std::vector<Int> invariant_factors(const SnfDecomposition& s) {
  std::vector<Int> out;
  std::size_t steps = std::min(s.d.rows(), s.d.cols());
  for (std::size_t k = 0; k < steps; ++k)
    if (s.d.at(k, k) != 0) out.push_back(s.d.at(k, k));
  return out;
}

}  // namespace growthlab
