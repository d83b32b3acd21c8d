#pragma once

#include "growthlab/int_matrix.hpp"

namespace growthlab {

// Smith normal form U·A·V = D with U, V unimodular and D diagonal,
// d1 | d2 | ... | dk, all di >= 0.
struct SnfDecomposition {
  IntMatrix u, d, v;
};

SnfDecomposition snf(const IntMatrix& a);

/// The nonzero diagonal entries of d, in divisibility order.
std::vector<Int> invariant_factors(const SnfDecomposition& s);

}  // namespace growthlab
