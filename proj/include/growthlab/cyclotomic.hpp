#pragma once

#include <array>
#include <string>
#include <string_view>

#include "growthlab/int_matrix.hpp"

namespace growthlab {

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
std::vector<Int> cyclotomic_polynomial(unsigned n);

// Exact arithmetic in Z[2cos(pi/n)], represented as Z[y]/(minpoly) where
// minpoly is the minimal polynomial of 2cos(pi/n), obtained from the
// palindromic cyclotomic polynomial Phi_{2n} by the substitution y = x + 1/x.
// Elements are coefficient vectors of fixed length degree(), always reduced,
// so equal elements have identical representations.
class RealCyclotomicRing {
public:
  using Elem = std::vector<Int>;

  explicit RealCyclotomicRing(unsigned n);

  unsigned order() const { return n_; }
  unsigned degree() const { return degree_; }
  /// Monic minimal polynomial of 2cos(pi/n), ascending, size degree()+1.
  const std::vector<Int>& minpoly() const { return minpoly_; }

  Elem zero() const { return Elem(degree_, 0); }
  Elem one() const { return from_int(1); }
  Elem from_int(long long v) const;
  Elem gen() const;  // the class of y

  /// 2cos(pi/m) as a ring element; requires m to divide the ring order.
  Elem two_cos_pi_over(unsigned m) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  void serialize(const Elem& a, std::string& out) const;
  Elem deserialize(std::string_view in, std::size_t& pos) const;

  std::string to_display(const Elem& a) const;  // human-readable polynomial in y

private:
  unsigned n_ = 0;
  unsigned degree_ = 0;
  std::vector<Int> minpoly_;
};

inline bool same_ring(const RealCyclotomicRing& a, const RealCyclotomicRing& b) {
  return a.order() == b.order();
}

// 3x3 matrix over a real cyclotomic ring; the exact representation backing
// the reflection group engines.
struct RingMatrix {
  const RealCyclotomicRing* ring = nullptr;
  std::array<RealCyclotomicRing::Elem, 9> e;

  RealCyclotomicRing::Elem& at(std::size_t i, std::size_t j) { return e[i * 3 + j]; }
  const RealCyclotomicRing::Elem& at(std::size_t i, std::size_t j) const { return e[i * 3 + j]; }
};

RingMatrix ring_mat_identity(const RealCyclotomicRing& ring);
RingMatrix ring_mat_mul(const RingMatrix& a, const RingMatrix& b);
bool ring_mat_equal(const RingMatrix& a, const RingMatrix& b);
RealCyclotomicRing::Elem ring_mat_det(const RingMatrix& a);
/// Inverse of a matrix whose determinant is +-1 (domain error otherwise).
RingMatrix ring_mat_inverse_unimodular(const RingMatrix& a);

/// Canonical byte key; equal matrices over the same ring serialize identically.
std::string ring_mat_key(const RingMatrix& a);
RingMatrix ring_mat_from_key(const RealCyclotomicRing& ring, std::string_view key);

}  // namespace growthlab
