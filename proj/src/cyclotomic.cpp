#include "growthlab/cyclotomic.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace growthlab {

namespace {

constexpr unsigned kMaxRingDegree = 64;

void trim(std::vector<Int>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division; callers only divide known multiples.
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  trim(num);
  if (num.empty()) return {};
  std::vector<Int> q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    Int c = num[k + den.size() - 1] / den.back();
    if (c * den.back() != num[k + den.size() - 1])
      fail(ErrorKind::domain, "poly_div_exact: division not exact");
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) fail(ErrorKind::domain, "poly_div_exact: nonzero remainder");
  return q;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

// int64 range guards for the compact key encoding.
const Int kI64Min = Int(std::numeric_limits<long long>::min());
const Int kI64Max = Int(std::numeric_limits<long long>::max());

void append_coeff(const Int& v, std::string& out) {
  if (v == 0) {
    out.push_back('\x00');
    return;
  }
  if (v >= kI64Min && v <= kI64Max) {
    out.push_back('\x01');
    auto u = static_cast<std::uint64_t>(v.convert_to<long long>());
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((u >> (8 * b)) & 0xff));
    return;
  }
  out.push_back(v < 0 ? '\x02' : '\x03');
  Int mag = v < 0 ? Int(-v) : v;
  std::string bytes;
  boost::multiprecision::export_bits(mag, std::back_inserter(bytes), 8, false);
  std::uint32_t len = static_cast<std::uint32_t>(bytes.size());
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((len >> (8 * b)) & 0xff));
  out += bytes;
}

Int read_coeff(std::string_view in, std::size_t& pos) {
  if (pos >= in.size()) fail(ErrorKind::parse, "ring key: truncated");
  unsigned char tag = static_cast<unsigned char>(in[pos++]);
  if (tag == 0) return Int(0);
  if (tag == 1) {
    if (pos + 8 > in.size()) fail(ErrorKind::parse, "ring key: truncated int64");
    std::uint64_t u = 0;
    for (int b = 0; b < 8; ++b)
      u |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
    pos += 8;
    return Int(static_cast<long long>(u));
  }
  if (tag != 2 && tag != 3) fail(ErrorKind::parse, "ring key: bad tag");
  if (pos + 4 > in.size()) fail(ErrorKind::parse, "ring key: truncated length");
  std::uint32_t len = 0;
  for (int b = 0; b < 4; ++b)
    len |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + b])) << (8 * b);
  pos += 4;
  if (pos + len > in.size()) fail(ErrorKind::parse, "ring key: truncated magnitude");
  Int mag;
  boost::multiprecision::import_bits(mag, in.begin() + pos, in.begin() + pos + len, 8, false);
  pos += len;
  return tag == 2 ? Int(-mag) : mag;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(unsigned n) {
  if (n == 0) fail(ErrorKind::domain, "cyclotomic_polynomial: n must be positive");
  // x^n - 1 divided by Phi_d for all proper divisors d.
  std::vector<Int> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = poly_div_exact(std::move(p), cyclotomic_polynomial(d));
  }
  return p;
}

RealCyclotomicRing::RealCyclotomicRing(unsigned n) : n_(n) {
  if (n < 2) fail(ErrorKind::domain, "real_cyclotomic_ring: order must be >= 2");
  unsigned d = euler_phi(2 * n) / 2;
  if (d > kMaxRingDegree)
    fail(ErrorKind::domain, "real_cyclotomic_ring: degree exceeds the supported cap of 64");
  degree_ = d;

  std::vector<Int> phi = cyclotomic_polynomial(2 * n);
  // Phi_{2n} has even degree 2d and is palindromic for n >= 2; rewrite
  // Phi_{2n}(x)/x^d in y = x + 1/x using x^k + x^-k = D_k(y).
  if (phi.size() != 2 * d + 1) fail(ErrorKind::domain, "cyclotomic degree mismatch (internal)");

  std::vector<Int> acc(d + 1, 0);
  acc[0] = phi[d];
  // dk holds D_k, dk_minus1 holds D_{k-1}; D_{k+1} = y*D_k - D_{k-1}.
  std::vector<Int> dk_minus1 = {2};  // D_0
  std::vector<Int> dk = {0, 1};      // D_1 = y
  for (unsigned k = 1; k <= d; ++k) {
    for (std::size_t i = 0; i < dk.size(); ++i) acc[i] += phi[d + k] * dk[i];
    std::vector<Int> next(dk.size() + 1, 0);
    for (std::size_t i = 0; i < dk.size(); ++i) next[i + 1] = dk[i];
    for (std::size_t i = 0; i < dk_minus1.size(); ++i) next[i] -= dk_minus1[i];
    dk_minus1 = std::move(dk);
    dk = std::move(next);
  }
  if (acc.back() != 1) fail(ErrorKind::domain, "minpoly not monic (internal)");
  minpoly_ = std::move(acc);
}

RealCyclotomicRing::Elem RealCyclotomicRing::from_int(long long v) const {
  Elem e = zero();
  if (degree_ == 0) return e;
  e[0] = v;
  return e;
}

RealCyclotomicRing::Elem RealCyclotomicRing::gen() const {
  if (degree_ == 1) {
    // y reduces to the root of the linear minpoly: y = -minpoly[0].
    Elem e = zero();
    e[0] = -minpoly_[0];
    return e;
  }
  Elem e = zero();
  e[1] = 1;
  return e;
}

RealCyclotomicRing::Elem RealCyclotomicRing::two_cos_pi_over(unsigned m) const {
  if (m == 0 || n_ % m != 0)
    fail(ErrorKind::domain, "two_cos_pi_over: argument must divide the ring order");
  unsigned k = n_ / m;
  // Chebyshev-style recurrence D_0 = 2, D_1 = y, D_{j+1} = y*D_j - D_{j-1},
  // evaluated in the quotient ring.
  Elem prev2 = from_int(2);
  Elem prev = gen();
  if (k == 0) fail(ErrorKind::domain, "two_cos_pi_over: internal");
  if (k == 1) return prev;
  Elem y = gen();
  for (unsigned j = 2; j <= k; ++j) {
    Elem next = sub(mul(y, prev), prev2);
    prev2 = std::move(prev);
    prev = std::move(next);
  }
  return prev;
}

RealCyclotomicRing::Elem RealCyclotomicRing::add(const Elem& a, const Elem& b) const {
  Elem c(degree_);
  for (unsigned i = 0; i < degree_; ++i) c[i] = a[i] + b[i];
  return c;
}

RealCyclotomicRing::Elem RealCyclotomicRing::sub(const Elem& a, const Elem& b) const {
  Elem c(degree_);
  for (unsigned i = 0; i < degree_; ++i) c[i] = a[i] - b[i];
  return c;
}

RealCyclotomicRing::Elem RealCyclotomicRing::neg(const Elem& a) const {
  Elem c(degree_);
  for (unsigned i = 0; i < degree_; ++i) c[i] = -a[i];
  return c;
}

RealCyclotomicRing::Elem RealCyclotomicRing::mul(const Elem& a, const Elem& b) const {
  std::vector<Int> prod(2 * degree_ - 1 > 0 ? 2 * degree_ - 1 : 1, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  // Reduce by the monic minpoly.
  for (std::size_t t = prod.size(); t-- > degree_;) {
    if (prod[t] == 0) continue;
    Int c = prod[t];
    prod[t] = 0;
    for (unsigned j = 0; j < degree_; ++j) prod[t - degree_ + j] -= c * minpoly_[j];
  }
  Elem out(degree_);
  for (unsigned i = 0; i < degree_; ++i) out[i] = prod[i];
  return out;
}

bool RealCyclotomicRing::is_zero(const Elem& a) const {
  for (const Int& c : a)
    if (c != 0) return false;
  return true;
}

void RealCyclotomicRing::serialize(const Elem& a, std::string& out) const {
  for (const Int& c : a) append_coeff(c, out);
}

RealCyclotomicRing::Elem RealCyclotomicRing::deserialize(std::string_view in,
                                                         std::size_t& pos) const {
  Elem e(degree_);
  for (unsigned i = 0; i < degree_; ++i) e[i] = read_coeff(in, pos);
  return e;
}

std::string RealCyclotomicRing::to_display(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    if (!first) os << (a[i] > 0 ? " + " : " - ");
    Int mag = a[i] < 0 ? Int(-a[i]) : a[i];
    if (first && a[i] < 0) os << "-";
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << "y";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

RingMatrix ring_mat_identity(const RealCyclotomicRing& ring) {
  RingMatrix m;
  m.ring = &ring;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m.at(i, j) = (i == j) ? ring.one() : ring.zero();
  return m;
}

RingMatrix ring_mat_mul(const RingMatrix& a, const RingMatrix& b) {
  if (!a.ring || !b.ring || !same_ring(*a.ring, *b.ring))
    fail(ErrorKind::domain, "ring_mat_mul: operands belong to different rings");
  const RealCyclotomicRing& R = *a.ring;
  RingMatrix c;
  c.ring = a.ring;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      RealCyclotomicRing::Elem acc = R.zero();
      for (std::size_t k = 0; k < 3; ++k) {
        if (R.is_zero(a.at(i, k)) || R.is_zero(b.at(k, j))) continue;
        acc = R.add(acc, R.mul(a.at(i, k), b.at(k, j)));
      }
      c.at(i, j) = std::move(acc);
    }
  return c;
}

bool ring_mat_equal(const RingMatrix& a, const RingMatrix& b) {
  if (!a.ring || !b.ring || !same_ring(*a.ring, *b.ring)) return false;
  return a.e == b.e;
}

RealCyclotomicRing::Elem ring_mat_det(const RingMatrix& a) {
  const RealCyclotomicRing& R = *a.ring;
  auto m2 = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return R.sub(R.mul(a.at(r0, c0), a.at(r1, c1)), R.mul(a.at(r0, c1), a.at(r1, c0)));
  };
  RealCyclotomicRing::Elem det = R.mul(a.at(0, 0), m2(1, 2, 1, 2));
  det = R.sub(det, R.mul(a.at(0, 1), m2(1, 2, 0, 2)));
  det = R.add(det, R.mul(a.at(0, 2), m2(1, 2, 0, 1)));
  return det;
}

RingMatrix ring_mat_inverse_unimodular(const RingMatrix& a) {
  const RealCyclotomicRing& R = *a.ring;
  RealCyclotomicRing::Elem det = ring_mat_det(a);
  bool plus = R.equal(det, R.one());
  bool minus = R.equal(det, R.neg(R.one()));
  if (!plus && !minus)
    fail(ErrorKind::domain, "ring_mat_inverse_unimodular: determinant is not a unit +-1");
  RingMatrix inv;
  inv.ring = a.ring;
  auto m2 = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    return R.sub(R.mul(a.at(r0, c0), a.at(r1, c1)), R.mul(a.at(r0, c1), a.at(r1, c0)));
  };
  // inv = adj(a)/det with adj(a)_{ij} = (-1)^{i+j} * minor with row j, col i removed
  std::size_t rsel[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t r0 = rsel[j][0], r1 = rsel[j][1];
      std::size_t c0 = rsel[i][0], c1 = rsel[i][1];
      RealCyclotomicRing::Elem minor = m2(r0, r1, c0, c1);
      bool negate = ((i + j) % 2) == 1;
      if (negate) minor = R.neg(minor);
      if (minus) minor = R.neg(minor);
      inv.at(i, j) = std::move(minor);
    }
  return inv;
}

std::string ring_mat_key(const RingMatrix& a) {
  std::string out;
  out.reserve(9 * a.ring->degree() * 9);
  for (const auto& e : a.e) a.ring->serialize(e, out);
  return out;
}

RingMatrix ring_mat_from_key(const RealCyclotomicRing& ring, std::string_view key) {
  RingMatrix m;
  m.ring = &ring;
  std::size_t pos = 0;
  for (auto& e : m.e) e = ring.deserialize(key, pos);
  if (pos != key.size()) fail(ErrorKind::parse, "ring key: trailing bytes");
  return m;
}

}  // namespace growthlab
