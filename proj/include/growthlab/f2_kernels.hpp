#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Packed GF(2) word kernels. All row-level arithmetic in the library funnels
// through this table so that a scalar reference implementation and the SIMD
// variants can be swapped and equivalence-tested at runtime.
//
// Scalar kernels are the semantic reference. AVX2 (x86-64) and NEON (aarch64)
// variants are compiled when the target supports them and selected at runtime
// from CPU feature detection; `force()` pins a specific implementation, which
// the tests use to cross-check every available variant against the scalar one.

namespace growthlab::f2kern {

enum class Isa { scalar, avx2, neon };

struct Ops {
  // dst[i] ^= src[i] for i < nwords
  void (*xor_rows)(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords);
  // dst[i] = a[i] ^ b[i]
  void (*xor_rows_to)(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t nwords);
  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords);
  bool (*is_zero)(const std::uint64_t* a, std::size_t nwords);
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t nwords);
  Isa isa;
  const char* name;
};

// Currently active implementation (auto-detected on first use).
const Ops& active();

// The scalar reference table, always available.
const Ops& scalar();

// All tables usable on this machine (scalar first).
std::vector<const Ops*> available();

// Pin an implementation; throws Error(domain) if unsupported on this CPU.
void force(Isa isa);

// Return to auto-detection.
void reset();

}  // namespace growthlab::f2kern
