#include "growthlab/f2_kernels.hpp"

#include <atomic>
#include <bit>

#include "growthlab/error.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define GROWTHLAB_X86 1
#include <immintrin.h>
#else
#define GROWTHLAB_X86 0
#endif

#if defined(__aarch64__)
#define GROWTHLAB_NEON 1
#include <arm_neon.h>
#else
#define GROWTHLAB_NEON 0
#endif

namespace growthlab::f2kern {

namespace {

// ---- scalar reference ----

void xor_rows_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void xor_rows_to_scalar(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool is_zero_scalar(const std::uint64_t* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

constexpr Ops kScalar = {xor_rows_scalar, xor_rows_to_scalar, equal_scalar,
                         is_zero_scalar,  popcount_scalar,    Isa::scalar,
                         "scalar"};

#if GROWTHLAB_X86

// ---- AVX2 ----

__attribute__((target("avx2"))) void xor_rows_avx2(std::uint64_t* dst, const std::uint64_t* src,
                                                   std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

__attribute__((target("avx2"))) void xor_rows_to_avx2(std::uint64_t* dst, const std::uint64_t* a,
                                                      const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(x, y));
  }
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

__attribute__((target("avx2"))) bool equal_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                                std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i d = _mm256_xor_si256(x, y);
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

__attribute__((target("avx2"))) bool is_zero_avx2(const std::uint64_t* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != 0) return false;
  return true;
}

// 64-bit POPCNT on the widened loop; AVX2 has no vector popcount for u64.
__attribute__((target("popcnt"))) std::size_t popcount_popcnt(const std::uint64_t* a,
                                                              std::size_t n) {
  std::uint64_t c0 = 0, c1 = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    c0 += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i]));
    c1 += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i + 1]));
  }
  if (i < n) c0 += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i]));
  return static_cast<std::size_t>(c0 + c1);
}

constexpr Ops kAvx2 = {xor_rows_avx2, xor_rows_to_avx2, equal_avx2,
                       is_zero_avx2,  popcount_popcnt,  Isa::avx2,
                       "avx2"};

bool avx2_supported() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt"); }

#endif  // GROWTHLAB_X86

#if GROWTHLAB_NEON

void xor_rows_neon(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t d = vld1q_u64(dst + i);
    uint64x2_t s = vld1q_u64(src + i);
    vst1q_u64(dst + i, veorq_u64(d, s));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

void xor_rows_to_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst + i, veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

constexpr Ops kNeon = {xor_rows_neon, xor_rows_to_neon, equal_scalar,
                       is_zero_scalar, popcount_scalar, Isa::neon,
                       "neon"};

#endif  // GROWTHLAB_NEON

std::atomic<const Ops*> g_forced{nullptr};

const Ops* detect() {
#if GROWTHLAB_X86
  if (avx2_supported()) return &kAvx2;
#endif
#if GROWTHLAB_NEON
  return &kNeon;
#endif
  return &kScalar;
}

}  // namespace

const Ops& scalar() { return kScalar; }

const Ops& active() {
  const Ops* f = g_forced.load(std::memory_order_acquire);
  if (f) return *f;
  static const Ops* detected = detect();
  return *detected;
}

std::vector<const Ops*> available() {
  std::vector<const Ops*> v{&kScalar};
#if GROWTHLAB_X86
  if (avx2_supported()) v.push_back(&kAvx2);
#endif
#if GROWTHLAB_NEON
  v.push_back(&kNeon);
#endif
  return v;
}

void force(Isa isa) {
  for (const Ops* o : available()) {
    if (o->isa == isa) {
      g_forced.store(o, std::memory_order_release);
      return;
    }
  }
  fail(ErrorKind::domain, "requested f2 kernel ISA not supported on this CPU");
}

void reset() { g_forced.store(nullptr, std::memory_order_release); }

}  // namespace growthlab::f2kern
