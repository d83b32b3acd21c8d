#pragma once

#include <optional>

#include "growthlab/engine.hpp"

namespace growthlab {

struct BallOptions {
  std::size_t memory_cap = 10000000;  // elements enumerated before truncation
  int threads = 1;
};

struct BallTable {
  std::vector<std::string> generating_set;  // echo of the input words
  std::vector<std::uint64_t> ball;          // |B(0)| .. |B(n)|
  std::vector<std::uint64_t> sphere;        // sphere sizes, same indexing
  bool truncated = false;                   // memory cap hit, table partial
  std::optional<std::size_t> closed_at;     // first level with empty sphere
};

/// Exact ball sizes of the subgroup/submonoid generated by the given words,
/// by breadth-first search with canonical-key deduplication. For confluent
/// rewriting engines generated by the full letter set, spheres are separated
/// by geodesic key length and only the current wave is retained, which keeps
/// memory linear in the largest sphere.
BallTable ball_sizes(const GroupEngine& e, const std::vector<std::string>& generating_words,
                     std::size_t n_max, const BallOptions& opts = {});

/// Cumulative sorted ball bases: basis(n) lists the canonical keys of all
/// elements of B(n), earlier levels forming a prefix (each new wave sorted).
/// Used to build inclusion-map filtrations and module bases.
struct BallBasis {
  std::vector<std::string> keys;        // cumulative, wave by wave
  std::vector<std::size_t> level_end;   // keys[0 .. level_end[n]) = B(n)
  bool truncated = false;
};
BallBasis ball_basis(const GroupEngine& e, const std::vector<std::string>& generating_words,
                     std::size_t n_max, const BallOptions& opts = {});

}  // namespace growthlab
