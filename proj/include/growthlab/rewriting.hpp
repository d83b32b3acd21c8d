#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "growthlab/presentation.hpp"

namespace growthlab {

namespace detail {
struct KbBuilder;
}

struct KbCaps {
  std::size_t max_rules = 20000;
  std::size_t max_len = 64;           // cap on rule side length
  std::size_t max_iterations = 2000000;
  std::size_t max_queue = 5000000;
};

struct KbStats {
  std::size_t iterations = 0;
  std::size_t equations_processed = 0;
  std::size_t rule_count = 0;
  std::size_t max_rule_len = 0;
  bool hit_cap = false;
};

// Shortlex string rewriting system for a finitely presented group. The
// alphabet interleaves each generator with its formal inverse (a < A < b < B)
// per the presentation's generator order. When `confluent` is set the system
// was completed with every critical pair resolved, so normal forms decide the
// word problem; an incomplete system still rewrites but equality of normal
// forms is only a sufficient condition for equality in the group.
class RewritingSystem {
public:
  RewritingSystem() = default;

  const std::vector<char>& alphabet() const { return alphabet_; }
  bool confluent() const { return confluent_; }
  const KbStats& stats() const { return stats_; }
  const std::vector<std::pair<std::string, std::string>>& rules() const { return rules_; }

  int letter_rank(char c) const;  // input error for unknown letters
  bool shortlex_less(std::string_view a, std::string_view b) const;

  /// Irreducible form of an arbitrary word over the alphabet.
  std::string rewrite(std::string_view word) const;
  /// Same, where `prefix` is already known to be irreducible.
  std::string rewrite_appended(std::string_view prefix, std::string_view suffix) const;

  struct SvHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };
  struct SvEq {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const noexcept { return a == b; }
  };

private:
  friend struct detail::KbBuilder;

  void index_rules();

  std::vector<char> alphabet_;
  std::array<int, 256> rank_{};
  std::vector<std::pair<std::string, std::string>> rules_;
  bool confluent_ = false;
  KbStats stats_;

  std::unordered_map<std::string, std::string, SvHash, SvEq> lhs_map_;
  std::vector<std::size_t> lhs_lengths_;  // distinct, ascending
};

/// Shortlex Knuth-Bendix completion with interreduction. Hitting a cap yields
/// an incomplete system (confluent flag false), not a failure.
RewritingSystem knuth_bendix(const FpGroupPresentation& p, const KbCaps& caps = {});

}  // namespace growthlab
