#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "growthlab/f2_matrix.hpp"

namespace growthlab {

// Filtered directed system sampled at finitely many breakpoints
// t0 < t1 < ... < tm. The system is declared constant (identity maps)
// after tm, so its direct limit is the last space. Below t0 the space
// is zero. Step convention is right-continuous.
struct TabulatedFds {
  std::vector<double> levels;   // strictly increasing, non-negative
  std::vector<std::size_t> dims;
  std::vector<F2Matrix> maps;   // maps[i] : V_{t_i} -> V_{t_{i+1}}, shape dims[i+1] x dims[i]

  TabulatedFds() = default;
  TabulatedFds(std::vector<double> levels, std::vector<std::size_t> dims,
               std::vector<F2Matrix> maps);

  std::size_t breakpoint_count() const { return levels.size(); }
  /// Index of the breakpoint at or below t, or nullopt when t < t0.
  std::optional<std::size_t> index_at(double t) const;
};

// Infinite system over integer levels 0,1,2,... produced by a pure rule.
// Levels are cached on first evaluation. With the monotone flag set every
// step map must be an injective inclusion; this is validated lazily at
// access time (up to a size cutoff of 2048 columns, above which the rank
// check is skipped).
class StreamedFds {
public:
  struct Level {
    std::size_t dim = 0;
    std::vector<std::string> basis;  // optional labels, may be empty
    F2Matrix step;                   // to the next level: dim(n+1) x dim(n)
  };
  using Rule = std::function<Level(std::size_t)>;

  StreamedFds() = default;
  StreamedFds(Rule rule, bool monotone) : rule_(std::move(rule)), monotone_(monotone) {}

  bool monotone() const { return monotone_; }
  std::size_t dim(std::size_t n) const { return level(n).dim; }
  const Level& level(std::size_t n) const;

private:
  Rule rule_;
  bool monotone_ = false;
  mutable std::vector<Level> cache_;
};

/// Materialize integer levels 0..n_max of a streamed system.
TabulatedFds tabulate(const StreamedFds& s, std::size_t n_max);

struct FdsElement {
  std::size_t level_index = 0;  // breakpoint index
  F2Vec vec;                    // coordinates in V at that breakpoint
};

enum class GrowthMethod { slope, last_ratio };
const char* growth_method_name(GrowthMethod m);

struct GrowthEstimate {
  double rate = 0.0;                        // >= 0
  std::pair<double, double> window{0, 0};   // requested window (level values)
  std::pair<double, double> fit_window{0, 0};  // samples actually used
  GrowthMethod method = GrowthMethod::slope;
  std::optional<double> certified_upper;    // Fekete bound when submultiplicative
  std::vector<std::uint64_t> d_sequence;    // raw dimensions used
};

// --- operations -----------------------------------------------------------

std::size_t dim_at(const TabulatedFds& v, double t);
std::size_t dim_at(const StreamedFds& v, double t);

/// Composed persistence matrix between level values s <= t (order error
/// otherwise). Values past the last breakpoint refer to the constant tail.
F2Matrix map_between(const TabulatedFds& v, double s, double t);
F2Matrix map_between(const StreamedFds& v, std::size_t s, std::size_t t);

/// Least breakpoint value at which the class of x in the direct limit is hit.
/// The zero class is hit everywhere and reports the first breakpoint.
double spectral_number(const TabulatedFds& v, const FdsElement& x);

/// d_t = dim of the image of V_t in the direct limit, per breakpoint.
std::vector<std::uint64_t> d_sequence(const TabulatedFds& v);

GrowthEstimate growth_rate(const std::vector<std::uint64_t>& d, const std::vector<double>& ts,
                           std::pair<double, double> window, GrowthMethod method,
                           bool submultiplicative = false);
/// Abscissae default to 0,1,2,...
GrowthEstimate growth_rate(const std::vector<std::uint64_t>& d, std::pair<double, double> window,
                           GrowthMethod method, bool submultiplicative = false);
GrowthEstimate growth_rate(const TabulatedFds& v, std::pair<double, double> window,
                           GrowthMethod method);
GrowthEstimate growth_rate(const StreamedFds& v, std::pair<double, double> window,
                           GrowthMethod method);

TabulatedFds dilate(const TabulatedFds& v, long eta);
StreamedFds dilate(const StreamedFds& v, long eta);

// Uniform view used by the interleaving checkers: integer levels
// 0..max_level with the constant-tail convention past the end.
class LevelView {
public:
  explicit LevelView(const TabulatedFds& v);                  // requires integral breakpoints
  LevelView(const StreamedFds& v, std::size_t max_level);

  std::size_t max_level() const { return max_level_; }
  std::size_t dim(std::size_t n) const;
  F2Matrix map(std::size_t s, std::size_t t) const;  // composed, clamped

private:
  const TabulatedFds* tab_ = nullptr;
  const StreamedFds* str_ = nullptr;
  std::size_t max_level_ = 0;
};

// Per-level family of maps; entries at or below the cutoff may be absent
// (asymptotic morphism). Index = integer level.
using MapFamily = std::vector<std::optional<F2Matrix>>;

struct CheckReport {
  bool ok = true;
  std::string violation;        // empty when ok
  long at_s = -1, at_t = -1;    // first failing square / composite level
};

/// Verifies f_t ∘ π_{s→t} = π'_{s→t} ∘ f_s on all sampled cutoff < s < t.
CheckReport check_morphism(const LevelView& v, const LevelView& w, const MapFamily& f,
                           long cutoff);

struct InterleavingCandidate {
  long eta1 = 1, eta2 = 1;
  long cutoff = 0;
  MapFamily f;  // f[t] : V_t -> W_{eta1 * t}
  MapFamily g;  // g[t] : W_t -> V_{eta2 * t}
};

/// Verifies both asymptotic-morphism squares and the two composite
/// identities g(eta1)∘f = π_V[eta1*eta2], f(eta2)∘g = π_W[eta1*eta2].
CheckReport check_interleaving(const LevelView& v, const LevelView& w,
                               const InterleavingCandidate& cand);

/// Weak variant: level-dependent stretches sigma(t)*t instead of constant
/// eta*t. sigma vectors are indexed by level; every entry must be >= 1.
CheckReport check_weak_interleaving(const LevelView& v, const LevelView& w,
                                    const std::vector<long>& sigma1,
                                    const std::vector<long>& sigma2, const MapFamily& f,
                                    const MapFamily& g, long cutoff);

}  // namespace growthlab
