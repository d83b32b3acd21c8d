#pragma once

#include <memory>
#include <set>

#include "growthlab/balls.hpp"
#include "growthlab/fds.hpp"

namespace growthlab {

// Element of the group algebra F2[G]: a finite support of canonical group
// element keys (coefficients live in F2, so the support is the element).
struct GroupAlgebraElement {
  const GroupEngine* engine = nullptr;
  std::set<std::string> support;

  bool is_zero() const { return support.empty(); }
};

GroupAlgebraElement ga_zero(const GroupEngine& e);
GroupAlgebraElement ga_identity(const GroupEngine& e);
GroupAlgebraElement ga_from_words(const GroupEngine& e, const std::vector<std::string>& words);
/// Sum = symmetric difference of supports (characteristic 2).
GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
/// Convolution product via engine composition.
GroupAlgebraElement multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
bool ga_equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
std::vector<std::string> ga_display(const GroupAlgebraElement& a);

// Group algebra filtered by word length: the level of a group element is its
// word length over the engine's registered letters, the level of a sum is the
// max over the support, and level(0) = 0.
class FilteredAlgebra {
public:
  FilteredAlgebra(std::shared_ptr<GroupEngine> engine, std::vector<GroupAlgebraElement> s);
  static FilteredAlgebra from_words(std::shared_ptr<GroupEngine> engine,
                                    const std::vector<std::string>& words);

  const GroupEngine& engine() const { return *engine_; }
  std::shared_ptr<GroupEngine> engine_ptr() const { return engine_; }
  const std::vector<GroupAlgebraElement>& generating_set() const { return s_; }

  std::size_t level_of_key(const std::string& key) const;
  /// rho(S) = max filtration level over S; 0 for empty S.
  std::size_t rho() const;

  /// dim of the level-<= t part of the algebra = |B(t)| over the letters.
  std::uint64_t level_dim(std::size_t t) const;
  /// Canonical basis (ball basis over the letters) of the level-<= t part.
  std::vector<std::string> basis_to(std::size_t t) const;

private:
  std::shared_ptr<GroupEngine> engine_;
  std::vector<GroupAlgebraElement> s_;
  mutable std::mutex mutex_;
  mutable BallTable size_cache_;
  mutable BallBasis basis_cache_;
  mutable std::size_t size_cache_max_ = 0;
  mutable std::size_t basis_cache_max_ = 0;
};

std::size_t filtration_level(const FilteredAlgebra& alg, const GroupAlgebraElement& x);

// dim W_S(n) for n = 0..n_max (index 0 is the empty span). In the basis case
// (every generator a single group element) dimensions are set cardinalities;
// otherwise an incremental sparse F2 span over products is maintained.
struct WsTable {
  std::vector<std::uint64_t> dims;
  std::vector<std::vector<std::string>> new_basis;  // per level, sorted labels
  bool basis_case = false;
  bool truncated = false;
};
WsTable ws_spans(const FilteredAlgebra& alg, std::size_t n_max, const BallOptions& opts = {});

struct AlgebraicGrowthResult {
  std::vector<std::uint64_t> w_dims;  // indexed by level, [0] = 0
  GrowthEstimate slope;
  GrowthEstimate last_ratio;
  std::size_t rho = 0;
  bool truncated = false;
};
AlgebraicGrowthResult algebraic_growth(const FilteredAlgebra& alg, std::size_t n_max,
                                       const BallOptions& opts = {});

struct SubadditivityReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string counterexample;  // description if any
};
/// Random pairs x,y of algebra elements: level(x*y) <= level(x) + level(y).
SubadditivityReport check_subadditivity(const FilteredAlgebra& alg, std::size_t sample_count,
                                        std::size_t max_level, std::uint64_t seed = 12345);

// Modules over the algebra: a copy of the algebra itself (optionally with all
// levels shifted up by a constant) or an explicitly tabulated f.d.s. whose
// limit space carries per-generator action matrices. The module level of a
// tabulated element is its spectral number in the f.d.s.
class FilteredModule {
public:
  enum class Kind { self, self_shift, tabulated };

  static FilteredModule self();
  static FilteredModule self_shift(long shift);
  static FilteredModule tabulated(TabulatedFds fds,
                                  std::unordered_map<std::string, F2Matrix> action_by_key,
                                  std::optional<F2Matrix> default_action);
  /// One-dimensional module where every group element acts as the identity.
  static FilteredModule augmentation();

  Kind kind() const { return kind_; }
  long shift() const { return shift_; }
  const TabulatedFds& fds() const { return *fds_; }
  const F2Matrix& action_of(const std::string& key) const;

private:
  FilteredModule() = default;
  Kind kind_ = Kind::self;
  long shift_ = 0;
  std::optional<TabulatedFds> fds_;
  std::unordered_map<std::string, F2Matrix> action_;
  std::optional<F2Matrix> default_action_;
};

// Module elements: `alg` is used for self/self_shift, `vec` (coordinates in
// the last space of the tabulated f.d.s.) for tabulated modules.
struct ModuleElement {
  GroupAlgebraElement alg;
  F2Vec vec;
};
ModuleElement module_identity_like(const FilteredAlgebra& alg, const FilteredModule& m);
double module_level(const FilteredAlgebra& alg, const FilteredModule& m, const ModuleElement& x);
ModuleElement module_act(const FilteredAlgebra& alg, const FilteredModule& m,
                         const GroupAlgebraElement& a, const ModuleElement& x);

struct StretchReport {
  std::size_t checked_level = 0;
  bool injective = false;
  std::optional<GroupAlgebraElement> witness;  // nonzero kernel element, if any
  std::string note;
};
/// Is a -> a*m0 injective on the level-<= level part of the algebra?
StretchReport stretching_check(const FilteredAlgebra& alg, const FilteredModule& m,
                               const ModuleElement& m0, std::size_t level);

struct GrowthCompareRow {
  std::size_t t;
  std::uint64_t d_v, d_w;
};
struct GrowthCompareReport {
  bool rejected = false;  // stretching precondition failed
  StretchReport stretch;
  bool ok = false;
  double m0_level = 0;
  std::vector<GrowthCompareRow> rows;
  std::optional<std::size_t> first_violation;
};
/// Exact finite-level form of the stretched-module growth comparison:
/// dim{a : level(a) <= t} <= dim{m : level(m) <= t + level(m0)} on the window.
GrowthCompareReport module_growth_compare(const FilteredAlgebra& alg, const FilteredModule& m,
                                          const ModuleElement& m0,
                                          std::pair<std::size_t, std::size_t> window);

struct UniformFamilyReport {
  bool ok = false;
  std::optional<std::size_t> failing_member;
  std::string reason;
  std::vector<std::uint64_t> d_v;     // per t in window
  std::vector<std::uint64_t> inf_dw;  // inf over members of d^{W(i)}_{t+B}
};
/// Uniformly stretched family: every stretching element within level bound B,
/// and d_t^V <= d^{W(i)}_{t+B} for every member and window level.
UniformFamilyReport uniform_family_check(const FilteredAlgebra& alg,
                                         const std::vector<std::pair<FilteredModule, ModuleElement>>& members,
                                         std::size_t bound,
                                         std::pair<std::size_t, std::size_t> window);

/// The ball filtration of (A,S) as a monotone streamed f.d.s.: level-n space
/// spans W_S(n), maps are inclusions. Its d-sequence equals the w_dims of
/// algebraic_growth entrywise.
StreamedFds fds_from_ball_filtration(const FilteredAlgebra& alg, const BallOptions& opts = {});

}  // namespace growthlab
