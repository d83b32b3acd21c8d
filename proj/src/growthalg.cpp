#include "growthlab/growthalg.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

namespace growthlab {

namespace {

void require_same_engine(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  if (a.engine != b.engine)
    fail(ErrorKind::domain, "group algebra: elements belong to different engines");
}

std::string support_blob(const GroupAlgebraElement& a) {
  std::string s;
  for (const std::string& k : a.support) {
    s += k;
    s.push_back('\x1f');
  }
  return s;
}

}  // namespace

GroupAlgebraElement ga_zero(const GroupEngine& e) { return GroupAlgebraElement{&e, {}}; }

GroupAlgebraElement ga_identity(const GroupEngine& e) {
  return GroupAlgebraElement{&e, {e.identity_key()}};
}

GroupAlgebraElement ga_from_words(const GroupEngine& e, const std::vector<std::string>& words) {
  GroupAlgebraElement x{&e, {}};
  for (const std::string& w : words) {
    std::string k = e.normalize(w);
    auto it = x.support.find(k);
    if (it == x.support.end())
      x.support.insert(std::move(k));
    else
      x.support.erase(it);  // characteristic 2
  }
  return x;
}

GroupAlgebraElement ga_add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  require_same_engine(a, b);
  GroupAlgebraElement out{a.engine, {}};
  std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(),
                                b.support.end(), std::inserter(out.support, out.support.end()));
  return out;
}

GroupAlgebraElement multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  require_same_engine(a, b);
  GroupAlgebraElement out{a.engine, {}};
  for (const std::string& ka : a.support)
    for (const std::string& kb : b.support) {
      std::string k = a.engine->compose(ka, kb);
      auto it = out.support.find(k);
      if (it == out.support.end())
        out.support.insert(std::move(k));
      else
        out.support.erase(it);
    }
  return out;
}

bool ga_equal(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  return a.engine == b.engine && a.support == b.support;
}

std::vector<std::string> ga_display(const GroupAlgebraElement& a) {
  std::vector<std::string> out;
  for (const std::string& k : a.support) out.push_back(a.engine->display(k));
  return out;
}

FilteredAlgebra::FilteredAlgebra(std::shared_ptr<GroupEngine> engine,
                                 std::vector<GroupAlgebraElement> s)
    : engine_(std::move(engine)), s_(std::move(s)) {
  for (const auto& x : s_)
    if (x.engine != engine_.get())
      fail(ErrorKind::domain, "FilteredAlgebra: generating element from a different engine");
}

FilteredAlgebra FilteredAlgebra::from_words(std::shared_ptr<GroupEngine> engine,
                                            const std::vector<std::string>& words) {
  std::vector<GroupAlgebraElement> s;
  for (const std::string& w : words) s.push_back(ga_from_words(*engine, {w}));
  return FilteredAlgebra(std::move(engine), std::move(s));
}

std::size_t FilteredAlgebra::level_of_key(const std::string& key) const {
  return engine_->word_length(key);
}

std::size_t FilteredAlgebra::rho() const {
  std::size_t r = 0;
  for (const auto& x : s_) r = std::max(r, filtration_level(*this, x));
  return r;
}

std::uint64_t FilteredAlgebra::level_dim(std::size_t t) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (t == 0) return 1;
  if (size_cache_max_ < t || size_cache_.ball.empty()) {
    BallOptions opts;
    opts.memory_cap = 1ull << 40;  // level queries are explicit; no silent truncation
    size_cache_ = ball_sizes(*engine_, engine_->default_generating_set(), t, opts);
    size_cache_max_ = t;
  }
  std::size_t idx = std::min(t, size_cache_.ball.size() - 1);
  return size_cache_.ball[idx];
}

std::vector<std::string> FilteredAlgebra::basis_to(std::size_t t) const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (basis_cache_max_ < t || basis_cache_.keys.empty()) {
    BallOptions opts;
    opts.memory_cap = 1ull << 40;
    basis_cache_ = ball_basis(*engine_, engine_->default_generating_set(), t, opts);
    basis_cache_max_ = t;
  }
  std::size_t idx = std::min(t, basis_cache_.level_end.size() - 1);
  return {basis_cache_.keys.begin(),
          basis_cache_.keys.begin() + static_cast<long>(basis_cache_.level_end[idx])};
}

std::size_t filtration_level(const FilteredAlgebra& alg, const GroupAlgebraElement& x) {
  std::size_t lvl = 0;
  for (const std::string& k : x.support) lvl = std::max(lvl, alg.level_of_key(k));
  return lvl;
}

WsTable ws_spans(const FilteredAlgebra& alg, std::size_t n_max, const BallOptions& opts) {
  WsTable out;
  out.dims.push_back(0);
  out.new_basis.emplace_back();
  const auto& s = alg.generating_set();
  if (s.empty()) {
    for (std::size_t n = 1; n <= n_max; ++n) {
      out.dims.push_back(0);
      out.new_basis.emplace_back();
    }
    return out;
  }

  out.basis_case =
      std::all_of(s.begin(), s.end(), [](const auto& x) { return x.support.size() == 1; });

  if (out.basis_case) {
    std::vector<std::string> skeys;
    {
      std::unordered_set<std::string> dedup;
      for (const auto& x : s)
        if (dedup.insert(*x.support.begin()).second) skeys.push_back(*x.support.begin());
    }
    std::unordered_set<std::string> seen;
    std::vector<std::string> frontier;
    std::uint64_t total = 0;
    // wave 1 = S itself
    for (const auto& k : skeys)
      if (seen.insert(k).second) frontier.push_back(k);
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (n > 1) {
        std::vector<std::string> next;
        for (const std::string& base : frontier)
          for (const std::string& k0 : skeys) {
            std::string k = alg.engine().compose(base, k0);
            if (seen.insert(k).second) next.push_back(std::move(k));
          }
        frontier = std::move(next);
      }
      std::vector<std::string> wave = frontier;
      std::sort(wave.begin(), wave.end());
      total += wave.size();
      out.dims.push_back(total);
      out.new_basis.push_back(std::move(wave));
      if (total > opts.memory_cap) {
        out.truncated = true;
        break;
      }
    }
    return out;
  }

  // General case: incremental sparse F2 span over products of <= n factors.
  std::unordered_map<std::string, std::size_t> key_index;  // group element -> coordinate
  auto coord = [&key_index](const std::string& k) {
    auto it = key_index.find(k);
    if (it != key_index.end()) return it->second;
    std::size_t idx = key_index.size();
    key_index.emplace(k, idx);
    return idx;
  };
  // pivot row map: leading coordinate -> reduced sparse row (sorted indices)
  std::map<std::size_t, std::vector<std::size_t>> pivots;
  auto reduce = [&pivots](std::vector<std::size_t> row) {
    std::sort(row.begin(), row.end());
    for (;;) {
      if (row.empty()) return row;
      auto it = pivots.find(row.front());
      if (it == pivots.end()) return row;
      std::vector<std::size_t> merged;
      std::set_symmetric_difference(row.begin(), row.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(merged));
      row = std::move(merged);
    }
  };

  std::vector<GroupAlgebraElement> frontier;
  std::unordered_set<std::string> frontier_seen;  // dedup of element supports per history
  std::uint64_t dim = 0;
  for (const auto& x : s) {
    if (x.is_zero()) continue;
    if (frontier_seen.insert(support_blob(x)).second) frontier.push_back(x);
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      std::vector<GroupAlgebraElement> next;
      for (const auto& base : frontier)
        for (const auto& x : s) {
          GroupAlgebraElement prod = multiply(base, x);
          if (prod.is_zero()) continue;
          if (frontier_seen.insert(support_blob(prod)).second) next.push_back(std::move(prod));
        }
      frontier = std::move(next);
    }
    std::vector<std::string> labels;
    for (const auto& el : frontier) {
      std::vector<std::size_t> row;
      for (const std::string& k : el.support) row.push_back(coord(k));
      row = reduce(std::move(row));
      if (row.empty()) continue;
      std::size_t lead = row.front();
      pivots.emplace(lead, std::move(row));
      ++dim;
      std::ostringstream lab;
      lab << "w" << n << "." << dim;
      labels.push_back(lab.str());
    }
    std::sort(labels.begin(), labels.end());
    out.dims.push_back(dim);
    out.new_basis.push_back(std::move(labels));
    if (key_index.size() > opts.memory_cap || frontier.size() > opts.memory_cap) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

AlgebraicGrowthResult algebraic_growth(const FilteredAlgebra& alg, std::size_t n_max,
                                       const BallOptions& opts) {
  if (n_max < 1) fail(ErrorKind::domain, "algebraic_growth: n_max must be >= 1");
  AlgebraicGrowthResult res;
  res.rho = alg.rho();
  WsTable ws = ws_spans(alg, n_max, opts);
  res.w_dims = ws.dims;
  res.truncated = ws.truncated;
  std::pair<double, double> window{1.0, static_cast<double>(res.w_dims.size() - 1)};
  res.slope = growth_rate(res.w_dims, window, GrowthMethod::slope);
  res.last_ratio = growth_rate(res.w_dims, window, GrowthMethod::last_ratio);
  return res;
}

SubadditivityReport check_subadditivity(const FilteredAlgebra& alg, std::size_t sample_count,
                                        std::size_t max_level, std::uint64_t seed) {
  SubadditivityReport rep;
  std::mt19937_64 rng(seed);
  const std::string& letters = alg.engine().letters();
  auto random_element = [&]() {
    std::uniform_int_distribution<std::size_t> nterms(1, 3);
    std::uniform_int_distribution<std::size_t> nlen(0, max_level);
    std::uniform_int_distribution<std::size_t> nletter(0, letters.size() - 1);
    std::vector<std::string> words;
    std::size_t terms = nterms(rng);
    for (std::size_t i = 0; i < terms; ++i) {
      std::string w;
      std::size_t len = nlen(rng);
      for (std::size_t j = 0; j < len; ++j) w.push_back(letters[nletter(rng)]);
      words.push_back(std::move(w));
    }
    return ga_from_words(alg.engine(), words);
  };
  for (std::size_t i = 0; i < sample_count; ++i) {
    GroupAlgebraElement x = random_element();
    GroupAlgebraElement y = random_element();
    std::size_t lx = filtration_level(alg, x);
    std::size_t ly = filtration_level(alg, y);
    std::size_t lxy = filtration_level(alg, multiply(x, y));
    ++rep.checked;
    if (lxy > lx + ly) {
      rep.ok = false;
      std::ostringstream os;
      os << "level(x*y) = " << lxy << " > " << lx << " + " << ly;
      rep.counterexample = os.str();
      return rep;
    }
  }
  return rep;
}

FilteredModule FilteredModule::self() {
  FilteredModule m;
  m.kind_ = Kind::self;
  return m;
}

FilteredModule FilteredModule::self_shift(long shift) {
  if (shift < 0) fail(ErrorKind::domain, "self_shift: shift must be non-negative");
  FilteredModule m;
  m.kind_ = Kind::self_shift;
  m.shift_ = shift;
  return m;
}

FilteredModule FilteredModule::tabulated(TabulatedFds fds,
                                         std::unordered_map<std::string, F2Matrix> action_by_key,
                                         std::optional<F2Matrix> default_action) {
  FilteredModule m;
  m.kind_ = Kind::tabulated;
  std::size_t dim = fds.dims.back();
  for (const auto& [k, mat] : action_by_key)
    if (mat.rows() != dim || mat.cols() != dim)
      fail(ErrorKind::shape, "tabulated module: action matrix must act on the limit space");
  if (default_action && (default_action->rows() != dim || default_action->cols() != dim))
    fail(ErrorKind::shape, "tabulated module: default action matrix must act on the limit space");
  m.fds_ = std::move(fds);
  m.action_ = std::move(action_by_key);
  m.default_action_ = std::move(default_action);
  return m;
}

FilteredModule FilteredModule::augmentation() {
  TabulatedFds fds({0.0}, {1}, {});
  return tabulated(std::move(fds), {}, F2Matrix::identity(1));
}

const F2Matrix& FilteredModule::action_of(const std::string& key) const {
  auto it = action_.find(key);
  if (it != action_.end()) return it->second;
  if (default_action_) return *default_action_;
  fail(ErrorKind::input, "tabulated module: no action supplied for a group element");
}

ModuleElement module_identity_like(const FilteredAlgebra& alg, const FilteredModule& m) {
  ModuleElement e;
  if (m.kind() == FilteredModule::Kind::tabulated) {
    e.vec = F2Vec(m.fds().dims.back());
    if (e.vec.size() > 0) e.vec.set(0, true);
  } else {
    e.alg = ga_identity(alg.engine());
  }
  return e;
}

double module_level(const FilteredAlgebra& alg, const FilteredModule& m, const ModuleElement& x) {
  switch (m.kind()) {
    case FilteredModule::Kind::self:
      return static_cast<double>(filtration_level(alg, x.alg));
    case FilteredModule::Kind::self_shift: {
      if (x.alg.is_zero()) return 0.0;
      return static_cast<double>(filtration_level(alg, x.alg) + m.shift());
    }
    case FilteredModule::Kind::tabulated: {
      FdsElement el{m.fds().levels.size() - 1, x.vec};
      return spectral_number(m.fds(), el);
    }
  }
  fail(ErrorKind::domain, "module_level: unreachable");
}

ModuleElement module_act(const FilteredAlgebra& alg, const FilteredModule& m,
                         const GroupAlgebraElement& a, const ModuleElement& x) {
  (void)alg;
  ModuleElement out;
  if (m.kind() == FilteredModule::Kind::tabulated) {
    out.vec = F2Vec(m.fds().dims.back());
    for (const std::string& k : a.support) {
      F2Vec part = f2_mul(m.action_of(k), x.vec);
      out.vec.xor_with(part);
    }
    return out;
  }
  out.alg = multiply(a, x.alg);
  return out;
}

StretchReport stretching_check(const FilteredAlgebra& alg, const FilteredModule& m,
                               const ModuleElement& m0, std::size_t level) {
  StretchReport rep;
  rep.checked_level = level;
  std::vector<std::string> basis = alg.basis_to(level);

  bool tab = m.kind() == FilteredModule::Kind::tabulated;
  bool m0_zero = tab ? m0.vec.is_zero() : m0.alg.is_zero();
  if (m0_zero) {
    rep.injective = false;
    rep.note = "m0 is zero, so every basis element lies in the kernel";
    GroupAlgebraElement w{&alg.engine(), {basis.front()}};
    rep.witness = w;
    return rep;
  }

  if (!tab && m0.alg.support.size() == 1) {
    // a -> a*m0 maps basis elements to single group elements; by the group
    // law the images are pairwise distinct, verified here as a sanity check.
    const std::string& k0 = *m0.alg.support.begin();
    std::unordered_set<std::string> images;
    for (const std::string& b : basis) {
      if (!images.insert(alg.engine().compose(b, k0)).second) {
        rep.injective = false;
        rep.note = "duplicate image (engine violates the group law?)";
        return rep;
      }
    }
    rep.injective = true;
    return rep;
  }

  // Dense matrix of a -> a*m0 over the chosen basis.
  std::size_t cols = basis.size();
  std::size_t rows;
  std::vector<F2Vec> columns(cols);
  if (tab) {
    rows = m.fds().dims.back();
    GroupAlgebraElement g{&alg.engine(), {}};
    for (std::size_t j = 0; j < cols; ++j) {
      g.support = {basis[j]};
      columns[j] = module_act(alg, m, g, m0).vec;
    }
  } else {
    std::map<std::string, std::size_t> row_index;
    std::vector<std::set<std::string>> supports(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      GroupAlgebraElement g{&alg.engine(), {basis[j]}};
      supports[j] = multiply(g, m0.alg).support;
      for (const std::string& k : supports[j]) row_index.emplace(k, 0);
    }
    std::size_t r = 0;
    for (auto& [k, idx] : row_index) idx = r++;
    rows = row_index.size();
    for (std::size_t j = 0; j < cols; ++j) {
      columns[j] = F2Vec(rows);
      for (const std::string& k : supports[j]) columns[j].set(row_index[k], true);
    }
  }
  if (rows * cols > (1ull << 33))
    fail(ErrorKind::cap, "stretching_check: dense matrix too large at this level");
  F2Matrix mat(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (columns[j].get(i)) mat.set(i, j, true);

  std::optional<F2Vec> ker = f2_kernel_vector(mat);
  if (!ker) {
    rep.injective = true;
    return rep;
  }
  rep.injective = false;
  GroupAlgebraElement w{&alg.engine(), {}};
  for (std::size_t j = 0; j < cols; ++j)
    if (ker->get(j)) w.support.insert(basis[j]);
  rep.witness = std::move(w);
  return rep;
}

namespace {

// dim{m in M : level(m) <= s} for integer s >= 0.
std::uint64_t module_level_dim(const FilteredAlgebra& alg, const FilteredModule& m, double s) {
  switch (m.kind()) {
    case FilteredModule::Kind::self:
      return alg.level_dim(static_cast<std::size_t>(s));
    case FilteredModule::Kind::self_shift: {
      double adj = s - static_cast<double>(m.shift());
      if (adj < 0) return 0;
      return alg.level_dim(static_cast<std::size_t>(adj));
    }
    case FilteredModule::Kind::tabulated: {
      const TabulatedFds& f = m.fds();
      if (s > f.levels.back())
        fail(ErrorKind::range, "module window exceeds the tabulated module data");
      auto idx = f.index_at(s);
      if (!idx) return 0;
      std::vector<std::uint64_t> d = d_sequence(f);
      return d[*idx];
    }
  }
  fail(ErrorKind::domain, "module_level_dim: unreachable");
}

}  // namespace

GrowthCompareReport module_growth_compare(const FilteredAlgebra& alg, const FilteredModule& m,
                                          const ModuleElement& m0,
                                          std::pair<std::size_t, std::size_t> window) {
  if (window.first > window.second)
    fail(ErrorKind::domain, "module_growth_compare: empty window");
  GrowthCompareReport rep;
  rep.stretch = stretching_check(alg, m, m0, window.second);
  if (!rep.stretch.injective) {
    rep.rejected = true;
    return rep;
  }
  rep.m0_level = module_level(alg, m, m0);
  rep.ok = true;
  for (std::size_t t = window.first; t <= window.second; ++t) {
    std::uint64_t dv = alg.level_dim(t);
    std::uint64_t dw = module_level_dim(alg, m, static_cast<double>(t) + rep.m0_level);
    rep.rows.push_back({t, dv, dw});
    if (dv > dw && !rep.first_violation) {
      rep.ok = false;
      rep.first_violation = t;
    }
  }
  return rep;
}

UniformFamilyReport uniform_family_check(
    const FilteredAlgebra& alg,
    const std::vector<std::pair<FilteredModule, ModuleElement>>& members, std::size_t bound,
    std::pair<std::size_t, std::size_t> window) {
  if (members.empty()) fail(ErrorKind::domain, "uniform_family_check: empty family");
  if (window.first > window.second)
    fail(ErrorKind::domain, "uniform_family_check: empty window");
  UniformFamilyReport rep;
  for (std::size_t i = 0; i < members.size(); ++i) {
    double lvl = module_level(alg, members[i].first, members[i].second);
    if (lvl > static_cast<double>(bound)) {
      rep.failing_member = i;
      rep.reason = "stretching element exceeds the uniform level bound";
      return rep;
    }
    StretchReport sr = stretching_check(alg, members[i].first, members[i].second, window.second);
    if (!sr.injective) {
      rep.failing_member = i;
      rep.reason = "member is not stretched at the window level";
      return rep;
    }
  }
  rep.ok = true;
  for (std::size_t t = window.first; t <= window.second; ++t) {
    std::uint64_t dv = alg.level_dim(t);
    std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [mod, m0] : members) {
      (void)m0;
      inf = std::min(inf,
                     module_level_dim(alg, mod, static_cast<double>(t + bound)));
    }
    rep.d_v.push_back(dv);
    rep.inf_dw.push_back(inf);
    if (dv > inf) {
      rep.ok = false;
      if (!rep.failing_member) rep.reason = "family infimum dimension drops below d_t^V";
      return rep;
    }
  }
  return rep;
}

StreamedFds fds_from_ball_filtration(const FilteredAlgebra& alg, const BallOptions& opts) {
  struct Cache {
    FilteredAlgebra alg;
    BallOptions opts;
    WsTable table;
    std::size_t n_max = 0;
    std::mutex mu;
    void extend_to(std::size_t n) {
      if (n <= n_max && !table.dims.empty()) return;
      std::size_t target = std::max<std::size_t>(n, 8) * 2;
      table = ws_spans(alg, target, opts);
      n_max = target;
      if (table.truncated)
        fail(ErrorKind::cap, "ball filtration: span cap exceeded while streaming levels");
    }
  };
  auto cache = std::make_shared<Cache>(Cache{alg, opts, {}, 0, {}});
  return StreamedFds(
      [cache](std::size_t n) {
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->extend_to(n + 1);
        const WsTable& t = cache->table;
        StreamedFds::Level lv;
        lv.dim = t.dims[n];
        for (std::size_t k = 1; k <= n; ++k)
          for (const std::string& lab : t.new_basis[k]) lv.basis.push_back(lab);
        // inclusion of the level-n span into the level-(n+1) span
        lv.step = F2Matrix(t.dims[n + 1], t.dims[n]);
        for (std::size_t i = 0; i < t.dims[n]; ++i) lv.step.set(i, i, true);
        return lv;
      },
      true);
}

}  // namespace growthlab
