#include "growthlab/fds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace growthlab {

namespace {

double log0(std::uint64_t d) { return d == 0 ? 0.0 : std::log(static_cast<double>(d)); }

bool is_integral(double t) { return t >= 0 && t == std::floor(t); }

}  // namespace

TabulatedFds::TabulatedFds(std::vector<double> levels_in, std::vector<std::size_t> dims_in,
                           std::vector<F2Matrix> maps_in)
    : levels(std::move(levels_in)), dims(std::move(dims_in)), maps(std::move(maps_in)) {
  if (levels.empty()) fail(ErrorKind::shape, "TabulatedFds: at least one breakpoint required");
  if (dims.size() != levels.size())
    fail(ErrorKind::shape, "TabulatedFds: dims/levels length mismatch");
  if (maps.size() + 1 != levels.size())
    fail(ErrorKind::shape, "TabulatedFds: need one map per adjacent breakpoint pair");
  if (levels.front() < 0) fail(ErrorKind::domain, "TabulatedFds: negative breakpoint");
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (!(levels[i] < levels[i + 1]))
      fail(ErrorKind::domain, "TabulatedFds: breakpoints must be strictly increasing");
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].rows() != dims[i + 1] || maps[i].cols() != dims[i])
      fail(ErrorKind::shape, "TabulatedFds: map " + std::to_string(i) + " has wrong shape");
}

std::optional<std::size_t> TabulatedFds::index_at(double t) const {
  if (t < levels.front()) return std::nullopt;
  auto it = std::upper_bound(levels.begin(), levels.end(), t);
  return static_cast<std::size_t>(it - levels.begin()) - 1;
}

const StreamedFds::Level& StreamedFds::level(std::size_t n) const {
  while (cache_.size() <= n) {
    std::size_t k = cache_.size();
    Level lv = rule_(k);
    if (!lv.basis.empty() && lv.basis.size() != lv.dim)
      fail(ErrorKind::shape, "StreamedFds: basis labels disagree with dimension");
    if (k > 0) {
      const Level& prev = cache_[k - 1];
      if (prev.step.cols() != prev.dim || prev.step.rows() != lv.dim)
        fail(ErrorKind::shape, "StreamedFds: step map shape mismatch at level " +
                                   std::to_string(k - 1));
    }
    if (monotone_ && lv.dim > 0 && k > 0) {
      const F2Matrix& st = cache_[k - 1].step;
      if (st.cols() <= 2048 && f2_rank(st) != st.cols())
        fail(ErrorKind::domain,
             "StreamedFds: monotone flag set but step map is not injective at level " +
                 std::to_string(k - 1));
    }
    cache_.push_back(std::move(lv));
  }
  return cache_[n];
}

TabulatedFds tabulate(const StreamedFds& s, std::size_t n_max) {
  std::vector<double> levels(n_max + 1);
  std::vector<std::size_t> dims(n_max + 1);
  std::vector<F2Matrix> maps;
  maps.reserve(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) {
    levels[n] = static_cast<double>(n);
    dims[n] = s.dim(n);
    if (n < n_max) maps.push_back(s.level(n).step);
  }
  return TabulatedFds(std::move(levels), std::move(dims), std::move(maps));
}

const char* growth_method_name(GrowthMethod m) {
  return m == GrowthMethod::slope ? "slope" : "last-ratio";
}

std::size_t dim_at(const TabulatedFds& v, double t) {
  if (t < 0) fail(ErrorKind::domain, "dim_at: level must be non-negative");
  auto idx = v.index_at(t);
  return idx ? v.dims[*idx] : 0;
}

std::size_t dim_at(const StreamedFds& v, double t) {
  if (t < 0) fail(ErrorKind::domain, "dim_at: level must be non-negative");
  return v.dim(static_cast<std::size_t>(std::floor(t)));
}

F2Matrix map_between(const TabulatedFds& v, double s, double t) {
  if (s > t) fail(ErrorKind::order, "map_between: s must not exceed t");
  auto si = v.index_at(s);
  auto ti = v.index_at(t);
  if (!ti) return F2Matrix(0, 0);  // both below the first breakpoint
  if (!si) {
    // source is the zero space below the first breakpoint
    return F2Matrix(v.dims[*ti], 0);
  }
  F2Matrix acc = F2Matrix::identity(v.dims[*si]);
  for (std::size_t i = *si; i < *ti; ++i) acc = f2_mul(v.maps[i], acc);
  return acc;
}

F2Matrix map_between(const StreamedFds& v, std::size_t s, std::size_t t) {
  if (s > t) fail(ErrorKind::order, "map_between: s must not exceed t");
  F2Matrix acc = F2Matrix::identity(v.dim(s));
  for (std::size_t i = s; i < t; ++i) acc = f2_mul(v.level(i).step, acc);
  return acc;
}

double spectral_number(const TabulatedFds& v, const FdsElement& x) {
  if (x.level_index >= v.levels.size())
    fail(ErrorKind::shape, "spectral_number: breakpoint index out of range");
  if (x.vec.size() != v.dims[x.level_index])
    fail(ErrorKind::shape, "spectral_number: element coordinates have wrong length");
  std::size_t m = v.levels.size() - 1;

  // Image of x in the direct limit (= the last space).
  F2Vec img = x.vec;
  for (std::size_t i = x.level_index; i < m; ++i) img = f2_mul(v.maps[i], img);
  if (img.is_zero()) return v.levels.front();

  // pi_{s->m} for descending s, then scan for the least s hitting img.
  std::vector<F2Matrix> to_limit(m + 1);
  to_limit[m] = F2Matrix::identity(v.dims[m]);
  for (std::size_t s = m; s-- > 0;) to_limit[s] = f2_mul(to_limit[s + 1], v.maps[s]);
  for (std::size_t s = 0; s <= m; ++s)
    if (f2_solve(to_limit[s], img)) return v.levels[s];
  return std::numeric_limits<double>::infinity();  // unreachable for valid data
}

std::vector<std::uint64_t> d_sequence(const TabulatedFds& v) {
  std::size_t m = v.levels.size() - 1;
  std::vector<std::uint64_t> d(m + 1);
  F2Matrix acc = F2Matrix::identity(v.dims[m]);
  d[m] = f2_rank(acc);
  for (std::size_t s = m; s-- > 0;) {
    acc = f2_mul(acc, v.maps[s]);
    d[s] = f2_rank(acc);
  }
  return d;
}

GrowthEstimate growth_rate(const std::vector<std::uint64_t>& d, const std::vector<double>& ts,
                           std::pair<double, double> window, GrowthMethod method,
                           bool submultiplicative) {
  if (d.size() != ts.size()) fail(ErrorKind::shape, "growth_rate: d/ts length mismatch");
  std::vector<std::size_t> in_window;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= window.first && ts[i] <= window.second) in_window.push_back(i);
  if (in_window.empty()) fail(ErrorKind::domain, "growth_rate: window contains no samples");

  GrowthEstimate est;
  est.window = window;
  est.method = method;
  est.d_sequence.reserve(in_window.size());
  for (std::size_t i : in_window) est.d_sequence.push_back(d[i]);

  if (method == GrowthMethod::slope) {
    double mid = (window.first + window.second) / 2;
    std::vector<std::size_t> fit;
    for (std::size_t i : in_window)
      if (ts[i] >= mid) fit.push_back(i);
    if (fit.size() < 2) fit = in_window;
    est.fit_window = {ts[fit.front()], ts[fit.back()]};
    if (fit.size() < 2) {
      est.rate = 0.0;
    } else {
      double n = static_cast<double>(fit.size());
      double st = 0, sy = 0, stt = 0, sty = 0;
      for (std::size_t i : fit) {
        double y = log0(d[i]);
        st += ts[i];
        sy += y;
        stt += ts[i] * ts[i];
        sty += ts[i] * y;
      }
      double denom = n * stt - st * st;
      est.rate = denom == 0 ? 0.0 : (n * sty - st * sy) / denom;
    }
  } else {
    if (in_window.size() < 2) {
      est.rate = 0.0;
      est.fit_window = {ts[in_window.front()], ts[in_window.back()]};
    } else {
      std::size_t last = in_window[in_window.size() - 1];
      std::size_t prev = in_window[in_window.size() - 2];
      est.fit_window = {ts[prev], ts[last]};
      est.rate = (log0(d[last]) - log0(d[prev])) / (ts[last] - ts[prev]);
    }
  }
  if (est.rate < 0) est.rate = 0.0;

  if (submultiplicative) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i : in_window)
      if (ts[i] > 0) best = std::min(best, log0(d[i]) / ts[i]);
    if (std::isfinite(best)) est.certified_upper = best;
  }
  return est;
}

GrowthEstimate growth_rate(const std::vector<std::uint64_t>& d, std::pair<double, double> window,
                           GrowthMethod method, bool submultiplicative) {
  std::vector<double> ts(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) ts[i] = static_cast<double>(i);
  return growth_rate(d, ts, window, method, submultiplicative);
}

GrowthEstimate growth_rate(const TabulatedFds& v, std::pair<double, double> window,
                           GrowthMethod method) {
  return growth_rate(d_sequence(v), v.levels, window, method);
}

GrowthEstimate growth_rate(const StreamedFds& v, std::pair<double, double> window,
                           GrowthMethod method) {
  if (!v.monotone())
    fail(ErrorKind::domain,
         "growth_rate: streamed systems need the monotone flag (finite data cannot "
         "determine the limit otherwise); tabulate() first");
  if (window.second < 0) fail(ErrorKind::domain, "growth_rate: empty window");
  auto n_max = static_cast<std::size_t>(std::floor(window.second));
  std::vector<std::uint64_t> d(n_max + 1);
  std::vector<double> ts(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    d[n] = v.dim(n);
    ts[n] = static_cast<double>(n);
  }
  return growth_rate(d, ts, window, method);
}

TabulatedFds dilate(const TabulatedFds& v, long eta) {
  if (eta < 1) fail(ErrorKind::domain, "dilate: eta must be a positive integer");
  std::vector<double> levels(v.levels.size());
  for (std::size_t i = 0; i < v.levels.size(); ++i)
    levels[i] = v.levels[i] / static_cast<double>(eta);
  return TabulatedFds(std::move(levels), v.dims, v.maps);
}

StreamedFds dilate(const StreamedFds& v, long eta) {
  if (eta < 1) fail(ErrorKind::domain, "dilate: eta must be a positive integer");
  const StreamedFds* src = &v;
  auto e = static_cast<std::size_t>(eta);
  return StreamedFds(
      [src, e](std::size_t n) {
        StreamedFds::Level lv;
        const auto& base = src->level(e * n);
        lv.dim = base.dim;
        lv.basis = base.basis;
        lv.step = map_between(*src, e * n, e * (n + 1));
        return lv;
      },
      v.monotone());
}

LevelView::LevelView(const TabulatedFds& v) : tab_(&v) {
  for (double t : v.levels)
    if (!is_integral(t))
      fail(ErrorKind::domain, "LevelView: integer-sampled system required");
  max_level_ = static_cast<std::size_t>(v.levels.back());
}

LevelView::LevelView(const StreamedFds& v, std::size_t max_level)
    : str_(&v), max_level_(max_level) {}

std::size_t LevelView::dim(std::size_t n) const {
  std::size_t t = std::min(n, max_level_);
  if (tab_) return dim_at(*tab_, static_cast<double>(t));
  return str_->dim(t);
}

F2Matrix LevelView::map(std::size_t s, std::size_t t) const {
  if (s > t) fail(ErrorKind::order, "LevelView::map: s must not exceed t");
  std::size_t sc = std::min(s, max_level_), tc = std::min(t, max_level_);
  if (tab_) return map_between(*tab_, static_cast<double>(sc), static_cast<double>(tc));
  return map_between(*str_, sc, tc);
}

namespace {

// f[t] present and correctly shaped for f : X -> Y(stretch(t)), else report.
bool check_family_shape(const LevelView& x, const LevelView& y, const MapFamily& f, long cutoff,
                        const std::function<std::size_t(std::size_t)>& stretch,
                        const char* name, CheckReport& rep) {
  std::size_t hi = std::min(f.size() == 0 ? 0 : f.size() - 1, x.max_level());
  for (std::size_t t = 0; t <= hi; ++t) {
    if (static_cast<long>(t) <= cutoff) continue;
    if (t >= f.size() || !f[t]) {
      rep.ok = false;
      rep.violation = std::string(name) + " map absent at level " + std::to_string(t);
      rep.at_t = static_cast<long>(t);
      return false;
    }
    const F2Matrix& m = *f[t];
    if (m.rows() != y.dim(stretch(t)) || m.cols() != x.dim(t))
      fail(ErrorKind::shape, std::string(name) + " map at level " + std::to_string(t) +
                                 " has wrong shape");
  }
  return true;
}

CheckReport check_asymptotic_morphism(const LevelView& x, const LevelView& y, const MapFamily& f,
                                      long cutoff,
                                      const std::function<std::size_t(std::size_t)>& stretch,
                                      const char* name) {
  CheckReport rep;
  if (!check_family_shape(x, y, f, cutoff, stretch, name, rep)) return rep;
  if (f.empty()) return rep;
  std::size_t hi = std::min(f.size() - 1, x.max_level());
  for (std::size_t s = 0; s <= hi; ++s) {
    if (static_cast<long>(s) <= cutoff) continue;
    for (std::size_t t = s + 1; t <= hi; ++t) {
      F2Matrix lhs = f2_mul(*f[t], x.map(s, t));
      F2Matrix rhs = f2_mul(y.map(stretch(s), stretch(t)), *f[s]);
      if (lhs != rhs) {
        CheckReport bad;
        bad.ok = false;
        bad.violation = std::string(name) + " square fails";
        bad.at_s = static_cast<long>(s);
        bad.at_t = static_cast<long>(t);
        return bad;
      }
    }
  }
  return rep;
}

}  // namespace

CheckReport check_morphism(const LevelView& v, const LevelView& w, const MapFamily& f,
                           long cutoff) {
  return check_asymptotic_morphism(v, w, f, cutoff, [](std::size_t t) { return t; }, "morphism");
}

CheckReport check_interleaving(const LevelView& v, const LevelView& w,
                               const InterleavingCandidate& cand) {
  if (cand.eta1 < 1 || cand.eta2 < 1)
    fail(ErrorKind::domain, "check_interleaving: eta parameters must be >= 1");
  auto e1 = static_cast<std::size_t>(cand.eta1);
  auto e2 = static_cast<std::size_t>(cand.eta2);

  CheckReport rep = check_asymptotic_morphism(
      v, w, cand.f, cand.cutoff, [e1](std::size_t t) { return e1 * t; }, "f");
  if (!rep.ok) return rep;
  rep = check_asymptotic_morphism(
      w, v, cand.g, cand.cutoff, [e2](std::size_t t) { return e2 * t; }, "g");
  if (!rep.ok) return rep;

  // Composites: g(eta1)∘f = pi_V[eta1*eta2] and f(eta2)∘g = pi_W[eta1*eta2].
  std::size_t f_hi = cand.f.empty() ? 0 : cand.f.size() - 1;
  std::size_t g_hi = cand.g.empty() ? 0 : cand.g.size() - 1;
  for (std::size_t t = 0; t <= std::min(f_hi, v.max_level()); ++t) {
    if (static_cast<long>(t) <= cand.cutoff) continue;
    if (e1 * t > g_hi) break;
    if (!cand.g[e1 * t]) continue;
    F2Matrix lhs = f2_mul(*cand.g[e1 * t], *cand.f[t]);
    F2Matrix rhs = v.map(t, e1 * e2 * t);
    if (lhs != rhs) {
      rep.ok = false;
      rep.violation = "composite g(eta1)∘f differs from the canonical dilation morphism of V";
      rep.at_t = static_cast<long>(t);
      return rep;
    }
  }
  for (std::size_t t = 0; t <= std::min(g_hi, w.max_level()); ++t) {
    if (static_cast<long>(t) <= cand.cutoff) continue;
    if (e2 * t > f_hi) break;
    if (!cand.f[e2 * t]) continue;
    F2Matrix lhs = f2_mul(*cand.f[e2 * t], *cand.g[t]);
    F2Matrix rhs = w.map(t, e1 * e2 * t);
    if (lhs != rhs) {
      rep.ok = false;
      rep.violation = "composite f(eta2)∘g differs from the canonical dilation morphism of W";
      rep.at_t = static_cast<long>(t);
      return rep;
    }
  }
  return rep;
}

CheckReport check_weak_interleaving(const LevelView& v, const LevelView& w,
                                    const std::vector<long>& sigma1,
                                    const std::vector<long>& sigma2, const MapFamily& f,
                                    const MapFamily& g, long cutoff) {
  auto validate = [](const std::vector<long>& sg, const char* name) {
    double prev = -1;
    for (std::size_t t = 0; t < sg.size(); ++t) {
      if (sg[t] < 1)
        fail(ErrorKind::domain, std::string(name) + "(" + std::to_string(t) + ") is below 1");
      double stretched = static_cast<double>(sg[t]) * static_cast<double>(t);
      if (stretched < prev)
        fail(ErrorKind::domain, std::string(name) + ": stretched levels must be monotone");
      prev = stretched;
    }
  };
  validate(sigma1, "sigma1");
  validate(sigma2, "sigma2");

  auto stretch1 = [&sigma1](std::size_t t) { return static_cast<std::size_t>(sigma1[t]) * t; };
  auto stretch2 = [&sigma2](std::size_t t) { return static_cast<std::size_t>(sigma2[t]) * t; };

  // Sampling is limited to levels where the stretch functions are supplied.
  MapFamily fr(f.begin(), f.begin() + std::min(f.size(), sigma1.size()));
  MapFamily gr(g.begin(), g.begin() + std::min(g.size(), sigma2.size()));

  CheckReport rep = check_asymptotic_morphism(v, w, fr, cutoff, stretch1, "f");
  if (!rep.ok) return rep;
  rep = check_asymptotic_morphism(w, v, gr, cutoff, stretch2, "g");
  if (!rep.ok) return rep;

  std::size_t f_hi = fr.empty() ? 0 : fr.size() - 1;
  std::size_t g_hi = gr.empty() ? 0 : gr.size() - 1;
  // g(sigma1)∘f = pi_V to the doubly stretched level; f(sigma2)∘g likewise.
  for (std::size_t t = 0; t <= std::min(f_hi, v.max_level()); ++t) {
    if (static_cast<long>(t) <= cutoff) continue;
    std::size_t u = stretch1(t);
    if (u > g_hi) break;
    if (!gr[u]) continue;
    if (u >= sigma2.size()) break;
    F2Matrix lhs = f2_mul(*gr[u], *fr[t]);
    F2Matrix rhs = v.map(t, stretch2(u));
    if (lhs != rhs) {
      rep.ok = false;
      rep.violation = "weak composite g(sigma1)∘f differs from the persistence map of V";
      rep.at_t = static_cast<long>(t);
      return rep;
    }
  }
  for (std::size_t t = 0; t <= std::min(g_hi, w.max_level()); ++t) {
    if (static_cast<long>(t) <= cutoff) continue;
    std::size_t u = stretch2(t);
    if (u > f_hi) break;
    if (!fr[u]) continue;
    if (u >= sigma1.size()) break;
    F2Matrix lhs = f2_mul(*fr[u], *gr[t]);
    F2Matrix rhs = w.map(t, stretch1(u));
    if (lhs != rhs) {
      rep.ok = false;
      rep.violation = "weak composite f(sigma2)∘g differs from the persistence map of W";
      rep.at_t = static_cast<long>(t);
      return rep;
    }
  }
  return rep;
}

}  // namespace growthlab
