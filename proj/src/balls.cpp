#include "growthlab/balls.hpp"

#include <algorithm>
#include <thread>
#include <unordered_set>

namespace growthlab {

namespace {

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
using KeySet = std::unordered_set<std::string, SvHash, SvEq>;

std::vector<std::string> canonical_generators(const GroupEngine& e,
                                              const std::vector<std::string>& words) {
  if (words.empty()) fail(ErrorKind::domain, "ball enumeration: empty generating set");
  std::vector<std::string> keys;
  KeySet seen;
  for (const std::string& w : words) {
    std::string k = e.normalize(w);
    if (seen.insert(k).second) keys.push_back(std::move(k));
  }
  return keys;
}

bool all_single_letters(const std::vector<std::string>& words) {
  return std::all_of(words.begin(), words.end(),
                     [](const std::string& w) { return w.size() == 1; });
}

// The geodesic wave path applies when canonical key length equals word-metric
// distance and S is exactly the full registered letter set: a candidate of
// key length n+1 is then guaranteed new, and shorter candidates are already
// counted, so only the current sphere needs deduplication.
bool geodesic_path_applies(const GroupEngine& e, const std::vector<std::string>& words,
                           const std::vector<std::string>& keys) {
  if (!e.geodesic_keys() || !all_single_letters(words)) return false;
  KeySet letter_keys;
  for (char c : e.letters()) letter_keys.insert(e.normalize(std::string_view(&c, 1)));
  if (letter_keys.size() != keys.size()) return false;
  for (const std::string& k : keys)
    if (!letter_keys.count(k)) return false;
  return true;
}

// Expand a frontier chunk by all extensions; used by both paths.
template <typename Fn>
void parallel_over(const std::vector<std::string>& frontier, int threads, Fn&& fn) {
  if (threads <= 1 || frontier.size() < 1024) {
    fn(0, frontier.size(), 0);
    return;
  }
  std::size_t nt = std::min<std::size_t>(threads, frontier.size());
  std::vector<std::thread> pool;
  std::size_t chunk = (frontier.size() + nt - 1) / nt;
  for (std::size_t t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk, hi = std::min(frontier.size(), lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, t] { fn(lo, hi, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

BallTable ball_sizes(const GroupEngine& e, const std::vector<std::string>& generating_words,
                     std::size_t n_max, const BallOptions& opts) {
  if (n_max < 1) fail(ErrorKind::domain, "ball_sizes: n_max must be >= 1");
  std::vector<std::string> keys = canonical_generators(e, generating_words);

  BallTable table;
  table.generating_set = generating_words;
  table.ball.push_back(1);
  table.sphere.push_back(1);

  std::uint64_t total = 1;
  bool geodesic = geodesic_path_applies(e, generating_words, keys);

  if (geodesic) {
    std::vector<std::string> frontier{e.identity_key()};
    std::string letters = e.letters();
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (table.closed_at) {
        table.sphere.push_back(0);
        table.ball.push_back(total);
        continue;
      }
      std::size_t want = frontier.empty() ? 1 : frontier.front().size() + 1;
      std::vector<std::vector<std::string>> locals(
          std::max<std::size_t>(1, static_cast<std::size_t>(opts.threads)));
      parallel_over(frontier, opts.threads, [&](std::size_t lo, std::size_t hi, std::size_t t) {
        auto& out = locals[t];
        for (std::size_t i = lo; i < hi; ++i)
          for (char c : letters) {
            std::string k = e.extend(frontier[i], c);
            if (k.size() == want) out.push_back(std::move(k));
          }
      });
      KeySet wave;
      std::vector<std::string> next;
      for (auto& loc : locals)
        for (auto& k : loc)
          if (wave.insert(k).second) next.push_back(std::move(k));
      frontier = std::move(next);
      std::uint64_t s = frontier.size();
      if (s == 0 && !table.closed_at) table.closed_at = n;
      total += s;
      table.sphere.push_back(s);
      table.ball.push_back(total);
      if (total > opts.memory_cap) {
        table.truncated = true;
        break;
      }
    }
    return table;
  }

  // Generic path: full visited set.
  KeySet visited;
  visited.insert(e.identity_key());
  std::vector<std::string> frontier{e.identity_key()};
  bool single = all_single_letters(generating_words);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (table.closed_at) {
      table.sphere.push_back(0);
      table.ball.push_back(total);
      continue;
    }
    std::vector<std::vector<std::string>> locals(
        std::max<std::size_t>(1, static_cast<std::size_t>(opts.threads)));
    parallel_over(frontier, opts.threads, [&](std::size_t lo, std::size_t hi, std::size_t t) {
      auto& out = locals[t];
      for (std::size_t i = lo; i < hi; ++i) {
        if (single) {
          for (const std::string& w : generating_words) out.push_back(e.extend(frontier[i], w[0]));
        } else {
          for (const std::string& k : keys) out.push_back(e.compose(frontier[i], k));
        }
      }
    });
    std::vector<std::string> next;
    for (auto& loc : locals)
      for (auto& k : loc)
        if (visited.insert(k).second) next.push_back(std::move(k));
    frontier = std::move(next);
    std::uint64_t s = frontier.size();
    if (s == 0 && !table.closed_at) table.closed_at = n;
    total += s;
    table.sphere.push_back(s);
    table.ball.push_back(total);
    if (total > opts.memory_cap) {
      table.truncated = true;
      break;
    }
  }
  return table;
}

BallBasis ball_basis(const GroupEngine& e, const std::vector<std::string>& generating_words,
                     std::size_t n_max, const BallOptions& opts) {
  std::vector<std::string> keys = canonical_generators(e, generating_words);

  BallBasis basis;
  basis.keys.push_back(e.identity_key());
  basis.level_end.push_back(1);

  KeySet visited;
  visited.insert(e.identity_key());
  std::size_t frontier_begin = 0;
  bool single = all_single_letters(generating_words);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::size_t frontier_end = basis.keys.size();
    std::vector<std::string> wave;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const std::string& base = basis.keys[i];
      if (single) {
        for (const std::string& w : generating_words) {
          std::string k = e.extend(base, w[0]);
          if (visited.insert(k).second) wave.push_back(std::move(k));
        }
      } else {
        for (const std::string& k0 : keys) {
          std::string k = e.compose(base, k0);
          if (visited.insert(k).second) wave.push_back(std::move(k));
        }
      }
    }
    std::sort(wave.begin(), wave.end());
    for (auto& k : wave) basis.keys.push_back(std::move(k));
    frontier_begin = frontier_end;
    basis.level_end.push_back(basis.keys.size());
    if (basis.keys.size() > opts.memory_cap) {
      basis.truncated = true;
      break;
    }
  }
  return basis;
}

}  // namespace growthlab
