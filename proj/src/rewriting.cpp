#include "growthlab/rewriting.hpp"

#include <algorithm>
#include <set>

namespace growthlab {

int RewritingSystem::letter_rank(char c) const {
  int r = rank_[static_cast<unsigned char>(c)];
  if (r < 0) fail(ErrorKind::input, std::string("unknown letter: '") + c + "'");
  return r;
}

bool RewritingSystem::shortlex_less(std::string_view a, std::string_view b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = rank_[static_cast<unsigned char>(a[i])];
    int rb = rank_[static_cast<unsigned char>(b[i])];
    if (ra != rb) return ra < rb;
  }
  return false;
}

void RewritingSystem::index_rules() {
  lhs_map_.clear();
  std::set<std::size_t> lens;
  for (const auto& [l, r] : rules_) {
    lhs_map_.emplace(l, r);
    lens.insert(l.size());
  }
  lhs_lengths_.assign(lens.begin(), lens.end());
}

namespace {

// Core stack reducer shared by rewrite()/rewrite_appended(); `out` must be
// irreducible on entry.
void reduce_into(const std::unordered_map<std::string, std::string, RewritingSystem::SvHash,
                                          RewritingSystem::SvEq>&,
                 const std::vector<std::size_t>&, std::string&, std::string_view);

}  // namespace

std::string RewritingSystem::rewrite(std::string_view word) const {
  for (char c : word) letter_rank(c);  // validate
  std::string out;
  out.reserve(word.size());
  reduce_into(lhs_map_, lhs_lengths_, out, word);
  return out;
}

std::string RewritingSystem::rewrite_appended(std::string_view prefix,
                                              std::string_view suffix) const {
  std::string out(prefix);
  reduce_into(lhs_map_, lhs_lengths_, out, suffix);
  return out;
}

namespace {

void reduce_into(const std::unordered_map<std::string, std::string, RewritingSystem::SvHash,
                                          RewritingSystem::SvEq>& rules,
                 const std::vector<std::size_t>& lengths, std::string& out,
                 std::string_view input) {
  std::vector<char> pending(input.rbegin(), input.rend());
  while (!pending.empty()) {
    out.push_back(pending.back());
    pending.pop_back();
    bool reduced = true;
    while (reduced) {
      reduced = false;
      for (std::size_t len : lengths) {
        if (len > out.size()) break;
        std::string_view suffix(out.data() + out.size() - len, len);
        auto it = rules.find(suffix);
        if (it == rules.end()) continue;
        out.resize(out.size() - len);
        const std::string& rhs = it->second;
        if (rhs.size() == 1) {
          // fast path: single-letter replacements go straight back through
          out.push_back(rhs[0]);
          reduced = true;
        } else if (!rhs.empty()) {
          for (auto rit = rhs.rbegin(); rit != rhs.rend(); ++rit) pending.push_back(*rit);
        }
        break;
      }
      if (reduced) continue;
      break;
    }
  }
}

}  // namespace

namespace detail {

struct KbBuilder {
  KbBuilder(const FpGroupPresentation& p, const KbCaps& caps) : caps_(caps) {
    rs_.alphabet_.clear();
    rs_.rank_.fill(-1);
    for (char g : p.generators) {
      rs_.alphabet_.push_back(g);
      rs_.alphabet_.push_back(invert_letter(g));
    }
    for (std::size_t i = 0; i < rs_.alphabet_.size(); ++i)
      rs_.rank_[static_cast<unsigned char>(rs_.alphabet_[i])] = static_cast<int>(i);

    for (char g : p.generators) {
      char gi = invert_letter(g);
      enqueue(std::string{g, gi}, "");
      enqueue(std::string{gi, g}, "");
    }
    for (const std::string& r : p.relators) enqueue(r, "");
  }

  RewritingSystem run() {
    bool clean = true;
    while (!queue_.empty()) {
      if (rs_.stats_.iterations++ >= caps_.max_iterations) {
        clean = false;
        break;
      }
      auto it = queue_.begin();
      auto [u, v] = it->second;
      queue_.erase(it);
      --queue_size_;
      if (!process(u, v)) clean = false;
      if (rs_.stats_.hit_cap) {
        clean = false;
        break;
      }
    }
    rs_.stats_.hit_cap = rs_.stats_.hit_cap || !clean;

    // Final rule list: active rules, deterministic order.
    std::vector<std::pair<std::string, std::string>> final_rules;
    for (const Rule& r : rules_)
      if (r.active) final_rules.emplace_back(r.lhs, r.rhs);
    std::sort(final_rules.begin(), final_rules.end(),
              [this](const auto& a, const auto& b) { return rs_.shortlex_less(a.first, b.first); });
    rs_.rules_ = std::move(final_rules);
    rs_.stats_.rule_count = rs_.rules_.size();
    for (const auto& [l, r] : rs_.rules_)
      rs_.stats_.max_rule_len = std::max({rs_.stats_.max_rule_len, l.size(), r.size()});
    rs_.confluent_ = clean;
    rs_.index_rules();
    return std::move(rs_);
  }

  struct Rule {
    std::string lhs, rhs;
    bool active = true;
  };

  void enqueue(std::string u, std::string v) {
    if (u == v) return;
    if (queue_size_ >= caps_.max_queue) {
      rs_.stats_.hit_cap = true;
      return;
    }
    std::size_t key = std::max(u.size(), v.size());
    queue_.emplace(key, std::make_pair(std::move(u), std::move(v)));
    ++queue_size_;
  }

  // Returns false if the equation had to be skipped because of a cap.
  bool process(const std::string& u_raw, const std::string& v_raw) {
    ++rs_.stats_.equations_processed;
    std::string u = rs_.rewrite(u_raw);
    std::string v = rs_.rewrite(v_raw);
    if (u == v) return true;
    if (rs_.shortlex_less(u, v)) std::swap(u, v);
    // u > v: rule u -> v
    if (u.size() > caps_.max_len) return false;
    if (active_count_ >= caps_.max_rules) {
      rs_.stats_.hit_cap = true;
      return false;
    }
    add_rule(std::move(u), std::move(v));
    return true;
  }

  void add_rule(std::string lhs, std::string rhs) {
    std::size_t id = rules_.size();
    rules_.push_back(Rule{lhs, rhs, true});
    rs_.lhs_map_.emplace(lhs, rhs);
    lens_count_[lhs.size()]++;
    refresh_lengths();
    ++active_count_;

    // Interreduce: existing rules whose lhs contains the new lhs become
    // equations again; rhs's containing it are rewritten in place.
    for (std::size_t i = 0; i < id; ++i) {
      Rule& r = rules_[i];
      if (!r.active) continue;
      if (r.lhs.find(lhs) != std::string::npos) {
        deactivate(i);
        enqueue(r.lhs, r.rhs);
        continue;
      }
      if (r.rhs.find(lhs) != std::string::npos) {
        std::string nr = rs_.rewrite(r.rhs);
        if (nr != r.rhs) {
          rs_.lhs_map_.find(r.lhs)->second = nr;
          r.rhs = std::move(nr);
        }
      }
    }

    // Critical pairs of the new rule with every active rule (both orders,
    // including self-overlaps).
    const Rule& nr = rules_[id];
    for (std::size_t i = 0; i <= id; ++i) {
      const Rule& r = rules_[i];
      if (!r.active) continue;
      overlap_pairs(nr, r);
      if (i != id) overlap_pairs(r, nr);
    }
  }

  // Proper overlaps: a suffix of a.lhs equals a prefix of b.lhs.
  void overlap_pairs(const Rule& a, const Rule& b) {
    std::size_t na = a.lhs.size(), nb = b.lhs.size();
    std::size_t kmax = std::min(na, nb) - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (std::string_view(a.lhs).substr(na - k) != std::string_view(b.lhs).substr(0, k)) continue;
      // word a.lhs + b.lhs[k:]; two reductions
      std::string left = a.rhs + b.lhs.substr(k);
      std::string right = a.lhs.substr(0, na - k) + b.rhs;
      enqueue(std::move(left), std::move(right));
    }
  }

  void deactivate(std::size_t i) {
    Rule& r = rules_[i];
    r.active = false;
    rs_.lhs_map_.erase(r.lhs);
    if (--lens_count_[r.lhs.size()] == 0) {
      lens_count_.erase(r.lhs.size());
      refresh_lengths();
    }
    --active_count_;
  }

  void refresh_lengths() {
    rs_.lhs_lengths_.clear();
    for (const auto& [len, cnt] : lens_count_) rs_.lhs_lengths_.push_back(len);
  }

  KbCaps caps_;
  RewritingSystem rs_;
  std::vector<Rule> rules_;
  std::map<std::size_t, int> lens_count_;
  std::size_t active_count_ = 0;
  std::multimap<std::size_t, std::pair<std::string, std::string>> queue_;
  std::size_t queue_size_ = 0;
};

}  // namespace detail

RewritingSystem knuth_bendix(const FpGroupPresentation& p, const KbCaps& caps) {
  return detail::KbBuilder(p, caps).run();
}

}  // namespace growthlab
