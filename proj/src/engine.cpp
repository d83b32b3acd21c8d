#include "growthlab/engine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace growthlab {

namespace {

constexpr std::size_t kDistanceRadiusCap = 64;
constexpr std::size_t kDistanceSizeCap = 10000000;

std::string hex_digest(const std::string& key) {
  // FNV-1a, printable tag for opaque binary keys.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << "g0x" << std::hex << h;
  return os.str();
}

}  // namespace

bool GroupEngine::knows_letter(char c) const {
  return letters_.find(c) != std::string::npos;
}

std::vector<std::string> GroupEngine::default_generating_set() const {
  std::vector<std::string> out;
  for (char c : letters_) out.emplace_back(1, c);
  return out;
}

std::string GroupEngine::extend(const std::string& key, char letter) const {
  return compose(key, normalize(std::string_view(&letter, 1)));
}

std::string GroupEngine::display(const std::string& key) const { return hex_digest(key); }

std::size_t GroupEngine::word_length(const std::string& key) const {
  if (geodesic_keys()) return key.size();
  std::lock_guard<std::mutex> lock(mutex_);
  auto& c = dcache_;
  if (c.dist.empty()) {
    c.dist.emplace(identity_key(), 0);
    c.frontier = {identity_key()};
    c.radius = 0;
    c.closed = false;
  }
  for (;;) {
    auto it = c.dist.find(key);
    if (it != c.dist.end()) return it->second;
    if (c.closed) fail(ErrorKind::input, "word_length: element not generated by the letters");
    if (c.radius >= kDistanceRadiusCap || c.dist.size() >= kDistanceSizeCap)
      fail(ErrorKind::cap, "word_length: search cap exceeded");
    std::vector<std::string> next;
    for (const std::string& k : c.frontier)
      for (char l : letters_) {
        std::string n = extend(k, l);
        if (c.dist.emplace(n, c.radius + 1).second) next.push_back(std::move(n));
      }
    c.radius++;
    if (next.empty()) c.closed = true;
    c.frontier = std::move(next);
  }
}

namespace {

class RewritingEngine final : public GroupEngine {
public:
  RewritingEngine(const FpGroupPresentation& p, const KbCaps& caps)
      : GroupEngine(Kind::rewriting, "", ""), rs_(knuth_bendix(p, caps)) {
    letters_.assign(rs_.alphabet().begin(), rs_.alphabet().end());
    std::string gens;
    for (char g : p.generators) gens += g;
    name_ = "rewriting<" + gens + ">";
    identity_key_.clear();
  }

  std::string normalize(std::string_view word) const override { return rs_.rewrite(word); }
  std::string compose(const std::string& a, const std::string& b) const override {
    return rs_.rewrite_appended(a, b);
  }
  std::string invert(const std::string& a) const override { return rs_.rewrite(invert_word(a)); }
  std::string extend(const std::string& key, char letter) const override {
    return rs_.rewrite_appended(key, std::string_view(&letter, 1));
  }
  bool geodesic_keys() const override { return rs_.confluent(); }
  std::string display(const std::string& key) const override { return key; }

  const RewritingSystem& system() const { return rs_; }

private:
  RewritingSystem rs_;
};

class TitsEngine final : public GroupEngine {
public:
  TitsEngine(Kind kind, int p, int q, int r)
      : GroupEngine(kind, "", ""), ring_(ring_order(p, q, r)) {
    if (p < 2 || q < 2 || r < 2)
      fail(ErrorKind::domain, "triangle engine: orders must be >= 2");
    // Tits bilinear form B(a_i,a_i) = 2, B(a_i,a_j) = -2cos(pi/m_ij) with
    // m(1,2)=p, m(1,3)=q, m(2,3)=r; reflections s_i(v) = v - B(v,a_i) a_i.
    RealCyclotomicRing::Elem b[3][3];
    int m[3][3] = {{1, p, q}, {p, 1, r}, {q, r, 1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        b[i][j] = (i == j) ? ring_.from_int(2) : ring_.neg(two_cos(m[i][j]));
    for (int i = 0; i < 3; ++i) {
      refl_[i] = ring_mat_identity(ring_);
      for (int j = 0; j < 3; ++j)
        refl_[i].at(i, j) = (i == j) ? ring_.from_int(-1) : ring_.neg(b[j][i]);
    }
    identity_key_ = ring_mat_key(ring_mat_identity(ring_));

    if (kind == Kind::coxeter_tits) {
      name_ = "coxeter-" + std::to_string(p) + "-" + std::to_string(q) + "-" + std::to_string(r);
      // uppercase aliases are accepted in words but not registered as letters
      letters_ = "abc";
      letter_mats_ = {{'a', refl_[0]}, {'b', refl_[1]}, {'c', refl_[2]},
                      {'A', refl_[0]}, {'B', refl_[1]}, {'C', refl_[2]}};
    } else {
      name_ = "von-dyck-" + std::to_string(p) + "-" + std::to_string(q) + "-" + std::to_string(r);
      RingMatrix x = ring_mat_mul(refl_[0], refl_[1]);
      RingMatrix y = ring_mat_mul(refl_[1], refl_[2]);
      RingMatrix xi = ring_mat_mul(refl_[1], refl_[0]);
      RingMatrix yi = ring_mat_mul(refl_[2], refl_[1]);
      letters_ = "xXyY";
      letter_mats_ = {{'x', x}, {'X', xi}, {'y', y}, {'Y', yi}};
    }
  }

  std::string normalize(std::string_view word) const override {
    RingMatrix acc = ring_mat_identity(ring_);
    for (char c : word) acc = ring_mat_mul(acc, letter_matrix(c));
    return ring_mat_key(acc);
  }
  std::string compose(const std::string& a, const std::string& b) const override {
    RingMatrix ma = ring_mat_from_key(ring_, a);
    RingMatrix mb = ring_mat_from_key(ring_, b);
    return ring_mat_key(ring_mat_mul(ma, mb));
  }
  std::string invert(const std::string& a) const override {
    RingMatrix ma = ring_mat_from_key(ring_, a);
    return ring_mat_key(ring_mat_inverse_unimodular(ma));
  }
  std::string extend(const std::string& key, char letter) const override {
    RingMatrix m = ring_mat_from_key(ring_, key);
    return ring_mat_key(ring_mat_mul(m, letter_matrix(letter)));
  }

  const RealCyclotomicRing& ring() const { return ring_; }
  const RingMatrix& reflection(int i) const { return refl_[i]; }

private:
  static unsigned ring_order(int p, int q, int r) {
    if (p < 2 || q < 2 || r < 2)
      fail(ErrorKind::domain, "triangle engine: orders must be >= 2");
    // Only cos(pi/m) for m >= 4 is irrational; collect the lcm of those.
    unsigned n = 1;
    for (int m : {p, q, r})
      if (m >= 4) n = std::lcm(n, static_cast<unsigned>(m));
    return n == 1 ? 2u : n;  // order 2 gives the rational ring Z
  }

  RealCyclotomicRing::Elem two_cos(int m) const {
    if (m == 2) return ring_.from_int(0);
    if (m == 3) return ring_.from_int(1);
    return ring_.two_cos_pi_over(static_cast<unsigned>(m));
  }

  const RingMatrix& letter_matrix(char c) const {
    for (const auto& [l, m] : letter_mats_)
      if (l == c) return m;
    fail(ErrorKind::input, std::string("unknown letter: '") + c + "'");
  }

  RealCyclotomicRing ring_;
  RingMatrix refl_[3];
  std::vector<std::pair<char, RingMatrix>> letter_mats_;
};

}  // namespace

std::shared_ptr<GroupEngine> make_rewriting_engine(const FpGroupPresentation& p,
                                                   const KbCaps& caps) {
  return std::make_shared<RewritingEngine>(p, caps);
}

const RewritingSystem& rewriting_system_of(const GroupEngine& e) {
  auto* re = dynamic_cast<const RewritingEngine*>(&e);
  if (!re) fail(ErrorKind::input, "engine is not rewriting-based");
  return re->system();
}

std::shared_ptr<GroupEngine> coxeter_triangle_engine(int p, int q, int r) {
  return std::make_shared<TitsEngine>(GroupEngine::Kind::coxeter_tits, p, q, r);
}

std::shared_ptr<GroupEngine> von_dyck_engine(int p, int q, int r) {
  return std::make_shared<TitsEngine>(GroupEngine::Kind::von_dyck_tits, p, q, r);
}

}  // namespace growthlab
