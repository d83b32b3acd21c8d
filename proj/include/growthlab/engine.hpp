#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "growthlab/cyclotomic.hpp"
#include "growthlab/rewriting.hpp"

namespace growthlab {

// A solved word problem: canonical keys for group elements, composition,
// inversion. Keys are opaque byte strings; equal elements have equal keys
// (guaranteed for the Tits engines by faithfulness of the reflection
// representation, and for rewriting engines when the system is confluent).
class GroupEngine {
public:
  enum class Kind { rewriting, coxeter_tits, von_dyck_tits };

  virtual ~GroupEngine() = default;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Registered generator letters (the word metric refers to these).
  const std::string& letters() const { return letters_; }
  bool knows_letter(char c) const;
  const std::string& identity_key() const { return identity_key_; }
  /// The registered letters as one-letter generating words.
  std::vector<std::string> default_generating_set() const;

  virtual std::string normalize(std::string_view word) const = 0;
  virtual std::string compose(const std::string& a, const std::string& b) const = 0;
  virtual std::string invert(const std::string& a) const = 0;
  /// Right extension by one registered letter (ball enumeration hot path).
  virtual std::string extend(const std::string& key, char letter) const;
  /// True when |key| equals word-metric distance w.r.t. the letters.
  virtual bool geodesic_keys() const { return false; }
  virtual std::string display(const std::string& key) const;

  /// Word length of the element w.r.t. the registered letters (BFS-backed
  /// for non-geodesic engines; throws Error(cap) past the search cap).
  std::size_t word_length(const std::string& key) const;

protected:
  GroupEngine(Kind kind, std::string name, std::string letters)
      : kind_(kind), name_(std::move(name)), letters_(std::move(letters)) {}

  Kind kind_;
  std::string name_;
  std::string letters_;
  std::string identity_key_;

private:
  struct DistanceCache {
    std::unordered_map<std::string, std::size_t> dist;
    std::vector<std::string> frontier;
    std::size_t radius = 0;
    bool closed = false;
  };
  mutable DistanceCache dcache_;
  mutable std::mutex mutex_;
};

std::shared_ptr<GroupEngine> make_rewriting_engine(const FpGroupPresentation& p,
                                                   const KbCaps& caps = {});
/// Access the underlying rewriting system (input error for other kinds).
const RewritingSystem& rewriting_system_of(const GroupEngine& e);

/// Tits reflection representation of the (p,q,r) triangle Coxeter group,
/// letters a,b,c with m(a,b)=p, m(a,c)=q, m(b,c)=r. Exact over the smallest
/// real cyclotomic ring containing the three cosines.
std::shared_ptr<GroupEngine> coxeter_triangle_engine(int p, int q, int r);

/// The orientation-preserving index-2 subgroup, generators x = s1*s2 and
/// y = s2*s3 (letters x,y and inverses X,Y); x^p = y^r = (xy)^q = 1.
std::shared_ptr<GroupEngine> von_dyck_engine(int p, int q, int r);

}  // namespace growthlab
