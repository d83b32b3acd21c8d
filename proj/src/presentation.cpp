#include "growthlab/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace growthlab {

char invert_letter(char c) {
  if (std::islower(static_cast<unsigned char>(c))) return static_cast<char>(std::toupper(c));
  if (std::isupper(static_cast<unsigned char>(c))) return static_cast<char>(std::tolower(c));
  fail(ErrorKind::input, std::string("not a generator letter: '") + c + "'");
}

std::string invert_word(std::string_view w) {
  std::string out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(invert_letter(*it));
  return out;
}

std::string free_reduce(std::string_view w) {
  std::string stack;
  stack.reserve(w.size());
  for (char c : w) {
    if (!stack.empty() && stack.back() == invert_letter(c))
      stack.pop_back();
    else
      stack.push_back(c);
  }
  return stack;
}

bool FpGroupPresentation::has_letter(char c) const {
  char low = std::islower(static_cast<unsigned char>(c))
                 ? c
                 : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return std::find(generators.begin(), generators.end(), low) != generators.end();
}

FpGroupPresentation make_presentation(const std::string& generators,
                                      const std::vector<std::string>& relators,
                                      std::vector<std::string>* warnings) {
  FpGroupPresentation p;
  for (char c : generators) {
    if (!std::islower(static_cast<unsigned char>(c)))
      fail(ErrorKind::input, std::string("generator must be a lowercase letter: '") + c + "'");
    if (std::find(p.generators.begin(), p.generators.end(), c) != p.generators.end())
      fail(ErrorKind::input, std::string("duplicate generator name: '") + c + "'");
    p.generators.push_back(c);
  }
  for (const std::string& r : relators) {
    for (char c : r)
      if (!p.has_letter(c))
        fail(ErrorKind::input, std::string("relator uses unknown letter: '") + c + "'");
    std::string reduced = free_reduce(r);
    if (reduced != r && warnings)
      warnings->push_back("relator \"" + r + "\" was not freely reduced; using \"" + reduced +
                          "\"");
    if (reduced.empty()) {
      if (warnings) warnings->push_back("relator \"" + r + "\" reduces to the empty word; dropped");
      continue;
    }
    p.relators.push_back(std::move(reduced));
  }
  return p;
}

FpGroupPresentation brieskorn_presentation(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2)
    fail(ErrorKind::domain, "brieskorn_presentation: exponents must be >= 2");
  auto rel = [](char g, int e) {
    std::string w(static_cast<std::size_t>(e), g);
    return w + "CBA";  // (abc)^-1
  };
  FpGroupPresentation pres;
  pres.generators = {'a', 'b', 'c'};
  pres.relators = {free_reduce(rel('a', p)), free_reduce(rel('b', q)), free_reduce(rel('c', r))};
  return pres;
}

FpGroupPresentation free_presentation(int rank) {
  if (rank < 1 || rank > 26) fail(ErrorKind::domain, "free_presentation: rank must be in 1..26");
  FpGroupPresentation pres;
  for (int i = 0; i < rank; ++i) pres.generators.push_back(static_cast<char>('a' + i));
  return pres;
}

FpGroupPresentation coxeter_triangle_presentation(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2)
    fail(ErrorKind::domain, "coxeter_triangle_presentation: orders must be >= 2");
  auto power = [](const std::string& w, int e) {
    std::string out;
    for (int i = 0; i < e; ++i) out += w;
    return out;
  };
  FpGroupPresentation pres;
  pres.generators = {'a', 'b', 'c'};
  pres.relators = {"aa", "bb", "cc", power("ab", p), power("ac", q), power("bc", r)};
  return pres;
}

FpGroupPresentation von_dyck_presentation(int p, int q, int r) {
  if (p < 2 || q < 2 || r < 2)
    fail(ErrorKind::domain, "von_dyck_presentation: orders must be >= 2");
  std::string ab;
  for (int i = 0; i < r; ++i) ab += "ab";
  FpGroupPresentation pres;
  pres.generators = {'a', 'b'};
  pres.relators = {std::string(static_cast<std::size_t>(p), 'a'),
                   std::string(static_cast<std::size_t>(q), 'b'), ab};
  return pres;
}

AbelianizationResult abelianize(const FpGroupPresentation& p) {
  AbelianizationResult res;
  std::size_t g = p.generators.size();
  std::map<char, std::size_t> index;
  for (std::size_t i = 0; i < g; ++i) index[p.generators[i]] = i;

  IntMatrix rel(p.relators.size(), g);
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (char c : p.relators[i]) {
      bool inv = std::isupper(static_cast<unsigned char>(c));
      char low = inv ? static_cast<char>(std::tolower(c)) : c;
      rel.at(i, index[low]) += inv ? -1 : 1;
    }
  res.relation_matrix = rel;

  if (p.relators.empty()) {
    res.free_rank = g;
    return res;
  }
  SnfDecomposition s = snf(rel);
  std::vector<Int> factors = invariant_factors(s);
  res.free_rank = g - factors.size();
  for (const Int& d : factors)
    if (d > 1) res.invariant_factors.push_back(d);
  return res;
}

KervaireReport kervaire_check(const FpGroupPresentation& p) {
  KervaireReport rep;
  rep.h1_trivial = abelianize(p).trivial();
  rep.deficiency_ok = p.relators.size() <= p.generators.size();
  rep.h2_status = "unknown";
  return rep;
}

}  // namespace growthlab
