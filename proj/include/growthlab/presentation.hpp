#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "growthlab/snf.hpp"

namespace growthlab {

// Words are strings over generator letters; an uppercase letter is the
// formal inverse of the corresponding lowercase generator.

char invert_letter(char c);
std::string invert_word(std::string_view w);
std::string free_reduce(std::string_view w);

struct FpGroupPresentation {
  std::vector<char> generators;       // distinct lowercase letters, in order
  std::vector<std::string> relators;  // freely reduced, non-empty

  bool has_letter(char c) const;
};

/// Validates and normalizes raw input: duplicate generators are an input
/// error, relators are freely reduced (with a warning) and empty relators
/// dropped (with a warning).
FpGroupPresentation make_presentation(const std::string& generators,
                                      const std::vector<std::string>& relators,
                                      std::vector<std::string>* warnings = nullptr);

/// <g1,g2,g3 | g1^p (g1 g2 g3)^-1, g2^q (g1 g2 g3)^-1, g3^r (g1 g2 g3)^-1>
FpGroupPresentation brieskorn_presentation(int p, int q, int r);

FpGroupPresentation free_presentation(int rank);

/// Coxeter presentation of the (p,q,r) triangle reflection group on a,b,c
/// with m(a,b)=p, m(a,c)=q, m(b,c)=r.
FpGroupPresentation coxeter_triangle_presentation(int p, int q, int r);

/// Von Dyck style two-generator presentation <a,b | a^p, b^q, (ab)^r>.
FpGroupPresentation von_dyck_presentation(int p, int q, int r);

struct AbelianizationResult {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;  // the d_i > 1
  IntMatrix relation_matrix;           // exponent sums, relators x generators

  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
};

/// Smith normal form of the exponent-sum relation matrix;
/// H1 = Z^free_rank + sum of Z/d_i.
AbelianizationResult abelianize(const FpGroupPresentation& p);

struct KervaireReport {
  bool h1_trivial = false;
  bool deficiency_ok = false;        // #relators <= #generators
  std::string h2_status = "unknown";  // never computed, reported as such
};

KervaireReport kervaire_check(const FpGroupPresentation& p);

}  // namespace growthlab
