#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrate/classify.hpp"

namespace skewrate {

struct LemmaCheck {
  std::string name;
  bool holds = true;
  std::optional<LatticePoint> witness;  // offending support point or vertex when !holds
};

struct BlowupReport {
  /// pi1: (p, q~). Empty for pi2 (not a skew product) and when q~(0, 0) != 0.
  std::optional<SkewGerm> transformed;
  bool fixes_origin = true;
  SparsePoly2 q_tilde;
  /// Expected sole or extreme vertex: (gamma~, d) for pi1, (gamma, d~) for pi2.
  LatticePoint expected_vertex;
  /// pi1: false when p is not a monomial and q~ is a truncated series.
  bool exact = true;
  std::optional<std::uint64_t> truncation_order;
  /// pi2: leading monomial of p~ = p(t w^L) / q~^L.
  std::optional<LatticePoint> p_leading_exponent;
  std::optional<Rational> p_leading_coeff;
  std::vector<LemmaCheck> lemma_checks;

  bool all_hold() const;
};

/// pi1(z, c) = (z, z^l c): q~ = q(z, z^l c) / p(z)^l. Requires an integer l >= 1.
/// Throws DomainError when a term would get a negative z-exponent.
BlowupReport conjugate_pi1(const SkewGerm& f, const CaseData& c, std::uint64_t l,
                           const Limits& limits = {});

/// pi2(t, w) = (t w^L, w) with L = 1/l: q~ = sum b_ij t^i w^{L i + j}.
BlowupReport conjugate_pi2(const SkewGerm& f, const CaseData& c, std::uint64_t L);

/// Rational-weight entry point: throws DomainError unless l_inv is a positive integer.
BlowupReport conjugate_pi2(const SkewGerm& f, const CaseData& c, const Rational& l_inv);

/// pi1^{-1} o f^n o pi1 == (pi1^{-1} o f o pi1)^n, exact. Requires monomial p.
LemmaCheck check_conjugacy_pi1(const SkewGerm& f, const CaseData& c, std::uint64_t l,
                               std::uint64_t n, const Limits& limits = {});

/// Lattice form of the blow-up lemmas for rational weights, on the support of q.
/// Case 2: A1(l, delta) images satisfy 0 <= gamma~ <= i~ (plus the vertex refinements).
std::vector<LemmaCheck> lattice_lemma_case2(const SkewGerm& f, const CaseData& c,
                                            const Rational& l);
/// Case 3: A2(1/l) images satisfy d <= d~ <= j~ and d~ <= delta; d < d~ when gamma > 0.
std::vector<LemmaCheck> lattice_lemma_case3(const SkewGerm& f, const CaseData& c,
                                            const Rational& l);
/// Case 4: A2(1/l_(2)) o A1(l_(1), delta) images dominate (gamma~, d~), gamma~ >= 0, d~ >= d.
std::vector<LemmaCheck> lattice_lemma_case4(const SkewGerm& f, const CaseData& c,
                                            const Rational& l_first, const Rational& l_second);

/// Case 4: A2(1/l2) o A1(l1, delta) sends L_{k-1} to a vertical and L_k to a
/// horizontal line through (gamma~, d~).
std::vector<LemmaCheck> composite_line_checks(const CaseData& c);

}  // namespace skewrate
