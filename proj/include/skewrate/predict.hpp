#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skewrate/classify.hpp"

namespace skewrate {

/// lower (<|<=) value (<|<=) upper. Equal ends with both non-strict pin the value.
struct Bracket {
  Rational lower;
  Rational upper;
  bool lower_strict = false;
  bool upper_strict = false;
  std::string tag;

  bool is_exact() const { return lower == upper && !lower_strict && !upper_strict; }
  bool holds(const Rational& value) const;
};

Bracket exact_bracket(const Rational& value, std::string tag);

/// "11/2 < x < 10", "x = 4", "4 <= x <= 7".
std::string to_string(const Bracket& b, std::string_view var = "x");

enum class VertexTag { AB, ABstar, CD, CDstar };
std::string to_string(VertexTag tag);

/// delta^n compared with the y-intercept of the line through (gamma_n, d^n)
/// and the adjacent vertex.
enum class InterceptRelation { Less, Equal, Greater };
std::string to_string(InterceptRelation rel);

struct VertexPrediction {
  LatticePoint point;
  VertexTag tag;
  Rational slope;  // -1/l1 (previous side) or -1/(l1 + l2) (next side)
  InterceptRelation delta_pow_vs_intercept;
};

/// -M_n is the slope from (gamma_n, d^n) to an adjacent vertex of N(Q^n); M = M_1.
enum class SlopeClaim { EqualsM, GreaterThanM, AtMostM };
std::string to_string(SlopeClaim claim);

/// Where (gamma_n, d^n) sits in the vertex chain of N(Q^n).
enum class DominantPosition { Only, First, Last, Some };
std::string to_string(DominantPosition pos);

struct WeightClaim {
  Rational l;
  Rational value;
  bool exact = true;
};

struct RatePrediction {
  std::uint64_t n = 1;
  BigInt gamma_n;
  BigInt d_pow_n;
  BigInt delta_pow_n;

  LatticePoint dominant;                 // (gamma_n, d^n)
  std::optional<Rational> dominant_coeff;  // absent when the exponent sum is too large
  bool may_vanish = false;               // presence of the dominant term is not claimed
  std::optional<DominantPosition> dominant_position;

  Bracket cqn;
  Bracket cfn;
  std::vector<Bracket> cfn_summary;  // coarser statements checked separately

  std::optional<VertexPrediction> prev_vertex;
  std::optional<VertexPrediction> next_vertex;
  std::optional<SlopeClaim> M_n_claim;       // previous side, M = 1/l1
  std::optional<SlopeClaim> M_n_next_claim;  // next side, M = 1/(l1 + l2)

  std::optional<BigInt> ord_z;
  std::optional<BigInt> ord_w;

  /// Terms the theory says are present in Q^n (beyond the dominant one).
  std::vector<std::pair<LatticePoint, std::string>> present_terms;
  /// Term whose disappearance switches the c(Q^n) regime, if any.
  std::optional<LatticePoint> watched_term;
};

/// Observed absence of the watched term, one entry per n where it was missing.
struct VanishingObservation {
  std::vector<std::uint64_t> absent;  // increasing

  std::optional<std::uint64_t> first_absent_n() const {
    if (absent.empty()) return std::nullopt;
    return absent.front();
  }
  bool absent_at(std::uint64_t n) const {
    return std::find(absent.begin(), absent.end(), n) != absent.end();
  }
};

/// sum_{k=1}^{n-1} gamma_k.
BigInt gamma_prefix_sum(const CaseData& c, std::uint64_t n);

/// Coefficient and bidegree of z^{gamma_n} w^{d^n}.
struct DominantTerm {
  std::optional<Rational> coefficient;
  LatticePoint bidegree;
};
DominantTerm dominant_term(const SkewGerm& f, const CaseData& c, std::uint64_t n);

/// Weights for which w_l(Q^n) = gamma_n + l d^n is asserted.
WeightInterval weight_equality_range(const CaseData& c);

/// Throws DomainError when l is outside weight_equality_range.
WeightClaim predict_weight(const CaseData& c, std::uint64_t n, const Rational& l);

/// Term whose presence at step n selects the c(Q^n) regime: z^{gamma_n} for
/// Case 2 with d = 0 on the boundary, z^{C*_n} w^{D*_n} for Cases 3/4 with a
/// horizontal next edge on the boundary.
std::optional<LatticePoint> watched_term(const CaseData& c, std::uint64_t n);

Bracket predict_cqn_bounds(const CaseData& c, std::uint64_t n, const VanishingObservation& obs);

/// (A_n, B_n), (A*_n, B*_n) and their (C, D) counterparts.
LatticePoint shifted_vertex(const CaseData& c, const LatticePoint& v, std::uint64_t n);
LatticePoint star_vertex(const CaseData& c, const LatticePoint& v, std::uint64_t n);

struct AdjacentVertices {
  std::optional<VertexPrediction> prev;
  std::optional<VertexPrediction> next;
};
AdjacentVertices predict_adjacent_vertices(const CaseData& c, std::uint64_t n);

struct VanishingSum {
  Rational sum;
  bool triggers = false;
};
/// Edge sum deciding whether z^{gamma_2} cancels. Only for Case 2 with d = 0
/// and delta = T_{s-1}; throws DomainError otherwise.
VanishingSum vanishing_sum(const SkewGerm& f, const CaseData& c);

/// c(f^n) = min(delta^n, c(Q^n)) applied to a c(Q^n) bracket.
Bracket combine_cfn(const BigInt& delta_pow_n, const Bracket& cqn);

struct CfnPrediction {
  Bracket bracket;
  std::vector<Bracket> summary;
};
CfnPrediction predict_cfn(const CaseData& c, std::uint64_t n, const VanishingObservation& obs);

struct AsymptoticRate {
  BigInt c_infinity;
  std::vector<Rational> D_candidates;  // sorted, distinct
};
AsymptoticRate asymptotic(const CaseData& c);

/// Everything above for one n.
RatePrediction predict(const SkewGerm& f, const CaseData& c, std::uint64_t n,
                       const VanishingObservation& obs = {});

}  // namespace skewrate
