#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrate/germ.hpp"
#include "skewrate/newton.hpp"

namespace skewrate {

enum class CaseKind { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

std::string to_string(CaseKind kind);

struct CaseData {
  CaseKind kind = CaseKind::Case1;
  BigInt delta;
  NewtonPolygon polygon;
  LatticePoint gamma_d;          // (gamma, d)
  Rational l1;                   // 0 in Cases 1 and 3
  ExtendedRational l2;           // +inf in Cases 1 and 2
  std::optional<std::size_t> k;  // vertex index, Case 4 only (1-based)
  std::optional<Rational> alpha; // gamma / (delta - d), absent when delta == d
  bool delta_eq_T_upper = false; // delta == T_{s-1} (Case 2) or T_{k-1} (Case 4)
  bool delta_eq_T_lower = false; // delta == T_1 (Case 3) or T_k (Case 4)
  std::vector<CaseKind> applicable;

  const BigInt& gamma() const { return gamma_d.i; }
  const BigInt& d() const { return gamma_d.j; }
  /// l1 + l2; +inf in Cases 1 and 2.
  ExtendedRational l1_plus_l2() const;
};

/// Every reading of f whose defining inequalities hold, in priority order
/// Case2, Case3, Case4 (one entry per admissible k), or the single Case1.
std::vector<CaseData> classify_all(const SkewGerm& f);

/// Primary reading: the first entry of classify_all.
CaseData classify(const SkewGerm& f);

struct WeightInterval {
  ExtendedRational lower;
  ExtendedRational upper;
  bool lower_closed = true;
  bool upper_closed = true;

  bool contains(const Rational& l) const;
  bool empty() const;
  friend bool operator==(const WeightInterval&, const WeightInterval&) = default;
};

std::string to_string(const WeightInterval& interval);

enum class RectangleShape {
  UpperBoundary,  // T_k < delta = T_{k-1}
  Interior,       // T_k < delta < T_{k-1}
  LowerBoundary,  // T_k = delta < T_{k-1}
};

/// Admissible pairs (x, y) = (l_(1), l_(1) + l_(2)) in Case 4:
/// x in first, y in [alpha, l1 + l2], y > x.
struct WeightRectangle {
  RectangleShape shape = RectangleShape::Interior;
  WeightInterval first;
  Rational sum_lower;  // alpha
  Rational sum_upper;  // l1 + l2
  std::optional<RationalPoint> excluded_corner;

  /// Interval of l_(2) admissible for l_(1) = x; requires first.contains(x).
  WeightInterval second_of(const Rational& x) const;
  bool contains(const Rational& x, const Rational& y) const;
};

struct WeightIntervals {
  WeightInterval I_f;                      // Cases 1-3; Case 4: first coordinate
  std::optional<WeightRectangle> rectangle;  // Case 4
  std::optional<WeightInterval> I_f_AR;      // Case 4: [l1, l1 + l2]
};

WeightIntervals weight_intervals(const CaseData& c);

/// R^n(l) = (gamma_n + l d^n) / delta^n; n = 0 returns l.
Rational r_map(const CaseData& c, const Rational& l, std::uint64_t n);

}  // namespace skewrate
