#pragma once

#include <variant>
#include <vector>

#include "skewrate/poly.hpp"
#include "skewrate/rational.hpp"

namespace skewrate {

/// Vertex chain (n_1, m_1) ... (n_s, m_s) of the hull of the quadrants
/// D(i, j) = {x >= i, y >= j}, with n strictly increasing and m strictly
/// decreasing. intercepts[k-1] = T_k, the y-intercept of the edge from vertex
/// k to vertex k+1. Indices in the public API below are 1-based.
struct NewtonPolygon {
  std::vector<LatticePoint> vertices;
  std::vector<Rational> intercepts;

  std::size_t s() const { return vertices.size(); }
  const LatticePoint& vertex(std::size_t k) const { return vertices.at(k - 1); }
  const Rational& T(std::size_t k) const { return intercepts.at(k - 1); }

  /// Slope of the edge from vertex k to vertex k+1 (negative).
  Rational edge_slope(std::size_t k) const;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

/// Throws DomainError on the zero polynomial.
NewtonPolygon newton_polygon(const SparsePoly2& poly);

/// Extreme points of the quadrant hull for rational points, same ordering.
std::vector<RationalPoint> staircase_hull(std::vector<RationalPoint> points);

/// min (i + l j) over the support. Throws DomainError for zero poly or l <= 0.
Rational weight(const SparsePoly2& poly, const Rational& l);
Rational weight(const std::vector<LatticePoint>& points, const Rational& l);

/// (i, j) -> (i + l1 j - l1 delta, j).
struct A1 {
  Rational l1;
  Rational delta;
};

/// (i, j) -> (i, l2_inv i + j).
struct A2 {
  Rational l2_inv;
};

using LatticeTransform = std::variant<A1, A2>;

RationalPoint transform_lattice(const RationalPoint& point, const LatticeTransform& kind);

inline RationalPoint to_rational_point(const LatticePoint& p) {
  return {Rational(p.i), Rational(p.j)};
}

}  // namespace skewrate
