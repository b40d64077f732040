#include "skewrate/newton.hpp"

#include <algorithm>

#include "skewrate/errors.hpp"

namespace skewrate {

Rational NewtonPolygon::edge_slope(std::size_t k) const {
  const auto& a = vertex(k);
  const auto& b = vertex(k + 1);
  return make_rational(b.j - a.j, b.i - a.i);
}

namespace {

// (b - o) x (c - o); positive for a counter-clockwise turn.
Rational cross(const RationalPoint& o, const RationalPoint& b, const RationalPoint& c) {
  return (b.x - o.x) * (c.y - o.y) - (b.y - o.y) * (c.x - o.x);
}

}  // namespace

std::vector<RationalPoint> staircase_hull(std::vector<RationalPoint> points) {
  std::sort(points.begin(), points.end(), [](const RationalPoint& a, const RationalPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  std::vector<RationalPoint> minimal;
  for (auto& p : points) {
    if (minimal.empty() || p.y < minimal.back().y) {
      if (!minimal.empty() && minimal.back().x == p.x) continue;
      minimal.push_back(std::move(p));
    }
  }
  std::vector<RationalPoint> chain;
  for (auto& p : minimal) {
    while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <= 0)
      chain.pop_back();
    chain.push_back(std::move(p));
  }
  return chain;
}

NewtonPolygon newton_polygon(const SparsePoly2& poly) {
  if (poly.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
  std::vector<RationalPoint> pts;
  for (const auto& e : pareto_minimal(poly)) pts.push_back({Rational(e.i), Rational(e.j)});
  NewtonPolygon np;
  for (const auto& v : staircase_hull(std::move(pts)))
    np.vertices.push_back({BigInt(v.x.get_num()), BigInt(v.y.get_num())});
  for (std::size_t k = 1; k < np.s(); ++k) {
    const auto& v = np.vertex(k);
    np.intercepts.push_back(Rational(v.j) - np.edge_slope(k) * Rational(v.i));
  }
  return np;
}

Rational weight(const SparsePoly2& poly, const Rational& l) {
  if (poly.is_zero()) throw DomainError("weight of the zero polynomial");
  if (l <= 0) throw DomainError("weight parameter must be positive");
  // Only Pareto-minimal points can attain the minimum.
  const auto pts = pareto_minimal(poly);
  Rational best = Rational(pts.front().i) + l * Rational(pts.front().j);
  for (const auto& e : pts) {
    Rational v = Rational(e.i) + l * Rational(e.j);
    if (v < best) best = std::move(v);
  }
  return best;
}

Rational weight(const std::vector<LatticePoint>& points, const Rational& l) {
  if (points.empty()) throw DomainError("weight of an empty point set");
  if (l <= 0) throw DomainError("weight parameter must be positive");
  Rational best = Rational(points.front().i) + l * Rational(points.front().j);
  for (const auto& p : points) {
    Rational v = Rational(p.i) + l * Rational(p.j);
    if (v < best) best = std::move(v);
  }
  return best;
}

RationalPoint transform_lattice(const RationalPoint& point, const LatticeTransform& kind) {
  if (const auto* a1 = std::get_if<A1>(&kind)) {
    return {point.x + a1->l1 * point.y - a1->l1 * a1->delta, point.y};
  }
  const auto& a2 = std::get<A2>(kind);
  return {point.x, a2.l2_inv * point.x + point.y};
}

}  // namespace skewrate
