#include <gtest/gtest.h>

#include "skewrate/errors.hpp"
#include "skewrate/newton.hpp"
#include "support/oracles.hpp"

using namespace skewrate;

namespace {

std::vector<oracle::Key> keys(const NewtonPolygon& n) {
  std::vector<oracle::Key> out;
  for (const auto& v : n.vertices) out.push_back({v.i.get_ui(), v.j.get_ui()});
  return out;
}

}  // namespace

TEST(Newton, G2Polygon) {
  const NewtonPolygon n = newton_polygon(parse_poly("z^3*w + z*w^2"));
  ASSERT_EQ(n.s(), 2u);
  EXPECT_EQ(n.vertex(1), (LatticePoint{1, 2}));
  EXPECT_EQ(n.vertex(2), (LatticePoint{3, 1}));
  EXPECT_EQ(n.T(1), Rational(5, 2));
  EXPECT_EQ(n.edge_slope(1), Rational(-1, 2));
}

TEST(Newton, OracleQ2OfG2) {
  const NewtonPolygon n = newton_polygon(parse_poly("z^4*w^4 + z^6*w^3 + z^7*w^2 + z^9*w + z^4*w^5"));
  const std::vector<oracle::Key> expect{{4, 4}, {7, 2}, {9, 1}};
  EXPECT_EQ(keys(n), expect);
}

TEST(Newton, CollinearPointsAreNotVertices) {
  const NewtonPolygon n = newton_polygon(parse_poly("w^2 + z*w + z^2"));
  ASSERT_EQ(n.s(), 2u);
  EXPECT_EQ(n.vertex(1), (LatticePoint{0, 2}));
  EXPECT_EQ(n.vertex(2), (LatticePoint{2, 0}));
  EXPECT_EQ(n.T(1), Rational(2));
}

TEST(Newton, ZeroPolynomial) { EXPECT_THROW(newton_polygon(SparsePoly2{}), DomainError); }

TEST(Newton, MatchesBruteForceHull) {
  oracle::Gen gen(23);
  for (int k = 0; k < 300; ++k) {
    const SparsePoly2 q = gen.poly(9, 8);
    if (q.is_zero()) continue;
    const NewtonPolygon n = newton_polygon(q);
    EXPECT_EQ(keys(n), oracle::hull_vertices(oracle::from(q))) << to_string(q);
  }
}

TEST(Newton, ConvexityAndIntercepts) {
  oracle::Gen gen(29);
  for (int k = 0; k < 300; ++k) {
    const SparsePoly2 q = gen.poly(9, 8);
    if (q.is_zero()) continue;
    const NewtonPolygon n = newton_polygon(q);
    ASSERT_EQ(n.intercepts.size() + 1, n.s());
    for (std::size_t e = 1; e < n.s(); ++e) {
      const LatticePoint& a = n.vertex(e);
      const LatticePoint& b = n.vertex(e + 1);
      EXPECT_LT(a.i, b.i);
      EXPECT_GT(a.j, b.j);
      const Rational slope = Rational(b.j - a.j) / Rational(b.i - a.i);
      EXPECT_EQ(n.edge_slope(e), slope);
      EXPECT_EQ(n.T(e), Rational(a.j) - slope * Rational(a.i));
      if (e + 1 < n.s()) EXPECT_LT(n.edge_slope(e), n.edge_slope(e + 1));
    }
  }
}

TEST(Weight, SupportMinimumEqualsVertexMinimum) {
  oracle::Gen gen(31);
  for (int k = 0; k < 200; ++k) {
    const SparsePoly2 q = gen.poly(9, 8);
    if (q.is_zero()) continue;
    const Rational l = gen.positive_rational(20, 7);
    const Rational w = weight(q, l);
    EXPECT_EQ(w, oracle::weight(oracle::from(q), l));
    EXPECT_EQ(w, weight(newton_polygon(q).vertices, l));
  }
  EXPECT_THROW(weight(parse_poly("z"), Rational(0)), DomainError);
}

TEST(Lattice, AffineMaps) {
  const RationalPoint a = transform_lattice({Rational(3), Rational(1)}, A1{Rational(2), Rational(2)});
  EXPECT_EQ(a, (RationalPoint{Rational(1), Rational(1)}));
  const RationalPoint b = transform_lattice({Rational(1), Rational(1)}, A2{Rational(1)});
  EXPECT_EQ(b, (RationalPoint{Rational(1), Rational(2)}));
  // l1 = alpha sends (gamma, d) to the vertical axis: (3, 1) with delta = 2, alpha = 3.
  EXPECT_EQ(transform_lattice({Rational(3), Rational(1)}, A1{Rational(3), Rational(2)}).x, Rational(0));
}

TEST(Lattice, StaircaseHull) {
  const std::vector<RationalPoint> pts{{Rational(0), Rational(3)},
                                       {Rational(1), Rational(1)},
                                       {Rational(1, 2), Rational(2)},
                                       {Rational(3), Rational(0)},
                                       {Rational(2), Rational(2)}};
  const auto hull = staircase_hull(pts);
  const std::vector<RationalPoint> expect{
      {Rational(0), Rational(3)}, {Rational(1), Rational(1)}, {Rational(3), Rational(0)}};
  EXPECT_EQ(hull, expect);
}
