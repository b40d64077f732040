#include <gtest/gtest.h>

#include "skewrate/errors.hpp"
#include "skewrate/predict.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace skewrate;

namespace {

struct Oracle {
  oracle::Poly p, q;
};

Oracle run(const SkewGerm& f, std::uint64_t n) {
  auto [p, q] = oracle::iterate(oracle::from(f.p()), oracle::from(f.q()), n);
  return {p, q};
}

Rational coefficient(const oracle::Poly& q, const LatticePoint& pt) {
  const auto it = q.find({pt.i.get_ui(), pt.j.get_ui()});
  return it == q.end() ? Rational(0) : it->second;
}

}  // namespace

TEST(Predict, G2) {
  const SkewGerm f = fixtures::get(2);
  const CaseData c = classify(f);
  const Oracle o = run(f, 2);
  ASSERT_EQ(oracle::total_order(o.q), 8u);

  const RatePrediction r = predict(f, c, 2);
  EXPECT_EQ(r.gamma_n, 9);
  EXPECT_EQ(r.dominant, (LatticePoint{9, 1}));
  EXPECT_EQ(*r.dominant_coeff, Rational(1));
  EXPECT_EQ(coefficient(o.q, r.dominant), Rational(1));
  EXPECT_EQ(r.cqn.lower, Rational(11, 2));
  EXPECT_EQ(r.cqn.upper, Rational(10));
  EXPECT_TRUE(r.cqn.lower_strict && r.cqn.upper_strict);
  EXPECT_TRUE(r.cqn.holds(Rational(8)));
  EXPECT_TRUE(r.cfn.is_exact());
  EXPECT_EQ(r.cfn.lower, Rational(4));
  ASSERT_TRUE(r.prev_vertex);
  EXPECT_EQ(r.prev_vertex->point, (LatticePoint{7, 2}));
  EXPECT_EQ(r.prev_vertex->tag, VertexTag::AB);
  EXPECT_EQ(r.prev_vertex->slope, Rational(-1, 2));
  const auto hull = oracle::hull_vertices(o.q);
  EXPECT_EQ(hull, (std::vector<oracle::Key>{{4, 4}, {7, 2}, {9, 1}}));

  EXPECT_EQ(predict_weight(c, 2, Rational(2)).value, Rational(11));
  EXPECT_EQ(oracle::weight(o.q, Rational(2)), Rational(11));
  EXPECT_THROW(predict_weight(c, 2, Rational(4)), DomainError);
  EXPECT_EQ(*r.ord_w, 1);
}

TEST(Predict, G3) {
  const SkewGerm f = fixtures::get(3);
  const CaseData c = classify(f);
  const Oracle o = run(f, 2);
  EXPECT_EQ(oracle::weight(o.q, Rational(1)), Rational(4));
  EXPECT_EQ(oracle::hull_vertices(o.q), (std::vector<oracle::Key>{{0, 4}, {2, 2}, {4, 1}}));

  const RatePrediction r = predict(f, c, 2);
  EXPECT_EQ(predict_weight(c, 2, Rational(1)).value, Rational(4));
  EXPECT_TRUE(r.cqn.is_exact());
  EXPECT_EQ(r.cqn.lower, Rational(4));
  ASSERT_TRUE(r.next_vertex);
  EXPECT_EQ(r.next_vertex->point, (LatticePoint{2, 2}));
  EXPECT_EQ(*r.ord_z, 0);

  const AsymptoticRate a = asymptotic(c);
  EXPECT_EQ(a.c_infinity, 2);
  EXPECT_EQ(a.D_candidates, (std::vector<Rational>{Rational(1)}));
}

TEST(Predict, G4AndG1) {
  const SkewGerm g4 = fixtures::get(4);
  const Oracle o4 = run(g4, 2);
  ASSERT_EQ(oracle::total_order(o4.q), 4u);
  ASSERT_NE(coefficient(o4.q, {3, 1}), 0);
  const RatePrediction r4 = predict(g4, classify(g4), 2);
  EXPECT_TRUE(r4.cqn.is_exact());
  EXPECT_EQ(r4.cqn.lower, Rational(4));

  const SkewGerm g1 = fixtures::get(1);
  for (std::uint64_t n = 1; n <= 4; ++n) {
    const RatePrediction r = predict(g1, classify(g1), n);
    EXPECT_TRUE(r.cqn.is_exact());
    EXPECT_EQ(r.cqn.lower, Rational(oracle::total_order(run(g1, n).q)));
  }
}

TEST(Predict, G5VanishingSum) {
  const SkewGerm f = fixtures::get(5);
  const CaseData c = classify(f);
  const Oracle o = run(f, 2);
  EXPECT_EQ(coefficient(o.q, {4, 0}), 0);
  EXPECT_EQ(oracle::weight(o.q, Rational(1)), Rational(4));
  const VanishingSum vs = vanishing_sum(f, c);
  EXPECT_EQ(vs.sum, Rational(0));
  EXPECT_TRUE(vs.triggers);
  EXPECT_EQ(predict_weight(c, 2, c.l1).value, Rational(4));

  const SkewGerm plus = fixtures::germ("z^2", "2*w^2 + z*w + z^2");
  const Oracle op = run(plus, 2);
  const VanishingSum vp = vanishing_sum(plus, classify(plus));
  EXPECT_EQ(vp.sum, Rational(4));
  EXPECT_FALSE(vp.triggers);
  EXPECT_EQ(coefficient(op.q, {4, 0}), Rational(4));

  EXPECT_THROW(vanishing_sum(fixtures::get(2), classify(fixtures::get(2))), DomainError);
}

TEST(Predict, MonomialTables) {
  for (long delta = 1; delta <= 4; ++delta)
    for (long gamma = 0; gamma <= 4; ++gamma)
      for (long d = 0; d <= 4; ++d) {
        if (gamma + d == 0) continue;
        const SkewGerm f(SparsePoly2::monomial(Rational(1), {static_cast<std::uint64_t>(delta), 0}),
                         SparsePoly2::monomial(Rational(1), {static_cast<std::uint64_t>(gamma), static_cast<std::uint64_t>(d)}));
        const CaseData c = classify(f);
        for (std::uint64_t n = 1; n <= 6; ++n) {
          // A monomial stays a monomial: z^{gamma_n} w^{d^n}.
          const BigInt gn = oracle::gamma_n(BigInt(delta), BigInt(gamma), BigInt(d), n);
          const Rational cqn(gn + oracle::ipow(BigInt(d), n));
          const Rational cfn = std::min(Rational(oracle::ipow(BigInt(delta), n)), cqn);
          const oracle::MonomialTable t = oracle::monomial_table(delta, gamma, d, n);
          EXPECT_TRUE(t.cqn.holds(cqn)) << delta << " " << gamma << " " << d << " n=" << n;
          EXPECT_TRUE(t.cfn.holds(cfn)) << delta << " " << gamma << " " << d << " n=" << n;

          const SkewGerm fn = iterate_germ(f, n);
          EXPECT_EQ(Rational(static_cast<unsigned long>(orders(fn.q()).c)), cqn);
          const RatePrediction r = predict(f, c, n);
          EXPECT_TRUE(r.cqn.holds(cqn));
          EXPECT_TRUE(r.cfn.holds(cfn));
          for (const auto& b : r.cfn_summary) EXPECT_TRUE(b.holds(cfn)) << b.tag;
        }
        const AsymptoticRate a = asymptotic(c);
        EXPECT_EQ(a.c_infinity, gamma > 0 ? BigInt(delta) : BigInt(std::min(delta, d)));
      }
}

TEST(Predict, CoefficientRemark) {
  std::vector<SkewGerm> germs;
  for (const auto& g : fixtures::kAll) germs.push_back(fixtures::germ(g));
  germs.push_back(fixtures::germ("3*z^2", "2*z^3*w - z*w^2"));
  germs.push_back(fixtures::germ("-2*z^3 + z^4", "1/2*w^2 + 3*z*w"));
  germs.push_back(fixtures::germ("2*z^2", "w^3 - 3*z*w + z^3"));
  for (const SkewGerm& f : germs) {
    for (const CaseData& c : classify_all(f)) {
      const Rational b = f.q().coefficient({c.gamma().get_ui(), c.d().get_ui()});
      for (std::uint64_t n = 1; n <= 3; ++n) {
        const RatePrediction r = predict(f, c, n);
        if (r.may_vanish) continue;
        const Oracle o = run(f, n);
        const Rational expect = oracle::dominant_coefficient(f.a_delta(), b, c.delta, c.gamma(), c.d(), n);
        EXPECT_EQ(coefficient(o.q, r.dominant), expect) << to_string(f.q()) << " n=" << n;
        ASSERT_TRUE(r.dominant_coeff);
        EXPECT_EQ(*r.dominant_coeff, expect);
      }
    }
  }
}

TEST(Predict, BracketPrinting) {
  Bracket b{Rational(11, 2), Rational(10), true, true, "t"};
  EXPECT_EQ(to_string(b, "c"), "11/2 < c < 10");
  EXPECT_EQ(to_string(exact_bracket(Rational(4), "t"), "c"), "c = 4");
  EXPECT_TRUE(b.holds(Rational(8)));
  EXPECT_FALSE(b.holds(Rational(10)));
}
