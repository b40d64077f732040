#include <gtest/gtest.h>

#include "skewrate/blowup.hpp"
#include "skewrate/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace skewrate;

namespace {

// q(z, z^l c) / z^(l delta) for a monomial p = a z^delta, term by term.
oracle::Poly pi1_by_hand(const SkewGerm& f, std::uint64_t l) {
  const Rational a_l = oracle::rpow(f.a_delta(), BigInt(static_cast<unsigned long>(l)));
  oracle::Poly out;
  for (const auto& t : f.q().terms()) {
    const std::uint64_t i = t.exp.i + l * t.exp.j - l * f.delta();
    out[{i, t.exp.j}] += t.coeff / a_l;
  }
  oracle::prune(out);
  return out;
}

void expect_all_hold(const std::vector<LemmaCheck>& checks, const std::string& ctx) {
  EXPECT_FALSE(checks.empty()) << ctx;
  for (const auto& c : checks) EXPECT_TRUE(c.holds) << ctx << ": " << c.name;
}

}  // namespace

TEST(Pi1, G2IntegralWeights) {
  const SkewGerm f = fixtures::get(2);
  const CaseData c = classify(f);
  for (const std::uint64_t l : {2u, 3u}) {
    const BlowupReport r = conjugate_pi1(f, c, l);
    ASSERT_TRUE(r.transformed);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(oracle::from(r.q_tilde), pi1_by_hand(f, l));
    const auto hull = oracle::hull_vertices(oracle::from(r.q_tilde));
    ASSERT_EQ(hull.size(), 1u);
    EXPECT_EQ(r.expected_vertex, (LatticePoint{hull[0].first, hull[0].second}));
    expect_all_hold(r.lemma_checks, "l=" + std::to_string(l));
    const LemmaCheck k = check_conjugacy_pi1(f, c, l, 2);
    EXPECT_TRUE(k.holds) << k.name;
  }
  EXPECT_EQ(to_string(conjugate_pi1(f, c, 2).q_tilde), "z*w + z*w^2");
  EXPECT_EQ(conjugate_pi1(f, c, 2).expected_vertex, (LatticePoint{1, 1}));
  EXPECT_EQ(to_string(conjugate_pi1(f, c, 3).q_tilde), "w + z*w^2");
  EXPECT_EQ(conjugate_pi1(f, c, 3).expected_vertex, (LatticePoint{0, 1}));
  EXPECT_THROW(conjugate_pi1(f, c, 1), DomainError);
  EXPECT_THROW(conjugate_pi1(f, c, 4), DomainError);
}

TEST(Pi1, Case4FixtureThenPi2) {
  const SkewGerm f = fixtures::get(6);
  const CaseData c = classify(f);
  ASSERT_EQ(c.kind, CaseKind::Case4);
  const BlowupReport r = conjugate_pi1(f, c, 1);
  ASSERT_TRUE(r.transformed);
  EXPECT_EQ(oracle::from(r.q_tilde), pi1_by_hand(f, 1));
  EXPECT_EQ(to_string(r.q_tilde), "z*w + z^2 + z*w^5");
  expect_all_hold(r.lemma_checks, "g6 pi1");
  EXPECT_TRUE(check_conjugacy_pi1(f, c, 1, 2).holds);

  // The transform has a Case 3 reading at (gamma~, d) with l2~ = l1 + l2 - l.
  std::optional<CaseData> c3;
  for (const auto& t : classify_all(*r.transformed))
    if (t.kind == CaseKind::Case3 && t.gamma_d == r.expected_vertex) c3 = t;
  ASSERT_TRUE(c3);
  EXPECT_EQ(c3->l2, ExtendedRational(Rational(1)));
  const BlowupReport r2 = conjugate_pi2(*r.transformed, *c3, 1);
  expect_all_hold(r2.lemma_checks, "g6 pi2");
  EXPECT_EQ(r2.expected_vertex, (LatticePoint{1, 2}));
  EXPECT_EQ(oracle::hull_vertices(oracle::from(r2.q_tilde)), (std::vector<oracle::Key>{{1, 2}}));
}

TEST(Pi1, NonMonomialPIsTruncated) {
  const SkewGerm f = fixtures::germ("z^2 + z^3", "z^3*w + z*w^2");
  const CaseData c = classify(f);
  const BlowupReport r = conjugate_pi1(f, c, 2);
  EXPECT_FALSE(r.exact);
  ASSERT_TRUE(r.truncation_order);
  expect_all_hold(r.lemma_checks, "non-monomial");
  EXPECT_THROW(check_conjugacy_pi1(f, c, 2, 2), DomainError);
}

TEST(Pi2, G3) {
  const SkewGerm f = fixtures::get(3);
  const CaseData c = classify(f);
  const BlowupReport r = conjugate_pi2(f, c, 1);
  EXPECT_FALSE(r.transformed);
  EXPECT_EQ(to_string(r.q_tilde), "w^2 + z*w^2");
  EXPECT_EQ(r.expected_vertex, (LatticePoint{0, 2}));
  EXPECT_EQ(*r.p_leading_exponent, (LatticePoint{3, 1}));
  EXPECT_EQ(*r.p_leading_coeff, Rational(1));
  expect_all_hold(r.lemma_checks, "g3 pi2");
  EXPECT_NO_THROW(conjugate_pi2(f, c, Rational(1)));
  EXPECT_THROW(conjugate_pi2(f, c, Rational(2, 3)), DomainError);
}

TEST(Pi2, RejectsOtherCases) {
  EXPECT_THROW(conjugate_pi2(fixtures::get(2), classify(fixtures::get(2)), 1), DomainError);
  EXPECT_THROW(conjugate_pi1(fixtures::get(3), classify(fixtures::get(3)), 1), DomainError);
}

TEST(LatticeLemmas, Fixtures) {
  const SkewGerm g2 = fixtures::get(2);
  for (const Rational l : {Rational(2), Rational(5, 2), Rational(3)})
    expect_all_hold(lattice_lemma_case2(g2, classify(g2), l), "g2 " + to_string(l));
  const SkewGerm g3 = fixtures::get(3);
  for (const Rational l : {Rational(1, 3), Rational(1)})
    expect_all_hold(lattice_lemma_case3(g3, classify(g3), l), "g3 " + to_string(l));
  const SkewGerm g4 = fixtures::get(4);
  const CaseData c4 = classify(g4);
  expect_all_hold(lattice_lemma_case4(g4, c4, Rational(1, 2), Rational(3, 2)), "g4");
  expect_all_hold(lattice_lemma_case4(g4, c4, Rational(3, 4), Rational(1, 2)), "g4");
  expect_all_hold(composite_line_checks(c4), "g4 composite");
  expect_all_hold(composite_line_checks(classify(fixtures::get(6))), "g6 composite");
}

TEST(LatticeLemmas, PolygonCommutesWithA1) {
  // For integral l the blow-up polygon is the staircase hull of the A1 images.
  oracle::Gen gen(53);
  int tested = 0;
  for (int k = 0; k < 4000 && tested < 40; ++k) {
    const SparsePoly2 q = gen.poly(5, 6);
    if (q.is_zero() || q.has_constant_term()) continue;
    const SkewGerm f(SparsePoly2::monomial(Rational(1), {1 + gen.below(3), 0}), q);
    const CaseData c = classify(f);
    if (c.kind != CaseKind::Case2) continue;
    const WeightInterval I = weight_intervals(c).I_f;
    if (!is_integer(c.l1) || !I.contains(c.l1)) continue;
    const std::uint64_t l = c.l1.get_num().get_ui();
    const BlowupReport r = conjugate_pi1(f, c, l);
    std::vector<RationalPoint> images;
    for (const auto& t : q.terms())
      images.push_back(transform_lattice({Rational(static_cast<unsigned long>(t.exp.i)), Rational(static_cast<unsigned long>(t.exp.j))},
                                         A1{c.l1, Rational(c.delta)}));
    std::vector<RationalPoint> hull;
    for (const auto& [i, j] : oracle::hull_vertices(oracle::from(r.q_tilde)))
      hull.push_back({Rational(static_cast<unsigned long>(i)), Rational(static_cast<unsigned long>(j))});
    EXPECT_EQ(staircase_hull(images), hull) << to_string(q);
    expect_all_hold(r.lemma_checks, to_string(q));
    ++tested;
  }
  EXPECT_GE(tested, 10);
}
