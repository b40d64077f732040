#include "skewrate/blowup.hpp"

#include <algorithm>

#include "skewrate/errors.hpp"

namespace skewrate {

bool BlowupReport::all_hold() const {
  return std::all_of(lemma_checks.begin(), lemma_checks.end(),
                     [](const LemmaCheck& c) { return c.holds; });
}

namespace {

LatticePoint lattice(const Exponent& e) {
  return {BigInt(static_cast<unsigned long>(e.i)), BigInt(static_cast<unsigned long>(e.j))};
}

LemmaCheck pass(std::string name) { return {std::move(name), true, std::nullopt}; }

LemmaCheck verdict(std::string name, bool holds, const LatticePoint& witness) {
  if (holds) return pass(std::move(name));
  return {std::move(name), false, witness};
}

// First support point violating pred, as a failed check; a passing check otherwise.
template <typename Pred>
LemmaCheck for_all_support(std::string name, const SparsePoly2& q, Pred pred) {
  for (const auto& t : q.terms()) {
    if (!pred(t.exp)) return {std::move(name), false, lattice(t.exp)};
  }
  return pass(std::move(name));
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const Limits& limits) {
  const std::uint64_t cap = std::min(limits.max_degree, Limits::kHardDegreeCeiling);
  if (a > cap || b > cap - a)
    throw ResourceError("blow-up exponent exceeds cap " + std::to_string(cap));
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const Limits& limits) {
  const std::uint64_t cap = std::min(limits.max_degree, Limits::kHardDegreeCeiling);
  if (a != 0 && b > cap / a)
    throw ResourceError("blow-up exponent exceeds cap " + std::to_string(cap));
  return a * b;
}

// q(z, z^l c) with every z-exponent lowered by shift. Throws DomainError on a
// negative exponent: the lowest z-power of each c-column survives division by
// a unit, so such a term can never cancel.
SparsePoly2 shift_columns(const SparsePoly2& q, std::uint64_t l, std::uint64_t shift,
                          const Limits& limits) {
  std::vector<Term> out;
  out.reserve(q.size());
  for (const auto& t : q.terms()) {
    const std::uint64_t raised = checked_add(t.exp.i, checked_mul(l, t.exp.j, limits), limits);
    if (raised < shift) {
      throw DomainError("term " + to_string(lattice(t.exp)) +
                        " gets a negative z-exponent under the blow-up");
    }
    out.push_back({Exponent{raised - shift, t.exp.j}, t.coeff});
  }
  return SparsePoly2::from_terms(std::move(out));
}

struct Pi1Division {
  SparsePoly2 q_tilde;
  bool exact = true;
  std::uint64_t order = 0;
};

// shifted / u(z)^l where P = z^delta u(z), u(0) != 0, to z-order N = degree_z(shifted).
Pi1Division divide_by_unit_power(const SparsePoly2& shifted, const SparsePoly2& P,
                                 std::uint64_t delta, std::uint64_t l, const Limits& limits) {
  Pi1Division res;
  res.order = shifted.degree_z();
  std::vector<Term> unit_terms;
  for (const auto& t : P.terms()) unit_terms.push_back({Exponent{t.exp.i - delta, 0}, t.coeff});
  const SparsePoly2 u = SparsePoly2::from_terms(std::move(unit_terms));

  if (u.size() == 1) {
    const Rational inv = Rational(1) / pow(u, l, limits).coefficient({0, 0});
    res.q_tilde = scale(shifted, inv);
    return res;
  }

  // Power-series inverse of u^l up to z^N.
  const std::uint64_t N = res.order;
  const SparsePoly2 ul = truncate_z(pow(u, l, limits), N);
  std::vector<Rational> c(N + 1);
  for (const auto& t : ul.terms()) c[t.exp.i] = t.coeff;
  std::vector<Rational> v(N + 1);
  v[0] = Rational(1) / c[0];
  for (std::uint64_t k = 1; k <= N; ++k) {
    Rational acc;
    for (std::uint64_t m = 1; m <= k; ++m) acc += c[m] * v[k - m];
    v[k] = -acc * v[0];
  }
  std::vector<Term> inv_terms;
  for (std::uint64_t k = 0; k <= N; ++k)
    if (v[k] != 0) inv_terms.push_back({Exponent{k, 0}, v[k]});
  const SparsePoly2 inverse = SparsePoly2::from_terms(std::move(inv_terms));

  res.q_tilde = truncate_z(mul(shifted, inverse, limits), N);
  res.exact = false;
  if (!(truncate_z(mul(res.q_tilde, ul, limits), N) == shifted))
    throw DomainError("nonzero residual below the truncation order in pi1 division");
  return res;
}

bool is_monomial(const SparsePoly2& p) { return p.size() == 1; }

}  // namespace

BlowupReport conjugate_pi1(const SkewGerm& f, const CaseData& c, std::uint64_t l,
                           const Limits& limits) {
  if (l == 0) throw DomainError("pi1 needs a positive integer weight");
  const Rational lq(static_cast<unsigned long>(l));
  const WeightIntervals wi = weight_intervals(c);
  switch (c.kind) {
    case CaseKind::Case1:
    case CaseKind::Case2:
      if (!wi.I_f.contains(lq)) throw DomainError("l = " + to_string(lq) + " is not in I_f");
      break;
    case CaseKind::Case4:
      if (!wi.rectangle->first.contains(lq))
        throw DomainError("l = " + to_string(lq) + " is not an admissible first weight");
      break;
    case CaseKind::Case3:
      throw DomainError("pi1 applies to Case 1, Case 2 and the first stage of Case 4");
  }

  const std::uint64_t delta = f.delta();
  const std::uint64_t shift = checked_mul(l, delta, limits);
  const SparsePoly2 shifted = shift_columns(f.q(), l, shift, limits);
  Pi1Division div = divide_by_unit_power(shifted, f.p(), delta, l, limits);

  BlowupReport r;
  r.q_tilde = std::move(div.q_tilde);
  r.exact = div.exact;
  if (!r.exact) r.truncation_order = div.order;
  const BigInt delta_z(static_cast<unsigned long>(delta));
  const BigInt gamma_tilde = c.gamma() + BigInt(lq.get_num()) * (c.d() - delta_z);
  r.expected_vertex = {gamma_tilde, c.d()};
  r.fixes_origin = !r.q_tilde.has_constant_term();
  if (r.fixes_origin) r.transformed = SkewGerm(f.p(), r.q_tilde);

  auto& checks = r.lemma_checks;
  checks.push_back(verdict("pi1.gamma_tilde_nonneg", gamma_tilde >= 0, c.gamma_d));
  checks.push_back(for_all_support("pi1.gamma_tilde_le_i", r.q_tilde, [&](const Exponent& e) {
    return gamma_tilde <= BigInt(static_cast<unsigned long>(e.i));
  }));

  std::vector<RationalPoint> images;
  for (const auto& t : f.q().terms())
    images.push_back(transform_lattice(to_rational_point(lattice(t.exp)), A1{lq, Rational(delta_z)}));
  std::vector<RationalPoint> hull = staircase_hull(images);
  const NewtonPolygon np = newton_polygon(r.q_tilde);
  std::vector<RationalPoint> got;
  for (const auto& v : np.vertices) got.push_back(to_rational_point(v));
  checks.push_back(verdict("pi1.polygon_is_A1_image", got == hull, r.expected_vertex));

  const bool vertex_first = !np.vertices.empty() && np.vertices.front() == r.expected_vertex;
  if (c.kind == CaseKind::Case4) {
    checks.push_back(verdict("pi1.case4.leftmost_vertex", vertex_first, r.expected_vertex));
  } else {
    checks.push_back(verdict("pi1.single_vertex", np.s() == 1 && vertex_first, r.expected_vertex));
  }

  if (c.kind == CaseKind::Case2) {
    const std::size_t s = c.polygon.s();
    auto n_tilde = [&](std::size_t j) -> BigInt {
      const auto& v = c.polygon.vertex(j);
      return v.i + BigInt(lq.get_num()) * (v.j - delta_z);
    };
    bool refined = true;
    LatticePoint witness = c.gamma_d;
    for (std::size_t j = 1; j <= s && refined; ++j) {
      if (j == s) continue;
      if (lq == c.l1 && j == s - 1) {
        refined = n_tilde(j) == gamma_tilde;
      } else {
        refined = gamma_tilde < n_tilde(j);
      }
      if (!refined) witness = c.polygon.vertex(j);
    }
    checks.push_back(verdict("pi1.case2.vertex_order", refined, witness));
    if (c.alpha) {
      if (lq < *c.alpha)
        checks.push_back(verdict("pi1.case2.gamma_tilde_pos", gamma_tilde > 0, c.gamma_d));
      if (lq == *c.alpha)
        checks.push_back(verdict("pi1.case2.gamma_tilde_zero", gamma_tilde == 0, c.gamma_d));
    }
  }

  if (c.kind == CaseKind::Case4 && r.transformed) {
    const Rational l2_tilde = c.l1_plus_l2().value() - lq;
    std::optional<CaseData> reading;
    for (auto& alt : classify_all(*r.transformed)) {
      if (alt.kind == CaseKind::Case3 && alt.gamma_d == r.expected_vertex) reading = alt;
    }
    checks.push_back(verdict("pi1.case4.case3_reading", reading.has_value(), r.expected_vertex));
    if (reading) {
      checks.push_back(verdict("pi1.case4.l2_tilde",
                               reading->l2.is_finite() && reading->l2.value() == l2_tilde,
                               r.expected_vertex));
      checks.push_back(verdict("pi1.case4.boundary_preserved",
                               reading->delta_eq_T_lower == c.delta_eq_T_lower,
                               r.expected_vertex));
    }
  }
  return r;
}

BlowupReport conjugate_pi2(const SkewGerm& f, const CaseData& c, const Rational& l_inv) {
  if (l_inv <= 0 || !is_integer(l_inv) || !l_inv.get_num().fits_ulong_p())
    throw DomainError("pi2 needs 1/l to be a positive integer, got " + to_string(l_inv));
  return conjugate_pi2(f, c, l_inv.get_num().get_ui());
}

BlowupReport conjugate_pi2(const SkewGerm& f, const CaseData& c, std::uint64_t L) {
  if (L == 0) throw DomainError("pi2 needs a positive integer 1/l");
  if (c.kind != CaseKind::Case3)
    throw DomainError("pi2 applies to Case 3 and the second stage of Case 4");
  const Rational l = Rational(1, static_cast<unsigned long>(L));
  if (!weight_intervals(c).I_f.contains(l))
    throw DomainError("l = " + to_string(l) + " is not in I_f");

  const Limits limits;
  std::vector<Term> terms;
  terms.reserve(f.q().size());
  for (const auto& t : f.q().terms()) {
    const std::uint64_t jt = checked_add(checked_mul(L, t.exp.i, limits), t.exp.j, limits);
    terms.push_back({Exponent{t.exp.i, jt}, t.coeff});
  }

  BlowupReport r;
  r.q_tilde = SparsePoly2::from_terms(std::move(terms));
  const BigInt Lz(static_cast<unsigned long>(L));
  const BigInt d_tilde = Lz * c.gamma() + c.d();
  const BigInt delta_z(static_cast<unsigned long>(f.delta()));
  r.expected_vertex = {c.gamma(), d_tilde};
  r.fixes_origin = !r.q_tilde.has_constant_term();

  auto& checks = r.lemma_checks;
  const NewtonPolygon np = newton_polygon(r.q_tilde);
  const bool single = np.s() == 1 && np.vertex(1) == r.expected_vertex;
  checks.push_back(verdict("pi2.single_vertex", single, r.expected_vertex));
  checks.push_back(verdict("pi2.d_le_d_tilde", c.d() <= d_tilde, r.expected_vertex));
  if (c.gamma() > 0)
    checks.push_back(verdict("pi2.d_lt_d_tilde", c.d() < d_tilde, r.expected_vertex));
  checks.push_back(for_all_support("pi2.d_tilde_le_j_tilde", f.q(), [&](const Exponent& e) {
    return d_tilde <= Lz * BigInt(static_cast<unsigned long>(e.i)) +
                          BigInt(static_cast<unsigned long>(e.j));
  }));
  checks.push_back(verdict("pi2.d_tilde_le_delta", d_tilde <= delta_z, r.expected_vertex));

  // p~ = p(t w^L) / q~^L: leading monomial over the leading monomial.
  const LatticePoint lead{delta_z - Lz * c.gamma(), Lz * (delta_z - d_tilde)};
  const Rational b = f.q().coefficient(Exponent{c.gamma().get_ui(), c.d().get_ui()});
  Rational bL(1);
  for (std::uint64_t k = 0; k < L; ++k) bL *= b;
  r.p_leading_exponent = lead;
  r.p_leading_coeff = f.a_delta() / bL;
  checks.push_back(verdict("pi2.p_tilde_holomorphic", single && lead.i >= 0 && lead.j >= 0, lead));
  return r;
}

LemmaCheck check_conjugacy_pi1(const SkewGerm& f, const CaseData& c, std::uint64_t l,
                               std::uint64_t n, const Limits& limits) {
  const std::string name = "pi1.conjugacy.n" + std::to_string(n);
  if (!is_monomial(f.p()))
    throw DomainError("exact pi1 conjugacy check needs a monomial p");
  const BlowupReport r = conjugate_pi1(f, c, l, limits);
  if (!r.transformed) throw DomainError("blown-up map does not fix the origin");

  const SkewGerm fn = iterate_germ(f, n, limits);
  const std::uint64_t delta_n = fn.delta();
  const SparsePoly2 shifted =
      shift_columns(fn.q(), l, checked_mul(l, delta_n, limits), limits);
  const Pi1Division lhs = divide_by_unit_power(shifted, fn.p(), delta_n, l, limits);
  const SkewGerm rhs = iterate_germ(*r.transformed, n, limits);

  if (lhs.q_tilde == rhs.q() && fn.p() == rhs.p()) return pass(name);
  // Witness: first exponent where the two sides differ.
  const SparsePoly2 diff = lhs.q_tilde - rhs.q();
  LatticePoint w{0, 0};
  if (!diff.is_zero()) w = lattice(diff.terms().front().exp);
  return {name, false, w};
}

namespace {

std::vector<RationalPoint> support_points(const SparsePoly2& q) {
  std::vector<RationalPoint> pts;
  pts.reserve(q.size());
  for (const auto& t : q.terms()) pts.push_back(to_rational_point(lattice(t.exp)));
  return pts;
}

// First support point (original coordinates) whose image violates pred.
template <typename Pred>
LemmaCheck for_all_images(std::string name, const SparsePoly2& q,
                          const std::vector<RationalPoint>& images, Pred pred) {
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (!pred(images[k])) return {std::move(name), false, lattice(q.terms()[k].exp)};
  }
  return pass(std::move(name));
}

}  // namespace

std::vector<LemmaCheck> lattice_lemma_case2(const SkewGerm& f, const CaseData& c,
                                            const Rational& l) {
  if (c.kind != CaseKind::Case2) throw DomainError("Case 2 lattice lemma on a non-Case-2 reading");
  if (!weight_intervals(c).I_f.contains(l)) throw DomainError("l = " + to_string(l) + " is not in I_f");
  const Rational delta(c.delta);
  const A1 a{l, delta};
  const auto pts = support_points(f.q());
  std::vector<RationalPoint> images;
  for (const auto& p : pts) images.push_back(transform_lattice(p, a));
  const Rational gt = transform_lattice(to_rational_point(c.gamma_d), a).x;

  std::vector<LemmaCheck> out;
  out.push_back(verdict("lattice.case2.gamma_tilde_nonneg", gt >= 0, c.gamma_d));
  out.push_back(for_all_images("lattice.case2.gamma_tilde_le_i", f.q(), images,
                               [&](const RationalPoint& p) { return gt <= p.x; }));
  const std::size_t s = c.polygon.s();
  bool refined = true;
  LatticePoint witness = c.gamma_d;
  for (std::size_t j = 1; j + 1 <= s && refined; ++j) {
    const Rational nj = transform_lattice(to_rational_point(c.polygon.vertex(j)), a).x;
    refined = (l == c.l1 && j == s - 1) ? nj == gt : gt < nj;
    if (!refined) witness = c.polygon.vertex(j);
  }
  out.push_back(verdict("lattice.case2.vertex_order", refined, witness));
  if (c.alpha && l < *c.alpha)
    out.push_back(verdict("lattice.case2.gamma_tilde_pos", gt > 0, c.gamma_d));
  if (c.alpha && l == *c.alpha)
    out.push_back(verdict("lattice.case2.gamma_tilde_zero", gt == 0, c.gamma_d));
  return out;
}

std::vector<LemmaCheck> lattice_lemma_case3(const SkewGerm& f, const CaseData& c,
                                            const Rational& l) {
  if (c.kind != CaseKind::Case3) throw DomainError("Case 3 lattice lemma on a non-Case-3 reading");
  if (!weight_intervals(c).I_f.contains(l)) throw DomainError("l = " + to_string(l) + " is not in I_f");
  const A2 a{Rational(1) / l};
  const auto pts = support_points(f.q());
  std::vector<RationalPoint> images;
  for (const auto& p : pts) images.push_back(transform_lattice(p, a));
  const Rational d(c.d());
  const Rational dt = transform_lattice(to_rational_point(c.gamma_d), a).y;

  std::vector<LemmaCheck> out;
  out.push_back(verdict("lattice.case3.d_le_d_tilde", d <= dt, c.gamma_d));
  if (c.gamma() > 0) out.push_back(verdict("lattice.case3.d_lt_d_tilde", d < dt, c.gamma_d));
  out.push_back(for_all_images("lattice.case3.d_tilde_le_j_tilde", f.q(), images,
                               [&](const RationalPoint& p) { return dt <= p.y; }));
  out.push_back(verdict("lattice.case3.d_tilde_le_delta", dt <= Rational(c.delta), c.gamma_d));
  const auto hull = staircase_hull(images);
  out.push_back(verdict("lattice.case3.single_vertex",
                        hull.size() == 1 && hull.front() == RationalPoint{Rational(c.gamma()), dt},
                        c.gamma_d));
  return out;
}

std::vector<LemmaCheck> lattice_lemma_case4(const SkewGerm& f, const CaseData& c,
                                            const Rational& l_first, const Rational& l_second) {
  if (c.kind != CaseKind::Case4) throw DomainError("Case 4 lattice lemma on a non-Case-4 reading");
  const WeightIntervals wi = weight_intervals(c);
  if (!wi.rectangle->contains(l_first, l_first + l_second))
    throw DomainError("(" + to_string(l_first) + ", " + to_string(l_second) +
                      ") is not an admissible weight pair");
  const A1 a1{l_first, Rational(c.delta)};
  const A2 a2{Rational(1) / l_second};
  const auto pts = support_points(f.q());
  std::vector<RationalPoint> first, images;
  for (const auto& p : pts) {
    first.push_back(transform_lattice(p, a1));
    images.push_back(transform_lattice(first.back(), a2));
  }
  const RationalPoint g = transform_lattice(transform_lattice(to_rational_point(c.gamma_d), a1), a2);
  const Rational d(c.d());

  std::vector<LemmaCheck> out;
  out.push_back(verdict("lattice.case4.gamma_tilde_nonneg", g.x >= 0, c.gamma_d));
  out.push_back(for_all_images("lattice.case4.gamma_tilde_le_i", f.q(), first,
                               [&](const RationalPoint& p) { return g.x <= p.x; }));
  out.push_back(verdict("lattice.case4.d_le_d_tilde", d <= g.y, c.gamma_d));
  out.push_back(for_all_images("lattice.case4.d_tilde_le_j_tilde", f.q(), images,
                               [&](const RationalPoint& p) { return g.y <= p.y; }));
  out.push_back(verdict("lattice.case4.d_tilde_le_delta", g.y <= Rational(c.delta), c.gamma_d));
  const auto hull = staircase_hull(images);
  out.push_back(verdict("lattice.case4.single_vertex", hull.size() == 1 && hull.front() == g,
                        c.gamma_d));
  return out;
}

std::vector<LemmaCheck> composite_line_checks(const CaseData& c) {
  if (c.kind != CaseKind::Case4 || !c.k) throw DomainError("composite transform needs a Case 4 reading");
  const std::size_t k = *c.k;
  const A1 a1{c.l1, Rational(c.delta)};
  const A2 a2{Rational(1) / c.l2.value()};
  auto image = [&](std::size_t j) {
    return transform_lattice(transform_lattice(to_rational_point(c.polygon.vertex(j)), a1), a2);
  };
  const RationalPoint prev = image(k - 1), here = image(k), next = image(k + 1);
  return {verdict("composite.prev_edge_vertical", prev.x == here.x, c.polygon.vertex(k - 1)),
          verdict("composite.next_edge_horizontal", next.y == here.y, c.polygon.vertex(k + 1))};
}

}  // namespace skewrate
