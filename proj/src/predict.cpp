#include "skewrate/predict.hpp"

#include <algorithm>

#include "skewrate/errors.hpp"
#include "skewrate/sequences.hpp"

namespace skewrate {

bool Bracket::holds(const Rational& value) const {
  const bool lo = lower_strict ? lower < value : lower <= value;
  const bool hi = upper_strict ? value < upper : value <= upper;
  return lo && hi;
}

Bracket exact_bracket(const Rational& value, std::string tag) {
  return Bracket{value, value, false, false, std::move(tag)};
}

std::string to_string(const Bracket& b, std::string_view var) {
  if (b.is_exact()) return std::string(var) + " = " + to_string(b.lower);
  return to_string(b.lower) + (b.lower_strict ? " < " : " <= ") + std::string(var) +
         (b.upper_strict ? " < " : " <= ") + to_string(b.upper);
}

std::string to_string(VertexTag tag) {
  switch (tag) {
    case VertexTag::AB: return "AB";
    case VertexTag::ABstar: return "ABstar";
    case VertexTag::CD: return "CD";
    case VertexTag::CDstar: return "CDstar";
  }
  return "?";
}

std::string to_string(InterceptRelation rel) {
  switch (rel) {
    case InterceptRelation::Less: return "less";
    case InterceptRelation::Equal: return "equal";
    case InterceptRelation::Greater: return "greater";
  }
  return "?";
}

std::string to_string(SlopeClaim claim) {
  switch (claim) {
    case SlopeClaim::EqualsM: return "equals_M";
    case SlopeClaim::GreaterThanM: return "greater_than_M";
    case SlopeClaim::AtMostM: return "at_most_M";
  }
  return "?";
}

std::string to_string(DominantPosition pos) {
  switch (pos) {
    case DominantPosition::Only: return "only";
    case DominantPosition::First: return "first";
    case DominantPosition::Last: return "last";
    case DominantPosition::Some: return "some";
  }
  return "?";
}

namespace {

Rational Q(const BigInt& x) { return Rational(x); }

struct Powers {
  BigInt G;      // gamma_n
  BigInt E;      // d^n
  BigInt Dn;     // delta^n
};

Powers powers(const CaseData& c, std::uint64_t n) {
  if (n == 0) throw DomainError("n must be positive");
  return {gamma_n(c.delta, c.gamma(), c.d(), n), pow(c.d(), n), pow(c.delta, n)};
}

bool d_zero(const CaseData& c) { return c.d() == 0; }

// Vertex before (gamma, d) in Cases 2 and 4, after it in Cases 3 and 4.
std::optional<LatticePoint> prev_polygon_vertex(const CaseData& c) {
  if (c.kind == CaseKind::Case2) return c.polygon.vertex(c.polygon.s() - 1);
  if (c.kind == CaseKind::Case4) return c.polygon.vertex(*c.k - 1);
  return std::nullopt;
}

std::optional<LatticePoint> next_polygon_vertex(const CaseData& c) {
  if (c.kind == CaseKind::Case3) return c.polygon.vertex(2);
  if (c.kind == CaseKind::Case4) return c.polygon.vertex(*c.k + 1);
  return std::nullopt;
}

// Horizontal next edge ending on the x-axis, with delta on the lower boundary.
bool next_star_may_vanish(const CaseData& c) {
  if (c.kind != CaseKind::Case3 && c.kind != CaseKind::Case4) return false;
  return c.delta_eq_T_lower && next_polygon_vertex(c)->j == 0;
}

bool dominant_may_vanish(const CaseData& c) {
  return c.kind == CaseKind::Case2 && d_zero(c) && c.delta_eq_T_upper;
}

}  // namespace

BigInt gamma_prefix_sum(const CaseData& c, std::uint64_t n) {
  BigInt sum = 0;
  for (std::uint64_t k = 1; k < n; ++k) sum += gamma_n(c.delta, c.gamma(), c.d(), k);
  return sum;
}

DominantTerm dominant_term(const SkewGerm& f, const CaseData& c, std::uint64_t n) {
  const Powers P = powers(c, n);
  DominantTerm out;
  out.bidegree = {P.G, P.E};
  const Rational b = f.q().coefficient({c.gamma().get_ui(), c.d().get_ui()});
  const auto a_part = pow(f.a_delta(), gamma_prefix_sum(c, n));
  const auto b_part = pow(b, geometric_sum(c.d(), n));
  if (a_part && b_part) out.coefficient = *a_part * *b_part;
  return out;
}

WeightInterval weight_equality_range(const CaseData& c) {
  const WeightIntervals wi = weight_intervals(c);
  if (c.kind == CaseKind::Case4) return *wi.I_f_AR;
  return wi.I_f;
}

WeightClaim predict_weight(const CaseData& c, std::uint64_t n, const Rational& l) {
  if (l <= 0) throw DomainError("weight parameter must be positive");
  const WeightInterval range = weight_equality_range(c);
  if (!range.contains(l)) {
    throw DomainError("l = " + to_string(l) + " is outside the equality range " +
                      to_string(range));
  }
  const Powers P = powers(c, n);
  return {l, Q(P.G) + l * Q(P.E), true};
}

std::optional<LatticePoint> watched_term(const CaseData& c, std::uint64_t n) {
  if (dominant_may_vanish(c)) {
    const Powers P = powers(c, n);
    return LatticePoint{P.G, P.E};
  }
  if (next_star_may_vanish(c)) return star_vertex(c, *next_polygon_vertex(c), n);
  return std::nullopt;
}

LatticePoint shifted_vertex(const CaseData& c, const LatticePoint& v, std::uint64_t n) {
  const Powers P = powers(c, n);
  const BigInt dn1 = pow(c.d(), n - 1);
  return {P.G - (c.gamma() - v.i) * dn1, v.j * dn1};
}

LatticePoint star_vertex(const CaseData& c, const LatticePoint& v, std::uint64_t n) {
  if (n == 0) throw DomainError("n must be positive");
  BigInt sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) sum += pow(c.delta, n - 1 - k) * pow(v.j, k);
  return {sum * v.i, pow(v.j, n)};
}

Bracket predict_cqn_bounds(const CaseData& c, std::uint64_t n, const VanishingObservation& obs) {
  const Powers P = powers(c, n);
  const Rational G = Q(P.G);
  const Rational E = Q(P.E);
  const NewtonPolygon& np = c.polygon;

  switch (c.kind) {
    case CaseKind::Case1:
      return exact_bracket(G + E, "cqn.case1.exact");

    case CaseKind::Case2: {
      const Rational inv_l1 = 1 / c.l1;
      if (!d_zero(c)) {
        if (c.l1 <= 1) return exact_bracket(G + E, "cqn.case2.exact");
        Bracket b{inv_l1 * G + E, G + E, false, true, "cqn.case2.l1_gt_1"};
        const bool n1_zero = np.vertex(1).i == 0;
        if (!n1_zero || np.s() > 2) {
          b.lower_strict = true;
          b.tag = "cqn.case2.l1_gt_1.strict";
        } else if (c.delta_eq_T_upper || n == 1) {
          return exact_bracket(inv_l1 * G + E, c.delta_eq_T_upper
                                                   ? "cqn.case2.n1_zero.boundary"
                                                   : "cqn.case2.n1_zero.first");
        } else {
          b.lower_strict = true;
          b.tag = "cqn.case2.n1_zero.interior";
        }
        return b;
      }
      const LatticePoint A = *prev_polygon_vertex(c);
      if (!c.delta_eq_T_upper) {
        if (c.l1 <= 1) return exact_bracket(G, "cqn.case2.d0.exact");
        if (n == 1) return Bracket{inv_l1 * G, Q(A.i + A.j), false, false, "cqn.case2.d0.l1_gt_1.first"};
        return Bracket{inv_l1 * G, G, true, false, "cqn.case2.d0.l1_gt_1"};
      }
      const LatticePoint star = star_vertex(c, A, n);
      const Rational star_sum = Q(star.i + star.j);
      if (c.l1 > 1) return Bracket{inv_l1 * G, star_sum, false, false, "cqn.case2.d0.boundary.l1_gt_1"};
      if (!obs.absent_at(n)) return exact_bracket(G, "cqn.case2.d0.boundary.present");
      return Bracket{G, star_sum, c.l1 < 1, false, "cqn.case2.d0.boundary.vanished"};
    }

    case CaseKind::Case3:
    case CaseKind::Case4: {
      if (c.kind == CaseKind::Case4 && c.l1 > 1) {
        Bracket b{G / c.l1 + E, G + E, false, true, "cqn.case4.l1_gt_1"};
        if (np.vertex(*c.k - 1).i > 0) {
          b.lower_strict = true;
          b.tag = "cqn.case4.l1_gt_1.strict";
        }
        return b;
      }
      const std::string prefix = c.kind == CaseKind::Case3 ? "cqn.case3" : "cqn.case4";
      const Rational top = c.l1_plus_l2().value();  // l2 in Case 3
      if (top >= 1) return exact_bracket(G + E, prefix + ".exact");
      const Rational low = G + top * E;
      const LatticePoint C = *next_polygon_vertex(c);
      if (C.j > 0) return Bracket{low, G + E, true, true, prefix + ".next_raised"};
      if (!c.delta_eq_T_lower) return exact_bracket(low, prefix + ".next_axis.interior");
      if (!obs.absent_at(n)) return exact_bracket(low, prefix + ".next_axis.boundary.present");
      return Bracket{low, G + E, true, false, prefix + ".next_axis.boundary.vanished"};
    }
  }
  throw DomainError("unknown case");
}

AdjacentVertices predict_adjacent_vertices(const CaseData& c, std::uint64_t n) {
  const Powers P = powers(c, n);
  AdjacentVertices out;

  const bool prev_applies = (c.kind == CaseKind::Case2 && !d_zero(c)) || c.kind == CaseKind::Case4;
  if (prev_applies) {
    const LatticePoint A = *prev_polygon_vertex(c);
    VertexPrediction v;
    v.slope = -1 / c.l1;
    if (c.delta_eq_T_upper) {
      v.point = star_vertex(c, A, n);
      v.tag = VertexTag::ABstar;
      v.delta_pow_vs_intercept = InterceptRelation::Equal;
    } else {
      v.point = shifted_vertex(c, A, n);
      v.tag = VertexTag::AB;
      v.delta_pow_vs_intercept = InterceptRelation::Less;
    }
    out.prev = v;
  }

  if (c.kind == CaseKind::Case3 || c.kind == CaseKind::Case4) {
    const LatticePoint C = *next_polygon_vertex(c);
    VertexPrediction v;
    v.slope = -1 / c.l1_plus_l2().value();
    if (!c.delta_eq_T_lower) {
      v.point = shifted_vertex(c, C, n);
      v.tag = VertexTag::CD;
      v.delta_pow_vs_intercept = InterceptRelation::Greater;
      out.next = v;
    } else if (C.j > 0) {
      v.point = star_vertex(c, C, n);
      v.tag = VertexTag::CDstar;
      v.delta_pow_vs_intercept = InterceptRelation::Equal;
      out.next = v;
    }
  }
  return out;
}

VanishingSum vanishing_sum(const SkewGerm& f, const CaseData& c) {
  if (!dominant_may_vanish(c)) {
    throw DomainError("vanishing sum is defined only for Case 2 with d = 0 and delta = T_{s-1}");
  }
  const Rational gamma = Q(c.gamma());
  const Rational b_g0 = f.q().coefficient({c.gamma().get_ui(), 0});
  Rational sum = 0;
  for (const auto& t : f.q().terms()) {
    const Rational I(static_cast<unsigned long>(t.exp.i));
    const Rational J(static_cast<unsigned long>(t.exp.j));
    if (I + c.l1 * J != gamma) continue;
    const auto a_part = pow(f.a_delta(), BigInt(static_cast<unsigned long>(t.exp.i)));
    const auto b_part = pow(b_g0, BigInt(static_cast<unsigned long>(t.exp.j)));
    if (!a_part || !b_part) throw ResourceError("vanishing sum exponent too large");
    sum += *a_part * t.coeff * *b_part;
  }
  return {sum, sum == 0};
}

Bracket combine_cfn(const BigInt& delta_pow_n, const Bracket& cqn) {
  const Rational dn = Q(delta_pow_n);
  Bracket out;
  out.tag = "cfn.combined";
  if (cqn.lower < dn) {
    out.lower = cqn.lower;
    out.lower_strict = cqn.lower_strict;
  } else {
    out.lower = dn;
  }
  if (cqn.upper <= dn) {
    out.upper = cqn.upper;
    out.upper_strict = cqn.upper_strict;
  } else {
    out.upper = dn;
  }
  return out;
}

CfnPrediction predict_cfn(const CaseData& c, std::uint64_t n, const VanishingObservation& obs) {
  const Powers P = powers(c, n);
  CfnPrediction out;
  out.bracket = combine_cfn(P.Dn, predict_cqn_bounds(c, n, obs));
  const Rational Dn = Q(P.Dn);
  const Rational gamma = Q(c.gamma());
  const Rational delta = Q(c.delta);
  const bool gamma_pos = c.gamma() > 0;
  const bool d_pos = c.d() > 0;

  if (gamma_pos && d_pos) {
    if (c.delta > c.d() && *c.alpha < 1) {
      out.summary.push_back(Bracket{*c.alpha * Dn, Dn, false, true, "cfn.summary.alpha_lt_1"});
    } else {
      out.summary.push_back(exact_bracket(Dn, "cfn.summary.delta_pow"));
    }
  } else if (c.kind == CaseKind::Case1 && !d_pos) {
    out.summary.push_back(exact_bracket(std::min<Rational>(Rational(1), gamma / delta) * Dn,
                                        "cfn.summary.case1.d0"));
  } else if (c.kind == CaseKind::Case1 && !gamma_pos) {
    out.summary.push_back(exact_bracket(Q(std::min(P.Dn, P.E)), "cfn.summary.case1.gamma0"));
  } else if (c.kind == CaseKind::Case2 && !d_pos) {
    const Rational D = std::min<Rational>({Rational(1), gamma / delta, gamma / (c.l1 * delta)});
    out.summary.push_back(Bracket{D * Dn, Dn, false, false, "cfn.summary.case2.d0"});
  } else if (c.kind == CaseKind::Case3 && !gamma_pos) {
    const Rational D = std::min<Rational>(Rational(1), c.l2.value());
    out.summary.push_back(Bracket{D * Q(P.E), Q(P.E), false, false, "cfn.summary.case3.gamma0"});
  }
  return out;
}

AsymptoticRate asymptotic(const CaseData& c) {
  AsymptoticRate out;
  const Rational gamma = Q(c.gamma());
  const Rational delta = Q(c.delta);
  std::vector<Rational> D{Rational(1)};
  if (c.gamma() > 0) {
    out.c_infinity = c.delta;
    if (c.d() > 0) {
      if (c.delta > c.d() && *c.alpha < 1) D.push_back(*c.alpha);
    } else if (c.kind == CaseKind::Case1) {
      D.push_back(gamma / delta);
    } else {
      D.push_back(gamma / delta);
      D.push_back(gamma / (c.l1 * delta));
    }
  } else {
    out.c_infinity = std::min(c.delta, c.d());
    if (c.kind == CaseKind::Case3) D.push_back(c.l2.value());
  }
  for (auto& x : D) x.canonicalize();
  std::sort(D.begin(), D.end());
  D.erase(std::unique(D.begin(), D.end()), D.end());
  out.D_candidates = std::move(D);
  return out;
}

RatePrediction predict(const SkewGerm& f, const CaseData& c, std::uint64_t n,
                       const VanishingObservation& obs) {
  const Powers P = powers(c, n);
  RatePrediction r;
  r.n = n;
  r.gamma_n = P.G;
  r.d_pow_n = P.E;
  r.delta_pow_n = P.Dn;
  const DominantTerm dom = dominant_term(f, c, n);
  r.dominant = dom.bidegree;
  r.dominant_coeff = dom.coefficient;
  r.may_vanish = dominant_may_vanish(c);

  r.cqn = predict_cqn_bounds(c, n, obs);
  CfnPrediction cfn = predict_cfn(c, n, obs);
  r.cfn = cfn.bracket;
  r.cfn_summary = std::move(cfn.summary);

  const AdjacentVertices adj = predict_adjacent_vertices(c, n);
  r.prev_vertex = adj.prev;
  r.next_vertex = adj.next;
  if (adj.prev) {
    r.M_n_claim = SlopeClaim::EqualsM;
  } else if (c.kind == CaseKind::Case2 && d_zero(c) && !c.delta_eq_T_upper && n >= 2) {
    r.M_n_claim = SlopeClaim::GreaterThanM;
  }
  if (c.kind == CaseKind::Case3 || c.kind == CaseKind::Case4) r.M_n_next_claim = SlopeClaim::AtMostM;

  switch (c.kind) {
    case CaseKind::Case1:
      r.dominant_position = DominantPosition::Only;
      r.ord_z = P.G;
      r.ord_w = P.E;
      break;
    case CaseKind::Case2:
      if (!d_zero(c)) {
        r.dominant_position = DominantPosition::Last;
        r.ord_w = P.E;
      } else if (!c.delta_eq_T_upper) {
        r.dominant_position = DominantPosition::Last;
      } else {
        r.present_terms.emplace_back(star_vertex(c, *prev_polygon_vertex(c), n),
                                     "term.case2.d0.boundary.astar");
      }
      break;
    case CaseKind::Case3:
      r.dominant_position = DominantPosition::First;
      r.ord_z = P.G;
      break;
    case CaseKind::Case4:
      r.dominant_position = DominantPosition::Some;
      break;
  }
  r.watched_term = watched_term(c, n);
  return r;
}

}  // namespace skewrate
