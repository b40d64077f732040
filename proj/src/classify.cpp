#include "skewrate/classify.hpp"

#include "skewrate/errors.hpp"
#include "skewrate/sequences.hpp"

namespace skewrate {

std::string to_string(CaseKind kind) {
  return "Case" + std::to_string(static_cast<int>(kind));
}

ExtendedRational CaseData::l1_plus_l2() const {
  if (l2.is_infinite()) return ExtendedRational::infinity();
  return ExtendedRational(l1 + l2.value());
}

namespace {

// (n_b - n_a) / (m_a - m_b) for consecutive vertices a, b.
Rational inverse_slope(const LatticePoint& a, const LatticePoint& b) {
  return make_rational(b.i - a.i, a.j - b.j);
}

CaseData base(const NewtonPolygon& np, const BigInt& delta, CaseKind kind, std::size_t vertex) {
  CaseData c;
  c.kind = kind;
  c.delta = delta;
  c.polygon = np;
  c.gamma_d = np.vertex(vertex);
  if (delta != c.d()) c.alpha = make_rational(c.gamma(), delta - c.d());
  return c;
}

}  // namespace

std::vector<CaseData> classify_all(const SkewGerm& f) {
  const NewtonPolygon np = newton_polygon(f.q());
  const BigInt delta(static_cast<unsigned long>(f.delta()));
  const Rational dq(delta);
  const std::size_t s = np.s();
  std::vector<CaseData> out;

  if (s == 1) {
    CaseData c = base(np, delta, CaseKind::Case1, 1);
    c.l1 = 0;
    c.l2 = ExtendedRational::infinity();
    out.push_back(std::move(c));
  } else {
    if (dq <= np.T(s - 1)) {
      CaseData c = base(np, delta, CaseKind::Case2, s);
      c.l1 = inverse_slope(np.vertex(s - 1), np.vertex(s));
      c.l2 = ExtendedRational::infinity();
      c.delta_eq_T_upper = dq == np.T(s - 1);
      out.push_back(std::move(c));
    }
    if (np.T(1) <= dq) {
      CaseData c = base(np, delta, CaseKind::Case3, 1);
      c.l1 = 0;
      c.l2 = inverse_slope(np.vertex(1), np.vertex(2));
      c.delta_eq_T_lower = dq == np.T(1);
      out.push_back(std::move(c));
    }
    for (std::size_t k = 2; k + 1 <= s; ++k) {
      if (!(np.T(k) <= dq && dq <= np.T(k - 1))) continue;
      CaseData c = base(np, delta, CaseKind::Case4, k);
      c.k = k;
      c.l1 = inverse_slope(np.vertex(k - 1), np.vertex(k));
      c.l2 = ExtendedRational(inverse_slope(np.vertex(k), np.vertex(k + 1)) - c.l1);
      c.delta_eq_T_upper = dq == np.T(k - 1);
      c.delta_eq_T_lower = dq == np.T(k);
      out.push_back(std::move(c));
    }
  }

  std::vector<CaseKind> kinds;
  for (const auto& c : out)
    if (kinds.empty() || kinds.back() != c.kind) kinds.push_back(c.kind);
  for (auto& c : out) c.applicable = kinds;
  return out;
}

CaseData classify(const SkewGerm& f) {
  auto all = classify_all(f);
  if (all.empty()) throw DomainError("no case applies");  // unreachable for a valid germ
  return all.front();
}

bool WeightInterval::contains(const Rational& l) const {
  const ExtendedRational x(l);
  const auto lo = lower <=> x;
  if (lo > 0 || (lo == 0 && !lower_closed)) return false;
  const auto hi = x <=> upper;
  return hi < 0 || (hi == 0 && upper_closed);
}

bool WeightInterval::empty() const {
  const auto c = lower <=> upper;
  return c > 0 || (c == 0 && !(lower_closed && upper_closed));
}

std::string to_string(const WeightInterval& interval) {
  return std::string(interval.lower_closed ? "[" : "(") + to_string(interval.lower) + ", " +
         to_string(interval.upper) + (interval.upper_closed ? "]" : ")");
}

WeightInterval WeightRectangle::second_of(const Rational& x) const {
  WeightInterval out;
  const Rational lo = sum_lower - x;
  if (lo > 0) {
    out.lower = lo;
  } else {
    out.lower = Rational(0);
    out.lower_closed = false;
  }
  out.upper = Rational(sum_upper - x);
  return out;
}

bool WeightRectangle::contains(const Rational& x, const Rational& y) const {
  return first.contains(x) && sum_lower <= y && y <= sum_upper && y > x;
}

WeightIntervals weight_intervals(const CaseData& c) {
  WeightIntervals out;
  const Rational gamma(c.gamma());
  switch (c.kind) {
    case CaseKind::Case1:
      out.I_f = {Rational(0), ExtendedRational::infinity(), false, false};
      break;
    case CaseKind::Case2:
      if (c.delta > c.d()) {
        out.I_f = {c.l1, *c.alpha, true, true};
      } else {
        out.I_f = {c.l1, ExtendedRational::infinity(), true, false};
      }
      break;
    case CaseKind::Case3:
      if (gamma > 0) {
        out.I_f = {*c.alpha, c.l2, true, true};
      } else {
        out.I_f = {Rational(0), c.l2, false, true};
      }
      break;
    case CaseKind::Case4: {
      const Rational& alpha = *c.alpha;
      const Rational sum = c.l1_plus_l2().value();
      WeightRectangle rect;
      if (alpha < sum) {
        rect.first = {c.l1, alpha, true, true};
      } else {
        rect.first = {c.l1, sum, true, false};
      }
      rect.sum_lower = alpha;
      rect.sum_upper = sum;
      if (c.delta_eq_T_upper) {
        rect.shape = RectangleShape::UpperBoundary;
        rect.excluded_corner = RationalPoint{c.l1, c.l1};
      } else if (c.delta_eq_T_lower) {
        rect.shape = RectangleShape::LowerBoundary;
      } else {
        rect.shape = RectangleShape::Interior;
        rect.excluded_corner = RationalPoint{alpha, alpha};
      }
      out.I_f = rect.first;
      out.rectangle = rect;
      out.I_f_AR = WeightInterval{c.l1, sum, true, true};
      break;
    }
  }
  return out;
}

Rational r_map(const CaseData& c, const Rational& l, std::uint64_t n) {
  if (n == 0) return l;
  const BigInt gn = gamma_n(c.delta, c.gamma(), c.d(), n);
  Rational out = (Rational(gn) + l * Rational(pow(c.d(), n))) / Rational(pow(c.delta, n));
  out.canonicalize();
  return out;
}

}  // namespace skewrate
