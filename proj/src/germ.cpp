#include "skewrate/germ.hpp"

#include <map>

#include "skewrate/errors.hpp"

namespace skewrate {

SkewGerm::SkewGerm(SparsePoly2 p, SparsePoly2 q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_.is_zero()) throw DomainError("p is the zero polynomial");
  if (q_.is_zero()) throw DomainError("q is the zero polynomial");
  if (p_.depends_on_w()) throw DomainError("p depends on w");
  if (p_.has_constant_term()) throw DomainError("p has a constant term");
  if (q_.has_constant_term()) throw DomainError("q has a constant term");
  // p is univariate, so grlex order puts its lowest z-power first.
  delta_ = p_.terms().front().exp.i;
  a_delta_ = p_.terms().front().coeff;
}

SparsePoly2 substitute(const SparsePoly2& g, const SparsePoly2& P, const SparsePoly2& Q,
                       const Limits& limits) {
  if (g.is_zero()) return {};
  // c_j(z) = sum_i b_ij z^i, keyed by j.
  std::map<std::uint64_t, std::vector<Term>> by_j;
  for (const auto& t : g.terms()) by_j[t.exp.j].push_back(t);

  std::vector<SparsePoly2> powers{SparsePoly2::constant(Rational(1))};
  const std::uint64_t max_i = g.degree_z();
  for (std::uint64_t i = 1; i <= max_i; ++i) powers.push_back(mul(powers.back(), P, limits));

  auto coefficient_at_P = [&](const std::vector<Term>& row) {
    SparsePoly2 acc;
    for (const auto& t : row) acc = acc + scale(powers[t.exp.i], t.coeff);
    return acc;
  };

  auto it = by_j.rbegin();
  SparsePoly2 result = coefficient_at_P(it->second);
  std::uint64_t j = it->first;
  for (++it; it != by_j.rend(); ++it) {
    for (; j > it->first; --j) result = mul(result, Q, limits);
    result = result + coefficient_at_P(it->second);
  }
  for (; j > 0; --j) result = mul(result, Q, limits);
  return result;
}

SkewGerm compose(const SkewGerm& outer, const SkewGerm& inner, const Limits& limits) {
  SparsePoly2 p = substitute(outer.p(), inner.p(), SparsePoly2{}, limits);
  SparsePoly2 q = substitute(outer.q(), inner.p(), inner.q(), limits);
  return SkewGerm(std::move(p), std::move(q));
}

SkewGerm iterate_germ(const SkewGerm& f, std::uint64_t n, const Limits& limits) {
  if (n == 0) throw DomainError("iterate count must be positive");
  SkewGerm current = f;
  for (std::uint64_t k = 1; k < n; ++k) current = compose(f, current, limits);
  return current;
}

IterateSequence iterate_sequence(const SkewGerm& f, std::uint64_t n_max, const Limits& limits) {
  IterateSequence seq;
  if (n_max == 0) return seq;
  seq.iterates.push_back(f);
  for (std::uint64_t k = 1; k < n_max; ++k) {
    try {
      seq.iterates.push_back(compose(f, seq.iterates.back(), limits));
    } catch (const ResourceError& e) {
      seq.resource_error = "n=" + std::to_string(k + 1) + ": " + e.what();
      break;
    }
  }
  return seq;
}

}  // namespace skewrate
