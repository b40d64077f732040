#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewrate/poly.hpp"

namespace skewrate {

/// f(z, w) = (p(z), q(z, w)) fixing the origin.
class SkewGerm {
 public:
  /// Throws DomainError unless p != 0 depends only on z with no constant
  /// term, and q != 0 has no constant term.
  SkewGerm(SparsePoly2 p, SparsePoly2 q);

  const SparsePoly2& p() const { return p_; }
  const SparsePoly2& q() const { return q_; }
  std::uint64_t delta() const { return delta_; }
  const Rational& a_delta() const { return a_delta_; }

  friend bool operator==(const SkewGerm& a, const SkewGerm& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }

 private:
  SparsePoly2 p_;
  SparsePoly2 q_;
  std::uint64_t delta_ = 0;
  Rational a_delta_;
};

/// g(P(z), Q(z, w)), evaluated by Horner in w with the powers of P shared.
SparsePoly2 substitute(const SparsePoly2& g, const SparsePoly2& P, const SparsePoly2& Q,
                       const Limits& limits = {});

/// outer o inner.
SkewGerm compose(const SkewGerm& outer, const SkewGerm& inner, const Limits& limits = {});

/// f^n for n >= 1.
SkewGerm iterate_germ(const SkewGerm& f, std::uint64_t n, const Limits& limits = {});

struct IterateSequence {
  std::vector<SkewGerm> iterates;  // iterates[k] = f^(k+1)
  std::optional<std::string> resource_error;
};

/// f, f^2, ..., f^n_max. Stops at the first resource guard and keeps what was
/// computed so far.
IterateSequence iterate_sequence(const SkewGerm& f, std::uint64_t n_max, const Limits& limits = {});

}  // namespace skewrate
