#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewrate/rational.hpp"

namespace skewrate {

/// Exponent pair (i, j) of the monomial z^i w^j.
///
/// Stored as machine words: every polynomial that reaches the arithmetic
/// kernels is bounded by Limits::max_degree, which is capped below 2^31 so
/// that a pair packs into one 64-bit key. Quantities that outgrow this
/// (gamma_n, d^n, vertex predictions) live in BigInt-based LatticePoint.
struct Exponent {
  std::uint64_t i = 0;
  std::uint64_t j = 0;

  std::uint64_t total() const { return i + j; }

  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order by (i + j, i); this is the storage and print order.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.i < b.i;
  }
};

struct Term {
  Exponent exp;
  Rational coeff;
};

/// Resource guard for the arithmetic kernels.
struct Limits {
  static constexpr std::uint64_t kHardDegreeCeiling = (std::uint64_t{1} << 31) - 1;

  std::uint64_t max_terms = 1'000'000;
  std::uint64_t max_degree = 1'000'000;
};

/// Finitely supported map (i, j) -> nonzero rational. Terms are kept sorted in
/// grlex order with no duplicates and no zero coefficients.
class SparsePoly2 {
 public:
  SparsePoly2() = default;

  /// Sums duplicate exponents and drops zero coefficients.
  static SparsePoly2 from_terms(std::vector<Term> terms);
  static SparsePoly2 monomial(const Rational& coeff, Exponent exp);
  static SparsePoly2 constant(const Rational& coeff) { return monomial(coeff, {0, 0}); }

  /// Trusted constructor for kernels: input must already be sorted, unique, nonzero.
  static SparsePoly2 from_sorted_unchecked(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(Exponent exp) const;
  bool contains(Exponent exp) const;

  std::uint64_t total_degree() const;
  std::uint64_t degree_z() const;
  std::uint64_t degree_w() const;
  bool depends_on_w() const;
  bool has_constant_term() const;

  friend bool operator==(const SparsePoly2& a, const SparsePoly2& b);

 private:
  std::vector<Term> terms_;
};

SparsePoly2 operator+(const SparsePoly2& a, const SparsePoly2& b);
SparsePoly2 operator-(const SparsePoly2& a, const SparsePoly2& b);
SparsePoly2 operator-(const SparsePoly2& a);
SparsePoly2 scale(const SparsePoly2& a, const Rational& factor);

/// Exact product. Throws ResourceError when the result would exceed `limits`.
SparsePoly2 mul(const SparsePoly2& a, const SparsePoly2& b, const Limits& limits = {});

/// a^k by repeated squaring; a^0 = 1.
SparsePoly2 pow(const SparsePoly2& a, std::uint64_t k, const Limits& limits = {});

/// Keeps only the terms with z-exponent <= max_i.
SparsePoly2 truncate_z(const SparsePoly2& a, std::uint64_t max_i);

/// Prints in grlex order, e.g. "-2*w^2 + z*w + z^2". The zero polynomial prints "0".
std::string to_string(const SparsePoly2& poly);

struct VarSet {
  bool z = true;
  bool w = true;
};

/// Parses the germ-expression grammar:
///   expr  := ['+'|'-'] term (('+'|'-') term)*
///   term  := coeff? ('*'? var ('^' nat)?)*
///   coeff := int | int '/' posint
/// Whitespace is insignificant. Throws ParseError.
SparsePoly2 parse_poly(std::string_view text, VarSet allowed = {});

struct Orders {
  std::uint64_t c = 0;      // min(i + j)
  std::uint64_t ord_z = 0;  // min(i)
  std::uint64_t ord_w = 0;  // min(j)
};

/// Throws DomainError on the zero polynomial.
Orders orders(const SparsePoly2& poly);

/// Pareto-minimal support points (no other support point is <= in both
/// coordinates), sorted by increasing i (hence strictly decreasing j).
std::vector<Exponent> pareto_minimal(const SparsePoly2& poly);

}  // namespace skewrate
