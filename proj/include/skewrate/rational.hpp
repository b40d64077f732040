#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace skewrate {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Canonical rational num/den. Throws DomainError when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

/// "n" for integers, "n/d" otherwise. Never produces floating point.
std::string to_string(const BigInt& value);
std::string to_string(const Rational& value);

/// Parses "n" or "n/d" (optional leading sign, d > 0).
Rational parse_rational(std::string_view text);

BigInt pow(const BigInt& base, unsigned long exponent);

/// base^exponent for a non-negative big exponent. Returns nullopt when the
/// exponent does not fit in an unsigned long and |base| is not 0 or 1.
std::optional<Rational> pow(const Rational& base, const BigInt& exponent);

bool is_integer(const Rational& value);

/// A rational or +infinity.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT
  ExtendedRational(long value) : value_(Rational(value)) {}        // NOLINT

  static ExtendedRational infinity() {
    ExtendedRational r;
    r.value_.reset();
    return r;
  }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  /// Throws DomainError on +infinity.
  const Rational& value() const;

  /// 1/x with 1/inf = 0. Throws DomainError for zero.
  ExtendedRational reciprocal() const;

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b);
  friend std::strong_ordering operator<=>(const ExtendedRational& a,
                                          const ExtendedRational& b);

 private:
  std::optional<Rational> value_ = Rational(0);
};

std::string to_string(const ExtendedRational& value);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

/// Lattice point with arbitrary-precision coordinates.
struct LatticePoint {
  BigInt i;
  BigInt j;

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.i == b.i && a.j == b.j;
  }
};

struct RationalPoint {
  Rational x;
  Rational y;

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

std::string to_string(const LatticePoint& p);
std::string to_string(const RationalPoint& p);

}  // namespace skewrate
