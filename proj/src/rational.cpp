#include "skewrate/rational.hpp"

#include <cctype>
#include <limits>

#include "skewrate/errors.hpp"

namespace skewrate {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text))
    throw DomainError("malformed rational '" + std::string(text) + "'");
  BigInt num{std::string(num_text)};
  BigInt den{std::string(den_text)};
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  if (negative) num = -num;
  return make_rational(num, den);
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

std::optional<Rational> pow(const Rational& base, const BigInt& exponent) {
  if (exponent < 0) throw DomainError("negative exponent");
  if (exponent == 0) return Rational(1);
  if (base == 0) return Rational(0);
  if (base == 1) return Rational(1);
  if (base == -1) return Rational(mpz_odd_p(exponent.get_mpz_t()) ? -1 : 1);
  if (!exponent.fits_ulong_p()) return std::nullopt;
  const unsigned long e = exponent.get_ui();
  Rational r(pow(BigInt(base.get_num()), e), pow(BigInt(base.get_den()), e));
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

const Rational& ExtendedRational::value() const {
  if (!value_) throw DomainError("value() of +infinity");
  return *value_;
}

ExtendedRational ExtendedRational::reciprocal() const {
  if (!value_) return ExtendedRational(Rational(0));
  if (*value_ == 0) throw DomainError("reciprocal of zero");
  return ExtendedRational(Rational(1) / *value_);
}

bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
  return *a.value_ == *b.value_;
}

std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  return compare(*a.value_, *b.value_);
}

std::string to_string(const ExtendedRational& value) {
  return value.is_infinite() ? std::string("inf") : to_string(value.value());
}

std::string to_string(const LatticePoint& p) {
  return "(" + to_string(p.i) + "," + to_string(p.j) + ")";
}

std::string to_string(const RationalPoint& p) {
  return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
}

}  // namespace skewrate
