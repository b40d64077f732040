#include "skewrate/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "skewrate/errors.hpp"
#include "skewrate/kernels.hpp"

namespace skewrate {

SparsePoly2 SparsePoly2::from_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return GrlexLess{}(a.exp, b.exp); });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  SparsePoly2 p;
  p.terms_ = std::move(out);
  return p;
}

SparsePoly2 SparsePoly2::monomial(const Rational& coeff, Exponent exp) {
  SparsePoly2 p;
  if (coeff != 0) p.terms_.push_back({exp, coeff});
  return p;
}

SparsePoly2 SparsePoly2::from_sorted_unchecked(std::vector<Term> terms) {
  SparsePoly2 p;
  p.terms_ = std::move(terms);
  return p;
}

Rational SparsePoly2::coefficient(Exponent exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, const Exponent& e) { return GrlexLess{}(t.exp, e); });
  if (it != terms_.end() && it->exp == exp) return it->coeff;
  return Rational(0);
}

bool SparsePoly2::contains(Exponent exp) const { return coefficient(exp) != 0; }

std::uint64_t SparsePoly2::total_degree() const {
  return terms_.empty() ? 0 : terms_.back().exp.total();
}

std::uint64_t SparsePoly2::degree_z() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp.i);
  return d;
}

std::uint64_t SparsePoly2::degree_w() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp.j);
  return d;
}

bool SparsePoly2::depends_on_w() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp.j > 0; });
}

bool SparsePoly2::has_constant_term() const {
  return !terms_.empty() && terms_.front().exp.total() == 0;
}

bool operator==(const SparsePoly2& a, const SparsePoly2& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (!(a.terms_[k].exp == b.terms_[k].exp) || a.terms_[k].coeff != b.terms_[k].coeff)
      return false;
  }
  return true;
}

SparsePoly2 operator+(const SparsePoly2& a, const SparsePoly2& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  const GrlexLess less;
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && less(ia->exp, ib->exp))) {
      out.push_back(*ia++);
    } else if (ia == a.terms().end() || less(ib->exp, ia->exp)) {
      out.push_back(*ib++);
    } else {
      Rational c = ia->coeff + ib->coeff;
      if (c != 0) out.push_back({ia->exp, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return SparsePoly2::from_sorted_unchecked(std::move(out));
}

SparsePoly2 operator-(const SparsePoly2& a) { return scale(a, Rational(-1)); }

SparsePoly2 operator-(const SparsePoly2& a, const SparsePoly2& b) { return a + (-b); }

SparsePoly2 scale(const SparsePoly2& a, const Rational& factor) {
  if (factor == 0) return {};
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({t.exp, t.coeff * factor});
  return SparsePoly2::from_sorted_unchecked(std::move(out));
}

SparsePoly2 mul(const SparsePoly2& a, const SparsePoly2& b, const Limits& limits) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::uint64_t degree_cap = std::min(limits.max_degree, Limits::kHardDegreeCeiling);
  if (a.total_degree() + b.total_degree() > degree_cap) {
    throw ResourceError("total degree " + std::to_string(a.total_degree() + b.total_degree()) +
                        " exceeds cap " + std::to_string(degree_cap));
  }
  SparsePoly2 product = kernels::mul_parallel(a, b);
  if (product.size() > limits.max_terms) {
    throw ResourceError("term count " + std::to_string(product.size()) + " exceeds cap " +
                        std::to_string(limits.max_terms));
  }
  return product;
}

SparsePoly2 pow(const SparsePoly2& a, std::uint64_t k, const Limits& limits) {
  SparsePoly2 result = SparsePoly2::constant(Rational(1));
  SparsePoly2 base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base, limits);
    k >>= 1U;
    if (k > 0) base = mul(base, base, limits);
  }
  return result;
}

SparsePoly2 truncate_z(const SparsePoly2& a, std::uint64_t max_i) {
  std::vector<Term> out;
  for (const auto& t : a.terms())
    if (t.exp.i <= max_i) out.push_back(t);
  return SparsePoly2::from_sorted_unchecked(std::move(out));
}

namespace {

std::string monomial_text(const Exponent& e) {
  std::string s;
  auto var = [&s](char name, std::uint64_t power) {
    if (power == 0) return;
    if (!s.empty()) s += '*';
    s += name;
    if (power > 1) s += "^" + std::to_string(power);
  };
  var('z', e.i);
  var('w', e.j);
  return s;
}

}  // namespace

std::string to_string(const SparsePoly2& poly) {
  if (poly.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : poly.terms()) {
    const bool negative = t.coeff < 0;
    const Rational magnitude = negative ? Rational(-t.coeff) : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_text(t.exp);
    if (mono.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += to_string(magnitude) + "*" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, VarSet allowed) : text_(text), allowed_(allowed) {}

  SparsePoly2 parse() {
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    terms.push_back(term(negative));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("unexpected character '" + std::string(1, c) + "'");
      ++pos_;
      terms.push_back(term(c == '-'));
    }
    return SparsePoly2::from_terms(std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  BigInt digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt{std::string(text_.substr(start, pos_ - start))};
  }

  std::uint64_t exponent() {
    skip_ws();
    if (peek() == '-') fail("negative exponent");
    const std::size_t at = pos_;
    const BigInt value = digits();
    if (value > BigInt(static_cast<unsigned long>(Limits::kHardDegreeCeiling))) {
      throw ResourceError("exponent at position " + std::to_string(at) +
                          " exceeds the representable degree ceiling");
    }
    return value.get_ui();
  }

  Term term(bool negative) {
    skip_ws();
    Rational coeff(1);
    bool seen_anything = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      BigInt num = digits();
      BigInt den(1);
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      coeff = make_rational(num, den);
      seen_anything = true;
    }
    Exponent exp;
    for (;;) {
      skip_ws();
      bool star = false;
      if (peek() == '*') {
        star = true;
        ++pos_;
        skip_ws();
      }
      const char c = peek();
      if (c != 'z' && c != 'w') {
        if (star) fail("expected variable after '*'");
        break;
      }
      if ((c == 'z' && !allowed_.z) || (c == 'w' && !allowed_.w))
        fail("variable '" + std::string(1, c) + "' not allowed here");
      ++pos_;
      std::uint64_t power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        power = exponent();
      }
      (c == 'z' ? exp.i : exp.j) += power;
      if (exp.i > Limits::kHardDegreeCeiling || exp.j > Limits::kHardDegreeCeiling)
        throw ResourceError("monomial degree exceeds the representable ceiling");
      seen_anything = true;
    }
    if (!seen_anything) fail("expected a term");
    if (negative) coeff = -coeff;
    return {exp, coeff};
  }

  std::string_view text_;
  VarSet allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

SparsePoly2 parse_poly(std::string_view text, VarSet allowed) {
  return Parser(text, allowed).parse();
}

Orders orders(const SparsePoly2& poly) {
  if (poly.is_zero()) throw DomainError("orders of the zero polynomial");
  Orders o{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max(),
           std::numeric_limits<std::uint64_t>::max()};
  for (const auto& t : poly.terms()) {
    o.c = std::min(o.c, t.exp.total());
    o.ord_z = std::min(o.ord_z, t.exp.i);
    o.ord_w = std::min(o.ord_w, t.exp.j);
  }
  return o;
}

std::vector<Exponent> pareto_minimal(const SparsePoly2& poly) {
  std::vector<Exponent> pts;
  pts.reserve(poly.size());
  for (const auto& t : poly.terms()) pts.push_back(t.exp);
  std::sort(pts.begin(), pts.end(), [](const Exponent& a, const Exponent& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<Exponent> out;
  for (const auto& e : pts) {
    if (out.empty() || e.j < out.back().j) {
      if (!out.empty() && out.back().i == e.i) continue;
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace skewrate
