#include "skewrate/kernels.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace skewrate::kernels {

SparsePoly2 mul_serial(const SparsePoly2& a, const SparsePoly2& b) {
  std::map<Exponent, Rational, GrlexLess> acc;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      acc[Exponent{x.exp.i + y.exp.i, x.exp.j + y.exp.j}] += x.coeff * y.coeff;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (c != 0) out.push_back({e, std::move(c)});
  return SparsePoly2::from_sorted_unchecked(std::move(out));
}

namespace {

struct Entry {
  std::uint64_t j;
  BigInt num;
};

// Integer numerators over one common denominator, bucketed by z-exponent.
struct Rows {
  BigInt den{1};
  std::uint64_t max_j = 0;
  std::vector<std::vector<Entry>> by_i;  // index = z-exponent
};

Rows split_rows(const SparsePoly2& p) {
  Rows r;
  for (const auto& t : p.terms()) {
    mpz_lcm(r.den.get_mpz_t(), r.den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  r.by_i.resize(p.degree_z() + 1);
  for (const auto& t : p.terms()) {
    BigInt scaled = t.coeff.get_num() * (r.den / t.coeff.get_den());
    r.by_i[t.exp.i].push_back({t.exp.j, std::move(scaled)});
    r.max_j = std::max(r.max_j, t.exp.j);
  }
  return r;
}

}  // namespace

SparsePoly2 mul_parallel(const SparsePoly2& a, const SparsePoly2& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Rows ra = split_rows(a);
  const Rows rb = split_rows(b);
  const BigInt den = ra.den * rb.den;
  const std::int64_t out_rows = static_cast<std::int64_t>(ra.by_i.size() + rb.by_i.size() - 1);
  const std::uint64_t width = ra.max_j + rb.max_j + 1;
  std::vector<std::vector<Term>> rows(static_cast<std::size_t>(out_rows));

#pragma omp parallel
  {
    std::vector<BigInt> acc(width);
    std::vector<char> seen(width, 0);
    std::vector<std::uint64_t> touched;

#pragma omp for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < out_rows; ++r) {
      const auto row = static_cast<std::size_t>(r);
      const std::size_t lo = row >= rb.by_i.size() ? row - (rb.by_i.size() - 1) : 0;
      const std::size_t hi = std::min(row, ra.by_i.size() - 1);
      touched.clear();
      for (std::size_t ia = lo; ia <= hi; ++ia) {
        const auto& xa = ra.by_i[ia];
        const auto& xb = rb.by_i[row - ia];
        if (xa.empty() || xb.empty()) continue;
        for (const auto& ea : xa) {
          for (const auto& eb : xb) {
            const std::uint64_t j = ea.j + eb.j;
            if (!seen[j]) {
              seen[j] = 1;
              touched.push_back(j);
              acc[j] = 0;
            }
            mpz_addmul(acc[j].get_mpz_t(), ea.num.get_mpz_t(), eb.num.get_mpz_t());
          }
        }
      }
      std::sort(touched.begin(), touched.end());
      auto& out = rows[row];
      for (std::uint64_t j : touched) {
        seen[j] = 0;
        if (acc[j] == 0) continue;
        Rational c(acc[j], den);
        c.canonicalize();
        out.push_back({Exponent{row, j}, std::move(c)});
      }
    }
  }

  std::vector<Term> out;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  out.reserve(total);
  for (auto& r : rows)
    for (auto& t : r) out.push_back(std::move(t));
  std::sort(out.begin(), out.end(),
            [](const Term& x, const Term& y) { return GrlexLess{}(x.exp, y.exp); });
  return SparsePoly2::from_sorted_unchecked(std::move(out));
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace skewrate::kernels
