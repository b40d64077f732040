#include "skewrate/sequences.hpp"

#include "skewrate/errors.hpp"

namespace skewrate {

BigInt gamma_n_sum(const BigInt& delta, const BigInt& gamma, const BigInt& d, std::uint64_t n) {
  if (n == 0) throw DomainError("gamma_n needs n >= 1");
  BigInt sum = 0;
  for (std::uint64_t k = 0; k < n; ++k) sum += pow(delta, n - 1 - k) * pow(d, k);
  return gamma * sum;
}

BigInt gamma_n_closed(const BigInt& delta, const BigInt& gamma, const BigInt& d,
                      std::uint64_t n) {
  if (n == 0) throw DomainError("gamma_n needs n >= 1");
  if (delta == d) return BigInt(static_cast<unsigned long>(n)) * gamma * pow(delta, n - 1);
  BigInt num = gamma * (pow(delta, n) - pow(d, n));
  BigInt den = delta - d;
  // exact: delta - d divides delta^n - d^n
  return num / den;
}

BigInt geometric_sum(const BigInt& x, std::uint64_t n) {
  BigInt sum = 0;
  BigInt term = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    sum += term;
    term *= x;
  }
  return sum;
}

}  // namespace skewrate
