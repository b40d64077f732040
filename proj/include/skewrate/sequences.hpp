#pragma once

#include <cstdint>

#include "skewrate/rational.hpp"

namespace skewrate {

/// gamma_n = gamma (delta^(n-1) + delta^(n-2) d + ... + d^(n-1)), summed term by term.
BigInt gamma_n_sum(const BigInt& delta, const BigInt& gamma, const BigInt& d, std::uint64_t n);

/// Same value from the closed forms: gamma (delta^n - d^n) / (delta - d), or
/// n gamma delta^(n-1) when delta == d.
BigInt gamma_n_closed(const BigInt& delta, const BigInt& gamma, const BigInt& d, std::uint64_t n);

inline BigInt gamma_n(const BigInt& delta, const BigInt& gamma, const BigInt& d, std::uint64_t n) {
  return gamma_n_closed(delta, gamma, d, n);
}

/// sum_{k=0}^{n-1} x^k with 0^0 = 1.
BigInt geometric_sum(const BigInt& x, std::uint64_t n);

}  // namespace skewrate
