#pragma once

#include "skewrate/poly.hpp"

// Multiplication kernels behind skewrate::mul.
//
// mul_parallel is the production kernel: operands are split into z-rows with
// integer numerators over a common denominator, and output rows are
// distributed across OpenMP threads with one dense mpz accumulator per thread.
// Rows are independent, so the result is identical for any thread count.
//
// mul_serial is the reference: a plain double loop accumulating rational
// products in an ordered map. Tests and the benchmark compare the two.

namespace skewrate::kernels {

SparsePoly2 mul_serial(const SparsePoly2& a, const SparsePoly2& b);
SparsePoly2 mul_parallel(const SparsePoly2& a, const SparsePoly2& b);

/// Number of OpenMP threads the parallel kernel will use (1 without OpenMP).
int max_threads();

}  // namespace skewrate::kernels
