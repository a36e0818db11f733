// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "emax/arith.hpp"

namespace emax::special {

inline constexpr double euler_gamma = 0.57721566490153286061;

double norm_pdf(double x);
double norm_cdf(double x);

// Inverse of norm_cdf on (0, 1). Rational approximation polished with one
// Newton step against the erfc-based CDF; relative accuracy holds into the
// far tails. Callers wanting accuracy for u near 1 should reflect:
// norm_quantile(1 - u) == -norm_quantile(u).
double norm_quantile(double u);

// H(n) = 1 + 1/2 + ... + 1/n, H(0) = 0.
double harmonic(unsigned n);
Rational harmonic_exact(unsigned n);

// 1 + 2^{-theta} + ... + n^{-theta}.
double gen_harmonic(unsigned n, double theta);

// T(y) = -log(1 - e^{-y}) on y > 0. Involution: T(T(y)) = y,
// fixed point log 2.
double tail_involution(double y);

// 1 - e^{-y} without cancellation for small y.
double one_minus_exp_neg(double y);

} // namespace emax::special
