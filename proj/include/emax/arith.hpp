// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace emax {

using Rational = mpq_class;
using Integer = mpz_class;

// 70 decimal digits. Strict-sign certification at difference depth 40 meets
// intermediate magnitudes near 1e12 against cell values down to 1e-13, so
// double and long double are both insufficient there.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<70>,
    boost::multiprecision::et_off>;

Integer binomial(unsigned n, unsigned k);

// Exact as a double for n <= 56; larger n round.
double binomial_d(unsigned n, unsigned k);

double to_double(const Rational& q);
BigFloat to_bigfloat(const Rational& q);

// Accepts "num" or "num/den" with optional sign; den must be nonzero.
Rational parse_rational(const std::string& text);
Rational rational_from_parts(const std::string& num, const std::string& den);
std::string rational_to_string(const Rational& q);

} // namespace emax
