// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/arith.hpp"

#include <stdexcept>

namespace emax {

Integer binomial(unsigned n, unsigned k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

double binomial_d(unsigned n, unsigned k) {
    return binomial(n, k).get_d();
}

double to_double(const Rational& q) {
    return q.get_d();
}

BigFloat to_bigfloat(const Rational& q) {
    return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return rational_from_parts(text, "1");
    return rational_from_parts(text.substr(0, slash), text.substr(slash + 1));
}

Rational rational_from_parts(const std::string& num, const std::string& den) {
    Integer n, d;
    if (n.set_str(num, 10) != 0)
        throw std::invalid_argument("bad rational numerator: " + num);
    if (d.set_str(den, 10) != 0)
        throw std::invalid_argument("bad rational denominator: " + den);
    if (d == 0)
        throw std::invalid_argument("rational denominator is zero");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    Rational r(q);
    r.canonicalize();
    return r.get_str();
}

} // namespace emax
