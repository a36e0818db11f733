// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/special.hpp"

#include <cmath>
#include <stdexcept>

namespace emax::special {
namespace {

constexpr double inv_sqrt_2pi = 0.3989422804014326779;
constexpr double sqrt_2 = 1.4142135623730950488;

// Acklam's rational approximation to the normal quantile (~1e-9 before
// polishing).
constexpr double acklam_a[6] = {
    -3.969683028665376e+01, 2.209460984245205e+02,  -2.759285104469687e+02,
    1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00,
};
constexpr double acklam_b[5] = {
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01,  -1.328068155288572e+01,
};
constexpr double acklam_c[6] = {
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00,
};
constexpr double acklam_d[4] = {
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
};

double acklam_tail(double q) {
    return (((((acklam_c[0] * q + acklam_c[1]) * q + acklam_c[2]) * q + acklam_c[3]) * q +
             acklam_c[4]) *
                q +
            acklam_c[5]) /
           ((((acklam_d[0] * q + acklam_d[1]) * q + acklam_d[2]) * q + acklam_d[3]) * q + 1.0);
}

} // namespace

double norm_pdf(double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / sqrt_2);
}

double norm_quantile(double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("norm_quantile requires u in (0, 1)");

    constexpr double p_low = 0.02425;
    double x;
    if (u < p_low) {
        x = acklam_tail(std::sqrt(-2.0 * std::log(u)));
    } else if (u > 1.0 - p_low) {
        x = -acklam_tail(std::sqrt(-2.0 * std::log(1.0 - u)));
    } else {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((acklam_a[0] * r + acklam_a[1]) * r + acklam_a[2]) * r + acklam_a[3]) * r +
              acklam_a[4]) *
                 r +
             acklam_a[5]) *
            q /
            (((((acklam_b[0] * r + acklam_b[1]) * r + acklam_b[2]) * r + acklam_b[3]) * r +
              acklam_b[4]) *
                 r +
             1.0);
    }

    const double err = norm_cdf(x) - u;
    x -= err / norm_pdf(x);
    return x;
}

double harmonic(unsigned n) {
    double h = 0.0;
    for (unsigned j = n; j >= 1; --j)
        h += 1.0 / j;
    return h;
}

Rational harmonic_exact(unsigned n) {
    Rational h(0);
    for (unsigned j = 1; j <= n; ++j)
        h += Rational(1, j);
    return h;
}

double gen_harmonic(unsigned n, double theta) {
    double h = 0.0;
    for (unsigned j = n; j >= 1; --j)
        h += std::pow(static_cast<double>(j), -theta);
    return h;
}

double tail_involution(double y) {
    if (!(y > 0.0))
        throw std::domain_error("tail_involution requires y > 0");
    // Branch at the fixed point: above it 1 - e^{-y} is close to 1 and
    // log1p keeps the result's relative accuracy.
    if (y > 0.6931471805599453)
        return -std::log1p(-std::exp(-y));
    return -std::log(-std::expm1(-y));
}

double one_minus_exp_neg(double y) {
    return -std::expm1(-y);
}

} // namespace emax::special
