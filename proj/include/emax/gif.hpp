// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "emax/dist.hpp"
#include "emax/report.hpp"
#include "emax/sequence.hpp"

namespace emax::gif {

// Decay class of h1 at infinity. Exponential stores the rate (may be zero
// or negative for declared growth), Power the exponent of y^{-p}, Compact
// the endpoint beyond which h1 vanishes.
struct TailDecay {
    enum class Kind { Exponential, Power, Compact };
    Kind kind = Kind::Exponential;
    double param = 1.0;
};

// Integral form g(x) = integral of h1(y) (s(y) - e^{-xy}) dy over (0,inf).
// h1 is the density of the canonical measure and determines g up to an
// additive constant; s only fixes that constant, which is cached as
// g_at_1. Evaluation always uses the cancellation-free difference
// g(x) - g(1) = integral of h1(y) (e^{-y} - e^{-xy}) dy.
struct IntegralForm {
    std::string label = "custom";
    std::function<double(double)> h1;
    std::function<double(double)> s;
    // h1(y) ~ c y^a as y -> 0; admissibility requires a > -2.
    double sing_exponent = 0.0;
    TailDecay tail;
    double g_at_1 = 0.0;
    // integral of h1(y) e^{-y}(1-e^{-y}) dy, cached by the factories.
    double lambda = 0.0;
    // Points where h1 is not smooth (box edges, table knots). Quadratures
    // split at these so kinks never limit convergence.
    std::vector<double> y_breaks;
};

// Built-in families.  Domains: 0 < theta < 1 and c > -1 for power_theta,
// c > -1 for log_shift and rational_family, c > -2 for harmonic_family,
// theta > 0 for gen_harmonic_family, 0 <= a < b for box.
IntegralForm power_theta(double theta, double c = 0.0);   // g(x) = (x+c)^theta
IntegralForm log_shift(double c);                         // g(x) = log(x+c)
IntegralForm harmonic_family(double c);                   // g(x) = H(x+c)
IntegralForm gen_harmonic_family(double theta);           // g(k) = 1 + 2^-theta + ... + k^-theta
IntegralForm rational_family(double c);                   // g(x) = 1 - 1/(x+c)
IntegralForm box(double a, double b);                     // h1 = indicator of [a,b]

// Ids accepted: power_theta(theta[,c]), log_shift(c), harmonic(c),
// gen_harmonic(theta), rational_family(c), box(a,b).
IntegralForm form_by_id(const std::string& id, const std::vector<double>& params);
std::vector<std::string> form_ids();

// Piecewise-linear h1 through (ys[i], h1s[i]) with declared endpoint
// behavior: below the grid h1 follows y^sing_exponent, above it the
// declared tail class. ys must be strictly increasing and positive,
// h1s nonnegative. The form's constant is normalized to g(1) = 0.
IntegralForm form_from_table(const std::vector<double>& ys, const std::vector<double>& h1s,
                             double sing_exponent, const TailDecay& tail);

struct Validation {
    double lambda = 0.0;
    Verdict verdict = Verdict::Fail;
    std::string note;
};

// Admissibility: 0 < integral of h1 e^{-y}(1-e^{-y}) dy < infinity and
// declared singularity exponent > -2. Failure is a verdict, not a throw.
Validation validate_form(const IntegralForm& form);

// g(x) for x >= 1 as g(1) plus the difference integral.
double evaluate_g(const IntegralForm& form, double x);

// g(1) recomputed from the s field by quadrature of h1 (s - e^{-y});
// distinct admissible offsets must agree here.
double g1_from_offset(const IntegralForm& form);

// (g(k))_{k=1..K} in float mode.
Sequence sequence_from_form(const IntegralForm& form, int K);

// g^{(n)}(x) for x > 1 via (-1)^{n+1} g^{(n)}(x) = integral of
// y^n h1(y) e^{-xy} dy, which is positive for every admissible form.
double derivative_by_quadrature(const IntegralForm& form, int n, double x);

// Central finite difference with one Richardson extrapolation level and an
// order-dependent step, for cross-checking quadrature derivatives. The
// stencil must stay inside the domain: requires x - 4h >= lo where the
// form overload takes lo = 1.
double derivative_by_difference(const std::function<double(double)>& g, int n, double x,
                                double lo = -std::numeric_limits<double>::infinity());
double derivative_by_difference(const IntegralForm& form, int n, double x);

// Sign pattern (-1)^{n+1} g^{(n)}(x) > 0 for n = 1..n_max over x_grid
// (each x > 1), with a finite-difference cross-check for n <= 4 at
// x >= 1.5. values[n-1][i] is the signed derivative g^{(n)}(x_i).
struct DerivativeCheck {
    CheckReport report;
    std::vector<std::vector<double>> values;
};
DerivativeCheck derivative_signs(const IntegralForm& form, int n_max,
                                 const std::vector<double>& x_grid);

// Bernstein function B(x) = g(x+1) - g(1): B(0) = 0 and B(x)/x -> 0.
// slope_probes holds B(x)/x at x = 1e2, 1e3, 1e4; slope_vanishing is the
// three-point decreasing-trend verdict, never a certified limit.
struct BernsteinView {
    double g_at_1 = 0.0;
    std::function<double(double)> value;
    std::function<double(double)> lkr_density;  // e^{-y} h1(y)
    std::vector<double> slope_probes;
    bool slope_vanishing = false;
};
BernsteinView bernstein_view(const IntegralForm& form);

// h1(y) = e^{-y} / f(Q(e^{-y})) for a law with strictly positive
// continuous density f and quantile Q. The returned form has g(1) equal
// to the law's mean, so evaluate_g(form, k) reproduces expected_max(d, k).
// Throws std::domain_error when d lacks a usable density.
IntegralForm h1_from_distribution(const dist::DistributionSpec& d,
                                  const dist::Tolerances& tol = {});

// Inverts h1 back to a quantile G(u) = c1 - integral of h1(y) dy from
// log 2 to -log u, with c1 calibrated so the mean is mu1. Requires h1
// strictly positive on (0,inf); throws std::domain_error on a positivity
// violation over the probe grid.
dist::DistributionSpec reconstruct_quantile(const IntegralForm& form, double mu1);

}  // namespace emax::gif
