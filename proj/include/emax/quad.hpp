// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace emax::quad {

// Evaluation point of an adaptive pass over [a, b]. from_lo and from_hi are
// the distances to a and b, each accumulated without subtracting across the
// interval, so integrands singular at either endpoint can be computed at
// full relative accuracy arbitrarily close to it. x is anchored to the
// nearer endpoint and is the right choice away from the endpoints.
struct Node {
    double x;
    double from_lo;
    double from_hi;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_cells = 4000;
};

struct Outcome {
    double value = 0.0;
    double error = 0.0;
    int cells = 0;
    bool converged = false;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Outcome partial_outcome)
        : std::runtime_error(what), partial(partial_outcome) {}
    Outcome partial;
};

using Integrand = std::function<double(const Node&)>;

// Adaptive Gauss-Kronrod (7, 15) over the finite interval [a, b].
// Subdivision always bisects the cell with the largest error estimate, so
// integrable endpoint singularities are refined geometrically. Requires
// a <= b and an integrand that stays finite at every node it is handed.
Outcome try_integrate(const Integrand& f, double a, double b, const Options& opt = {});

// As try_integrate, but throws ConvergenceError when the error estimate
// cannot be brought under max(abs_tol, rel_tol * |value|). Either routine
// also accepts at the roundoff floor of the integrand's absolute mass,
// where subdivision cannot reduce the estimate any further.
double integrate(const Integrand& f, double a, double b, const Options& opt = {});

double integrate_plain(const std::function<double(double)>& f, double a, double b,
                       const Options& opt = {});

} // namespace emax::quad
