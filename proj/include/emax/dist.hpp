// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "emax/arith.hpp"
#include "emax/sequence.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace emax::dist {

// A point u in (0,1) carried as distances from both endpoints, so that
// from0 = u and from1 = 1 - u are each accurate near their own endpoint.
// Quantiles pick whichever representation avoids cancellation.
struct UPoint {
    double from0 = 0.0;
    double from1 = 1.0;
};

// Quantile discontinuity: left and right limits at u.
struct Jump {
    double u = 0.0;
    double left = 0.0;
    double right = 0.0;
};

// Purely atomic quantile: value values[i] on (cuts[i-1], cuts[i]] with
// implicit outer cuts 0 and 1. Expected order statistics of such laws
// reduce to finite rational sums.
struct StepQuantile {
    std::vector<Rational> cuts;
    std::vector<Rational> values;
};

struct Support {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// Quantile-function view of a distribution. quantile is the left
// continuous generalized inverse of the CDF; pdf and cdf are optional.
// class_f marks laws whose density is strictly positive and continuous
// on the interior of the support, the condition the integral-form
// constructions require.
struct DistributionSpec {
    std::string label = "custom";
    std::function<double(const UPoint&)> quantile;
    std::vector<Jump> jumps;
    std::function<double(double)> cdf;
    std::function<double(double)> pdf;
    Support support;
    bool class_f = false;
    std::optional<StepQuantile> steps;
    std::vector<UPoint> breakpoints;
};

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-14;
};

double quantile(const DistributionSpec& d, const UPoint& u);
double quantile(const DistributionSpec& d, double u);

// Q(u+): right limit across a jump, Q(u) at continuity points.
double quantile_right_limit(const DistributionSpec& d, double u);

// k * integral of u^{k-1} Q(u) du over (0,1), the expected maximum of k
// independent copies; the min and range variants use the mirrored and
// differenced weights. Throws quad::ConvergenceError when the quantile
// is not integrable to the requested tolerance.
double expected_max(const DistributionSpec& d, int k, const Tolerances& tol = {});
double expected_min(const DistributionSpec& d, int k, const Tolerances& tol = {});
double expected_range(const DistributionSpec& d, int k, const Tolerances& tol = {});

Rational expected_max_exact(const StepQuantile& q, int k);
Rational expected_min_exact(const StepQuantile& q, int k);
Rational expected_range_exact(const StepQuantile& q, int k);

// Prefixes (mu_k), (E min_k), (rho_k) for k = 1..K; exact mode when the
// law is purely atomic, float mode otherwise.
Sequence ems_sequence(const DistributionSpec& d, int K, const Tolerances& tol = {});
Sequence emin_sequence(const DistributionSpec& d, int K, const Tolerances& tol = {});
Sequence ers_sequence(const DistributionSpec& d, int K, const Tolerances& tol = {});

// Closed-form catalog. Ids: uniform(a,b), exponential, logistic_standard,
// half_logistic_sym, gumbel_shifted, frechet_type(theta), normal,
// perturbed_normal(eps), beta_half_one, one_minus_exponential,
// bernoulli(p), bernoulli_sym(p), two_block_uniform, truncated_log.
DistributionSpec catalog(const std::string& id, const std::vector<double>& params = {});
std::vector<std::string> catalog_ids();

// Tail behavior of a tabulated quantile beyond its first or last knot:
// clamp to the knot value, log growth, or a power singularity in the
// distance to the endpoint.
enum class TailKind { Finite, Log, Power };

struct TailBehavior {
    TailKind kind = TailKind::Finite;
    double exponent = 0.0;
};

// Piecewise-linear quantile through (us[i], qs[i]) with declared tail
// behavior. Checks monotonicity, then checks integrability numerically;
// a diverging tail surfaces as quad::ConvergenceError.
DistributionSpec from_quantile_table(const std::vector<double>& us,
                                     const std::vector<double>& qs,
                                     const TailBehavior& lower = {},
                                     const TailBehavior& upper = {});

} // namespace emax::dist
