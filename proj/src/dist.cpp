// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/dist.hpp"

#include "emax/quad.hpp"
#include "emax/special.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace emax::dist {
namespace {

namespace sp = special;

// (base)^e for integer e >= 0, base = from0 = 1 - from1 in (0,1). Near 1
// the log1p route keeps full relative accuracy where pow(from0, e) would
// lose it to the representation of from0 itself.
double pow_stable(double from0, double from1, int e) {
    if (e == 0)
        return 1.0;
    if (from0 > 0.75)
        return std::exp(static_cast<double>(e) * std::log1p(-from1));
    return std::pow(from0, static_cast<double>(e));
}

// -log u, accurate at both ends of (0,1).
double neg_log_u(const UPoint& u) {
    return u.from0 <= 0.5 ? -std::log(u.from0) : -std::log1p(-u.from1);
}

enum class StatKind { Max, Min, Range };

double weight_at(const UPoint& u, int k, StatKind kind) {
    switch (kind) {
    case StatKind::Max: return k * pow_stable(u.from0, u.from1, k - 1);
    case StatKind::Min: return k * pow_stable(u.from1, u.from0, k - 1);
    case StatKind::Range:
        return k * (pow_stable(u.from0, u.from1, k - 1) - pow_stable(u.from1, u.from0, k - 1));
    }
    return 0.0;
}

// Sum of segment integrals of Q(u) * weight(u) between consecutive
// breakpoints. Each node's u is rebuilt from the segment ends so that
// from0 and from1 stay cancellation-free across the whole of (0,1).
double integrate_weighted(const DistributionSpec& d, int k, StatKind kind,
                          const Tolerances& tol) {
    if (k < 1)
        throw std::invalid_argument("order statistic index must be positive");
    if (!d.quantile)
        throw std::invalid_argument("distribution has no quantile function");

    std::vector<UPoint> cuts;
    cuts.push_back({0.0, 1.0});
    for (const UPoint& b : d.breakpoints)
        cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end(),
              [](const UPoint& a, const UPoint& b) { return a.from0 < b.from0; });
    cuts.push_back({1.0, 0.0});

    quad::Options opt;
    opt.rel_tol = tol.rel;
    opt.abs_tol = tol.abs;

    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const UPoint a = cuts[i];
        const UPoint b = cuts[i + 1];
        if (!(b.from0 > a.from0))
            continue;
        auto f = [&](const quad::Node& n) {
            UPoint u{a.from0 + n.from_lo, b.from1 + n.from_hi};
            return d.quantile(u) * weight_at(u, k, kind);
        };
        total += quad::integrate(f, a.from0, b.from0, opt);
    }
    return total;
}

Rational pow_rational(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}

void require_steps(const StepQuantile& q, int k) {
    if (k < 1)
        throw std::invalid_argument("order statistic index must be positive");
    if (q.values.size() != q.cuts.size() + 1)
        throw std::invalid_argument("step quantile needs one more value than cuts");
}

// Best small-denominator rational within 1e-12 of x, by continued
// fractions; falls back to the exact binary expansion of the double.
// Keeps catalog parameters like 0.1 exact in rational arithmetic.
Rational rationalize(double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("parameter must be finite");
    const double tol = 1e-12 * std::max(1.0, std::fabs(x));
    const bool neg = x < 0;
    double v = std::fabs(x);

    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double a = v;
    for (int it = 0; it < 40; ++it) {
        const double fl = std::floor(a);
        if (fl > 9e17)
            break;
        const long long ai = static_cast<long long>(fl);
        const long long p2 = ai * p1 + p0;
        const long long q2 = ai * q1 + q0;
        if (q2 > 1000000000LL)
            break;
        if (q2 > 0 && std::fabs(v - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) {
            Rational r(static_cast<long>(p2), static_cast<long>(q2));
            r.canonicalize();
            return neg ? Rational(-r) : r;
        }
        const double frac = a - fl;
        if (frac < 1e-15)
            break;
        a = 1.0 / frac;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return Rational(x);
}

void require_params(const std::string& id, const std::vector<double>& params, size_t n) {
    if (params.size() != n)
        throw std::invalid_argument("catalog entry " + id + " expects " + std::to_string(n) +
                                    " parameter(s)");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

DistributionSpec make_normal() {
    DistributionSpec d;
    d.label = "normal";
    d.quantile = [](const UPoint& u) {
        return u.from0 <= 0.5 ? sp::norm_quantile(u.from0) : -sp::norm_quantile(u.from1);
    };
    d.cdf = [](double x) { return sp::norm_cdf(x); };
    d.pdf = [](double x) { return sp::norm_pdf(x); };
    d.support = {-kInf, kInf};
    d.class_f = true;
    return d;
}

} // namespace

double quantile(const DistributionSpec& d, const UPoint& u) {
    if (!d.quantile)
        throw std::invalid_argument("distribution has no quantile function");
    if (!(u.from0 > 0.0) || !(u.from1 > 0.0))
        throw std::domain_error("quantile argument must lie in (0,1)");
    return d.quantile(u);
}

double quantile(const DistributionSpec& d, double u) {
    return quantile(d, UPoint{u, 1.0 - u});
}

double quantile_right_limit(const DistributionSpec& d, double u) {
    for (const Jump& j : d.jumps)
        if (std::fabs(u - j.u) <= 1e-12 * std::max(1.0, std::fabs(j.u)))
            return j.right;
    return quantile(d, u);
}

double expected_max(const DistributionSpec& d, int k, const Tolerances& tol) {
    if (d.steps)
        return to_double(expected_max_exact(*d.steps, k));
    return integrate_weighted(d, k, StatKind::Max, tol);
}

double expected_min(const DistributionSpec& d, int k, const Tolerances& tol) {
    if (d.steps)
        return to_double(expected_min_exact(*d.steps, k));
    return integrate_weighted(d, k, StatKind::Min, tol);
}

double expected_range(const DistributionSpec& d, int k, const Tolerances& tol) {
    if (d.steps)
        return to_double(expected_range_exact(*d.steps, k));
    return integrate_weighted(d, k, StatKind::Range, tol);
}

Rational expected_max_exact(const StepQuantile& q, int k) {
    require_steps(q, k);
    Rational total(0);
    Rational prev_pow(0);
    for (size_t i = 0; i < q.values.size(); ++i) {
        const Rational ci = i < q.cuts.size() ? q.cuts[i] : Rational(1);
        const Rational cpow = pow_rational(ci, k);
        total += q.values[i] * (cpow - prev_pow);
        prev_pow = cpow;
    }
    return total;
}

Rational expected_min_exact(const StepQuantile& q, int k) {
    require_steps(q, k);
    Rational total(0);
    Rational prev_pow = pow_rational(Rational(1), k);
    for (size_t i = 0; i < q.values.size(); ++i) {
        const Rational ci = i < q.cuts.size() ? q.cuts[i] : Rational(1);
        const Rational cpow = pow_rational(1 - ci, k);
        total += q.values[i] * (prev_pow - cpow);
        prev_pow = cpow;
    }
    return total;
}

Rational expected_range_exact(const StepQuantile& q, int k) {
    return expected_max_exact(q, k) - expected_min_exact(q, k);
}

namespace {

template <class F>
Sequence build_sequence(const DistributionSpec& d, int K, const Tolerances& tol, F&& stat,
                        Rational (*exact_stat)(const StepQuantile&, int)) {
    if (K < 1)
        throw std::invalid_argument("sequence length must be positive");
    if (d.steps) {
        std::vector<Rational> v;
        v.reserve(K);
        for (int k = 1; k <= K; ++k)
            v.push_back(exact_stat(*d.steps, k));
        return Sequence::from_rationals(std::move(v));
    }
    std::vector<double> v;
    v.reserve(K);
    for (int k = 1; k <= K; ++k)
        v.push_back(stat(d, k, tol));
    return Sequence::from_doubles(std::move(v));
}

} // namespace

Sequence ems_sequence(const DistributionSpec& d, int K, const Tolerances& tol) {
    return build_sequence(d, K, tol, [](const DistributionSpec& s, int k, const Tolerances& t) {
        return expected_max(s, k, t);
    }, &expected_max_exact);
}

Sequence emin_sequence(const DistributionSpec& d, int K, const Tolerances& tol) {
    return build_sequence(d, K, tol, [](const DistributionSpec& s, int k, const Tolerances& t) {
        return expected_min(s, k, t);
    }, &expected_min_exact);
}

Sequence ers_sequence(const DistributionSpec& d, int K, const Tolerances& tol) {
    return build_sequence(d, K, tol, [](const DistributionSpec& s, int k, const Tolerances& t) {
        return expected_range(s, k, t);
    }, &expected_range_exact);
}

DistributionSpec catalog(const std::string& id, const std::vector<double>& params) {
    DistributionSpec d;
    d.label = id;

    if (id == "uniform") {
        double a = 0.0, b = 1.0;
        if (params.size() == 2) {
            a = params[0];
            b = params[1];
        } else if (!params.empty()) {
            throw std::invalid_argument("catalog entry uniform expects 0 or 2 parameters");
        }
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
            throw std::invalid_argument("uniform needs a < b");
        d.quantile = [a, b](const UPoint& u) {
            return u.from0 <= 0.75 ? a + (b - a) * u.from0 : b - (b - a) * u.from1;
        };
        d.cdf = [a, b](double x) { return std::clamp((x - a) / (b - a), 0.0, 1.0); };
        d.pdf = [a, b](double x) { return x > a && x < b ? 1.0 / (b - a) : 0.0; };
        d.support = {a, b};
        d.class_f = true;
        return d;
    }

    if (id == "exponential") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) {
            return u.from0 <= 0.5 ? -std::log1p(-u.from0) : -std::log(u.from1);
        };
        d.cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
        d.pdf = [](double x) { return x >= 0.0 ? std::exp(-x) : 0.0; };
        d.support = {0.0, kInf};
        d.class_f = true;
        return d;
    }

    if (id == "logistic_standard") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) { return std::log(u.from0) - std::log(u.from1); };
        d.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
        d.pdf = [](double x) {
            const double t = std::exp(-std::fabs(x));
            return t / ((1.0 + t) * (1.0 + t));
        };
        d.support = {-kInf, kInf};
        d.class_f = true;
        return d;
    }

    if (id == "half_logistic_sym") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) {
            return 0.5 * (std::log(u.from0) - std::log(u.from1));
        };
        d.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-2.0 * x)); };
        d.pdf = [](double x) {
            const double t = std::exp(-2.0 * std::fabs(x));
            return 2.0 * t / ((1.0 + t) * (1.0 + t));
        };
        d.support = {-kInf, kInf};
        d.class_f = true;
        return d;
    }

    if (id == "gumbel_shifted") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) { return -std::log(neg_log_u(u)) - sp::euler_gamma; };
        d.cdf = [](double x) { return std::exp(-std::exp(-(x + sp::euler_gamma))); };
        d.pdf = [](double x) {
            const double t = x + sp::euler_gamma;
            return std::exp(-t - std::exp(-t));
        };
        d.support = {-kInf, kInf};
        d.class_f = true;
        return d;
    }

    if (id == "frechet_type") {
        require_params(id, params, 1);
        const double theta = params[0];
        if (!(theta > 0.0) || !(theta < 1.0))
            throw std::invalid_argument("frechet_type needs theta in (0,1)");
        const double gamma1 = std::tgamma(1.0 - theta);
        const double lambda = std::pow(gamma1, -1.0 / theta);
        d.quantile = [theta, gamma1](const UPoint& u) {
            return std::pow(neg_log_u(u), -theta) / gamma1;
        };
        d.cdf = [theta, lambda](double x) {
            return x <= 0.0 ? 0.0 : std::exp(-lambda * std::pow(x, -1.0 / theta));
        };
        d.pdf = [theta, lambda](double x) {
            if (x <= 0.0)
                return 0.0;
            return std::exp(-lambda * std::pow(x, -1.0 / theta)) * (lambda / theta) *
                   std::pow(x, -1.0 / theta - 1.0);
        };
        d.support = {0.0, kInf};
        d.class_f = true;
        return d;
    }

    if (id == "normal") {
        require_params(id, params, 0);
        return make_normal();
    }

    if (id == "perturbed_normal") {
        require_params(id, params, 1);
        const double eps = params[0];
        if (!(eps > 0.0) || !(eps < std::sqrt(2.0 * 3.14159265358979323846)))
            throw std::invalid_argument("perturbed_normal needs eps in (0, sqrt(2 pi))");
        d.quantile = [eps](const UPoint& u) {
            const double base =
                u.from0 <= 0.5 ? sp::norm_quantile(u.from0) : -sp::norm_quantile(u.from1);
            return base + eps * u.from0 * u.from1;
        };
        d.support = {-kInf, kInf};
        d.class_f = false;
        return d;
    }

    if (id == "beta_half_one") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) { return u.from0 * u.from0; };
        d.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : std::sqrt(x)); };
        d.pdf = [](double x) { return x > 0.0 && x < 1.0 ? 0.5 / std::sqrt(x) : 0.0; };
        d.support = {0.0, 1.0};
        d.class_f = true;
        return d;
    }

    if (id == "one_minus_exponential") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) {
            return u.from0 <= 0.75 ? 1.0 + std::log(u.from0) : 1.0 + std::log1p(-u.from1);
        };
        d.cdf = [](double x) { return x >= 1.0 ? 1.0 : std::exp(x - 1.0); };
        d.pdf = [](double x) { return x < 1.0 ? std::exp(x - 1.0) : 0.0; };
        d.support = {-kInf, 1.0};
        d.class_f = true;
        return d;
    }

    if (id == "bernoulli") {
        require_params(id, params, 1);
        const double p = params[0];
        if (!(p > 0.0) || !(p < 1.0))
            throw std::invalid_argument("bernoulli needs p in (0,1)");
        const Rational pr = rationalize(p);
        const Rational cut = 1 - pr;
        const double cut_d = to_double(cut);
        d.steps = StepQuantile{{cut}, {Rational(0), Rational(1)}};
        d.quantile = [cut_d](const UPoint& u) { return u.from0 <= cut_d ? 0.0 : 1.0; };
        d.jumps = {{cut_d, 0.0, 1.0}};
        d.cdf = [cut_d](double x) { return x < 0.0 ? 0.0 : (x < 1.0 ? cut_d : 1.0); };
        d.support = {0.0, 1.0};
        return d;
    }

    if (id == "bernoulli_sym") {
        require_params(id, params, 1);
        const double p = params[0];
        if (!(p > 0.0) || !(p < 1.0))
            throw std::invalid_argument("bernoulli_sym needs p in (0,1)");
        const Rational m = rationalize(std::min(p, 1.0 - p));
        const double md = to_double(m);
        if (m == Rational(1, 2)) {
            d.steps = StepQuantile{{Rational(1, 2)}, {Rational(-1, 2), Rational(1, 2)}};
            d.quantile = [](const UPoint& u) { return u.from0 <= 0.5 ? -0.5 : 0.5; };
            d.jumps = {{0.5, -0.5, 0.5}};
        } else {
            const Rational hi = 1 - m;
            const double hid = to_double(hi);
            d.steps = StepQuantile{{m, hi}, {Rational(-1, 2), Rational(0), Rational(1, 2)}};
            d.quantile = [md, hid](const UPoint& u) {
                if (u.from0 <= md)
                    return -0.5;
                return u.from0 <= hid ? 0.0 : 0.5;
            };
            d.jumps = {{md, -0.5, 0.0}, {hid, 0.0, 0.5}};
        }
        d.cdf = [md](double x) {
            if (x < -0.5)
                return 0.0;
            if (x < 0.0)
                return md;
            return x < 0.5 ? 1.0 - md : 1.0;
        };
        d.support = {-0.5, 0.5};
        return d;
    }

    if (id == "two_block_uniform") {
        require_params(id, params, 0);
        d.quantile = [](const UPoint& u) {
            return u.from0 <= 0.5 ? 2.0 * u.from0 - 2.0 : 2.0 - 2.0 * u.from1;
        };
        d.jumps = {{0.5, -1.0, 1.0}};
        d.breakpoints = {{0.5, 0.5}};
        d.cdf = [](double x) {
            if (x <= -2.0)
                return 0.0;
            if (x <= -1.0)
                return (x + 2.0) / 2.0;
            if (x <= 1.0)
                return 0.5;
            return x < 2.0 ? x / 2.0 : 1.0;
        };
        d.pdf = [](double x) {
            return (x > -2.0 && x < -1.0) || (x > 1.0 && x < 2.0) ? 0.5 : 0.0;
        };
        d.support = {-2.0, 2.0};
        d.class_f = false;
        return d;
    }

    if (id == "truncated_log") {
        require_params(id, params, 0);
        const double e1 = std::exp(-1.0);
        d.quantile = [e1](const UPoint& u) {
            if (u.from0 <= e1)
                return 0.0;
            return u.from0 <= 0.75 ? 1.0 + std::log(u.from0) : 1.0 + std::log1p(-u.from1);
        };
        d.breakpoints = {{e1, 1.0 - e1}};
        d.cdf = [](double x) { return x < 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : std::exp(x - 1.0)); };
        d.support = {0.0, 1.0};
        d.class_f = false;
        return d;
    }

    throw std::invalid_argument("unknown catalog id: " + id);
}

std::vector<std::string> catalog_ids() {
    return {"uniform",        "exponential",       "logistic_standard", "half_logistic_sym",
            "gumbel_shifted", "frechet_type",      "normal",            "perturbed_normal",
            "beta_half_one",  "one_minus_exponential", "bernoulli",     "bernoulli_sym",
            "two_block_uniform", "truncated_log"};
}

namespace {

struct QuantileTable {
    std::vector<double> us;
    std::vector<double> qs;
    TailBehavior lower;
    TailBehavior upper;
    // fitted tail coefficients; see from_quantile_table
    double lo_b = 0.0;
    double hi_b = 0.0;

    double eval(const UPoint& u) const {
        const size_t m = us.size() - 1;
        if (u.from0 <= us.front()) {
            const double t = u.from0;
            switch (lower.kind) {
            case TailKind::Finite: return qs.front();
            case TailKind::Log: return qs.front() + lo_b * (std::log(t) - std::log(us.front()));
            case TailKind::Power:
                return qs.front() +
                       lo_b * (std::pow(t, -lower.exponent) - std::pow(us.front(), -lower.exponent));
            }
        }
        if (u.from0 >= us.back()) {
            const double t = u.from1;
            const double tm = 1.0 - us.back();
            switch (upper.kind) {
            case TailKind::Finite: return qs.back();
            case TailKind::Log: return qs.back() + hi_b * (std::log(tm) - std::log(t));
            case TailKind::Power:
                return qs.back() +
                       hi_b * (std::pow(t, -upper.exponent) - std::pow(tm, -upper.exponent));
            }
        }
        const auto it = std::upper_bound(us.begin(), us.end(), u.from0);
        const size_t i = static_cast<size_t>(it - us.begin());
        const size_t j = std::min(std::max<size_t>(i, 1), m);
        const double t = (u.from0 - us[j - 1]) / (us[j] - us[j - 1]);
        return qs[j - 1] + t * (qs[j] - qs[j - 1]);
    }
};

} // namespace

DistributionSpec from_quantile_table(const std::vector<double>& us,
                                     const std::vector<double>& qs, const TailBehavior& lower,
                                     const TailBehavior& upper) {
    if (us.size() != qs.size() || us.size() < 2)
        throw std::invalid_argument("quantile table needs matching u and Q lists, length >= 2");
    for (size_t i = 0; i < us.size(); ++i) {
        if (!std::isfinite(us[i]) || !std::isfinite(qs[i]) || us[i] <= 0.0 || us[i] >= 1.0)
            throw std::invalid_argument("table knots must be finite with u in (0,1)");
        if (i > 0 && us[i] <= us[i - 1])
            throw std::invalid_argument("table u knots must be strictly increasing");
        if (i > 0 && qs[i] < qs[i - 1])
            throw std::invalid_argument("table quantile values must be nondecreasing");
    }
    for (const TailBehavior* t : {&lower, &upper})
        if (t->kind == TailKind::Power && !(t->exponent > 0.0))
            throw std::invalid_argument("power tail needs a positive exponent");

    auto table = std::make_shared<QuantileTable>();
    table->us = us;
    table->qs = qs;
    table->lower = lower;
    table->upper = upper;

    const size_t m = us.size() - 1;
    if (lower.kind == TailKind::Log)
        table->lo_b = (qs[1] - qs[0]) / (std::log(us[1]) - std::log(us[0]));
    if (lower.kind == TailKind::Power)
        table->lo_b = (qs[1] - qs[0]) / (std::pow(us[1], -lower.exponent) -
                                         std::pow(us[0], -lower.exponent));
    const double tm = 1.0 - us[m];
    const double tm1 = 1.0 - us[m - 1];
    if (upper.kind == TailKind::Log)
        table->hi_b = (qs[m] - qs[m - 1]) / (std::log(tm1) - std::log(tm));
    if (upper.kind == TailKind::Power)
        table->hi_b = (qs[m] - qs[m - 1]) /
                      (std::pow(tm, -upper.exponent) - std::pow(tm1, -upper.exponent));

    DistributionSpec d;
    d.label = "custom";
    d.quantile = [table](const UPoint& u) { return table->eval(u); };
    d.breakpoints.reserve(us.size());
    for (double u : us)
        d.breakpoints.push_back({u, 1.0 - u});
    d.class_f = false;

    // Integrability probe: |Q| must integrate over (0,1). A diverging
    // declared tail either exhausts the cell budget or overflows double
    // range as refinement closes in on the endpoint; both mean the same.
    DistributionSpec abs_view = d;
    abs_view.quantile = [table](const UPoint& u) { return std::fabs(table->eval(u)); };
    try {
        integrate_weighted(abs_view, 1, StatKind::Max, Tolerances{1e-8, 1e-10});
    } catch (const std::domain_error&) {
        throw quad::ConvergenceError("quantile table is not integrable", quad::Outcome{});
    }

    return d;
}

} // namespace emax::dist
