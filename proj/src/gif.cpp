// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/gif.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "emax/quad.hpp"
#include "emax/special.hpp"

namespace emax::gif {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

quad::Options inner_options() {
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    return opt;
}

// A point of (0,1) stored as distances to both endpoints, so neither end
// loses precision.
struct Seam {
    double from0 = 0.0;
    double from1 = 1.0;
};

// Sums segment integrals of f(from0, from1) over (0, up), splitting at the
// given interior seams. Kinks of piecewise h1 land on segment boundaries
// this way and never limit convergence.
double integrate_split(std::vector<Seam> seams, Seam up,
                       const std::function<double(double, double)>& f,
                       quad::Options opt) {
    std::sort(seams.begin(), seams.end(),
              [](const Seam& a, const Seam& b) { return a.from0 < b.from0; });
    seams.push_back(up);
    if (seams.size() > 1) opt.abs_tol /= static_cast<double>(seams.size());
    double total = 0.0;
    Seam prev{0.0, 1.0};
    for (const Seam& s : seams) {
        double width = s.from0 - prev.from0;
        if (width > 0.0) {
            total += quad::integrate(
                [&](const quad::Node& n) {
                    return f(prev.from0 + n.from_lo, s.from1 + n.from_hi);
                },
                0.0, width, opt);
        }
        prev = s;
    }
    return total;
}

// Integral over u in (0, up.from0) of f(y, u) du with y = -log u. The
// integrand receives y plus u's endpoint distances.
double integrate_u(const IntegralForm& form, Seam up,
                   const std::function<double(double, double, double)>& f,
                   const quad::Options& opt) {
    std::vector<Seam> seams;
    for (double yb : form.y_breaks) {
        if (!(yb > 0.0) || !std::isfinite(yb)) continue;
        Seam s{std::exp(-yb), -std::expm1(-yb)};
        if (s.from0 > 0.0 && s.from0 < up.from0) seams.push_back(s);
    }
    return integrate_split(
        std::move(seams), up,
        [&f](double from0, double from1) {
            double y = from0 <= 0.5 ? -std::log(from0) : -std::log1p(-from1);
            return f(y, from0, from1);
        },
        opt);
}

// Integral of f(y) dy over [lo, hi], split at breaks. Nodes are taken as
// offsets from the segment start so a singular lower endpoint stays exact.
double integrate_y(const std::vector<double>& breaks, double lo, double hi,
                   const std::function<double(double)>& f, quad::Options opt) {
    std::vector<double> cuts;
    for (double b : breaks) {
        if (std::isfinite(b) && b > lo && b < hi) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(hi);
    if (cuts.size() > 1) opt.abs_tol /= static_cast<double>(cuts.size());
    double total = 0.0;
    double a = lo;
    for (double b : cuts) {
        if (b > a) {
            total += quad::integrate(
                [&](const quad::Node& n) { return f(a + n.from_lo); }, 0.0, b - a, opt);
        }
        a = b;
    }
    return total;
}

// Offset function of shape (g1/lambda) e^{-y}(1-e^{-y}) + e^{-y}:
// integrating h1 (s - e^{-y}) against it returns exactly g1.
std::function<double(double)> standard_offset(double g1, double lambda) {
    return [g1, lambda](double y) {
        double e = std::exp(-y);
        return (g1 / lambda) * e * special::one_minus_exp_neg(y) + e;
    };
}

double compute_lambda(const IntegralForm& form) {
    return integrate_u(
        form, Seam{1.0, 0.0},
        [&form](double y, double, double from1) { return form.h1(y) * from1; },
        inner_options());
}

IntegralForm make_form(std::string label, std::function<double(double)> h1, double g1,
                       double sing_exponent, TailDecay tail,
                       std::vector<double> y_breaks = {}) {
    IntegralForm f;
    f.label = std::move(label);
    f.h1 = std::move(h1);
    f.sing_exponent = sing_exponent;
    f.tail = tail;
    f.g_at_1 = g1;
    f.y_breaks = std::move(y_breaks);
    f.lambda = compute_lambda(f);
    f.s = standard_offset(g1, f.lambda);
    return f;
}

int find_param_count(const std::string& id) {
    if (id == "power_theta") return -2;  // 1 or 2
    if (id == "log_shift" || id == "harmonic" || id == "gen_harmonic" ||
        id == "rational_family") {
        return 1;
    }
    if (id == "box") return 2;
    return -1;
}

}  // namespace

IntegralForm power_theta(double theta, double c) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("power_theta requires 0 < theta < 1");
    }
    if (!(c > -1.0)) throw std::invalid_argument("power_theta requires c > -1");
    const double beta = theta / std::tgamma(1.0 - theta);
    auto h1 = [beta, theta, c](double y) {
        return beta * std::exp(-c * y) * std::pow(y, -1.0 - theta);
    };
    TailDecay tail = c == 0.0 ? TailDecay{TailDecay::Kind::Power, 1.0 + theta}
                              : TailDecay{TailDecay::Kind::Exponential, c};
    auto f = make_form("power_theta", std::move(h1), std::pow(1.0 + c, theta),
                       -1.0 - theta, tail);
    if (c == 0.0) {
        // The classical offset for x^theta; any admissible s gives the same g.
        f.s = [](double) { return 1.0; };
    }
    return f;
}

IntegralForm log_shift(double c) {
    if (!(c > -1.0)) throw std::invalid_argument("log_shift requires c > -1");
    auto h1 = [c](double y) { return std::exp(-c * y) / y; };
    TailDecay tail = c == 0.0 ? TailDecay{TailDecay::Kind::Power, 1.0}
                              : TailDecay{TailDecay::Kind::Exponential, c};
    return make_form("log_shift", std::move(h1), std::log1p(c), -1.0, tail);
}

IntegralForm harmonic_family(double c) {
    if (!(c > -2.0)) throw std::invalid_argument("harmonic requires c > -2");
    auto h1 = [c](double y) {
        return std::exp(-(c + 1.0) * y) / special::one_minus_exp_neg(y);
    };
    // H(1+c) = digamma(2+c) + gamma.
    double g1 = boost::math::digamma(2.0 + c) + special::euler_gamma;
    return make_form("harmonic", std::move(h1), g1, -1.0,
                     TailDecay{TailDecay::Kind::Exponential, c + 1.0});
}

IntegralForm gen_harmonic_family(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("gen_harmonic requires theta > 0");
    const double norm = std::tgamma(theta);
    auto h1 = [theta, norm](double y) {
        return std::pow(y, theta - 1.0) * std::exp(-y) /
               (norm * special::one_minus_exp_neg(y));
    };
    return make_form("gen_harmonic", std::move(h1), 1.0, theta - 2.0,
                     TailDecay{TailDecay::Kind::Exponential, 1.0});
}

IntegralForm rational_family(double c) {
    if (!(c > -1.0)) throw std::invalid_argument("rational_family requires c > -1");
    auto h1 = [c](double y) { return std::exp(-c * y); };
    return make_form("rational_family", std::move(h1), c / (1.0 + c),
                     0.0, TailDecay{TailDecay::Kind::Exponential, c});
}

IntegralForm box(double a, double b) {
    if (!(a >= 0.0 && a < b)) throw std::invalid_argument("box requires 0 <= a < b");
    auto h1 = [a, b](double y) { return (y >= a && y <= b) ? 1.0 : 0.0; };
    double g1 = (b - a) - (std::exp(-a) - std::exp(-b));
    return make_form("box", std::move(h1), g1, 0.0,
                     TailDecay{TailDecay::Kind::Compact, b}, {a, b});
}

IntegralForm form_by_id(const std::string& id, const std::vector<double>& params) {
    int want = find_param_count(id);
    if (want == -1) throw std::invalid_argument("unknown form id: " + id);
    if (id == "power_theta") {
        if (params.size() != 1 && params.size() != 2) {
            throw std::invalid_argument("power_theta takes theta and an optional shift");
        }
        return power_theta(params[0], params.size() == 2 ? params[1] : 0.0);
    }
    if (params.size() != static_cast<std::size_t>(want)) {
        throw std::invalid_argument(id + " takes " + std::to_string(want) + " parameter(s)");
    }
    if (id == "log_shift") return log_shift(params[0]);
    if (id == "harmonic") return harmonic_family(params[0]);
    if (id == "gen_harmonic") return gen_harmonic_family(params[0]);
    if (id == "rational_family") return rational_family(params[0]);
    return box(params[0], params[1]);
}

std::vector<std::string> form_ids() {
    return {"power_theta", "log_shift", "harmonic", "gen_harmonic", "rational_family",
            "box"};
}

IntegralForm form_from_table(const std::vector<double>& ys, const std::vector<double>& h1s,
                             double sing_exponent, const TailDecay& tail) {
    if (ys.size() != h1s.size() || ys.size() < 2) {
        throw std::invalid_argument("h1 table needs matching y and value lists, length >= 2");
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (!std::isfinite(ys[i]) || ys[i] <= 0.0) {
            throw std::invalid_argument("h1 table knots must be positive and finite");
        }
        if (i > 0 && !(ys[i] > ys[i - 1])) {
            throw std::invalid_argument("h1 table knots must be strictly increasing");
        }
        if (!std::isfinite(h1s[i]) || h1s[i] < 0.0) {
            throw std::invalid_argument("h1 table values must be nonnegative and finite");
        }
    }
    auto h1 = [ys, h1s, sing_exponent, tail](double y) -> double {
        if (y <= ys.front()) {
            return h1s.front() * std::pow(y / ys.front(), sing_exponent);
        }
        if (y >= ys.back()) {
            switch (tail.kind) {
                case TailDecay::Kind::Exponential:
                    return h1s.back() * std::exp(-tail.param * (y - ys.back()));
                case TailDecay::Kind::Power:
                    return h1s.back() * std::pow(y / ys.back(), -tail.param);
                case TailDecay::Kind::Compact:
                    return y <= tail.param ? h1s.back() : 0.0;
            }
            return 0.0;
        }
        auto it = std::upper_bound(ys.begin(), ys.end(), y);
        std::size_t i = static_cast<std::size_t>(it - ys.begin());
        double t = (y - ys[i - 1]) / (ys[i] - ys[i - 1]);
        return h1s[i - 1] + t * (h1s[i] - h1s[i - 1]);
    };
    IntegralForm f;
    f.label = "tabulated";
    f.h1 = std::move(h1);
    f.sing_exponent = sing_exponent;
    f.tail = tail;
    f.g_at_1 = 0.0;
    f.y_breaks = ys;
    if (tail.kind == TailDecay::Kind::Compact && tail.param > ys.back()) {
        f.y_breaks.push_back(tail.param);
    }
    try {
        f.lambda = compute_lambda(f);
    } catch (const quad::ConvergenceError&) {
        f.lambda = std::numeric_limits<double>::quiet_NaN();
    }
    f.s = [](double y) { return std::exp(-y); };
    return f;
}

Validation validate_form(const IntegralForm& form) {
    Validation v;
    if (!(form.sing_exponent > -2.0)) {
        v.verdict = Verdict::Fail;
        v.note = "declared singularity exponent must exceed -2";
        return v;
    }
    double lambda = 0.0;
    try {
        lambda = compute_lambda(form);
    } catch (const quad::ConvergenceError& e) {
        v.lambda = e.partial.value;
        v.verdict = Verdict::Fail;
        v.note = "admissibility integral did not converge";
        return v;
    }
    v.lambda = lambda;
    if (!std::isfinite(lambda)) {
        v.verdict = Verdict::Fail;
        v.note = "admissibility integral is not finite";
    } else if (lambda <= 0.0) {
        v.verdict = Verdict::Fail;
        v.note = "admissibility integral must be strictly positive";
    } else {
        v.verdict = Verdict::Pass;
    }
    return v;
}

double evaluate_g(const IntegralForm& form, double x) {
    if (!(x >= 1.0)) throw std::invalid_argument("g is evaluated on x >= 1");
    if (x == 1.0) return form.g_at_1;
    double diff = integrate_u(
        form, Seam{1.0, 0.0},
        [&form, x](double y, double, double) {
            return form.h1(y) * -std::expm1(-(x - 1.0) * y);
        },
        inner_options());
    return form.g_at_1 + diff;
}

double g1_from_offset(const IntegralForm& form) {
    // Map (0,inf) to (0,1) by y = t/(1-t). Unlike u = e^{-y}, this keeps
    // power-decaying offsets resolvable: the image integrand has at worst
    // an integrable endpoint singularity at t = 1. The difference
    // s(y) - e^{-y} is formed from opaque evaluations and cancels near
    // y = 0, which caps the achievable accuracy; the tolerance reflects
    // that rather than demanding full double precision.
    quad::Options opt;
    opt.rel_tol = 1e-8;
    opt.abs_tol = 1e-12;
    std::vector<Seam> seams;
    for (double yb : form.y_breaks) {
        if (yb > 0.0 && std::isfinite(yb)) {
            seams.push_back(Seam{yb / (1.0 + yb), 1.0 / (1.0 + yb)});
        }
    }
    return integrate_split(
        std::move(seams), Seam{1.0, 0.0},
        [&form](double from0, double from1) {
            double y = from0 / from1;
            return form.h1(y) * (form.s(y) - std::exp(-y)) / (from1 * from1);
        },
        opt);
}

Sequence sequence_from_form(const IntegralForm& form, int K) {
    if (K < 1) throw std::invalid_argument("sequence length must be at least 1");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) values.push_back(evaluate_g(form, k));
    return Sequence::from_doubles(std::move(values));
}

double derivative_by_quadrature(const IntegralForm& form, int n, double x) {
    if (n < 1) throw std::invalid_argument("derivative order must be at least 1");
    if (!(x > 1.0)) throw std::invalid_argument("quadrature derivatives require x > 1");
    double integral = integrate_u(
        form, Seam{1.0, 0.0},
        [&form, n, x](double y, double, double) {
            return std::pow(y, n) * form.h1(y) * std::exp(-(x - 1.0) * y);
        },
        inner_options());
    return (n % 2 == 1) ? integral : -integral;
}

double derivative_by_difference(const std::function<double(double)>& g, int n, double x,
                                double lo) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("difference derivatives support orders 1 through 4");
    }
    // Truncation after one Richardson level is O(h^4); roundoff is
    // O(eps / h^n). Balancing gives h ~ eps^(1/(n+4)).
    double h = 0.5 * std::max(1.0, std::fabs(x)) *
               std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (n + 4));
    if (std::isfinite(lo) && x - 4.0 * h < lo) {
        h = (x - lo) / 4.0;
        if (!(h > 0.0)) throw std::invalid_argument("stencil does not fit above the domain edge");
    }
    auto stencil = [&g, n, x](double step) {
        switch (n) {
            case 1:
                return (g(x + step) - g(x - step)) / (2.0 * step);
            case 2:
                return (g(x + step) - 2.0 * g(x) + g(x - step)) / (step * step);
            case 3:
                return (g(x + 2.0 * step) - 2.0 * g(x + step) + 2.0 * g(x - step) -
                        g(x - 2.0 * step)) /
                       (2.0 * step * step * step);
            default:
                return (g(x + 2.0 * step) - 4.0 * g(x + step) + 6.0 * g(x) -
                        4.0 * g(x - step) + g(x - 2.0 * step)) /
                       (step * step * step * step);
        }
    };
    double coarse = stencil(2.0 * h);
    double fine = stencil(h);
    return (4.0 * fine - coarse) / 3.0;
}

double derivative_by_difference(const IntegralForm& form, int n, double x) {
    return derivative_by_difference([&form](double t) { return evaluate_g(form, t); }, n, x,
                                    1.0);
}

DerivativeCheck derivative_signs(const IntegralForm& form, int n_max,
                                 const std::vector<double>& x_grid) {
    if (n_max < 1) throw std::invalid_argument("derivative check needs n_max >= 1");
    if (x_grid.empty()) throw std::invalid_argument("derivative check needs a nonempty grid");
    for (double x : x_grid) {
        if (!(x > 1.0)) throw std::invalid_argument("derivative check requires x > 1");
    }
    DerivativeCheck out;
    out.report.truncation.requested = n_max;
    out.report.truncation.used = n_max;
    out.report.truncation.mode = "float";
    out.values.assign(static_cast<std::size_t>(n_max), {});

    Verdict signs = Verdict::Pass;
    Verdict cross = Verdict::Pass;
    double worst_dev = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        auto& row = out.values[static_cast<std::size_t>(n - 1)];
        for (std::size_t i = 0; i < x_grid.size(); ++i) {
            double x = x_grid[i];
            double d = derivative_by_quadrature(form, n, x);
            row.push_back(d);
            double signed_value = (n % 2 == 1) ? d : -d;
            if (!(signed_value > 0.0)) {
                signs = Verdict::Fail;
                out.report.witnesses.push_back(
                    {"derivative-sign", n, static_cast<int>(i + 1), signed_value,
                     "(-1)^(n+1) g^(n) must be positive at x = " + std::to_string(x)});
            }
            if (n <= 4 && x >= 1.5) {
                double fd = derivative_by_difference(form, n, x);
                double dev = std::fabs(fd - d) / std::max(std::fabs(d), 1e-300);
                worst_dev = std::max(worst_dev, dev);
                if (dev > 1e-5) {
                    cross = Verdict::Fail;
                    out.report.witnesses.push_back(
                        {"derivative-cross-check", n, static_cast<int>(i + 1), dev,
                         "finite-difference disagreement at x = " + std::to_string(x)});
                }
            }
        }
    }
    out.report.verdicts["derivative-sign"] = signs;
    out.report.verdicts["derivative-cross-check"] = cross;
    out.report.diagnostics["fd_max_rel_dev"] = worst_dev;
    return out;
}

BernsteinView bernstein_view(const IntegralForm& form) {
    BernsteinView view;
    view.g_at_1 = form.g_at_1;
    IntegralForm copy = form;
    view.value = [copy](double x) {
        if (x < 0.0) throw std::invalid_argument("Bernstein functions live on x >= 0");
        if (x == 0.0) return 0.0;
        return evaluate_g(copy, x + 1.0) - copy.g_at_1;
    };
    auto h1 = form.h1;
    view.lkr_density = [h1](double y) { return std::exp(-y) * h1(y); };
    for (double x : {1e2, 1e3, 1e4}) {
        view.slope_probes.push_back(view.value(x) / x);
    }
    view.slope_vanishing = view.slope_probes[1] < view.slope_probes[0] &&
                           view.slope_probes[2] < view.slope_probes[1];
    return view;
}

IntegralForm h1_from_distribution(const dist::DistributionSpec& d,
                                  const dist::Tolerances& tol) {
    if (!d.class_f || !d.pdf) {
        throw std::domain_error(
            "density-class violation: a strictly positive continuous pdf is required");
    }
    dist::DistributionSpec law = d;
    auto h1 = [law](double y) {
        dist::UPoint u{std::exp(-y), -std::expm1(-y)};
        // Past the underflow of e^{-y} the quantile sits outside double
        // range; any admissible h1 contributes nothing there.
        if (u.from0 == 0.0) return 0.0;
        double q = dist::quantile(law, u);
        double f = law.pdf(q);
        if (!std::isfinite(f) || f <= 0.0) {
            throw std::domain_error("density-class violation: pdf vanishes at quantile " +
                                    std::to_string(q));
        }
        return u.from0 / f;
    };

    double mu1 = dist::expected_max(d, 1, tol);

    // Endpoint classes estimated from log-slopes of h1.
    double y1 = 1e-4;
    double y2 = 1e-5;
    double sing = (std::log(h1(y1)) - std::log(h1(y2))) / (std::log(y1) - std::log(y2));
    double l15 = std::log(h1(15.0));
    double l20 = std::log(h1(20.0));
    double l25 = std::log(h1(25.0));
    double l30 = std::log(h1(30.0));
    double d1 = l20 - l15;
    double d2 = l30 - l25;
    TailDecay tail;
    if (std::fabs(d2) < 0.8 * std::fabs(d1)) {
        tail.kind = TailDecay::Kind::Power;
        tail.param = -(l30 - l15) / (std::log(30.0) - std::log(15.0));
    } else {
        tail.kind = TailDecay::Kind::Exponential;
        tail.param = -(l30 - l15) / 15.0;
    }

    auto form = make_form("from " + d.label, std::move(h1), mu1, sing, tail);
    return form;
}

dist::DistributionSpec reconstruct_quantile(const IntegralForm& form, double mu1) {
    // The inversion needs h1 > 0 everywhere; probe a log-spaced grid.
    const auto h1 = form.h1;
    for (int i = 0; i < 60; ++i) {
        double y = 1e-6 * std::pow(40.0 / 1e-6, i / 59.0);
        double v = h1(y);
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::domain_error("positivity violation: h1(" + std::to_string(y) +
                                    ") = " + std::to_string(v));
        }
    }

    quad::Options opt = inner_options();

    // Mean with c1 = 0 equals A - B, with A the h1 mass against 1 - e^{-y}
    // below log 2 and B the plain h1(-log v) mass below v = 1/2.
    double A = integrate_y(
        form.y_breaks, 0.0, kLog2,
        [&h1](double y) { return h1(y) * special::one_minus_exp_neg(y); }, opt);
    double B = integrate_u(
        form, Seam{0.5, 0.5}, [&h1](double y, double, double) { return h1(y); }, opt);
    const double c1 = mu1 - (A - B);

    // G(u) = c1 - integral of h1 over [log 2, -log u], evaluated in
    // y-space so far tails stay accurate for slowly decaying h1.
    auto breaks = form.y_breaks;
    auto g_of_y = [h1, breaks, opt](double yu) {
        if (yu == kLog2) return 0.0;
        double lo = std::min(yu, kLog2);
        double hi = std::max(yu, kLog2);
        double mass = integrate_y(breaks, lo, hi, h1, opt);
        return yu > kLog2 ? -mass : mass;
    };
    auto quantile = [g_of_y, c1](const dist::UPoint& u) {
        if (!(u.from0 > 0.0 && u.from1 > 0.0)) {
            throw std::domain_error("quantile argument must lie inside (0,1)");
        }
        double yu = u.from0 <= 0.5 ? -std::log(u.from0) : -std::log1p(-u.from1);
        return c1 + g_of_y(yu);
    };

    // Inverse of G: expand a bracket around log 2 (where the mass term is
    // zero), bisect geometrically since y spans many decades, then polish
    // with Newton using G'(y) = -h1(y). The mass term decreases in y.
    auto y_of_x = [g_of_y, c1, h1](double x) {
        double target = x - c1;
        double lo = kLog2;
        double hi = kLog2;
        if (target > 0.0) {
            while (lo > 1e-280 && g_of_y(lo) < target) lo *= 0.5;
        } else if (target < 0.0) {
            while (hi < 750.0 && g_of_y(hi) > target) hi *= 2.0;
        } else {
            return kLog2;
        }
        for (int i = 0; i < 80; ++i) {
            double mid = std::sqrt(lo * hi);
            if (g_of_y(mid) > target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        double y = std::sqrt(lo * hi);
        for (int i = 0; i < 3; ++i) {
            double step = (g_of_y(y) - target) / h1(y);
            double next = y + step;
            if (next > 0.0 && std::isfinite(next)) y = next;
        }
        return y;
    };

    dist::DistributionSpec out;
    out.label = "reconstructed";
    out.quantile = quantile;
    out.class_f = true;
    out.cdf = [y_of_x](double x) { return std::exp(-y_of_x(x)); };
    out.pdf = [y_of_x, h1](double x) {
        double y = y_of_x(x);
        return std::exp(-y) / h1(y);
    };
    double lo_probe = quantile(dist::UPoint{1e-14, 1.0 - 1e-14});
    double hi_probe = quantile(dist::UPoint{1.0 - 1e-14, 1e-14});
    out.support.lo = lo_probe < -1e12 ? -std::numeric_limits<double>::infinity() : lo_probe;
    out.support.hi = hi_probe > 1e12 ? std::numeric_limits<double>::infinity() : hi_probe;
    return out;
}

}  // namespace emax::gif
