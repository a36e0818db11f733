// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/ranges.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "emax/quad.hpp"
#include "emax/special.hpp"

namespace emax::ranges {

namespace {

using dist::DistributionSpec;
using dist::Jump;
using dist::StepQuantile;
using dist::UPoint;

// Quantile with jump snapping: a point within tolerance of a declared
// jump takes that jump's left or right limit. Keeps a probe pair (u, 1-u)
// consistent when one of the two rounds across a jump.
double limit_at(const DistributionSpec& d, const UPoint& w, bool right) {
    for (const Jump& j : d.jumps) {
        if (std::fabs(w.from0 - j.u) <= 1e-12 * std::max(1.0, std::fabs(j.u)))
            return right ? j.right : j.left;
    }
    return dist::quantile(d, w);
}

DistributionSpec symmetrize_steps(const DistributionSpec& d) {
    const StepQuantile& q = *d.steps;

    std::vector<Rational> cuts = q.cuts;
    for (const Rational& c : q.cuts) cuts.push_back(1 - c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto value_at = [&q](const Rational& u) {
        std::size_t i = 0;
        while (i < q.cuts.size() && q.cuts[i] < u) ++i;
        return q.values[i];
    };
    auto right_value_at = [&q](const Rational& u) {
        std::size_t i = 0;
        while (i < q.cuts.size() && q.cuts[i] <= u) ++i;
        return q.values[i];
    };

    std::vector<Rational> values;
    Rational prev(0);
    for (std::size_t j = 0; j <= cuts.size(); ++j) {
        Rational hi = j < cuts.size() ? cuts[j] : Rational(1);
        Rational mid = (prev + hi) / 2;
        values.push_back((value_at(mid) - right_value_at(1 - mid)) / 2);
        prev = hi;
    }

    // Merge cells the halving made equal.
    std::vector<Rational> mcuts;
    std::vector<Rational> mvals = {values[0]};
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        if (values[j + 1] == mvals.back()) continue;
        mcuts.push_back(cuts[j]);
        mvals.push_back(values[j + 1]);
    }

    std::vector<double> cd, vd;
    cd.reserve(mcuts.size());
    vd.reserve(mvals.size());
    for (const Rational& c : mcuts) cd.push_back(to_double(c));
    for (const Rational& v : mvals) vd.push_back(to_double(v));

    DistributionSpec out;
    out.label = "symmetrized " + d.label;
    out.steps = StepQuantile{std::move(mcuts), std::move(mvals)};
    out.quantile = [cd, vd](const UPoint& u) {
        std::size_t i = 0;
        while (i < cd.size() && cd[i] < u.from0) ++i;
        return vd[i];
    };
    for (std::size_t j = 0; j < cd.size(); ++j)
        out.jumps.push_back({cd[j], vd[j], vd[j + 1]});
    out.cdf = [cd, vd](double x) {
        double f = 0.0;
        for (std::size_t j = 0; j < vd.size(); ++j) {
            if (vd[j] <= x) f = j < cd.size() ? cd[j] : 1.0;
        }
        return f;
    };
    out.support = {vd.front(), vd.back()};
    return out;
}

} // namespace

DistributionSpec symmetrize(const DistributionSpec& d) {
    if (d.steps) return symmetrize_steps(d);

    DistributionSpec base = d;
    DistributionSpec out;
    out.label = "symmetrized " + d.label;
    out.quantile = [base](const UPoint& u) {
        double direct = dist::quantile(base, u);
        double mirrored = limit_at(base, UPoint{u.from1, u.from0}, true);
        return 0.5 * (direct - mirrored);
    };

    // Jumps of the input appear both directly and mirrored about 1/2.
    auto push_jump = [&out, &base](double u) {
        double u1 = 1.0 - u;
        double left_here = dist::quantile(base, u);
        double right_here = dist::quantile_right_limit(base, u);
        double left_mirror = dist::quantile(base, u1);
        double right_mirror = dist::quantile_right_limit(base, u1);
        out.jumps.push_back(
            {u, 0.5 * (left_here - right_mirror), 0.5 * (right_here - left_mirror)});
    };
    for (const Jump& j : d.jumps) {
        push_jump(j.u);
        if (std::fabs(1.0 - j.u - j.u) > 1e-12) push_jump(1.0 - j.u);
    }
    std::sort(out.jumps.begin(), out.jumps.end(),
              [](const Jump& x, const Jump& y) { return x.u < y.u; });

    for (const UPoint& b : d.breakpoints) {
        out.breakpoints.push_back(b);
        out.breakpoints.push_back(UPoint{b.from1, b.from0});
    }
    for (const Jump& j : d.jumps) {
        out.breakpoints.push_back(UPoint{j.u, 1.0 - j.u});
        out.breakpoints.push_back(UPoint{1.0 - j.u, j.u});
    }
    std::sort(out.breakpoints.begin(), out.breakpoints.end(),
              [](const UPoint& x, const UPoint& y) { return x.from0 < y.from0; });

    out.support.lo = 0.5 * (d.support.lo - d.support.hi);
    out.support.hi = 0.5 * (d.support.hi - d.support.lo);
    return out;
}

CheckReport equal_ranges_check(const DistributionSpec& a, const DistributionSpec& b,
                               int grid, const dist::Tolerances& tol) {
    if (grid < 2) throw std::invalid_argument("equal-ranges grid needs at least 2 cells");

    CheckReport rep;
    rep.truncation.requested = grid;
    rep.truncation.used = grid;
    rep.truncation.mode = "float";

    Verdict sym = Verdict::Pass;
    double worst = 0.0;
    int flagged = 0;
    auto probe = [&](double u0, double u1, const std::string& where) {
        UPoint here{u0, u1};
        UPoint mirror{u1, u0};
        double h = limit_at(a, here, false) - limit_at(b, here, false);
        double hr = limit_at(a, mirror, true) - limit_at(b, mirror, true);
        double r = h - hr;
        double rel = std::fabs(r) / (1.0 + std::fabs(h) + std::fabs(hr));
        worst = std::max(worst, rel);
        if (rel > 1e-8) {
            sym = Verdict::Fail;
            if (++flagged <= 8) {
                rep.witnesses.push_back({cond::shift_symmetry, -1, -1, r,
                                         "asymmetric quantile gap at u = " + where});
            }
        }
    };
    for (int i = 1; i < grid; ++i) {
        double u0 = static_cast<double>(i) / grid;
        double u1 = static_cast<double>(grid - i) / grid;
        probe(u0, u1, std::to_string(u0));
    }
    for (const DistributionSpec* d : {&a, &b}) {
        for (const Jump& j : d->jumps) {
            probe(j.u, 1.0 - j.u, std::to_string(j.u));
            probe(1.0 - j.u, j.u, std::to_string(1.0 - j.u));
        }
    }
    rep.verdicts[cond::shift_symmetry] = sym;

    Verdict agree = Verdict::Pass;
    for (int k = 2; k <= 10; ++k) {
        double va = dist::expected_range(a, k, tol);
        double vb = dist::expected_range(b, k, tol);
        double gap = std::fabs(va - vb);
        if (gap > 1e-7 * std::max(1.0, std::fabs(va))) {
            agree = Verdict::Fail;
            rep.witnesses.push_back({cond::range_agreement, -1, k, va - vb,
                                     "expected ranges differ at k = " + std::to_string(k)});
        }
    }
    rep.verdicts[cond::range_agreement] = agree;
    rep.diagnostics["max_gap_asymmetry"] = worst;
    return rep;
}

double symmetry_residual(const gif::IntegralForm& form, double y) {
    double lhs = form.h1(special::tail_involution(y));
    double rhs = std::expm1(y) * form.h1(y);
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    if (scale == 0.0) return 0.0;
    return std::fabs(lhs - rhs) / scale;
}

CheckReport symmetry_check(const gif::IntegralForm& form,
                           const std::vector<double>& y_grid) {
    std::vector<double> grid = y_grid;
    if (grid.empty()) {
        for (int i = 0; i < 200; ++i)
            grid.push_back(1e-6 * std::pow(40.0 / 1e-6, i / 199.0));
        grid.push_back(std::log(2.0));
    }
    for (double y : grid) {
        if (!(y > 0.0) || !std::isfinite(y))
            throw std::invalid_argument("symmetry grid points must be positive");
    }

    const double tol = form.label == "tabulated" ? 1e-4 : 1e-8;
    CheckReport rep;
    rep.truncation.requested = static_cast<int>(grid.size());
    rep.truncation.used = static_cast<int>(grid.size());
    rep.truncation.mode = "float";

    Verdict sym = Verdict::Pass;
    double worst = 0.0;
    int flagged = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double rel = symmetry_residual(form, grid[i]);
        worst = std::max(worst, rel);
        if (rel > tol) {
            sym = Verdict::Fail;
            if (++flagged <= 8) {
                rep.witnesses.push_back({cond::symmetry, -1, static_cast<int>(i + 1), rel,
                                         "weight asymmetry at y = " +
                                             std::to_string(grid[i])});
            }
        }
    }
    rep.verdicts[cond::symmetry] = sym;
    rep.diagnostics["max_rel_residual"] = worst;
    rep.diagnostics["g_at_1"] = form.g_at_1;
    rep.diagnostics["ers_certificate"] =
        sym == Verdict::Pass && std::fabs(form.g_at_1) <= 1e-10;
    return rep;
}

double measure_balance_gap(const gif::IntegralForm& form, double y) {
    if (!(y > 0.0) || !std::isfinite(y))
        throw std::invalid_argument("measure balance needs finite y > 0");
    quad::Options opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-14;

    // Mass of h1(w) e^{-w} (1 - e^{-w}) dw over (0, y], split at the
    // form's seams.
    std::vector<double> cuts;
    for (double b : form.y_breaks) {
        if (std::isfinite(b) && b > 0.0 && b < y) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(y);
    double below = 0.0;
    double a = 0.0;
    for (double b : cuts) {
        if (b > a) {
            below += quad::integrate(
                [&form, a](const quad::Node& n) {
                    double w = a + n.from_lo;
                    return form.h1(w) * std::exp(-w) * special::one_minus_exp_neg(w);
                },
                0.0, b - a, opt);
        }
        a = b;
    }

    // The same mass beyond involution(y), through u = e^{-w}: the image
    // interval maps to u in (0, 1 - e^{-y}).
    const double cap0 = -std::expm1(-y);
    const double cap1 = std::exp(-y);
    std::vector<std::pair<double, double>> seams;
    for (double b : form.y_breaks) {
        if (!std::isfinite(b) || !(b > 0.0)) continue;
        double s0 = std::exp(-b);
        if (s0 > 0.0 && s0 < cap0) seams.push_back({s0, -std::expm1(-b)});
    }
    std::sort(seams.begin(), seams.end());
    seams.push_back({cap0, cap1});
    double beyond = 0.0;
    std::pair<double, double> prev{0.0, 1.0};
    for (const auto& s : seams) {
        double width = s.first - prev.first;
        if (width > 0.0) {
            beyond += quad::integrate(
                [&form, &prev, &s](const quad::Node& n) {
                    double from0 = prev.first + n.from_lo;
                    double from1 = s.second + n.from_hi;
                    double w = from0 <= 0.5 ? -std::log(from0) : -std::log1p(-from1);
                    return form.h1(w) * from1;
                },
                0.0, width, opt);
        }
        prev = s;
    }
    return below - beyond;
}

CheckReport ems_to_ers_bridge(const Sequence& seq, const seqcheck::CheckConfig& cfg) {
    if (seq.size() < 3)
        throw std::invalid_argument("the bridge needs at least three terms");

    // Three terms already pin the first self-duality constraints, so the
    // bridge relaxes the default minimum prefix of the inner checks.
    seqcheck::CheckConfig inner = cfg;
    inner.min_length = std::min(inner.min_length, 3);

    CheckReport ers = seqcheck::check_ers(seq, inner);
    Sequence half = seq.scaled(Rational(1, 2));
    CheckReport ems = seqcheck::check_ems(half, inner);

    CheckReport rep;
    absorb_report(rep, ers, "ers");
    absorb_report(rep, ems, "half-ems");
    bool ers_fail = ers.overall() == Verdict::Fail;
    bool ems_fail = ems.overall() == Verdict::Fail;
    rep.verdicts[cond::bridge_agreement] =
        ers_fail == ems_fail ? Verdict::Pass : Verdict::Fail;

    nlohmann::json moments = nlohmann::json::array();
    for (int k = 1; k <= std::min(5, half.size()); ++k) moments.push_back(half.at(k));
    rep.diagnostics["symmetric_candidate_moments"] = moments;
    return rep;
}

} // namespace emax::ranges
