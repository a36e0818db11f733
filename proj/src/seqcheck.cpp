// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/seqcheck.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace emax::seqcheck {
namespace {

constexpr int kMaxWitnesses = 16;

// Relative noise allowance when certifying dual-sequence values: nu_k is
// kept only while the cancellation noise bound stays under 1% of it.
constexpr double kDualRelMargin = 1e-2;
constexpr double kDualNoiseFloat = 1e-14;
constexpr double kDualNoiseExtended = 1e-68;

template <class T> struct Num;

template <> struct Num<double> {
    static double get(const Sequence& s, int k) { return s.at(k); }
    static double binom(int n, int k) { return binomial_d(n, k); }
    static double dbl(double v) { return v; }
    static int sign(double v) { return (v > 0) - (v < 0); }
};

template <> struct Num<Rational> {
    static Rational get(const Sequence& s, int k) { return s.exact_at(k); }
    static Rational binom(int n, int k) { return Rational(binomial(n, k)); }
    static double dbl(const Rational& v) { return to_double(v); }
    static int sign(const Rational& v) { return sgn(v); }
};

template <> struct Num<BigFloat> {
    static BigFloat get(const Sequence& s, int k) { return s.big_at(k); }
    static BigFloat binom(int n, int k) { return BigFloat(binomial(n, k).get_str()); }
    static double dbl(const BigFloat& v) { return static_cast<double>(v); }
    static int sign(const BigFloat& v) { return (v > 0) - (v < 0); }
};

template <class T>
T diff_cell(const Sequence& seq, int s, int k, double* magnitude) {
    T acc(0);
    double mag = 0.0;
    for (int j = 0; j <= s; ++j) {
        T term = Num<T>::binom(s, j) * Num<T>::get(seq, k + j);
        mag += std::fabs(Num<T>::dbl(term));
        if (((s - j) % 2) == 0)
            acc += term;
        else
            acc -= term;
    }
    if (magnitude)
        *magnitude = mag;
    return acc;
}

template <class T>
T nu_cell(const Sequence& seq, int k, double* magnitude) {
    T acc(0);
    double mag = 0.0;
    for (int j = 1; j <= k; ++j) {
        T term = Num<T>::binom(k, j) * Num<T>::get(seq, j);
        mag += std::fabs(Num<T>::dbl(term));
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    if (magnitude)
        *magnitude = mag;
    return acc;
}

void require_diff_args(const Sequence& seq, int s, int k) {
    if (s < 0 || k < 1 || k + s > seq.size())
        throw std::invalid_argument("difference cell outside the stored prefix");
}

struct ScanOutcome {
    Verdict verdict = Verdict::Pass;
    std::vector<Witness> witnesses;
    int used_total = 0;
    bool noise_limited = false;
};

// Sign scan over the forward-difference table, cells (s, k) with
// s + k <= D. positive_parity selects which parity of s must carry a
// positive sign after flipping. Strict scans demand sign > 0 and treat
// cells inside the noise band as depth truncation; non-strict scans only
// fail on certified negatives.
template <class T>
ScanOutcome difference_sign_scan(const Sequence& seq, int D, double coeff, bool strict,
                                 int positive_parity, bool include_s0, const char* cond_id) {
    ScanOutcome out;
    out.used_total = D;
    const bool exact = (seq.mode() == ArithmeticMode::Exact);
    int noise_total = D + 1;

    std::vector<T> row;
    std::vector<double> mag;
    row.reserve(D);
    mag.reserve(D);
    for (int k = 1; k <= D; ++k) {
        row.push_back(Num<T>::get(seq, k));
        mag.push_back(std::fabs(seq.at(k)));
    }

    for (int s = 0; s + 1 <= D; ++s) {
        if (s > 0) {
            for (size_t i = 0; i + 1 < row.size(); ++i) {
                row[i] = row[i + 1] - row[i];
                mag[i] = mag[i] + mag[i + 1];
            }
            row.pop_back();
            mag.pop_back();
        }
        if (row.empty())
            break;
        if (s == 0 && !include_s0)
            continue;

        const bool flip = (s % 2) != positive_parity;
        for (size_t i = 0; i < row.size(); ++i) {
            const int k = static_cast<int>(i) + 1;
            if (s + k > D)
                break;
            const int raw_sign = Num<T>::sign(row[i]);
            const int sign = flip ? -raw_sign : raw_sign;
            const double v = Num<T>::dbl(row[i]);
            const double signed_v = flip ? -v : v;

            bool failed = false;
            if (exact || mag[i] == 0.0) {
                failed = strict ? (sign <= 0) : (sign < 0);
            } else {
                const double eps = coeff * mag[i];
                if (signed_v < -eps) {
                    failed = true;
                } else if (strict && std::fabs(signed_v) <= eps) {
                    out.noise_limited = true;
                    noise_total = std::min(noise_total, s + k);
                }
            }
            if (failed && static_cast<int>(out.witnesses.size()) < kMaxWitnesses) {
                out.witnesses.push_back(
                    {cond_id, s, k, signed_v,
                     strict ? "sign condition violated" : "certified negative cell"});
            } else if (failed) {
                break;
            }
        }
    }

    if (out.noise_limited)
        out.used_total = std::min(out.used_total, noise_total - 1);

    std::sort(out.witnesses.begin(), out.witnesses.end(), [](const Witness& a, const Witness& b) {
        return std::pair(a.s + a.k, a.s) < std::pair(b.s + b.k, b.s);
    });

    if (!out.witnesses.empty())
        out.verdict = Verdict::Fail;
    else if (strict && out.used_total < 2)
        out.verdict = Verdict::Inconclusive;
    return out;
}

ScanOutcome run_sign_scan(const Sequence& seq, int D, const CheckConfig& cfg, bool strict,
                          int positive_parity, bool include_s0, const char* cond_id) {
    switch (seq.mode()) {
    case ArithmeticMode::Float:
        return difference_sign_scan<double>(seq, D, cfg.strict_coeff_float, strict,
                                            positive_parity, include_s0, cond_id);
    case ArithmeticMode::Exact:
        return difference_sign_scan<Rational>(seq, D, 0.0, strict, positive_parity, include_s0,
                                              cond_id);
    case ArithmeticMode::Extended:
        return difference_sign_scan<BigFloat>(seq, D, cfg.strict_coeff_extended, strict,
                                              positive_parity, include_s0, cond_id);
    }
    throw std::logic_error("unreachable");
}

struct TrendEval {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Witness> witness;
    nlohmann::json diag;
};

// Tail trend over a_k (1-indexed vector of ratios): pass-heuristic when
// |a_k| falls strictly through the window and ends under the threshold;
// fail when it rises strictly through the window; inconclusive otherwise.
TrendEval trend_heuristic(const std::vector<double>& ratios, double scale_lambda,
                          const CheckConfig& cfg, const char* cond_id) {
    TrendEval out;
    const int K = static_cast<int>(ratios.size());
    const double threshold =
        cfg.tail_threshold > 0 ? cfg.tail_threshold : cfg.tail_coeff * scale_lambda;

    if (K < 5) {
        out.diag = {{"note", "fewer than 5 usable ratios"}, {"usable", K}};
        return out;
    }
    const int window = std::max(5, static_cast<int>(std::floor(0.4 * K)));
    const int start = K - window + 1;

    bool decreasing = true;
    bool increasing = true;
    for (int k = start; k < K; ++k) {
        const double a = std::fabs(ratios[k - 1]);
        const double b = std::fabs(ratios[k]);
        decreasing = decreasing && (b < a);
        increasing = increasing && (b > a);
    }
    const double last = std::fabs(ratios[K - 1]);

    out.diag = {{"window_start", start},
                {"window_end", K},
                {"last", last},
                {"threshold", threshold},
                {"trend", decreasing ? "decreasing" : (increasing ? "increasing" : "mixed")}};

    if (decreasing && last < threshold) {
        out.verdict = Verdict::PassHeuristic;
    } else if (increasing) {
        out.verdict = Verdict::Fail;
        out.witness = Witness{cond_id, -1, K, ratios[K - 1],
                              "ratio to k still rising at the end of the window"};
    } else {
        out.verdict = Verdict::Inconclusive;
    }
    return out;
}

// Longest prefix of nu_k/k whose values stay clear of cancellation noise.
std::vector<double> certified_dual_ratios(const Sequence& seq, int* certified) {
    std::vector<double> out;
    const int K = seq.size();
    double noise_coeff = 0.0;
    if (seq.mode() == ArithmeticMode::Float)
        noise_coeff = kDualNoiseFloat;
    else if (seq.mode() == ArithmeticMode::Extended)
        noise_coeff = kDualNoiseExtended;

    for (int k = 1; k <= K; ++k) {
        double mag = 0.0;
        double v = 0.0;
        switch (seq.mode()) {
        case ArithmeticMode::Float: v = nu_cell<double>(seq, k, &mag); break;
        case ArithmeticMode::Exact: v = to_double(nu_cell<Rational>(seq, k, &mag)); break;
        case ArithmeticMode::Extended:
            v = static_cast<double>(nu_cell<BigFloat>(seq, k, &mag));
            break;
        }
        if (noise_coeff > 0.0 && noise_coeff * mag > kDualRelMargin * std::fabs(v))
            break;
        out.push_back(v / k);
    }
    *certified = static_cast<int>(out.size());
    return out;
}

int effective_depth(const Sequence& seq, const CheckConfig& cfg, int* requested) {
    const int K = seq.size();
    int want = cfg.max_depth > 0 ? std::min(cfg.max_depth, K) : K;
    *requested = want;
    if (seq.mode() == ArithmeticMode::Float)
        want = std::min(want, cfg.float_safe_depth);
    return want;
}

void finish_report(CheckReport& r, const Sequence& seq, int requested, int used) {
    r.truncation.requested = requested;
    r.truncation.used = used;
    r.truncation.mode = to_string(seq.mode());
}

} // namespace

double forward_difference(const Sequence& seq, int s, int k) {
    require_diff_args(seq, s, k);
    switch (seq.mode()) {
    case ArithmeticMode::Float: return diff_cell<double>(seq, s, k, nullptr);
    case ArithmeticMode::Exact: return to_double(diff_cell<Rational>(seq, s, k, nullptr));
    case ArithmeticMode::Extended:
        return static_cast<double>(diff_cell<BigFloat>(seq, s, k, nullptr));
    }
    throw std::logic_error("unreachable");
}

Rational forward_difference_exact(const Sequence& seq, int s, int k) {
    require_diff_args(seq, s, k);
    return diff_cell<Rational>(seq, s, k, nullptr);
}

double alternating_binomial_sum(const Sequence& seq, int k) {
    require_diff_args(seq, 0, k);
    switch (seq.mode()) {
    case ArithmeticMode::Float: return nu_cell<double>(seq, k, nullptr);
    case ArithmeticMode::Exact: return to_double(nu_cell<Rational>(seq, k, nullptr));
    case ArithmeticMode::Extended: return static_cast<double>(nu_cell<BigFloat>(seq, k, nullptr));
    }
    throw std::logic_error("unreachable");
}

Rational alternating_binomial_sum_exact(const Sequence& seq, int k) {
    require_diff_args(seq, 0, k);
    return nu_cell<Rational>(seq, k, nullptr);
}

SignedCell forward_difference_diag(const Sequence& seq, int s, int k) {
    require_diff_args(seq, s, k);
    SignedCell cell;
    switch (seq.mode()) {
    case ArithmeticMode::Float:
        cell.value = diff_cell<double>(seq, s, k, &cell.magnitude);
        break;
    case ArithmeticMode::Exact:
        cell.value = to_double(diff_cell<Rational>(seq, s, k, &cell.magnitude));
        break;
    case ArithmeticMode::Extended:
        cell.value = static_cast<double>(diff_cell<BigFloat>(seq, s, k, &cell.magnitude));
        break;
    }
    return cell;
}

SignedCell alternating_binomial_sum_diag(const Sequence& seq, int k) {
    require_diff_args(seq, 0, k);
    SignedCell cell;
    switch (seq.mode()) {
    case ArithmeticMode::Float:
        cell.value = nu_cell<double>(seq, k, &cell.magnitude);
        break;
    case ArithmeticMode::Exact:
        cell.value = to_double(nu_cell<Rational>(seq, k, &cell.magnitude));
        break;
    case ArithmeticMode::Extended:
        cell.value = static_cast<double>(nu_cell<BigFloat>(seq, k, &cell.magnitude));
        break;
    }
    return cell;
}

Sequence dual_sequence(const Sequence& seq) {
    const int K = seq.size();
    switch (seq.mode()) {
    case ArithmeticMode::Float: {
        std::vector<double> out;
        for (int k = 1; k <= K; ++k)
            out.push_back(nu_cell<double>(seq, k, nullptr));
        return Sequence::from_doubles(std::move(out));
    }
    case ArithmeticMode::Exact: {
        std::vector<Rational> out;
        for (int k = 1; k <= K; ++k)
            out.push_back(nu_cell<Rational>(seq, k, nullptr));
        return Sequence::from_rationals(std::move(out));
    }
    case ArithmeticMode::Extended: {
        std::vector<BigFloat> out;
        for (int k = 1; k <= K; ++k)
            out.push_back(nu_cell<BigFloat>(seq, k, nullptr));
        return Sequence::from_bigfloats(std::move(out));
    }
    }
    throw std::logic_error("unreachable");
}

Sequence kadane_moments(const Sequence& seq) {
    const int K = seq.size();
    if (K < 2)
        throw std::invalid_argument("kadane_moments needs at least two entries");
    switch (seq.mode()) {
    case ArithmeticMode::Float: {
        std::vector<double> out;
        for (int n = 0; n + 2 <= K; ++n)
            out.push_back(seq.at(n + 2) - seq.at(n + 1));
        return Sequence::from_doubles(std::move(out));
    }
    case ArithmeticMode::Exact: {
        std::vector<Rational> out;
        for (int n = 0; n + 2 <= K; ++n)
            out.push_back(seq.exact_at(n + 2) - seq.exact_at(n + 1));
        return Sequence::from_rationals(std::move(out));
    }
    case ArithmeticMode::Extended: {
        std::vector<BigFloat> out;
        for (int n = 0; n + 2 <= K; ++n)
            out.push_back(seq.big_at(n + 2) - seq.big_at(n + 1));
        return Sequence::from_bigfloats(std::move(out));
    }
    }
    throw std::logic_error("unreachable");
}

CheckReport check_ems(const Sequence& seq, const CheckConfig& cfg) {
    const int K = seq.size();
    if (K < cfg.min_length)
        throw std::invalid_argument("sequence shorter than the minimum checkable length");

    int requested = 0;
    const int D = effective_depth(seq, cfg, &requested);
    CheckReport r;

    ScanOutcome alt = run_sign_scan(seq, D, cfg, true, 1, false, cond::alternating);
    r.verdicts[cond::alternating] = alt.verdict;
    for (const Witness& w : alt.witnesses)
        r.witnesses.push_back(w);
    r.diagnostics[cond::alternating] = {{"used_total", alt.used_total},
                                        {"noise_limited", alt.noise_limited}};

    const double lambda = std::fabs(seq.at(2) - seq.at(1));

    std::vector<double> ratios;
    for (int k = 1; k <= K; ++k)
        ratios.push_back(seq.at(k) / k);
    TrendEval sub = trend_heuristic(ratios, lambda, cfg, cond::sublinear);
    r.verdicts[cond::sublinear] = sub.verdict;
    if (sub.witness)
        r.witnesses.push_back(*sub.witness);
    r.diagnostics[cond::sublinear] = sub.diag;

    int certified = 0;
    std::vector<double> dual_ratios = certified_dual_ratios(seq, &certified);
    TrendEval dual = trend_heuristic(dual_ratios, lambda, cfg, cond::dual_sublinear);
    dual.diag["certified_prefix"] = certified;
    r.verdicts[cond::dual_sublinear] = dual.verdict;
    if (dual.witness)
        r.witnesses.push_back(*dual.witness);
    r.diagnostics[cond::dual_sublinear] = dual.diag;

    finish_report(r, seq, requested, alt.used_total);
    return r;
}

CheckReport check_ers(const Sequence& seq, const CheckConfig& cfg) {
    const int K = seq.size();
    if (K < cfg.min_length)
        throw std::invalid_argument("sequence shorter than the minimum checkable length");

    int requested = 0;
    const int D = effective_depth(seq, cfg, &requested);
    CheckReport r;

    ScanOutcome alt = run_sign_scan(seq, D, cfg, true, 1, false, cond::alternating);
    r.verdicts[cond::alternating] = alt.verdict;
    for (const Witness& w : alt.witnesses)
        r.witnesses.push_back(w);
    r.diagnostics[cond::alternating] = {{"used_total", alt.used_total},
                                        {"noise_limited", alt.noise_limited}};

    const double lambda = std::fabs(seq.at(2) - seq.at(1));
    std::vector<double> ratios;
    for (int k = 1; k <= K; ++k)
        ratios.push_back(seq.at(k) / k);
    TrendEval sub = trend_heuristic(ratios, lambda, cfg, cond::sublinear);
    r.verdicts[cond::sublinear] = sub.verdict;
    if (sub.witness)
        r.witnesses.push_back(*sub.witness);
    r.diagnostics[cond::sublinear] = sub.diag;

    // Self-duality is an exact identity per index, so every k in the
    // prefix is tested; in float mode the acceptance band scales with the
    // cancellation magnitude of the transform.
    Verdict sd = Verdict::Pass;
    double max_resid = 0.0;
    double max_tol = 0.0;
    int fails = 0;
    for (int k = 1; k <= K; ++k) {
        if (seq.mode() == ArithmeticMode::Exact) {
            Rational resid = seq.exact_at(k) - nu_cell<Rational>(seq, k, nullptr);
            if (resid != 0 && fails < kMaxWitnesses) {
                sd = Verdict::Fail;
                ++fails;
                r.witnesses.push_back({cond::self_dual, -1, k, to_double(resid),
                                       "self-duality identity violated"});
            }
        } else {
            double mag = 0.0;
            double nu = 0.0;
            if (seq.mode() == ArithmeticMode::Float)
                nu = nu_cell<double>(seq, k, &mag);
            else
                nu = static_cast<double>(nu_cell<BigFloat>(seq, k, &mag));
            const double coeff = (seq.mode() == ArithmeticMode::Float)
                                     ? cfg.strict_coeff_float
                                     : cfg.strict_coeff_extended;
            const double resid = seq.at(k) - nu;
            const double tol = coeff * (mag + std::fabs(seq.at(k)));
            max_resid = std::max(max_resid, std::fabs(resid));
            max_tol = std::max(max_tol, tol);
            if (std::fabs(resid) > tol && fails < kMaxWitnesses) {
                sd = Verdict::Fail;
                ++fails;
                r.witnesses.push_back(
                    {cond::self_dual, -1, k, resid, "self-duality identity violated"});
            }
        }
    }
    r.verdicts[cond::self_dual] = sd;
    r.diagnostics[cond::self_dual] = {{"rho1", seq.at(1)},
                                      {"max_residual", max_resid},
                                      {"max_tolerance", max_tol}};

    finish_report(r, seq, requested, alt.used_total);
    return r;
}

CheckReport check_hausdorff(const Sequence& moments, const CheckConfig& cfg) {
    const int K = moments.size();
    if (K < 1)
        throw std::invalid_argument("empty moment sequence");

    int requested = 0;
    const int D = effective_depth(moments, cfg, &requested);
    CheckReport r;

    ScanOutcome scan = run_sign_scan(moments, D, cfg, false, 0, true, cond::completely_monotone);
    r.verdicts[cond::completely_monotone] = scan.verdict;
    for (const Witness& w : scan.witnesses)
        r.witnesses.push_back(w);
    r.diagnostics[cond::completely_monotone] = {{"used_total", scan.used_total}};

    finish_report(r, moments, requested, scan.used_total);
    return r;
}

} // namespace emax::seqcheck
