// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include "emax/report.hpp"
#include "emax/sequence.hpp"

namespace emax::seqcheck {

namespace cond {
inline constexpr const char* alternating = "alternating";
inline constexpr const char* sublinear = "sublinear";
inline constexpr const char* dual_sublinear = "dual-sublinear";
inline constexpr const char* self_dual = "self-dual";
inline constexpr const char* completely_monotone = "completely-monotone";
} // namespace cond

struct CheckConfig {
    // Cap on the difference-table total s + k; 0 keeps the full prefix.
    int max_depth = 0;

    // check_ems / check_ers refuse shorter prefixes.
    int min_length = 10;

    // Double arithmetic cannot certify strict signs much past this total:
    // intermediate magnitudes grow like 2^(s+k) against shrinking cells.
    int float_safe_depth = 40;

    // A cell is certified only when it clears coeff * (sum of absolute
    // contributions); anything inside that band counts as cancellation
    // noise, shrinking the certified depth instead of producing verdicts.
    double strict_coeff_float = 1e-12;
    double strict_coeff_extended = 1e-50;

    // Tail trend heuristic: window is the last 40% of the certified
    // indices (at least 5); pass needs strictly falling |a_k| ending
    // below tail_coeff * |mu_2 - mu_1|. tail_threshold > 0 overrides the
    // derived threshold with an absolute one.
    double tail_coeff = 0.15;
    double tail_threshold = 0.0;
};

// s-fold forward difference at index k. Requires s >= 0, k >= 1 and
// k + s <= K.
double forward_difference(const Sequence& seq, int s, int k);
Rational forward_difference_exact(const Sequence& seq, int s, int k);

// nu_k = sum_{j=1..k} (-1)^j C(k,j) mu_j.
double alternating_binomial_sum(const Sequence& seq, int k);
Rational alternating_binomial_sum_exact(const Sequence& seq, int k);

// Value plus the sum of absolute contributions that formed it; their ratio
// bounds the cancellation-driven precision loss in float mode.
struct SignedCell {
    double value = 0.0;
    double magnitude = 0.0;
};
SignedCell forward_difference_diag(const Sequence& seq, int s, int k);
SignedCell alternating_binomial_sum_diag(const Sequence& seq, int k);

// EMS of the negated variable: entry k is nu_k. An involution.
Sequence dual_sequence(const Sequence& seq);

// m_n = mu_{n+2} - mu_{n+1} for n = 0..K-2; entry j holds m_{j-1}. The
// source satisfies the alternating-sign condition exactly when this is
// completely monotone and mu_2 > mu_1.
Sequence kadane_moments(const Sequence& seq);

// Conditions: strict alternating signs of Delta^s mu_k (all s, k), then
// mu_k = o(k) and nu_k = o(k) by the tail trend heuristic. Asymptotic
// conditions may come back inconclusive; the sign condition never does
// except through depth truncation.
CheckReport check_ems(const Sequence& seq, const CheckConfig& cfg = {});

// Conditions: alternating signs, rho_k = o(k), and the exact self-duality
// rho_k = sum_j (-1)^j C(k,j) rho_j for every k.
CheckReport check_ers(const Sequence& seq, const CheckConfig& cfg = {});

// Hausdorff test on a moment-candidate sequence (entry j holds the moment
// of order j-1): (-1)^s Delta^s m >= 0 over the whole scanned table.
// min_length does not apply here.
CheckReport check_hausdorff(const Sequence& moments, const CheckConfig& cfg = {});

} // namespace emax::seqcheck
