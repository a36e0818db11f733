// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#pragma once

#include <json.hpp>

#include <utility>
#include <vector>

#include "emax/arith.hpp"
#include "emax/sequence.hpp"

namespace emax::hoeffding {

// Support points of the n-point Hoeffding construction: beta_{i,n} is the
// i-th order-statistic coefficient built from the first n sequence entries.
// A table defines a proper distribution iff the betas strictly increase.
struct HoeffdingTable {
    int n = 0;
    Sequence betas;
    // Set when the table was accumulated in doubles with n > 20, where the
    // alternating sums cancel catastrophically.
    bool precision_loss = false;
};

// Builds beta_{i,n} = i C(n,i) sum_{j=0}^{n-i} C(n-i,j) (-1)^j mu_{i+j}/(i+j)
// for i = 1..n.  Requires 1 <= n <= seq.size().  Arithmetic follows the mode
// of seq: exact tables stay rational, float tables accumulate in doubles.
HoeffdingTable beta_table(const Sequence& seq, int n);

bool is_valid_distribution(const HoeffdingTable& table);

// Expected maximum of k iid draws from the n-point law:
// mu_k(X_n) = sum_i beta_i [(i/n)^k - ((i-1)/n)^k].  Requires k >= 1.
double discrete_expected_max(const HoeffdingTable& table, int k);

// Exact variant; requires a table in exact mode.
Rational discrete_expected_max_exact(const HoeffdingTable& table, int k);

struct ConvergenceDiagnostic {
    std::vector<int> levels;
    // errors[k-1][l] = |mu_k(X_{levels[l]}) - mu_k|.
    std::vector<std::vector<double>> errors;
    // Per k: true when the error is nonincreasing across levels.
    std::vector<bool> monotone_decay;
    // Empirical CDF of the n-point law at the largest level: (beta_i, i/n).
    std::vector<std::pair<double, double>> empirical_cdf;

    nlohmann::json to_json() const;
};

// Compares discrete expected maxima against the sequence across table sizes.
// An empty n_levels selects {10, 20, 50, 100, 200} capped at seq.size().
// Throws std::invalid_argument when a level's betas are not strictly
// increasing, since the construction then yields no distribution.
ConvergenceDiagnostic convergence_diagnostic(const Sequence& seq,
                                             std::vector<int> n_levels,
                                             int k_max);

// sum_{i=0}^{s-1} (-1)^(s-1-i) C(s-1,i) i^m with 0^0 = 1.  Vanishes for
// s >= 3, 1 <= m <= s-2; equals (s-1)! at m = s-1.  Requires s >= 1, m >= 0.
Integer stirling_sum(int s, int m);

}  // namespace emax::hoeffding
