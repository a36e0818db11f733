// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/hoeffding.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace emax::hoeffding {

namespace {

Rational beta_exact(const Sequence& seq, int i, int n) {
    Rational sum = 0;
    for (int j = 0; j <= n - i; ++j) {
        Rational term = Rational(binomial(n - i, j)) * seq.exact_at(i + j) / (i + j);
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return Rational(i) * Rational(binomial(n, i)) * sum;
}

double beta_float(const Sequence& seq, int i, int n) {
    double sum = 0.0;
    for (int j = 0; j <= n - i; ++j) {
        double term = binomial_d(n - i, j) * seq.at(i + j) / (i + j);
        sum += (j % 2 == 0) ? term : -term;
    }
    return i * binomial_d(n, i) * sum;
}

BigFloat beta_big(const Sequence& seq, int i, int n) {
    BigFloat sum = 0;
    for (int j = 0; j <= n - i; ++j) {
        BigFloat term = to_bigfloat(Rational(binomial(n - i, j))) * seq.big_at(i + j) / (i + j);
        if (j % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    return BigFloat(i) * to_bigfloat(Rational(binomial(n, i))) * sum;
}

Rational pow_rat(const Rational& base, int k) {
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= base;
    return out;
}

}  // namespace

HoeffdingTable beta_table(const Sequence& seq, int n) {
    if (n < 1) throw std::invalid_argument("beta table requires n >= 1");
    if (n > static_cast<int>(seq.size())) {
        throw std::invalid_argument("beta table requires n <= sequence length");
    }
    HoeffdingTable table;
    table.n = n;
    switch (seq.mode()) {
        case ArithmeticMode::Exact: {
            std::vector<Rational> betas;
            betas.reserve(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i) betas.push_back(beta_exact(seq, i, n));
            table.betas = Sequence::from_rationals(std::move(betas));
            break;
        }
        case ArithmeticMode::Extended: {
            std::vector<BigFloat> betas;
            betas.reserve(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i) betas.push_back(beta_big(seq, i, n));
            table.betas = Sequence::from_bigfloats(std::move(betas));
            break;
        }
        case ArithmeticMode::Float: {
            std::vector<double> betas;
            betas.reserve(static_cast<std::size_t>(n));
            for (int i = 1; i <= n; ++i) betas.push_back(beta_float(seq, i, n));
            table.betas = Sequence::from_doubles(std::move(betas));
            table.precision_loss = n > 20;
            break;
        }
    }
    return table;
}

bool is_valid_distribution(const HoeffdingTable& table) {
    if (table.n < 1) return false;
    if (table.betas.mode() == ArithmeticMode::Exact) {
        for (int i = 1; i < table.n; ++i) {
            if (!(table.betas.exact_at(i) < table.betas.exact_at(i + 1))) return false;
        }
        return true;
    }
    for (int i = 1; i < table.n; ++i) {
        if (!(table.betas.at(i) < table.betas.at(i + 1))) return false;
    }
    return true;
}

double discrete_expected_max(const HoeffdingTable& table, int k) {
    if (k < 1) throw std::invalid_argument("discrete expected maximum requires k >= 1");
    if (table.betas.mode() == ArithmeticMode::Exact) {
        return to_double(discrete_expected_max_exact(table, k));
    }
    const int n = table.n;
    double total = 0.0;
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        double cur = std::pow(static_cast<double>(i) / n, k);
        total += table.betas.at(i) * (cur - prev);
        prev = cur;
    }
    return total;
}

Rational discrete_expected_max_exact(const HoeffdingTable& table, int k) {
    if (k < 1) throw std::invalid_argument("discrete expected maximum requires k >= 1");
    if (table.betas.mode() != ArithmeticMode::Exact) {
        throw std::invalid_argument("exact discrete expected maximum requires an exact table");
    }
    const int n = table.n;
    Rational total = 0;
    Rational prev = 0;
    for (int i = 1; i <= n; ++i) {
        Rational base(i, n);
        base.canonicalize();
        Rational cur = pow_rat(base, k);
        total += table.betas.exact_at(i) * (cur - prev);
        prev = cur;
    }
    return total;
}

nlohmann::json ConvergenceDiagnostic::to_json() const {
    nlohmann::json j;
    j["levels"] = levels;
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& row : errors) errs.push_back(row);
    j["errors"] = errs;
    j["monotone_decay"] = monotone_decay;
    nlohmann::json cdf = nlohmann::json::array();
    for (const auto& [x, p] : empirical_cdf) cdf.push_back(nlohmann::json::array({x, p}));
    j["empirical_cdf"] = cdf;
    return j;
}

ConvergenceDiagnostic convergence_diagnostic(const Sequence& seq,
                                             std::vector<int> n_levels,
                                             int k_max) {
    if (k_max < 1) throw std::invalid_argument("convergence diagnostic requires k_max >= 1");
    if (n_levels.empty()) {
        for (int n : {10, 20, 50, 100, 200}) {
            if (n <= static_cast<int>(seq.size())) n_levels.push_back(n);
        }
    }
    if (n_levels.empty()) {
        throw std::invalid_argument("convergence diagnostic requires at least one level");
    }
    std::sort(n_levels.begin(), n_levels.end());
    if (k_max > static_cast<int>(seq.size())) {
        throw std::invalid_argument("convergence diagnostic requires k_max <= sequence length");
    }

    ConvergenceDiagnostic diag;
    diag.levels = n_levels;
    diag.errors.assign(static_cast<std::size_t>(k_max), {});

    HoeffdingTable largest;
    for (int n : n_levels) {
        HoeffdingTable table = beta_table(seq, n);
        if (!is_valid_distribution(table)) {
            throw std::invalid_argument(
                "construction invalid at n = " + std::to_string(n) +
                ": betas are not strictly increasing");
        }
        for (int k = 1; k <= k_max; ++k) {
            double approx = discrete_expected_max(table, k);
            diag.errors[static_cast<std::size_t>(k - 1)].push_back(
                std::fabs(approx - seq.at(k)));
        }
        largest = std::move(table);
    }

    diag.monotone_decay.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        const auto& row = diag.errors[static_cast<std::size_t>(k - 1)];
        bool decay = true;
        for (std::size_t l = 1; l < row.size(); ++l) {
            if (row[l] > row[l - 1] * (1.0 + 1e-12) + 1e-15) {
                decay = false;
                break;
            }
        }
        diag.monotone_decay.push_back(decay);
    }

    diag.empirical_cdf.reserve(static_cast<std::size_t>(largest.n));
    for (int i = 1; i <= largest.n; ++i) {
        diag.empirical_cdf.emplace_back(largest.betas.at(i),
                                        static_cast<double>(i) / largest.n);
    }
    return diag;
}

Integer stirling_sum(int s, int m) {
    if (s < 1) throw std::invalid_argument("stirling sum requires s >= 1");
    if (m < 0) throw std::invalid_argument("stirling sum requires m >= 0");
    Integer total = 0;
    for (int i = 0; i < s; ++i) {
        Integer power;
        if (i == 0) {
            power = (m == 0) ? 1 : 0;
        } else {
            mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(i),
                          static_cast<unsigned long>(m));
        }
        Integer term = binomial(s - 1, i) * power;
        if ((s - 1 - i) % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    }
    return total;
}

}  // namespace emax::hoeffding
