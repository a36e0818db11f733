// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "emax/dist.hpp"
#include "emax/gif.hpp"
#include "emax/ranges.hpp"
#include "emax/report.hpp"
#include "emax/sequence.hpp"
#include "emax/special.hpp"

using namespace emax;
namespace sp = emax::special;

namespace {

dist::UPoint up(int i, int n) {
    return {static_cast<double>(i) / n, static_cast<double>(n - i) / n};
}

dist::DistributionSpec catalog_entry(const std::string& id) {
    std::vector<double> params;
    if (id == "uniform")
        params = {0.0, 1.0};
    else if (id == "frechet_type")
        params = {0.5};
    else if (id == "perturbed_normal")
        params = {1.0};
    else if (id == "bernoulli" || id == "bernoulli_sym")
        params = {0.3};
    return dist::catalog(id, params);
}

gif::IntegralForm tabulated_logistic_weight(int knots) {
    std::vector<double> ys, hs;
    for (int i = 0; i <= knots; ++i) {
        double y = 1e-5 * std::pow(45.0 / 1e-5, static_cast<double>(i) / knots);
        ys.push_back(y);
        hs.push_back(1.0 / sp::one_minus_exp_neg(y));
    }
    return gif::form_from_table(ys, hs, -1.0, {gif::TailDecay::Kind::Power, 0.0});
}

} // namespace

TEST_CASE("symmetrizing the exponential yields the half logistic") {
    auto sym = ranges::symmetrize(dist::catalog("exponential"));
    auto want = dist::catalog("half_logistic_sym");
    CHECK(sym.label == "symmetrized exponential");
    for (int i = 1; i < 100; ++i) {
        CHECK(std::fabs(dist::quantile(sym, up(i, 100)) - dist::quantile(want, up(i, 100))) <=
              1e-8);
        // Symmetry around zero holds bitwise: the two logs swap roles.
        CHECK(dist::quantile(sym, up(i, 100)) == -dist::quantile(sym, up(100 - i, 100)));
    }
    CHECK(std::fabs(dist::quantile(sym, 0.2) - 0.5 * std::log(0.25)) <= 1e-12);
    CHECK(sym.support.lo == -std::numeric_limits<double>::infinity());
    CHECK(sym.support.hi == std::numeric_limits<double>::infinity());
}

TEST_CASE("symmetrizing a bernoulli splits its mass over three atoms") {
    auto sym = ranges::symmetrize(dist::catalog("bernoulli", {0.3}));
    auto want = dist::catalog("bernoulli_sym", {0.3});
    REQUIRE(sym.steps.has_value());
    CHECK(sym.steps->cuts == want.steps->cuts);
    CHECK(sym.steps->values == want.steps->values);
    REQUIRE(sym.jumps.size() == 2);
    CHECK(sym.jumps[0].u == doctest::Approx(0.3));
    CHECK(sym.jumps[0].left == -0.5);
    CHECK(sym.jumps[0].right == 0.0);
    CHECK(sym.jumps[1].right == 0.5);
    CHECK(sym.support.lo == -0.5);
    CHECK(sym.support.hi == 0.5);
    CHECK(sym.cdf(-0.2) == doctest::Approx(0.3));
    CHECK(sym.cdf(0.0) == doctest::Approx(0.7));
    CHECK(sym.cdf(0.5) == 1.0);

    // The fair coin keeps only the two outer atoms.
    auto fair = ranges::symmetrize(dist::catalog("bernoulli", {0.5}));
    auto fair_want = dist::catalog("bernoulli_sym", {0.5});
    CHECK(fair.steps->cuts == fair_want.steps->cuts);
    CHECK(fair.steps->values == fair_want.steps->values);
}

TEST_CASE("symmetrize is idempotent") {
    for (const char* id : {"exponential", "gumbel_shifted", "two_block_uniform"}) {
        auto once = ranges::symmetrize(dist::catalog(id));
        auto twice = ranges::symmetrize(once);
        for (int i = 1; i < 64; ++i) {
            CHECK(std::fabs(dist::quantile(twice, up(i, 64)) - dist::quantile(once, up(i, 64))) <=
                  1e-8);
        }
    }
    auto once = ranges::symmetrize(dist::catalog("bernoulli", {0.3}));
    auto twice = ranges::symmetrize(once);
    CHECK(twice.steps->cuts == once.steps->cuts);
    CHECK(twice.steps->values == once.steps->values);
}

TEST_CASE("symmetrization preserves every expected range") {
    for (const auto& id : dist::catalog_ids()) {
        auto d = catalog_entry(id);
        auto s = ranges::symmetrize(d);
        for (int k = 2; k <= 30; ++k) {
            double rd = dist::expected_range(d, k);
            CAPTURE(id);
            CAPTURE(k);
            CHECK(std::fabs(dist::expected_range(s, k) - rd) <= 1e-7 * std::max(1.0, rd));
            // rho_k equals twice the expected maximum of the symmetric law.
            CHECK(std::fabs(dist::expected_max(s, k) - 0.5 * rd) <= 1e-7 * std::max(1.0, rd));
        }
    }
}

TEST_CASE("equal ranges is decided by the symmetry of the quantile gap") {
    auto normal = dist::catalog("normal");
    auto perturbed = dist::catalog("perturbed_normal", {1.0});
    auto uniform = dist::catalog("uniform", {0.0, 1.0});
    auto beta = dist::catalog("beta_half_one");
    auto expo = dist::catalog("exponential");

    auto same = ranges::equal_ranges_check(perturbed, normal);
    CHECK(same.overall() == Verdict::Pass);
    CHECK(same.diagnostics["max_gap_asymmetry"].get<double>() <= 1e-12);

    CHECK(ranges::equal_ranges_check(uniform, beta).overall() == Verdict::Pass);
    CHECK(ranges::equal_ranges_check(normal, normal).overall() == Verdict::Pass);

    auto diff = ranges::equal_ranges_check(uniform, expo);
    CHECK(diff.overall() == Verdict::Fail);
    CHECK(diff.verdicts.at(ranges::cond::shift_symmetry) == Verdict::Fail);
    CHECK(diff.verdicts.at(ranges::cond::range_agreement) == Verdict::Fail);
    REQUIRE(!diff.witnesses.empty());
    CHECK(diff.witnesses.front().condition == ranges::cond::shift_symmetry);
    CHECK(std::fabs(diff.witnesses.front().value) > 1e-3);

    // The relation is symmetric in its arguments.
    CHECK(ranges::equal_ranges_check(expo, uniform).overall() == Verdict::Fail);
    CHECK(ranges::equal_ranges_check(normal, perturbed).overall() == Verdict::Pass);

    CHECK_THROWS_AS(ranges::equal_ranges_check(normal, normal, 1), std::invalid_argument);
}

TEST_CASE("equal ranges takes right limits at jumps") {
    auto coin = dist::catalog("bernoulli", {0.3});
    auto sym = dist::catalog("bernoulli_sym", {0.3});
    auto rep = ranges::equal_ranges_check(coin, sym);
    CHECK(rep.overall() == Verdict::Pass);
    CHECK(rep.diagnostics["max_gap_asymmetry"].get<double>() == 0.0);

    // A shifted coin breaks the pairing.
    auto other = dist::catalog("bernoulli", {0.4});
    CHECK(ranges::equal_ranges_check(other, sym).overall() == Verdict::Fail);
}

TEST_CASE("equal ranges is transitive across a perturbed family") {
    auto a = dist::catalog("normal");
    auto b = dist::catalog("perturbed_normal", {0.5});
    auto c = dist::catalog("perturbed_normal", {1.5});
    CHECK(ranges::equal_ranges_check(a, b).overall() == Verdict::Pass);
    CHECK(ranges::equal_ranges_check(b, c).overall() == Verdict::Pass);
    CHECK(ranges::equal_ranges_check(a, c).overall() == Verdict::Pass);
}

TEST_CASE("the symmetry criterion singles out the logistic in the harmonic family") {
    auto good = ranges::symmetry_check(gif::harmonic_family(-1.0));
    CHECK(good.verdicts.at(ranges::cond::symmetry) == Verdict::Pass);
    CHECK(good.diagnostics["max_rel_residual"].get<double>() <= 1e-8);
    CHECK(good.diagnostics["ers_certificate"].get<bool>());

    CHECK(ranges::symmetry_residual(gif::harmonic_family(-1.0), 1.0) <= 1e-12);

    const std::vector<std::pair<double, double>> bad = {
        {-1.5, 0.237126}, {0.0, 0.418023}, {1.0, 0.661303}};
    for (const auto& [c, residual_at_1] : bad) {
        auto form = gif::harmonic_family(c);
        auto rep = ranges::symmetry_check(form);
        CAPTURE(c);
        CHECK(rep.verdicts.at(ranges::cond::symmetry) == Verdict::Fail);
        CHECK(!rep.diagnostics["ers_certificate"].get<bool>());
        CHECK(!rep.witnesses.empty());
        CHECK(ranges::symmetry_residual(form, 1.0) ==
              doctest::Approx(residual_at_1).epsilon(1e-4));
    }
}

TEST_CASE("the symmetry criterion singles out the uniform in the rational family") {
    auto good = ranges::symmetry_check(gif::rational_family(1.0));
    CHECK(good.verdicts.at(ranges::cond::symmetry) == Verdict::Pass);
    // Symmetric around its mean, but mu_1 = 1/2, so no range certificate.
    CHECK(good.diagnostics["g_at_1"].get<double>() == doctest::Approx(0.5));
    CHECK(!good.diagnostics["ers_certificate"].get<bool>());

    for (double c : {0.0, 2.0}) {
        auto rep = ranges::symmetry_check(gif::rational_family(c));
        CAPTURE(c);
        CHECK(rep.verdicts.at(ranges::cond::symmetry) == Verdict::Fail);
    }
    CHECK(ranges::symmetry_residual(gif::rational_family(0.0), 1.0) ==
          doctest::Approx(0.418023).epsilon(1e-4));
}

TEST_CASE("the symmetry criterion rejects every logarithmic shift") {
    CHECK(ranges::symmetry_check(gif::log_shift(0.0)).verdicts.at(ranges::cond::symmetry) ==
          Verdict::Fail);
    CHECK(ranges::symmetry_check(gif::log_shift(1.0)).verdicts.at(ranges::cond::symmetry) ==
          Verdict::Fail);
    CHECK(ranges::symmetry_residual(gif::log_shift(0.0), 1.0) ==
          doctest::Approx(0.211867).epsilon(1e-4));
    CHECK(ranges::symmetry_residual(gif::log_shift(1.0), 1.0) ==
          doctest::Approx(0.541325).epsilon(1e-4));
}

TEST_CASE("the symmetry criterion accepts a finely tabulated logistic weight") {
    auto fine = tabulated_logistic_weight(1200);
    auto rep = ranges::symmetry_check(fine);
    CHECK(rep.verdicts.at(ranges::cond::symmetry) == Verdict::Pass);
    CHECK(rep.diagnostics["max_rel_residual"].get<double>() <= 1e-4);
    CHECK(rep.diagnostics["ers_certificate"].get<bool>());

    // Interpolation bias on a table eight times coarser exceeds the
    // tabulated tolerance.
    auto coarse = tabulated_logistic_weight(150);
    CHECK(ranges::symmetry_check(coarse).verdicts.at(ranges::cond::symmetry) == Verdict::Fail);

    std::vector<double> ys, hs;
    for (int i = 0; i <= 400; ++i) {
        double y = 1e-5 * std::pow(45.0 / 1e-5, i / 400.0);
        ys.push_back(y);
        hs.push_back(1.0);
    }
    auto flat = gif::form_from_table(ys, hs, 0.0, {gif::TailDecay::Kind::Power, 0.0});
    auto flat_rep = ranges::symmetry_check(flat);
    CHECK(flat_rep.verdicts.at(ranges::cond::symmetry) == Verdict::Fail);
    CHECK(ranges::symmetry_residual(flat, 1.0) == doctest::Approx(0.418023).epsilon(1e-3));
}

TEST_CASE("symmetry grids are caller-controlled and validated") {
    auto rep = ranges::symmetry_check(gif::harmonic_family(-1.0),
                                      {0.25, std::log(2.0), 1.0, 5.0});
    CHECK(rep.verdicts.at(ranges::cond::symmetry) == Verdict::Pass);
    CHECK(rep.truncation.used == 4);
    CHECK_THROWS_AS(ranges::symmetry_check(gif::harmonic_family(-1.0), {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(ranges::symmetry_check(gif::harmonic_family(-1.0), {-2.0}),
                    std::invalid_argument);
}

TEST_CASE("the measure condition balances below and beyond the involution") {
    for (double y : {0.3, std::log(2.0), 1.7}) {
        CAPTURE(y);
        CHECK(std::fabs(ranges::measure_balance_gap(gif::harmonic_family(-1.0), y)) <= 1e-9);
        CHECK(std::fabs(ranges::measure_balance_gap(gif::rational_family(1.0), y)) <= 1e-9);
        // For the weight e^{-y}/(1 - e^{-y}) both masses integrate in
        // closed form and differ by (1 - e^{-y}) e^{-y}.
        double want = -std::expm1(-y) * std::exp(-y);
        CHECK(ranges::measure_balance_gap(gif::harmonic_family(0.0), y) ==
              doctest::Approx(want).epsilon(1e-6));
    }
    CHECK_THROWS_AS(ranges::measure_balance_gap(gif::harmonic_family(-1.0), 0.0),
                    std::invalid_argument);
}

TEST_CASE("the bridge accepts exponential ranges") {
    std::vector<Rational> rho;
    for (int k = 1; k <= 40; ++k) rho.push_back(sp::harmonic_exact(static_cast<unsigned>(k - 1)));
    auto rep = ranges::ems_to_ers_bridge(Sequence::from_rationals(rho));

    CHECK(rep.verdicts.at(ranges::cond::bridge_agreement) == Verdict::Pass);
    CHECK(rep.verdicts.at("ers-alternating") == Verdict::Pass);
    CHECK(rep.verdicts.at("ers-self-dual") == Verdict::Pass);
    CHECK(rep.verdicts.at("half-ems-alternating") == Verdict::Pass);
    CHECK(rep.overall() != Verdict::Fail);

    // Half of the exponential ranges are the expected maxima of the
    // symmetric half logistic.
    auto moments = rep.diagnostics["symmetric_candidate_moments"];
    REQUIRE(moments.size() == 5);
    CHECK(moments[0].get<double>() == 0.0);
    CHECK(moments[1].get<double>() == doctest::Approx(0.5));
    CHECK(moments[2].get<double>() == doctest::Approx(0.75));
    CHECK(moments[3].get<double>() == doctest::Approx(11.0 / 12.0));
    CHECK(moments[4].get<double>() == doctest::Approx(25.0 / 24.0));
    auto half_logistic = dist::catalog("half_logistic_sym");
    for (int k = 2; k <= 5; ++k) {
        CHECK(moments[k - 1].get<double>() ==
              doctest::Approx(dist::expected_max(half_logistic, k)).epsilon(1e-9));
    }
}

TEST_CASE("the bridge accepts bernoulli ranges") {
    std::vector<Rational> rho;
    Rational lo(1, 4), hi(3, 4), plo = 1, phi = 1;
    for (int k = 1; k <= 30; ++k) {
        plo *= lo;
        phi *= hi;
        rho.push_back(1 - plo - phi);
    }
    auto rep = ranges::ems_to_ers_bridge(Sequence::from_rationals(rho));
    CHECK(rep.verdicts.at(ranges::cond::bridge_agreement) == Verdict::Pass);
    CHECK(rep.verdicts.at("ers-alternating") == Verdict::Pass);
    CHECK(rep.verdicts.at("ers-self-dual") == Verdict::Pass);
    CHECK(rep.verdicts.at("half-ems-alternating") == Verdict::Pass);
    CHECK(rep.overall() != Verdict::Fail);

    // The oracle law: ranges of bernoulli(1/4) computed from its quantile.
    auto coin = dist::catalog("bernoulli", {0.25});
    for (int k = 2; k <= 10; ++k) {
        CHECK(to_double(rho[static_cast<std::size_t>(k - 1)]) ==
              doctest::Approx(dist::expected_range(coin, k)).epsilon(1e-12));
    }
}

TEST_CASE("the bridge flags the degenerate sequence on both sides") {
    auto rep = ranges::ems_to_ers_bridge(Sequence::from_rationals(std::vector<Rational>(12, 0)));
    CHECK(rep.verdicts.at("ers-alternating") == Verdict::Fail);
    CHECK(rep.verdicts.at("half-ems-alternating") == Verdict::Fail);
    CHECK(rep.verdicts.at(ranges::cond::bridge_agreement) == Verdict::Pass);
    CHECK(rep.overall() == Verdict::Fail);
}

TEST_CASE("the bridge refuses prefixes shorter than three") {
    CHECK_THROWS_AS(ranges::ems_to_ers_bridge(Sequence::from_doubles({0.0, 1.0})),
                    std::invalid_argument);
    auto rep = ranges::ems_to_ers_bridge(Sequence::from_doubles({0.0, 1.0, 1.5}));
    CHECK(rep.verdicts.at(ranges::cond::bridge_agreement) == Verdict::Pass);
    CHECK(rep.overall() != Verdict::Fail);
}
