#include <doctest.h>

#include "emax/seqcheck.hpp"
#include "emax/special.hpp"

#include <cmath>
#include <vector>

using namespace emax;
using namespace emax::seqcheck;

namespace {

// mu_k = k/(k+1): expected maxima of a standard uniform variable.
Sequence uniform_ems(int K) {
    std::vector<Rational> v;
    for (int k = 1; k <= K; ++k)
        v.emplace_back(k, k + 1);
    return Sequence::from_rationals(std::move(v));
}

// mu_k = k - 1/(k+1): satisfies the sign condition but grows linearly.
Sequence linear_growth(int K) {
    std::vector<Rational> v;
    for (int k = 1; k <= K; ++k)
        v.push_back(Rational(k) - Rational(1, k + 1));
    return Sequence::from_rationals(std::move(v));
}

// mu_k = k/(k+1) - [k == 1]: dual of the sequence above.
Sequence linear_growth_dual(int K) {
    std::vector<Rational> v;
    for (int k = 1; k <= K; ++k) {
        Rational q(k, k + 1);
        if (k == 1)
            q -= 1;
        v.push_back(q);
    }
    return Sequence::from_rationals(std::move(v));
}

Sequence harmonic_ems(int K) {
    std::vector<Rational> v;
    for (int k = 1; k <= K; ++k)
        v.push_back(special::harmonic_exact(k));
    return Sequence::from_rationals(std::move(v));
}

// rho_k = H(k-1): expected ranges of a unit exponential.
Sequence exponential_ranges(int K) {
    std::vector<Rational> v;
    for (int k = 1; k <= K; ++k)
        v.push_back(special::harmonic_exact(k - 1));
    return Sequence::from_rationals(std::move(v));
}

Sequence bernoulli_ranges(const Rational& p, int K) {
    std::vector<Rational> v;
    Rational pk = 1;
    Rational qk = 1;
    const Rational q = 1 - p;
    for (int k = 1; k <= K; ++k) {
        pk *= p;
        qk *= q;
        v.push_back(1 - pk - qk);
    }
    return Sequence::from_rationals(std::move(v));
}

} // namespace

TEST_CASE("forward differences against closed forms") {
    Sequence u = uniform_ems(12);
    CHECK(forward_difference_exact(u, 1, 1) == Rational(1, 6));
    CHECK(forward_difference_exact(u, 2, 3) == Rational(-1, 60));
    // Delta^s (k/(k+1)) = (-1)^{s+1} s! / ((k+1)(k+2)...(k+s+1))
    for (int s = 1; s <= 6; ++s) {
        for (int k = 1; k + s <= 12; ++k) {
            Rational expect = 1;
            for (int j = 1; j <= s; ++j)
                expect *= j;
            for (int j = k + 1; j <= k + s + 1; ++j)
                expect /= j;
            if (s % 2 == 0)
                expect = -expect;
            CHECK(forward_difference_exact(u, s, k) == expect);
        }
    }

    // Delta^s H(k) = (-1)^{s+1} (s-1)! / ((k+1)(k+2)...(k+s))
    Sequence h = harmonic_ems(12);
    CHECK(forward_difference_exact(h, 1, 4) == Rational(1, 5));
    CHECK(forward_difference_exact(h, 2, 1) == Rational(-1, 6));
    CHECK(forward_difference_exact(h, 3, 2) == Rational(1, 30));

    CHECK(forward_difference(u, 0, 7) == doctest::Approx(7.0 / 8.0));
    CHECK_THROWS_AS(forward_difference(u, 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(forward_difference(u, -1, 1), std::invalid_argument);
}

TEST_CASE("difference of root k against direct expansion") {
    std::vector<double> v;
    for (int k = 1; k <= 12; ++k)
        v.push_back(std::sqrt(static_cast<double>(k)));
    Sequence s = Sequence::from_doubles(v);
    CHECK(forward_difference(s, 3, 2) == doctest::Approx(0.018006837833326528).epsilon(1e-12));

    // Brute-force binomial expansion must agree with the library cell.
    for (int ord = 0; ord <= 5; ++ord) {
        double acc = 0.0;
        for (int j = 0; j <= ord; ++j)
            acc += ((ord - j) % 2 == 0 ? 1.0 : -1.0) * binomial_d(ord, j) * v[2 + j];
        CHECK(forward_difference(s, ord, 3) == doctest::Approx(acc).epsilon(1e-13));
    }
}

TEST_CASE("alternating binomial sums and the dual sequence") {
    Sequence u = uniform_ems(20);
    // nu_k of the uniform maxima is -1/(k+1), the maxima of Uniform(-1,0).
    for (int k = 1; k <= 20; ++k)
        CHECK(alternating_binomial_sum_exact(u, k) == Rational(-1, k + 1));

    Sequence h = harmonic_ems(14);
    CHECK(alternating_binomial_sum_exact(h, 7) == Rational(-1, 7));
    for (int k = 1; k <= 14; ++k)
        CHECK(alternating_binomial_sum_exact(h, k) == Rational(-1, k));

    Sequence lg = linear_growth(10);
    CHECK(alternating_binomial_sum_exact(lg, 1) == Rational(-1, 2));
    CHECK(alternating_binomial_sum_exact(lg, 5) == Rational(5, 6));

    // The transform is an involution in exact arithmetic.
    Sequence d = dual_sequence(u);
    for (int k = 1; k <= 20; ++k)
        CHECK(d.exact_at(k) == Rational(-1, k + 1));
    CHECK(dual_sequence(d) == u);
    CHECK(dual_sequence(dual_sequence(h)) == h);

    // Float-mode involution holds to cancellation accuracy at short lengths.
    Sequence uf = Sequence::from_doubles([] {
        std::vector<double> w;
        for (int k = 1; k <= 12; ++k)
            w.push_back(k / (k + 1.0));
        return w;
    }());
    Sequence round = dual_sequence(dual_sequence(uf));
    for (int k = 1; k <= 12; ++k)
        CHECK(round.at(k) == doctest::Approx(uf.at(k)).epsilon(1e-10));
}

TEST_CASE("kadane moments") {
    Sequence lg = linear_growth(33);
    Sequence m = kadane_moments(lg);
    CHECK(m.size() == 32);
    // m_n = 1 + 1/((n+2)(n+3)); entry j holds m_{j-1}.
    for (int j = 1; j <= 32; ++j) {
        const int n = j - 1;
        CHECK(m.exact_at(j) == 1 + Rational(1, (n + 2) * (n + 3)));
    }
    CHECK_THROWS_AS(kadane_moments(uniform_ems(1)), std::invalid_argument);
}

TEST_CASE("hausdorff moment test") {
    // Moments of Uniform(0,1): order-j moment 1/(j+1), entry j holds order j-1.
    std::vector<Rational> mom;
    for (int j = 1; j <= 14; ++j)
        mom.emplace_back(1, j);
    CheckReport good = check_hausdorff(Sequence::from_rationals(std::move(mom)));
    CHECK(good.verdicts.at(cond::completely_monotone) == Verdict::Pass);

    // Constant moments: the point mass at 1. Non-strict, so this passes.
    CheckReport degenerate = check_hausdorff(Sequence::from_rationals(
        std::vector<Rational>(10, Rational(1, 2))));
    CHECK(degenerate.verdicts.at(cond::completely_monotone) == Verdict::Pass);

    // A negative entry fails already at order zero.
    CheckReport bad = check_hausdorff(Sequence::from_doubles({1.0, -1.0, 1.0, -1.0, 1.0}));
    CHECK(bad.verdicts.at(cond::completely_monotone) == Verdict::Fail);
    CHECK(bad.witnesses.at(0).s == 0);
    CHECK(bad.witnesses.at(0).k == 2);

    CheckReport kad = check_hausdorff(kadane_moments(linear_growth(30)));
    CHECK(kad.verdicts.at(cond::completely_monotone) == Verdict::Pass);
    CheckReport kad_u = check_hausdorff(kadane_moments(uniform_ems(30)));
    CHECK(kad_u.verdicts.at(cond::completely_monotone) == Verdict::Pass);
}

TEST_CASE("maxima check accepts the uniform sequence") {
    CheckReport r = check_ems(uniform_ems(50));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
    CHECK(r.verdicts.at(cond::dual_sublinear) == Verdict::PassHeuristic);
    CHECK(r.truncation.used == 50);
    CHECK(exit_code(r) == 0);

    // Float input passes as well, with the sign scan depth capped.
    std::vector<double> v;
    for (int k = 1; k <= 50; ++k)
        v.push_back(k / (k + 1.0));
    CheckReport rf = check_ems(Sequence::from_doubles(v));
    CHECK(rf.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(rf.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
    CHECK(rf.verdicts.at(cond::dual_sublinear) == Verdict::PassHeuristic);
    CHECK(rf.truncation.used <= 40);
    CHECK(exit_code(rf) == 0);
}

TEST_CASE("maxima check accepts the harmonic sequence") {
    CheckReport r = check_ems(harmonic_ems(80));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
    CHECK(r.verdicts.at(cond::dual_sublinear) == Verdict::PassHeuristic);
}

TEST_CASE("maxima check rejects linear growth on sublinearity") {
    CheckReport r = check_ems(linear_growth(50));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::Fail);
    CHECK(exit_code(r) == 1);
    bool found = false;
    for (const Witness& w : r.witnesses)
        if (w.condition == cond::sublinear) {
            found = true;
            CHECK(w.k == 50);
            CHECK(w.value == doctest::Approx((50.0 - 1.0 / 51.0) / 50.0));
        }
    CHECK(found);
}

TEST_CASE("maxima check rejects the dual of linear growth on its dual") {
    CheckReport r = check_ems(linear_growth_dual(50));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
    CHECK(r.verdicts.at(cond::dual_sublinear) == Verdict::Fail);
    CHECK(exit_code(r) == 1);
}

TEST_CASE("maxima check rejects too-strong logarithmic growth on signs") {
    std::vector<double> v;
    for (int k = 1; k <= 19; ++k)
        v.push_back(std::pow(std::log(static_cast<double>(k)), 1.5));
    CheckReport r = check_ems(Sequence::from_doubles(v));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Fail);
    REQUIRE(!r.witnesses.empty());
    const Witness& w = r.witnesses.front();
    CHECK(w.condition == cond::alternating);
    CHECK(w.s == 3);
    CHECK(w.k == 1);
    CHECK(w.value == doctest::Approx(-0.0910362482813114).epsilon(1e-10));
}

TEST_CASE("maxima check rejects a constant sequence") {
    CheckReport r = check_ems(Sequence::from_rationals(std::vector<Rational>(12, Rational(1))));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Fail);
    CHECK(r.witnesses.front().s == 1);
    CHECK(r.witnesses.front().k == 1);
}

TEST_CASE("maxima check inconclusive on a short slowly-decaying prefix") {
    std::vector<double> v;
    for (int k = 1; k <= 12; ++k)
        v.push_back(std::log(static_cast<double>(k)));
    CheckReport r = check_ems(Sequence::from_doubles(v));
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::Inconclusive);
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(exit_code(r) == 2);

    // With a longer prefix the same sequence clears the tail threshold.
    std::vector<double> w;
    for (int k = 1; k <= 100; ++k)
        w.push_back(std::log(static_cast<double>(k)));
    CheckReport r2 = check_ems(Sequence::from_doubles(w));
    CHECK(r2.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
}

TEST_CASE("maxima check enforces the minimum length") {
    CHECK_THROWS_AS(check_ems(uniform_ems(5)), std::invalid_argument);
    CHECK_THROWS_AS(check_ers(uniform_ems(5)), std::invalid_argument);
}

TEST_CASE("extended precision certifies slow log growth at full depth") {
    std::vector<BigFloat> v;
    for (int k = 1; k <= 25; ++k)
        v.push_back(sqrt(log(BigFloat(k))));
    CheckReport r = check_ems(Sequence::from_bigfloats(v));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.truncation.used == 25);
    CHECK(r.diagnostics[cond::alternating]["noise_limited"] == false);

    // The same data in doubles hits the cancellation wall before full depth.
    std::vector<double> vd;
    for (int k = 1; k <= 25; ++k)
        vd.push_back(std::sqrt(std::log(static_cast<double>(k))));
    CheckReport rf = check_ems(Sequence::from_doubles(vd));
    CHECK(rf.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(rf.truncation.used < 25);
    CHECK(rf.diagnostics[cond::alternating]["noise_limited"] == true);
}

TEST_CASE("ranges check accepts exponential and bernoulli ranges") {
    CheckReport r = check_ers(exponential_ranges(40));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Pass);
    CHECK(r.verdicts.at(cond::sublinear) == Verdict::PassHeuristic);
    CHECK(r.verdicts.at(cond::self_dual) == Verdict::Pass);
    CHECK(exit_code(r) == 0);

    // Same data as doubles: the identity is certified within noise bands.
    std::vector<double> v;
    for (int k = 1; k <= 40; ++k)
        v.push_back(special::harmonic(k - 1));
    CheckReport rf = check_ers(Sequence::from_doubles(v));
    CHECK(rf.verdicts.at(cond::self_dual) == Verdict::Pass);
    CHECK(exit_code(rf) == 0);

    CheckReport rb = check_ers(bernoulli_ranges(Rational(1, 3), 40));
    CHECK(exit_code(rb) == 0);
}

TEST_CASE("ranges check rejects a nonzero first entry") {
    std::vector<Rational> v;
    for (int k = 1; k <= 20; ++k)
        v.push_back(special::harmonic_exact(k - 1) + Rational(1, 10));
    CheckReport r = check_ers(Sequence::from_rationals(std::move(v)));
    CHECK(r.verdicts.at(cond::self_dual) == Verdict::Fail);
    bool found = false;
    for (const Witness& w : r.witnesses)
        if (w.condition == cond::self_dual && w.k == 1) {
            found = true;
            CHECK(w.value == doctest::Approx(0.2));
        }
    CHECK(found);
    CHECK(exit_code(r) == 1);
}

TEST_CASE("ranges check rejects the zero sequence on strict signs") {
    CheckReport r = check_ers(Sequence::from_doubles(std::vector<double>(12, 0.0)));
    CHECK(r.verdicts.at(cond::alternating) == Verdict::Fail);
    CHECK(exit_code(r) == 1);
}

TEST_CASE("half of a range sequence is exactly self-dual") {
    Sequence half = exponential_ranges(30).scaled(Rational(1, 2));
    CHECK(dual_sequence(half) == half);
}

TEST_CASE("sign condition matches the moment test through the gap sequence") {
    // For sequences with alternating differences, the gap sequence is a
    // Hausdorff moment sequence, and a square-growth sequence breaks both.
    for (const Sequence& s : {uniform_ems(30), harmonic_ems(30), linear_growth(30)}) {
        CheckReport ems = check_ems(s);
        CheckReport h = check_hausdorff(kadane_moments(s));
        CHECK(ems.verdicts.at(cond::alternating) == Verdict::Pass);
        CHECK(h.verdicts.at(cond::completely_monotone) == Verdict::Pass);
    }
    std::vector<Rational> sq;
    for (int k = 1; k <= 20; ++k)
        sq.emplace_back(k * k);
    Sequence s = Sequence::from_rationals(std::move(sq));
    CHECK(check_ems(s).verdicts.at(cond::alternating) == Verdict::Fail);
    CHECK(check_hausdorff(kadane_moments(s)).verdicts.at(cond::completely_monotone) ==
          Verdict::Fail);
}

TEST_CASE("depth override truncates the sign scan") {
    CheckConfig cfg;
    cfg.max_depth = 12;
    CheckReport r = check_ems(uniform_ems(50), cfg);
    CHECK(r.truncation.requested == 12);
    CHECK(r.truncation.used == 12);
}
