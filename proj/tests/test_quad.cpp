#include <doctest.h>

#include "emax/quad.hpp"

#include <cmath>

using namespace emax;

TEST_CASE("smooth integrand") {
    double v = quad::integrate_plain([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::fabs(v - 1.7182818284590452354) < 1e-13);
}

TEST_CASE("affine interval") {
    double v = quad::integrate_plain([](double x) { return x * x; }, 2.0, 6.0);
    CHECK(std::fabs(v - (216.0 - 8.0) / 3.0) < 1e-10);
}

TEST_CASE("left endpoint singularity") {
    double v = quad::integrate([](const quad::Node& n) { return 1.0 / std::sqrt(n.from_lo); },
                               0.0, 1.0);
    CHECK(std::fabs(v - 2.0) < 1e-9);

    double lg = quad::integrate([](const quad::Node& n) { return std::log(n.from_lo); }, 0.0, 1.0);
    CHECK(std::fabs(lg + 1.0) < 1e-10);
}

TEST_CASE("right endpoint singularity uses from_hi") {
    double v = quad::integrate([](const quad::Node& n) { return std::pow(n.from_hi, -0.75); },
                               0.0, 1.0);
    CHECK(std::fabs(v - 4.0) / 4.0 < 1e-9);
}

TEST_CASE("both endpoints singular") {
    auto f = [](const quad::Node& n) {
        return std::pow(n.from_lo, -0.3) * std::pow(n.from_hi, -0.3);
    };
    double v = quad::integrate(f, 0.0, 1.0);
    CHECK(std::fabs(v - 1.8990379336740188963) < 1e-8);
}

TEST_CASE("sharply peaked polynomial") {
    double v = quad::integrate_plain([](double x) { return 50.0 * std::pow(x, 49.0); }, 0.0, 1.0);
    CHECK(std::fabs(v - 1.0) < 1e-10);
}

TEST_CASE("non-integrable pole is reported, not returned") {
    CHECK_THROWS_AS(
        quad::integrate([](const quad::Node& n) { return 1.0 / n.from_lo; }, 0.0, 1.0),
        quad::ConvergenceError);
    quad::Outcome out =
        quad::try_integrate([](const quad::Node& n) { return 1.0 / n.from_lo; }, 0.0, 1.0);
    CHECK_FALSE(out.converged);
}

TEST_CASE("node offsets partition the interval") {
    double worst = 0.0;
    quad::integrate(
        [&worst](const quad::Node& n) {
            worst = std::max(worst, std::fabs(n.from_lo + n.from_hi - 3.0));
            return std::cos(n.x);
        },
        1.0, 4.0);
    CHECK(worst < 1e-12);
}

TEST_CASE("degenerate and invalid intervals") {
    CHECK(quad::integrate_plain([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(quad::integrate_plain([](double) { return 1.0; }, 1.0, 0.0),
                    std::invalid_argument);
}
