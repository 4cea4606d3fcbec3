#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "core/fitting.hpp"
#include "oracles.hpp"

using namespace strmat;
using namespace strmat::testing;

TEST_CASE("maximum likelihood recovers the exponent") {
    auto s = sample_gamma_surmise(3.0, 1, 100000, 42);
    auto fit = fit_gamma(s, 1, 3.0);
    CHECK(fit.gamma == doctest::Approx(3.0).epsilon(0.02));
    CHECK(std::abs(fit.gamma - 3.0) < 0.05);
    CHECK(fit.stderr_gamma > 0.0);
    CHECK(fit.stderr_gamma < 0.05);
    CHECK_FALSE(fit.at_bound);
    CHECK(fit.samples == 100000);
    CHECK(std::isfinite(fit.log_likelihood));
}

TEST_CASE("fit works across the exponent ladder") {
    for (double g : {0.0, 1.0, 2.0, 5.0, 9.0}) {
        for (std::size_t n : {std::size_t{0}, std::size_t{2}}) {
            auto s = sample_gamma_surmise(g, n, 40000, 1000 + static_cast<std::uint64_t>(g));
            auto fit = fit_gamma(s, n, g);
            // five error bars plus a floor; the bars themselves are validated
            // by the coverage test below
            CHECK(std::abs(fit.gamma - g) < 5.0 * fit.stderr_gamma + 0.02);
        }
    }
}

TEST_CASE("error bars have near-nominal coverage") {
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        auto s = sample_gamma_surmise(2.0, 0, 2000, 7000 + rep);
        auto fit = fit_gamma(s, 0, 2.0);
        if (std::abs(fit.gamma - 2.0) <= 2.0 * fit.stderr_gamma) ++covered;
    }
    // nominal 95%; allow generous slack for the finite replica count
    CHECK(covered >= 88);
}

TEST_CASE("fit is deterministic") {
    auto s = sample_gamma_surmise(4.0, 1, 5000, 99);
    auto a = fit_gamma(s, 1, 4.0);
    auto b = fit_gamma(s, 1, 4.0);
    CHECK(a.gamma == b.gamma);
    CHECK(a.stderr_gamma == b.stderr_gamma);
    CHECK(a.log_likelihood == b.log_likelihood);
}

TEST_CASE("moment start point matches an explicit one") {
    auto s = sample_gamma_surmise(2.5, 1, 30000, 5);
    auto direct = fit_gamma(s, 1, 2.5);
    auto moment = fit_gamma(s, 1, std::numeric_limits<double>::quiet_NaN());
    CHECK(moment.gamma == doctest::Approx(direct.gamma).epsilon(1e-6));
    CHECK_FALSE(moment.at_bound);
}

TEST_CASE("a wildly wrong start point is reported as a bound hit") {
    auto s = sample_gamma_surmise(0.0, 0, 5000, 13);
    auto fit = fit_gamma(s, 0, 20.0);
    CHECK(fit.at_bound);
}

TEST_CASE("too few samples throw") {
    std::vector<double> s{1.0, 2.0, 0.5};
    CHECK_THROWS_AS(fit_gamma(s, 0, 1.0), std::invalid_argument);
}

TEST_CASE("least squares on an exact line") {
    std::vector<double> x{0, 1, 2, 3, 4, 5};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v + 1.0);
    auto lf = linear_fit(x, y);
    CHECK(lf.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lf.intercept == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lf.stderr_slope < 1e-10);
    CHECK(lf.stderr_intercept < 1e-10);
}

TEST_CASE("least squares rejects degenerate inputs") {
    std::vector<double> two_x{0, 1}, two_y{1, 2};
    CHECK_THROWS_AS(linear_fit(two_x, two_y), std::invalid_argument);
    std::vector<double> const_x{1, 1, 1}, y3{1, 2, 3};
    CHECK_THROWS_AS(linear_fit(const_x, y3), std::invalid_argument);
}
