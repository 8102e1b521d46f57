#include <stdexcept>
#include <cmath>
#include <vector>

#include "aoi/analytic.hpp"
#include "aoi/quadrature.hpp"
#include "aoi/rng.hpp"
#include "doctest.h"

namespace an = aoi::analytic;
using aoi::Distribution;

TEST_CASE("M/M/1/1 reference values") {
    CHECK(an::mm11_violation(1.0, 1.0, 5.0).value == doctest::Approx(0.082541).epsilon(1e-5));
    CHECK(an::mm11_violation(2.0, 1.0, 1.0).value == doctest::Approx(0.78087).epsilon(1e-5));
    CHECK(an::mm11_violation(1.0, 1.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(an::mm11_violation(0.5, 2.0, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(an::mm11_expected_aoi(1.0, 1.0).value == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(an::mm11_violation(1.0, 1.0, 5.0).method == an::Method::closed_form);
    CHECK_THROWS_AS(an::mm11_violation(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(an::mm11_violation(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("M/M/1/1 is continuous across the equal-rate branches") {
    for (double d : {0.0, 0.5, 1.0, 3.0, 5.0, 12.0}) {
        const double at = an::mm11_violation(1.0, 1.0, d).value;
        for (double delta : {1e-12, 1e-9, 1e-7, 1e-5, 1e-4, 2e-4}) {
            CAPTURE(d);
            CAPTURE(delta);
            const double up = an::mm11_violation(1.0 + delta, 1.0, d).value;
            const double down = an::mm11_violation(1.0 - delta, 1.0, d).value;
            CHECK(std::abs(up - at) <= 10.0 * delta + 1e-12);
            CHECK(std::abs(down - at) <= 10.0 * delta + 1e-12);
        }
    }
}

TEST_CASE("M/M/1/1 is non-increasing in d and tends to zero-wait for large lambda") {
    for (double lambda : {0.3, 1.0, 4.0}) {
        double prev = 1.0;
        for (double d = 0.0; d <= 15.0; d += 0.1) {
            const double p = an::mm11_violation(lambda, 1.0, d).value;
            REQUIRE(p <= prev + 1e-15);
            prev = p;
        }
    }
    for (double d : {0.0, 1.0, 3.0, 5.0}) {
        CHECK(std::abs(an::mm11_violation(1e6, 1.0, d).value - an::zero_wait_exp_violation(1.0, d).value) <= 1e-5);
    }
}

TEST_CASE("mean age equals the integrated violation probability") {
    for (auto [lambda, mu] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.0}, {1.0, 3.0}}) {
        const auto r = aoi::quad::integrate_to_infinity(
            [&](double d) { return an::mm11_violation(lambda, mu, d).value; }, 0.0, 1.0);
        CHECK(std::abs(r.value - an::mm11_expected_aoi(lambda, mu).value) <= 1e-4);
    }
    const auto zw = aoi::quad::integrate_to_infinity(
        [](double d) { return an::zero_wait_exp_violation(2.0, d).value; }, 0.0, 1.0);
    CHECK(std::abs(zw.value - 1.0) <= 1e-4);
}

TEST_CASE("D/M/1/1 reference values") {
    CHECK(an::dm11_violation(1.0, 1.0, 2.0).value == doctest::Approx(0.429327169).epsilon(1e-8));
    CHECK(an::dm11_violation(0.5, 1.0, 2.0).value == doctest::Approx(0.50915782).epsilon(1e-7));
    CHECK(an::dm11_violation(0.5, 1.0, 5.0).value == doctest::Approx(0.05262566).epsilon(1e-6));
    CHECK(an::dm11_violation(1.0, 1.0, 5.0).value == doctest::Approx(0.04333043).epsilon(1e-6));
    CHECK(an::dm11_violation(0.4, 1.0, 5.0).value == doctest::Approx(0.0620677).epsilon(1e-5));
    CHECK(an::dm11_violation(0.4, 1.0, 10.0).value == doctest::Approx(0.000791018).epsilon(1e-5));
    CHECK(an::dm11_departure_rate(0.4, 1.0) == doctest::Approx(0.36717).epsilon(1e-5));
}

TEST_CASE("D/M/1/1 existence and continuity in d") {
    CHECK_THROWS_AS(an::dm11_violation(0.5, 1.0, 1.9), an::ExistenceError);
    CHECK_THROWS_AS(an::dm11_violation(1.0, 1.0, 0.0), an::ExistenceError);
    CHECK_NOTHROW(an::dm11_violation(0.5, 1.0, 2.0));
    CHECK_NOTHROW(an::dm11_violation(1.0 / 3.0, 1.0, 3.0));
    for (double k : {1.0, 2.0, 3.0, 7.0}) {
        const double at = an::dm11_violation(1.0, 1.0, k).value;
        CHECK(std::abs(an::dm11_violation(1.0, 1.0, k + 1e-9).value - at) <= 1e-8);
        CHECK(std::abs(an::dm11_violation(1.0, 1.0, k - 1e-9 * (k > 1.0)).value - at) <= 1e-8);
    }
    double prev = 1.0;
    for (double d = 1.0; d <= 12.0; d += 0.05) {
        const double p = an::dm11_violation(1.0, 1.0, d).value;
        REQUIRE(p <= prev + 1e-14);
        prev = p;
    }
}

TEST_CASE("zero-wait exponential") {
    CHECK(an::zero_wait_exp_violation(1.0, 1.0).value == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));
    CHECK(an::zero_wait_exp_violation(2.0, 5.0).value == doctest::Approx(4.994e-4).epsilon(1e-3));
    CHECK(an::zero_wait_exp_violation(1.0, 0.0).value == 1.0);
}

TEST_CASE("ceil mean") {
    CHECK(an::ceil_mean_exponential(1.0, 1.0) == doctest::Approx(1.58198).epsilon(1e-5));
    CHECK(an::ceil_mean_exponential(2.0, 1.0) == doctest::Approx(2.5415).epsilon(1e-4));
    for (double lambda : {0.3, 1.0, 2.0, 5.0}) {
        CHECK(an::ceil_mean(lambda, Distribution::exponential(1.0)) ==
              doctest::Approx(an::ceil_mean_exponential(lambda, 1.0)).epsilon(1e-12));
    }
    CHECK(an::ceil_mean(1.0, Distribution::deterministic(2.5)) == doctest::Approx(3.0));
    CHECK(an::ceil_mean(1.0, Distribution::deterministic(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("ceil mean against Monte Carlo for non-exponential services") {
    for (const auto& service : {Distribution::shifted_exponential_with_mean(0.11, 1.0),
                                Distribution::erlang_with_mean(3, 1.3)}) {
        const double lambda = 1.7;
        aoi::RngStream rng(99);
        const int n = 1'000'000;
        double s = 0.0, ss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double c = std::ceil(lambda * service.sample(rng));
            s += c;
            ss += c * c;
        }
        const double mean = s / n;
        const double se = std::sqrt((ss / n - mean * mean) / n);
        CHECK(std::abs(an::ceil_mean(lambda, service) - mean) <= 4.0 * se);
    }
}

TEST_CASE("quadrature route reproduces the closed forms") {
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (double d : {0.0, 1.0, 3.0, 5.0}) {
            CAPTURE(lambda);
            CAPTURE(d);
            const auto q = an::general_violation(lambda, Distribution::exponential(1.0), an::IdleModel::exponential, d);
            CHECK(q.method == an::Method::quadrature);
            CHECK(std::abs(q.value - an::mm11_violation(lambda, 1.0, d).value) <= 1e-6);
        }
    }
    for (double lambda : {0.4, 0.5, 1.0}) {
        for (double d : {2.5, 5.0, 10.0}) {
            CAPTURE(lambda);
            CAPTURE(d);
            const auto q =
                an::general_violation(lambda, Distribution::exponential(1.0), an::IdleModel::ceil_slotted, d);
            CHECK(std::abs(q.value - an::dm11_violation(lambda, 1.0, d).value) <= 1e-6);
        }
    }
    CHECK_THROWS_AS(
        an::general_violation(0.5, Distribution::exponential(1.0), an::IdleModel::ceil_slotted, 1.0),
        an::ExistenceError);
}

TEST_CASE("departure rates") {
    CHECK(an::gg11_departure_rate(1.0, Distribution::exponential(1.0), an::IdleModel::exponential) ==
          doctest::Approx(0.5));
    CHECK(an::gg11_departure_rate(0.4, Distribution::exponential(1.0), an::IdleModel::ceil_slotted) ==
          doctest::Approx(an::dm11_departure_rate(0.4, 1.0)).epsilon(1e-12));
}
