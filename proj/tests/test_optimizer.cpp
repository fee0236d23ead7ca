#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "entroscope/optimizer.hpp"

using namespace entroscope;

TEST_CASE("quadratic bowl with the minimum inside the box") {
    const ObjectiveFn f = [](std::span<const double> x) {
        return (x[0] - 0.3) * (x[0] - 0.3) + 2.0 * (x[1] + 0.1) * (x[1] + 0.1);
    };
    const std::vector<double> lo{-1.0, -1.0}, hi{1.0, 1.0}, x0{0.9, 0.9};
    const auto r = minimize_box(f, lo, hi, x0);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(0.3).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(-0.1).epsilon(1e-4));
    CHECK(r.fx < 1e-8);
}

TEST_CASE("minimum outside the box lands on the boundary") {
    const ObjectiveFn f = [](std::span<const double> x) {
        return (x[0] - 5.0) * (x[0] - 5.0) + (x[1] - 5.0) * (x[1] - 5.0);
    };
    const std::vector<double> lo{0.0, 0.0}, hi{1.0, 2.0}, x0{0.5, 0.5};
    const auto r = minimize_box(f, lo, hi, x0);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("rosenbrock valley inside a box") {
    const ObjectiveFn f = [](std::span<const double> x) {
        const double a = 1.0 - x[0];
        const double b = x[1] - x[0] * x[0];
        return a * a + 100.0 * b * b;
    };
    const std::vector<double> lo{-2.0, -2.0}, hi{2.0, 2.0};
    MinimizeOptions opts;
    opts.max_iterations = 2000;
    for (const auto& x0 : {std::vector<double>{-1.5, 1.5}, std::vector<double>{0.0, 0.0},
                           std::vector<double>{1.9, -1.9}}) {
        const auto r = minimize_box(f, lo, hi, x0, opts);
        CHECK(r.fx < 1e-6);
        CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-2));
    }
}

TEST_CASE("fixed coordinates stay put") {
    const ObjectiveFn f = [](std::span<const double> x) {
        return (x[0] - 2.0) * (x[0] - 2.0) + x[1] * x[1];
    };
    const std::vector<double> lo{0.0, 3.0}, hi{4.0, 3.0}, x0{1.0, 3.0};
    const auto r = minimize_box(f, lo, hi, x0);
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(r.x[1] == 3.0);
}

TEST_CASE("size mismatches are rejected") {
    const ObjectiveFn f = [](std::span<const double> x) { return x[0] * x[0]; };
    CHECK_THROWS_AS(minimize_box(f, std::vector<double>{0.0}, std::vector<double>{1.0, 2.0},
                                 std::vector<double>{0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimize_box(f, std::vector<double>{1.0}, std::vector<double>{0.0},
                                 std::vector<double>{0.5}),
                    std::invalid_argument);
}

TEST_CASE("evaluation counts are reported") {
    int calls = 0;
    const ObjectiveFn f = [&](std::span<const double> x) {
        ++calls;
        return x[0] * x[0];
    };
    const auto r = minimize_box(f, std::vector<double>{-1.0}, std::vector<double>{1.0},
                                std::vector<double>{0.7});
    CHECK(r.evaluations == calls);
    CHECK(r.fx < 1e-8);
}
