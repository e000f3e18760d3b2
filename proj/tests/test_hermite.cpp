#include <cmath>
#include <numbers>

#include "diracgl/errors.hpp"
#include "diracgl/hermite.hpp"
#include "doctest.h"

using namespace diracgl;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("hermite_poly low orders") {
    CHECK(hermite_poly(0, 3.7) == 1.0);
    CHECK(hermite_poly(1, 0.25) == 0.5);
    CHECK(hermite_poly(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));  // 4x^2 - 2
    CHECK(hermite_poly(3, 0.0) == 0.0);                                  // odd orders vanish at 0
    CHECK(hermite_poly(5, 0.0) == 0.0);
    CHECK_THROWS_AS((void)hermite_poly(61, 1.0), order_too_large_error);
    CHECK_THROWS_AS((void)hermite_poly(-1, 1.0), error);
    CHECK(std::isfinite(hermite_poly(60, 10.0)));
}

TEST_CASE("phi values") {
    CHECK(phi(0, 0.0) == doctest::Approx(0.75112554446494248).epsilon(1e-15));
    CHECK(phi(5, 0.0) == 0.0);
    // oracle: C_1 e^{-1/2} * 2 in high precision
    CHECK(phi(1, 1.0) == doctest::Approx(0.64428836511347518).epsilon(1e-14));
    // underflow region is exactly zero
    CHECK(phi(0, 45.0) == 0.0);
    CHECK(phi(12, 45.0) == 0.0);
}

TEST_CASE("phi_derivative") {
    CHECK(phi_derivative(0, 0.0) == 0.0);
    CHECK(phi_derivative(1, 0.0) == doctest::Approx(1.0622519320271969).epsilon(1e-14));
    // central finite difference oracle, step 1e-5
    const double h = 1e-5;
    const double fd = (phi(4, 2.0 + h) - phi(4, 2.0 - h)) / (2.0 * h);
    CHECK(std::fabs(phi_derivative(4, 2.0) - fd) < 1e-8);
}

TEST_CASE("phi_batch consistency with the scalar path") {
    const auto single = phi_batch(0, 1.0);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == phi(0, 1.0));

    const auto origin = phi_batch(3, 0.0);
    CHECK(origin[1] == 0.0);
    CHECK(origin[3] == 0.0);

    const auto batch = phi_batch(30, 2.5);
    for (int k = 0; k <= 30; ++k) CHECK(batch[static_cast<std::size_t>(k)] == phi(k, 2.5));

    for (int n = 0; n <= 20; ++n) {
        const auto [lower, upper] = phi_pair(n, 1.25);
        CHECK(upper == phi(n, 1.25));
        if (n > 0) CHECK(lower == phi(n - 1, 1.25));
    }
}

TEST_CASE("orthonormal function bound") {
    for (int n : {0, 1, 2, 5, 10, 20, 40, 60, 120}) {
        for (double x = -9.0; x <= 9.0; x += 0.0625) CHECK(std::fabs(phi(n, x)) <= 1.1);
        for (double x : {10.0, 14.0, 20.0, 37.0, 40.0}) CHECK(std::fabs(phi(n, x)) <= 1.1);
    }
}

TEST_CASE("ladder relations on a scan grid") {
    // phi_n' + x phi_n = sqrt(2n) phi_{n-1} and -phi_{n-1}' + x phi_{n-1} = sqrt(2n) phi_n
    for (int n = 1; n <= 30; ++n) {
        for (double x = -6.0; x <= 6.0; x += 0.125) {
            const double up = phi_derivative(n, x) + x * phi(n, x) -
                              std::sqrt(2.0 * n) * phi(n - 1, x);
            const double down = -phi_derivative(n - 1, x) + x * phi(n - 1, x) -
                                std::sqrt(2.0 * n) * phi(n, x);
            CHECK(std::fabs(up) < 1e-10);
            CHECK(std::fabs(down) < 1e-10);
        }
    }
}

TEST_CASE("oscillator equation residual by finite differences") {
    // -phi'' + x^2 phi = (2n+1) phi, second derivative by a 5-point stencil
    const double h = 1.0 / 256.0;
    for (int n = 0; n <= 20; ++n) {
        for (double x = -5.0; x <= 5.0; x += 0.25) {
            const double second = (-phi(n, x + 2 * h) + 16.0 * phi(n, x + h) - 30.0 * phi(n, x) +
                                   16.0 * phi(n, x - h) - phi(n, x - 2 * h)) /
                                  (12.0 * h * h);
            const double residual = -second + x * x * phi(n, x) - (2.0 * n + 1.0) * phi(n, x);
            CHECK(std::fabs(residual) < 1e-6);
        }
    }
}

TEST_CASE("hermite_poly and phi agree after weighting") {
    for (int n = 0; n <= 25; ++n) {
        const double cn = 1.0 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(kPi));
        for (double x = -5.0; x <= 5.0; x += 0.5) {
            const double weighted = cn * std::exp(-0.5 * x * x) * hermite_poly(n, x);
            const double direct = phi(n, x);
            const double scale = std::fmax(std::fabs(direct), 1e-30);
            if (direct == 0.0 && weighted == 0.0) continue;
            CHECK(std::fabs(weighted - direct) / scale < 1e-10);
        }
    }
}
