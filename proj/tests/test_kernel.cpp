#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ohara/kernel.hpp"

using namespace ohara;

TEST_CASE("power-law phi evaluation") {
    REQUIRE(Kernel::power(2.0).phi(3.0) == Catch::Approx(9.0));
    REQUIRE(Kernel::power(2.5).phi(1.0) == Catch::Approx(1.0));
    REQUIRE(Kernel::power(3.0, true).phi(2.0) == Catch::Approx(8.0));
    REQUIRE_THROWS(Kernel::power(2.0).phi(0.0));
    REQUIRE_THROWS(Kernel::power(2.0).phi(-1.0));
}

TEST_CASE("alpha range is enforced unless overridden") {
    REQUIRE_THROWS(Kernel::power(1.5));
    REQUIRE_THROWS(Kernel::power(3.0));
    REQUIRE_NOTHROW(Kernel::power(1.5, true));
    REQUIRE_NOTHROW(Kernel::power(2.0));
    REQUIRE_NOTHROW(Kernel::power(2.999));
}

TEST_CASE("lambda closed form") {
    REQUIRE(Kernel::power(2.0).lambda(2.0) == Catch::Approx(-0.25).epsilon(1e-14));
    REQUIRE(Kernel::power(2.0).lambda(1.0) == Catch::Approx(-1.0).epsilon(1e-14));
    REQUIRE(Kernel::power(2.5).lambda(1.0) == Catch::Approx(-2.0 / 3.0).epsilon(1e-14));
    // Lambda is always negative
    for (double t : {1e-2, 0.1, 1.0, 10.0, 100.0})
        REQUIRE(Kernel::power(2.5).lambda(t) < 0.0);
}

TEST_CASE("numeric lambda path matches the closed form") {
    for (double alpha : {2.0, 2.25, 2.5, 2.9}) {
        const Kernel k = Kernel::power(alpha);
        for (double t : {1e-2, 0.1, 1.0, 10.0, 100.0}) {
            REQUIRE(k.lambda_numeric(t) == Catch::Approx(k.lambda(t)).epsilon(1e-9));
        }
    }
}

TEST_CASE("theta is the constant (alpha-2)/(2(alpha-1)) for power laws") {
    REQUIRE(Kernel::power(2.0).theta(0.37) == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(Kernel::power(3.0, true).theta(5.0) == Catch::Approx(0.25).epsilon(1e-12));
    REQUIRE(Kernel::power(2.5).theta(1.0) == Catch::Approx(1.0 / 6.0).epsilon(1e-12));
    for (double alpha : {2.0, 2.3, 2.5, 2.9}) {
        const Kernel k = Kernel::power(alpha);
        const double c = (alpha - 2.0) / (2.0 * (alpha - 1.0));
        REQUIRE(k.theta_power_constant() == Catch::Approx(c).margin(1e-14));
        for (double t : {1e-3, 0.1, 1.0, 42.0})
            REQUIRE(k.theta(t) == Catch::Approx(c).margin(1e-12));
        REQUIRE(c >= 0.0);
        REQUIRE(c < 0.5);
    }
}

TEST_CASE("tail constant closed form") {
    REQUIRE(Kernel::power(2.0).tail_constant(2.0 * kPi) == Catch::Approx(4.0).epsilon(1e-14));
    REQUIRE(Kernel::power(2.0).tail_constant(17.3) == Catch::Approx(4.0).epsilon(1e-14));
    REQUIRE(Kernel::power(3.0, true).tail_constant(2.0) == Catch::Approx(2.0).epsilon(1e-14));
    const double L = 2.0 * kPi;
    const double expect = std::pow(2.0, 2.5) / (1.5 * std::sqrt(L));
    REQUIRE(Kernel::power(2.5).tail_constant(L) == Catch::Approx(expect).epsilon(1e-9));
    // generic formula at several alphas
    for (double alpha : {2.0, 2.5, 2.9})
        REQUIRE(Kernel::power(alpha).tail_constant(L) ==
                Catch::Approx(std::pow(2.0, alpha) / ((alpha - 1.0) * std::pow(L, alpha - 2.0)))
                    .epsilon(1e-9));
}

TEST_CASE("alpha=2 coefficient identity: 1/phi - lambda = 2/t^2") {
    const Kernel k = Kernel::power(2.0);
    for (double t = 1e-2; t <= 1e2; t *= 1.37) {
        const double lhs = 1.0 / k.phi(t) - k.lambda(t);
        REQUIRE(lhs == Catch::Approx(2.0 / (t * t)).epsilon(1e-12));
    }
}

TEST_CASE("assumption checker verdicts") {
    const double L = 2.0 * kPi;
    SECTION("alpha = 2.5 passes everything checkable") {
        const auto rep = check_assumptions(Kernel::power(2.5), L);
        REQUIRE(rep.a1.passed);
        REQUIRE(rep.a2.passed);
        REQUIRE(rep.a5a.passed);
        REQUIRE(rep.a5b.passed);
        REQUIRE_FALSE(rep.a3.checked);
        REQUIRE_FALSE(rep.a4.checked);
        REQUIRE(rep.checked_all_pass());
    }
    SECTION("alpha = 1.5 fails the pointwise lower bound") {
        const auto rep = check_assumptions(Kernel::power(1.5, true), L);
        REQUIRE_FALSE(rep.a5b.passed);
    }
    SECTION("alpha = 0.5 fails the integrable-tail requirement") {
        const auto rep = check_assumptions(Kernel::power(0.5, true), L);
        REQUIRE_FALSE(rep.a2.passed);
    }
    SECTION("verdict is monotone in alpha") {
        for (double alpha : {2.0, 2.25, 2.5, 2.75, 2.9})
            REQUIRE(check_assumptions(Kernel::power(alpha), L).a5b.passed);
        for (double alpha : {1.2, 1.5, 1.8, 1.95})
            REQUIRE_FALSE(check_assumptions(Kernel::power(alpha, true), L).a5b.passed);
    }
}

TEST_CASE("tabulated kernel reproduces a power law") {
    std::vector<double> t, phi;
    for (double x = 1e-4; x <= 1e4; x *= 1.05) {
        t.push_back(x);
        phi.push_back(std::pow(x, 2.5));
    }
    const Kernel k = Kernel::tabulated(t, phi, 2.5);
    const Kernel ref = Kernel::power(2.5);
    for (double x : {0.01, 0.3, 1.0, 7.0, 100.0}) {
        REQUIRE(k.phi(x) == Catch::Approx(ref.phi(x)).epsilon(1e-10));
        REQUIRE(k.lambda(x) == Catch::Approx(ref.lambda(x)).epsilon(1e-6));
        REQUIRE(k.theta(x) == Catch::Approx(1.0 / 6.0).margin(1e-6));
    }
    REQUIRE(k.tail_constant(2.0 * kPi) ==
            Catch::Approx(ref.tail_constant(2.0 * kPi)).epsilon(1e-6));
}
