#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ohara/energy.hpp"
#include "ohara/mobius.hpp"

using namespace ohara;

TEST_CASE("inversion point formula") {
    MobiusMap map;
    map.push(Inversion{{0, 0, 0}, 1.0});
    const auto y = map.apply_point(std::vector<double>{2, 0, 0});
    REQUIRE(y[0] == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(y[1] == 0.0);
    REQUIRE(y[2] == 0.0);
}

TEST_CASE("inversion is an involution") {
    MobiusMap map;
    map.push(Inversion{{0.3, -1.2, 0.7}, 1.7});
    map.push(Inversion{{0.3, -1.2, 0.7}, 1.7});
    std::mt19937 rng(11);
    std::normal_distribution<double> g;
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x{g(rng) + 3.0, g(rng), g(rng)};
        const auto y = map.apply_point(x);
        for (int d = 0; d < 3; ++d) REQUIRE(y[d] == Catch::Approx(x[d]).margin(1e-12));
    }
}

TEST_CASE("points on the inversion sphere are fixed") {
    MobiusMap map;
    map.push(Inversion{{1, 0, 0}, 2.0});
    const std::vector<double> x{3, 0, 0}; // distance 2 from center
    const auto y = map.apply_point(x);
    for (int d = 0; d < 3; ++d) REQUIRE(y[d] == Catch::Approx(x[d]).margin(1e-14));
}

TEST_CASE("map validation") {
    REQUIRE_THROWS(MobiusMap().push(Inversion{{0, 0, 0}, 0.0}));
    REQUIRE_THROWS(MobiusMap().push(Scaling{-2.0}));
    Rotation r;
    r.dim = 3;
    r.matrix = {1, 0, 0, 0, 1, 0.5, 0, 0, 1}; // not orthogonal
    REQUIRE_THROWS(MobiusMap().push(r));
}

TEST_CASE("identity map reproduces the curve") {
    const Curve c = make_named_curve("circle", {}, 128);
    const Curve out = transform_curve(MobiusMap(), c, 128);
    for (std::size_t k = 0; k < c.pos.size(); ++k)
        REQUIRE(out.pos[k] == Catch::Approx(c.pos[k]).margin(1e-10));
}

TEST_CASE("scaling the unit circle") {
    const Curve c = make_named_curve("circle", {}, 128);
    MobiusMap map;
    map.push(Scaling{2.0});
    const Curve out = transform_curve(map, c, 128);
    REQUIRE(out.length == Catch::Approx(4.0 * kPi).epsilon(1e-12));
    for (int i = 0; i < out.n; ++i)
        REQUIRE(norm(out.point(i)) == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("inversion maps a circle avoiding the center to a round circle") {
    const Curve c = make_named_curve("circle", {}, 256);
    MobiusMap map;
    map.push(Inversion{{3, 0, 0}, 1.0});
    const Curve out = transform_curve(map, c, 256);
    // image lies in the xy-plane; fit a circle (least squares: algebraic fit
    // x^2+y^2 + D x + E y + F = 0 is linear, then check the radial residual)
    double sx = 0, sy = 0;
    for (int i = 0; i < out.n; ++i) {
        sx += out.point(i)[0];
        sy += out.point(i)[1];
    }
    // solve the 3x3 normal equations for (D, E, F)
    double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0, b1 = 0, b2 = 0, b3 = 0;
    for (int i = 0; i < out.n; ++i) {
        const double x = out.point(i)[0], y = out.point(i)[1];
        const double z = x * x + y * y;
        a11 += x * x; a12 += x * y; a13 += x;
        a22 += y * y; a23 += y; a33 += 1.0;
        b1 -= z * x; b2 -= z * y; b3 -= z;
    }
    // Cramer's rule
    const double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                       a13 * (a12 * a23 - a22 * a13);
    const double D = (b1 * (a22 * a33 - a23 * a23) - a12 * (b2 * a33 - a23 * b3) +
                      a13 * (b2 * a23 - a22 * b3)) / det;
    const double E = (a11 * (b2 * a33 - a23 * b3) - b1 * (a12 * a33 - a23 * a13) +
                      a13 * (a12 * b3 - b2 * a13)) / det;
    const double F = (a11 * (a22 * b3 - b2 * a23) - a12 * (a12 * b3 - b2 * a13) +
                      b1 * (a12 * a23 - a22 * a13)) / det;
    const double cx = -D / 2.0, cy = -E / 2.0;
    const double R = std::sqrt(cx * cx + cy * cy - F);
    for (int i = 0; i < out.n; ++i) {
        const double x = out.point(i)[0], y = out.point(i)[1];
        const double rad = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
        REQUIRE(std::abs(rad - R) <= 1e-8);
    }
}

TEST_CASE("inversion center too close to the curve is rejected") {
    const Curve c = make_named_curve("circle", {}, 128);
    MobiusMap map;
    map.push(Inversion{{1, 0, 0}, 1.0}); // center on the curve
    REQUIRE_THROWS(transform_curve(map, c, 128));
}

TEST_CASE("Moebius invariance of the alpha=2 energy under inversion") {
    CurveParams p;
    p.torus_R = 2.0;
    p.torus_r = 1.0;
    const Curve c = make_named_curve("trefoil", p, 512);
    const Kernel k = Kernel::power(2.0);
    const double before = energy_cosine(c, k, {}).total;
    MobiusMap map;
    map.push(Inversion{{5, 0, 0}, 1.0});
    const Curve out = transform_curve(map, c, 512);
    const double after = energy_cosine(out, k, {}).total;
    REQUIRE(std::abs(after - before) / std::abs(before) <= 1e-2);
}

TEST_CASE("scaling changes the alpha=2.5 energy by the predicted factor") {
    const Curve c = make_named_curve("circle", {}, 256);
    const Kernel k = Kernel::power(2.5);
    MobiusMap map;
    map.push(Scaling{2.0});
    const Curve out = transform_curve(map, c, 256);
    const double before = energy_cosine(c, k, {}).total;
    const double after = energy_cosine(out, k, {}).total;
    REQUIRE(after == Catch::Approx(std::pow(2.0, -0.5) * before).epsilon(1e-10));
    // the normalized energy is unchanged
    REQUIRE(std::pow(out.length, 0.5) * after ==
            Catch::Approx(std::pow(c.length, 0.5) * before).epsilon(1e-12));
}
