#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ohara/common.hpp"
#include "ohara/spectral.hpp"
#include "ohara/spline.hpp"

namespace ohara {

// Closed curve sampled uniformly in arc length: s_i = i L / N on R/LZ.
struct Curve {
    int dim = 3;
    int n = 0;
    double length = 0.0;
    std::vector<double> pos; // n x dim row-major
    std::vector<double> tan; // n x dim row-major, unit

    VecView point(int i) const { return VecView(pos.data() + static_cast<std::size_t>(i) * dim, dim); }
    VecView tangent(int i) const { return VecView(tan.data() + static_cast<std::size_t>(i) * dim, dim); }
    double grid_step() const { return length / n; }

    // Exact discrete similarity: positions and length scale, tangents unchanged.
    Curve scaled(double lambda) const {
        Curve c = *this;
        for (double& x : c.pos) x *= lambda;
        c.length *= lambda;
        return c;
    }
};

// Shorter-arc distance on R/LZ; always in [0, L/2].
inline double intrinsic_distance(double s1, double s2, double total_length) {
    if (!(total_length > 0.0)) throw std::invalid_argument("intrinsic_distance: L must be positive");
    double d = std::fmod(std::abs(s1 - s2), total_length);
    return std::min(d, total_length - d);
}

// min over distinct sample pairs of chord / intrinsic distance.
// 0 for curves with coincident distinct samples (non-embedded).
inline double bi_lipschitz_ratio(const Curve& c) {
    const double h = c.grid_step();
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.n; ++i) {
        for (int j = i + 1; j < c.n; ++j) {
            const int dg = std::min(j - i, c.n - (j - i));
            const double arc = dg * h;
            const double chord = dist(c.point(i), c.point(j));
            best = std::min(best, chord / arc);
        }
    }
    return c.n > 1 ? best : 0.0;
}

// Chord-consistency uses 120/N^2: a correctly arc-length-sampled curve has an
// analytic chord deficit of kappa_max^2 L^2 / (24 N^2), which reaches ~21/N^2
// on the stock trefoil and ~94/N^2 on its sphere-inversion images, while any
// genuine parametrization bug shows up as an O(1) relative deviation.
inline constexpr double kChordTolScale = 120.0;

inline void validate_curve(const Curve& c) {
    if (c.dim < 2) throw std::invalid_argument("curve: ambient dimension must be >= 2");
    if (c.n < 16 || c.n % 2 != 0) throw std::invalid_argument("curve: N must be even and >= 16");
    if (!(c.length > 0.0)) throw std::invalid_argument("curve: length must be positive");
    for (int i = 0; i < c.n; ++i) {
        if (std::abs(norm(c.tangent(i)) - 1.0) > 1e-12)
            throw std::invalid_argument("curve: tangent " + std::to_string(i) + " is not unit");
    }
    const double h = c.grid_step();
    const double tol = kChordTolScale / (static_cast<double>(c.n) * c.n);
    for (int i = 0; i < c.n; ++i) {
        const int j = (i + 1) % c.n;
        const double chord = dist(c.point(i), c.point(j));
        if (std::abs(chord - h) / h > tol)
            throw std::invalid_argument("curve: chord consistency violated at sample " +
                                        std::to_string(i));
    }
    if (!(bi_lipschitz_ratio(c) > 0.0))
        throw std::invalid_argument("curve: degenerate (bi-Lipschitz ratio is zero)");
}

namespace detail {

inline std::vector<double> normalized_tangents(const std::vector<double>& pos, int dim,
                                               double length) {
    std::vector<double> tan = spectral_derivative(pos, dim, length, 1);
    const std::size_t n = pos.size() / static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) s += tan[i * dim + d] * tan[i * dim + d];
        const double inv = 1.0 / std::sqrt(s);
        for (int d = 0; d < dim; ++d) tan[i * dim + d] *= inv;
    }
    return tan;
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 8> kGaussX = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussW = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

inline double spline_speed(const PeriodicSpline& sp, int dim, double u) {
    std::vector<double> val(dim), der(dim);
    sp.eval(u, val.data(), der.data());
    return norm(VecView(der));
}

inline double segment_arc(const PeriodicSpline& sp, int dim, double a, double b) {
    const double c = 0.5 * (a + b), r = 0.5 * (b - a);
    double acc = 0.0;
    for (int q = 0; q < 8; ++q) acc += kGaussW[q] * spline_speed(sp, dim, c + r * kGaussX[q]);
    return acc * r;
}

} // namespace detail

// Resample a closed curve, given ordered samples, uniformly in arc length.
// samples is M x dim row-major; the first point is NOT repeated at the end.
inline Curve reparametrize_by_arclength(const std::vector<double>& samples, int dim, int n_out) {
    const std::size_t m = samples.size() / static_cast<std::size_t>(dim);
    if (m < 16) throw std::invalid_argument("reparametrize: need at least 16 samples");
    if (n_out < 16 || n_out % 2 != 0)
        throw std::invalid_argument("reparametrize: output N must be even and >= 16");

    // cumulative chord length as the interim parameter
    std::vector<double> u(m + 1);
    u[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        const double d = dist(VecView(samples.data() + i * dim, dim),
                              VecView(samples.data() + j * dim, dim));
        if (!(d > 0.0))
            throw std::invalid_argument("reparametrize: duplicate consecutive samples");
        u[i + 1] = u[i] + d;
    }
    const double period = u[m];

    PeriodicSpline sp(std::vector<double>(u.begin(), u.end() - 1), samples, dim, period);

    // arc length of the spline, accumulated per knot segment
    std::vector<double> arc(m + 1);
    arc[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        arc[i + 1] = arc[i] + detail::segment_arc(sp, dim, u[i], u[i + 1]);
    const double total = arc[m];
    if (!(total > 0.0)) throw std::invalid_argument("reparametrize: degenerate arc length");

    // Already uniform in arc length? Then keep the sample positions verbatim
    // (trigonometric resampling only), which makes the operation idempotent.
    double max_dev = 0.0;
    const double mean_seg = total / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
        max_dev = std::max(max_dev, std::abs(arc[i + 1] - arc[i] - mean_seg) / mean_seg);
    if (max_dev < 1e-5) {
        Curve c;
        c.dim = dim;
        c.n = n_out;
        c.length = total;
        c.pos = spectral_resample(samples, dim, static_cast<std::size_t>(n_out));
        c.tan = detail::normalized_tangents(c.pos, dim, total);
        return c;
    }

    // invert s = arc(u) at the uniform grid via bisection-guarded Newton
    Curve c;
    c.dim = dim;
    c.n = n_out;
    c.length = total;
    c.pos.resize(static_cast<std::size_t>(n_out) * dim);
    std::vector<double> val(dim);
    for (int i = 0; i < n_out; ++i) {
        const double s = total * static_cast<double>(i) / n_out;
        const auto it = std::upper_bound(arc.begin(), arc.end(), s);
        std::size_t k = static_cast<std::size_t>(it - arc.begin());
        k = (k == 0) ? 0 : k - 1;
        if (k >= m) k = m - 1;
        double lo = u[k], hi = u[k + 1];
        double flo = arc[k] - s, fhi = arc[k + 1] - s;
        double x = lo + (hi - lo) * (-flo) / (fhi - flo);
        for (int it2 = 0; it2 < 40; ++it2) {
            const double fx = arc[k] + detail::segment_arc(sp, dim, u[k], x) - s;
            if (fx > 0)
                hi = x;
            else
                lo = x;
            const double speed = detail::spline_speed(sp, dim, x);
            double xn = x - fx / speed;
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::abs(xn - x) < 1e-15 * period && std::abs(fx) < 1e-13 * total) {
                x = xn;
                break;
            }
            x = xn;
        }
        sp.eval(x, val.data());
        for (int d = 0; d < dim; ++d) c.pos[static_cast<std::size_t>(i) * dim + d] = val[d];
    }
    c.tan = detail::normalized_tangents(c.pos, dim, total);
    return c;
}

// -------- named test curves --------

struct CurveParams {
    double radius = 1.0;      // circle / perturbed circle
    double torus_R = 2.0;     // trefoil major radius
    double torus_r = 1.0;     // trefoil tube radius
    double amplitude = 0.05;  // perturbed circle
    int harmonic = 3;         // perturbed circle
    double a = 2.0, b = 1.0;  // ellipse semi-axes
    int dim = 3;
};

namespace detail {

inline Curve curve_from_parametric(const std::function<void(double, double*)>& f, int dim,
                                   int n_out, int dense) {
    std::vector<double> samples(static_cast<std::size_t>(dense) * dim);
    std::vector<double> p(dim);
    for (int i = 0; i < dense; ++i) {
        f(2.0 * kPi * i / dense, p.data());
        for (int d = 0; d < dim; ++d) samples[static_cast<std::size_t>(i) * dim + d] = p[d];
    }
    return reparametrize_by_arclength(samples, dim, n_out);
}

} // namespace detail

inline Curve make_named_curve(const std::string& name, const CurveParams& params, int n) {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("make_named_curve: N must be even and >= 16");
    const int dim = params.dim;
    if (dim < 2) throw std::invalid_argument("make_named_curve: dim must be >= 2");
    Curve c;
    if (name == "circle") {
        const double r = params.radius;
        if (!(r > 0.0)) throw std::invalid_argument("circle: radius must be positive");
        c.dim = dim;
        c.n = n;
        c.length = 2.0 * kPi * r;
        c.pos.assign(static_cast<std::size_t>(n) * dim, 0.0);
        c.tan.assign(static_cast<std::size_t>(n) * dim, 0.0);
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * kPi * i / n;
            c.pos[static_cast<std::size_t>(i) * dim + 0] = r * std::cos(t);
            c.pos[static_cast<std::size_t>(i) * dim + 1] = r * std::sin(t);
            c.tan[static_cast<std::size_t>(i) * dim + 0] = -std::sin(t);
            c.tan[static_cast<std::size_t>(i) * dim + 1] = std::cos(t);
        }
    } else if (name == "trefoil") {
        const double R = params.torus_R, r = params.torus_r;
        if (!(R > r && r > 0.0))
            throw std::invalid_argument("trefoil: need torus radii R > r > 0");
        if (dim < 3) throw std::invalid_argument("trefoil: needs dim >= 3");
        const int dense = std::max(16384, 8 * n);
        c = detail::curve_from_parametric(
            [R, r, dim](double t, double* p) {
                std::fill(p, p + dim, 0.0);
                p[0] = (R + r * std::cos(3.0 * t)) * std::cos(2.0 * t);
                p[1] = (R + r * std::cos(3.0 * t)) * std::sin(2.0 * t);
                p[2] = r * std::sin(3.0 * t);
            },
            dim, n, dense);
    } else if (name == "perturbed-circle") {
        const double r = params.radius, amp = params.amplitude;
        const int k = params.harmonic;
        if (!(r > 0.0)) throw std::invalid_argument("perturbed-circle: radius must be positive");
        if (std::abs(amp) >= 0.5 * r)
            throw std::invalid_argument("perturbed-circle: amplitude too large to stay embedded");
        const int dense = std::max(8192, 8 * n);
        c = detail::curve_from_parametric(
            [r, amp, k, dim](double t, double* p) {
                std::fill(p, p + dim, 0.0);
                const double rho = r + amp * std::cos(k * t);
                p[0] = rho * std::cos(t);
                p[1] = rho * std::sin(t);
            },
            dim, n, dense);
    } else if (name == "ellipse") {
        const double a = params.a, b = params.b;
        if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("ellipse: axes must be positive");
        const int dense = std::max(8192, 8 * n);
        c = detail::curve_from_parametric(
            [a, b, dim](double t, double* p) {
                std::fill(p, p + dim, 0.0);
                p[0] = a * std::cos(t);
                p[1] = b * std::sin(t);
            },
            dim, n, dense);
    } else {
        throw std::invalid_argument("make_named_curve: unknown family '" + name + "'");
    }
    validate_curve(c);
    return c;
}

} // namespace ohara
