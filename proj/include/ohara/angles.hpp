#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ohara/common.hpp"

namespace ohara {

// Geometry of one point pair on a curve: chord vector and the two unit
// tangents. delta_f = f(s1) - f(s2).
struct PairGeometry {
    std::vector<double> delta_f;
    std::vector<double> tau1;
    std::vector<double> tau2;

    double chord_len() const { return norm(VecView(delta_f)); }

    static PairGeometry make(std::vector<double> df, std::vector<double> t1,
                             std::vector<double> t2) {
        PairGeometry g{std::move(df), std::move(t1), std::move(t2)};
        if (std::abs(norm(VecView(g.tau1)) - 1.0) > 1e-12 ||
            std::abs(norm(VecView(g.tau2)) - 1.0) > 1e-12)
            throw std::invalid_argument("PairGeometry: tangents must be unit vectors");
        return g;
    }
};

// cos of the angle between the two tangents.
inline double cos_psi(const PairGeometry& g) {
    return clamp_unit(dot(VecView(g.tau1), VecView(g.tau2)));
}

// cos phi = -tau1.tau2 + 2 (tau1.u)(tau2.u), u = delta_f / |delta_f|.
// Unclamped; for unit tangents the value is the cosine of an actual angle,
// so it can leave [-1,1] only by roundoff.
inline double cos_phi_algebraic_raw(const PairGeometry& g) {
    const double cl = g.chord_len();
    if (!(cl > 0.0))
        throw std::domain_error("cos_phi: coincident points, conformal angle undefined");
    const double inv = 1.0 / cl;
    double t1u = 0.0, t2u = 0.0, t1t2 = 0.0;
    for (std::size_t d = 0; d < g.delta_f.size(); ++d) {
        const double u = g.delta_f[d] * inv;
        t1u += g.tau1[d] * u;
        t2u += g.tau2[d] * u;
        t1t2 += g.tau1[d] * g.tau2[d];
    }
    return -t1t2 + 2.0 * t1u * t2u;
}

inline double cos_phi_algebraic(const PairGeometry& g) {
    return clamp_unit(cos_phi_algebraic_raw(g));
}

namespace detail {

// Unit tangent at point p (2D, in-plane coordinates) of the circle tangent to
// the x-axis at the origin and passing through p; orientation (+x) at the
// origin is transported along the arc. Degenerates to the line through the
// origin when p is on the x-axis.
inline void tangent_circle_dir_2d(double px, double py, double out[2], bool* degenerate) {
    const double r2 = px * px + py * py;
    if (std::abs(py) < 1e-13 * std::sqrt(r2)) {
        // circle degenerates to the x-axis itself
        out[0] = 1.0;
        out[1] = 0.0;
        if (degenerate) *degenerate = true;
        return;
    }
    if (degenerate) *degenerate = false;
    const double radius = r2 / (2.0 * py); // signed; center at (0, radius)
    // rotate the center->point vector by +90 deg, flip for clockwise arcs
    const double cx = px, cy = py - radius;
    double tx = -cy, ty = cx;
    if (radius < 0.0) {
        tx = -tx;
        ty = -ty;
    }
    const double n = std::sqrt(tx * tx + ty * ty);
    out[0] = tx / n;
    out[1] = ty / n;
}

} // namespace detail

// Constructive tangent-circle route to the conformal angle, used as an oracle
// independent of the algebraic formula. Builds C21 (tangent tau2 at f2,
// through f1) in the plane spanned by tau2 and the chord, transports its
// tangent along the circle from f2 to f1, and measures the angle at f1
// against C12's tangent there (which is tau1 by construction).
inline double cos_phi_geometric(VecView f1, VecView f2, VecView tau1_at_f1, VecView tau2_at_f2,
                                bool* degenerate_flag = nullptr) {
    const std::size_t dim = f1.size();
    std::vector<double> chord(dim);
    for (std::size_t d = 0; d < dim; ++d) chord[d] = f1[d] - f2[d];
    const double cl = norm(VecView(chord));
    if (!(cl > 0.0))
        throw std::domain_error("cos_phi_geometric: coincident points");

    // in-plane frame at f2: e1 along tau2, e2 spans the rest of the chord
    const double x1 = dot(VecView(chord), tau2_at_f2);
    std::vector<double> e2(dim);
    for (std::size_t d = 0; d < dim; ++d) e2[d] = chord[d] - x1 * tau2_at_f2[d];
    const double y1 = norm(VecView(e2));
    bool degen = false;
    double t2d[2];
    if (y1 < 1e-13 * cl) {
        // chord parallel to tau2: the "circle" is the chord line
        degen = true;
        t2d[0] = 1.0;
        t2d[1] = 0.0;
    } else {
        for (std::size_t d = 0; d < dim; ++d) e2[d] /= y1;
        detail::tangent_circle_dir_2d(x1, y1, t2d, &degen);
    }
    if (degenerate_flag) *degenerate_flag = degen;
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double transported = t2d[0] * tau2_at_f2[d] + t2d[1] * (y1 < 1e-13 * cl ? 0.0 : e2[d]);
        acc += tau1_at_f1[d] * transported;
    }
    return clamp_unit(acc);
}

// Theorem blend: cos phi_Phi = (1 - theta) cos phi + theta cos psi.
// For theta in [0, 1/2] this is a convex combination, hence stays in [-1,1].
inline double cos_phi_blend(double cos_phi, double cos_psi_val, double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::domain_error(
            "cos_phi_blend: Theta outside [0,1] (A.5(b) violated, blend not convex)");
    return (1.0 - theta) * cos_phi + theta * cos_psi_val;
}

} // namespace ohara
