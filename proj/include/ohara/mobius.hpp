#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "ohara/common.hpp"
#include "ohara/curve.hpp"
#include "ohara/spectral.hpp"

namespace ohara {

// Primitives of the Moebius group of R^n u {inf}: sphere inversions composed
// with similarities.
struct Inversion {
    std::vector<double> center;
    double radius = 1.0;
};
struct Translation {
    std::vector<double> offset;
};
struct Rotation {
    std::vector<double> matrix; // dim x dim row-major, orthogonal
    int dim = 3;
};
struct Scaling {
    double factor = 1.0;
};

using MobiusFactor = std::variant<Inversion, Translation, Rotation, Scaling>;

class MobiusMap {
public:
    MobiusMap() = default;
    explicit MobiusMap(std::vector<MobiusFactor> factors) : factors_(std::move(factors)) {
        for (const auto& f : factors_) validate_factor(f);
    }

    void push(MobiusFactor f) {
        validate_factor(f);
        factors_.push_back(std::move(f));
    }

    const std::vector<MobiusFactor>& factors() const { return factors_; }

    bool has_inversion() const {
        for (const auto& f : factors_)
            if (std::holds_alternative<Inversion>(f)) return true;
        return false;
    }

    // Composite similarity scale, defined only for inversion-free maps.
    double similarity_scale() const {
        double s = 1.0;
        for (const auto& f : factors_)
            if (const auto* sc = std::get_if<Scaling>(&f)) s *= sc->factor;
        return s;
    }

    // Factors are applied left to right.
    std::vector<double> apply_point(VecView x) const {
        std::vector<double> p(x.begin(), x.end());
        for (const auto& f : factors_) apply_factor(f, p);
        return p;
    }

    // Minimum distance from any inversion center to the given points, tracked
    // through the composition (each center is compared against the points as
    // they arrive at that factor).
    double inversion_clearance(const std::vector<double>& points, int dim) const {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = points.size() / static_cast<std::size_t>(dim);
        std::vector<std::vector<double>> current(n);
        for (std::size_t i = 0; i < n; ++i)
            current[i].assign(points.begin() + static_cast<long>(i) * dim,
                              points.begin() + static_cast<long>(i + 1) * dim);
        for (const auto& f : factors_) {
            if (const auto* inv = std::get_if<Inversion>(&f)) {
                for (const auto& p : current)
                    best = std::min(best, dist(VecView(p), VecView(inv->center)));
            }
            for (auto& p : current) apply_factor(f, p);
        }
        return best;
    }

private:
    static void validate_factor(const MobiusFactor& f) {
        if (const auto* inv = std::get_if<Inversion>(&f)) {
            if (!(inv->radius > 0.0))
                throw std::invalid_argument("mobius: inversion radius must be positive");
        } else if (const auto* rot = std::get_if<Rotation>(&f)) {
            const int d = rot->dim;
            if (rot->matrix.size() != static_cast<std::size_t>(d) * d)
                throw std::invalid_argument("mobius: rotation matrix size mismatch");
            // orthogonality within 1e-12
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < d; ++k)
                        acc += rot->matrix[k * d + i] * rot->matrix[k * d + j];
                    if (std::abs(acc - (i == j ? 1.0 : 0.0)) > 1e-12)
                        throw std::invalid_argument("mobius: rotation matrix not orthogonal");
                }
            }
        } else if (const auto* sc = std::get_if<Scaling>(&f)) {
            if (!(sc->factor > 0.0))
                throw std::invalid_argument("mobius: scaling factor must be positive");
        }
    }

    static void apply_factor(const MobiusFactor& f, std::vector<double>& p) {
        if (const auto* inv = std::get_if<Inversion>(&f)) {
            double r2 = 0.0;
            for (std::size_t d = 0; d < p.size(); ++d) {
                const double v = p[d] - inv->center[d];
                r2 += v * v;
            }
            if (!(r2 > 0.0))
                throw std::domain_error("mobius: point at inversion center maps to infinity");
            const double s = inv->radius * inv->radius / r2;
            for (std::size_t d = 0; d < p.size(); ++d)
                p[d] = inv->center[d] + s * (p[d] - inv->center[d]);
        } else if (const auto* tr = std::get_if<Translation>(&f)) {
            for (std::size_t d = 0; d < p.size(); ++d) p[d] += tr->offset[d];
        } else if (const auto* rot = std::get_if<Rotation>(&f)) {
            const int d = rot->dim;
            std::vector<double> q(p.size(), 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) q[i] += rot->matrix[i * d + j] * p[j];
            p = std::move(q);
        } else if (const auto* sc = std::get_if<Scaling>(&f)) {
            for (double& v : p) v *= sc->factor;
        }
    }

    std::vector<MobiusFactor> factors_;
};

// Image of a curve under a Moebius map, returned as a valid unit-speed Curve.
// Inversions destroy the arc-length parametrization, so the curve is
// oversampled 8x before mapping and reparametrized afterwards. Similarities
// preserve it and are applied exactly.
inline Curve transform_curve(const MobiusMap& map, const Curve& c, int n_out) {
    if (!map.has_inversion()) {
        Curve out;
        out.dim = c.dim;
        out.length = c.length * map.similarity_scale();
        std::vector<double> pos(c.pos.size());
        std::vector<double> tan(c.tan.size());
        // unit tangents transform by the rotation part only
        MobiusMap rot_only;
        for (const auto& f : map.factors())
            if (std::holds_alternative<Rotation>(f)) rot_only.push(f);
        for (int i = 0; i < c.n; ++i) {
            const auto p = map.apply_point(c.point(i));
            const auto t = rot_only.apply_point(c.tangent(i));
            for (int d = 0; d < c.dim; ++d) {
                pos[static_cast<std::size_t>(i) * c.dim + d] = p[d];
                tan[static_cast<std::size_t>(i) * c.dim + d] = t[d];
            }
        }
        out.pos = std::move(pos);
        out.tan = std::move(tan);
        out.n = c.n;
        if (n_out != c.n) {
            out.pos = spectral_resample(out.pos, c.dim, static_cast<std::size_t>(n_out));
            out.tan = detail::normalized_tangents(out.pos, c.dim, out.length);
            out.n = n_out;
        }
        validate_curve(out);
        return out;
    }

    const double clearance = map.inversion_clearance(c.pos, c.dim);
    const double min_clearance = 1e-3 * c.length;
    if (clearance < min_clearance)
        throw std::domain_error("mobius: inversion center too close to the curve (distance " +
                                std::to_string(clearance) + ", need >= " +
                                std::to_string(min_clearance) + ")");

    const std::size_t dense = 8 * static_cast<std::size_t>(std::max(c.n, n_out));
    std::vector<double> fine = spectral_resample(c.pos, c.dim, dense);
    std::vector<double> image(fine.size());
    std::vector<double> p(c.dim);
    for (std::size_t i = 0; i < dense; ++i) {
        for (int d = 0; d < c.dim; ++d) p[d] = fine[i * c.dim + d];
        const auto q = map.apply_point(VecView(p));
        for (int d = 0; d < c.dim; ++d) image[i * c.dim + d] = q[d];
    }
    Curve out = reparametrize_by_arclength(image, c.dim, n_out);
    validate_curve(out);
    return out;
}

} // namespace ohara
