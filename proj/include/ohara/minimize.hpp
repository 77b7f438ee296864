#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohara/common.hpp"
#include "ohara/curve.hpp"
#include "ohara/energy.hpp"
#include "ohara/kernel.hpp"
#include "ohara/spectral.hpp"

namespace ohara {

// Closed curve as a truncated Fourier series per coordinate,
//   f_d(t) = sum_{k=1..K} a[d][k] cos(k t) + b[d][k] sin(k t),  t in [0, 2pi),
// zero-mean by convention (the translation mode is pinned at the origin).
struct FourierCurve {
    int dim = 3;
    int harmonics = 8;
    std::vector<double> coeff; // dim x K x 2 row-major: (a, b) per harmonic

    double& a(int d, int k) { return coeff[(static_cast<std::size_t>(d) * harmonics + k) * 2]; }
    double& b(int d, int k) { return coeff[(static_cast<std::size_t>(d) * harmonics + k) * 2 + 1]; }
    double a(int d, int k) const { return coeff[(static_cast<std::size_t>(d) * harmonics + k) * 2]; }
    double b(int d, int k) const { return coeff[(static_cast<std::size_t>(d) * harmonics + k) * 2 + 1]; }

    static FourierCurve zeros(int dim, int harmonics) {
        FourierCurve f;
        f.dim = dim;
        f.harmonics = harmonics;
        f.coeff.assign(static_cast<std::size_t>(dim) * harmonics * 2, 0.0);
        return f;
    }

    // Round circle of radius r in the first two coordinates.
    static FourierCurve circle(int dim, int harmonics, double r) {
        FourierCurve f = zeros(dim, harmonics);
        f.a(0, 0) = r;
        f.b(1, 0) = r;
        return f;
    }

    // Least-squares projection of a sampled curve onto K harmonics (plain DFT
    // of the uniform samples, mean dropped).
    static FourierCurve from_curve(const Curve& c, int harmonics) {
        FourierCurve f = zeros(c.dim, harmonics);
        const int n = c.n;
        for (int d = 0; d < c.dim; ++d) {
            for (int k = 1; k <= harmonics; ++k) {
                double ca = 0.0, cb = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double t = 2.0 * kPi * i / n;
                    const double v = c.pos[static_cast<std::size_t>(i) * c.dim + d];
                    ca += v * std::cos(k * t);
                    cb += v * std::sin(k * t);
                }
                f.a(d, k - 1) = 2.0 * ca / n;
                f.b(d, k - 1) = 2.0 * cb / n;
            }
        }
        return f;
    }

    std::vector<double> sample(int n) const {
        std::vector<double> out(static_cast<std::size_t>(n) * dim, 0.0);
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * kPi * i / n;
            for (int d = 0; d < dim; ++d) {
                double v = 0.0;
                for (int k = 1; k <= harmonics; ++k)
                    v += a(d, k - 1) * std::cos(k * t) + b(d, k - 1) * std::sin(k * t);
                out[static_cast<std::size_t>(i) * dim + d] = v;
            }
        }
        return out;
    }

    // Reconstruct, reparametrize by arc length, and rescale to the target
    // length (exact constraint satisfaction by homogeneity).
    Curve realize(int n, double target_length) const {
        const int dense = std::max(8 * n, 256);
        Curve c = reparametrize_by_arclength(sample(dense), dim, n);
        return c.scaled(target_length / c.length);
    }
};

struct DescentOptions {
    int max_iterations = 200;
    double grad_tol = 1e-4;       // terminate when the gradient norm drops below
    double initial_step = 0.05;
    double min_step = 1e-12;
    double fd_step_rel = 1e-5;    // coefficient step = fd_step_rel * target length
    int n_samples = 256;
    QuadratureSpec quad{};
    double min_bi_lipschitz = 1e-3; // reject steps that collapse embeddedness
};

struct DescentRecord {
    int iteration = 0;
    double energy = 0.0;
    double e3 = 0.0;
    double e4 = 0.0;
    double step = 0.0;
    double grad_norm = 0.0;
    double length = 0.0;
};

struct DescentTrace {
    std::vector<DescentRecord> records;
    std::string status;            // "gradient-tolerance", "max-iterations", "step-underflow"
    double e4_circle = 0.0;        // E_{Phi,4} of the round circle at target length
    double e4_final_minus_circle = 0.0;
};

struct DescentResult {
    FourierCurve curve;
    DescentTrace trace;
};

namespace detail {

struct Objective {
    const Kernel& kernel;
    double target_length;
    int n_samples;
    QuadratureSpec quad;
    double min_bi_lipschitz;

    // returns false (infeasible) when the reconstruction loses embeddedness
    bool eval(const FourierCurve& f, EnergyBreakdown* out) const {
        Curve c;
        try {
            c = f.realize(n_samples, target_length);
        } catch (const std::invalid_argument&) {
            return false;
        }
        if (!(bi_lipschitz_ratio(c) > min_bi_lipschitz)) return false;
        *out = energy_cosine(c, kernel, quad);
        return true;
    }
};

} // namespace detail

// Length-constrained steepest descent over Fourier coefficients with central
// finite-difference gradients and backtracking line search. Accepted steps
// are strictly energy-decreasing.
inline DescentResult minimize_under_length(const FourierCurve& start, const Kernel& kernel,
                                           double target_length,
                                           const DescentOptions& opts = {}) {
    if (!(target_length > 0.0))
        throw std::invalid_argument("minimize: target length must be positive");
    {
        const auto rep = check_assumptions(kernel, target_length);
        if (!rep.a1.passed || !rep.a2.passed || !rep.a5b.passed)
            throw std::domain_error("minimize: kernel fails A.1/A.2/A.5(b)");
    }
    const detail::Objective obj{kernel, target_length, opts.n_samples, opts.quad,
                                opts.min_bi_lipschitz};

    FourierCurve cur = start;
    EnergyBreakdown cur_e;
    if (!obj.eval(cur, &cur_e))
        throw std::invalid_argument("minimize: start curve is not embedded");

    DescentResult res;
    res.curve = cur;

    // E4 of the round circle with the same length, for probing the
    // Corollary's hypothesis (reported, never asserted).
    {
        CurveParams cp;
        cp.dim = cur.dim;
        cp.radius = target_length / (2.0 * kPi);
        const Curve circ = make_named_curve("circle", cp, opts.n_samples);
        res.trace.e4_circle = energy_cosine(circ, kernel, opts.quad).e4.value_or(0.0);
    }

    const double fd_h = opts.fd_step_rel * target_length;
    double step = opts.initial_step;
    const std::size_t n_coeff = cur.coeff.size();
    std::vector<double> grad(n_coeff);

    for (int it = 0; it < opts.max_iterations; ++it) {
        // central finite differences on each retained coefficient
        double gnorm2 = 0.0;
        bool fd_ok = true;
        for (std::size_t ci = 0; ci < n_coeff && fd_ok; ++ci) {
            FourierCurve probe = cur;
            EnergyBreakdown ep, em;
            probe.coeff[ci] = cur.coeff[ci] + fd_h;
            fd_ok = obj.eval(probe, &ep);
            probe.coeff[ci] = cur.coeff[ci] - fd_h;
            fd_ok = fd_ok && obj.eval(probe, &em);
            grad[ci] = (ep.total - em.total) / (2.0 * fd_h);
            gnorm2 += grad[ci] * grad[ci];
        }
        if (!fd_ok)
            throw std::runtime_error("minimize: finite-difference probe left the embedded regime");
        const double gnorm = std::sqrt(gnorm2);

        DescentRecord rec;
        rec.iteration = it;
        rec.energy = cur_e.total;
        rec.e3 = cur_e.e3.value_or(0.0);
        rec.e4 = cur_e.e4.value_or(0.0);
        rec.step = step;
        rec.grad_norm = gnorm;
        rec.length = target_length;
        res.trace.records.push_back(rec);

        if (gnorm <= opts.grad_tol) {
            res.trace.status = "gradient-tolerance";
            res.curve = cur;
            res.trace.e4_final_minus_circle = rec.e4 - res.trace.e4_circle;
            return res;
        }

        // backtracking: halve until the energy strictly decreases
        bool accepted = false;
        while (step >= opts.min_step) {
            FourierCurve trial = cur;
            for (std::size_t ci = 0; ci < n_coeff; ++ci)
                trial.coeff[ci] = cur.coeff[ci] - step * grad[ci];
            EnergyBreakdown et;
            if (obj.eval(trial, &et) && et.total < cur_e.total) {
                cur = std::move(trial);
                cur_e = et;
                accepted = true;
                step *= 1.5; // cautious growth after success
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.trace.status = "step-underflow";
            res.curve = cur;
            res.trace.e4_final_minus_circle = cur_e.e4.value_or(0.0) - res.trace.e4_circle;
            return res;
        }
    }

    res.trace.status = "max-iterations";
    res.curve = cur;
    res.trace.e4_final_minus_circle = cur_e.e4.value_or(0.0) - res.trace.e4_circle;
    return res;
}

} // namespace ohara
