#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohara/common.hpp"

namespace ohara {

// The kernel function Phi together with its derived quantities:
//   Lambda(t) = -(1/t) Int_t^inf dx / Phi(x)
//   Theta(t)  = (1 + Phi(t) Lambda(t)) / 2
//   tail(L)   = 2 L Int_{L/2}^inf dt / Phi(t)
//
// Either a power law t^alpha or a tabulated positive function with a declared
// power-law tail exponent (needed to truncate the improper integrals).
class Kernel {
public:
    static Kernel power(double alpha, bool allow_unsafe = false) {
        if (!allow_unsafe && !(alpha >= 2.0 && alpha < 3.0))
            throw std::invalid_argument(
                "kernel: alpha outside [2,3); pass the unsafe flag for exploratory runs");
        Kernel k;
        k.is_power_ = true;
        k.alpha_ = alpha;
        k.tail_exponent_ = alpha;
        return k;
    }

    // Tabulated (t, Phi(t)) pairs, log-log interpolated, with Phi ~ c t^beta
    // assumed beyond the last table point.
    static Kernel tabulated(std::vector<double> t, std::vector<double> phi, double tail_exponent) {
        if (t.size() != phi.size() || t.size() < 4)
            throw std::invalid_argument("kernel: need at least 4 tabulated points");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!(t[i] > 0.0) || !(phi[i] > 0.0))
                throw std::invalid_argument("kernel: tabulated values must be positive");
            if (i > 0 && !(t[i] > t[i - 1]))
                throw std::invalid_argument("kernel: tabulated abscissae must increase");
        }
        Kernel k;
        k.is_power_ = false;
        k.tail_exponent_ = tail_exponent;
        k.log_t_.reserve(t.size());
        k.log_phi_.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            k.log_t_.push_back(std::log(t[i]));
            k.log_phi_.push_back(std::log(phi[i]));
        }
        k.t_nodes_ = std::move(t);
        k.build_tail_table();
        return k;
    }

    bool is_power_law() const { return is_power_; }
    double alpha() const {
        if (!is_power_) throw std::logic_error("kernel: alpha only defined for power law");
        return alpha_;
    }
    double tail_exponent() const { return tail_exponent_; }

    double phi(double t) const {
        if (!(t > 0.0)) throw std::domain_error("kernel: Phi requires t > 0");
        if (is_power_) return std::pow(t, alpha_);
        return std::exp(loglog_interp(std::log(t)));
    }

    // Int_x^inf dt / Phi(t); finite iff the tail decays faster than 1/t.
    double inv_phi_tail_integral(double x) const {
        if (!(x > 0.0)) throw std::domain_error("kernel: tail integral requires x > 0");
        if (!(tail_exponent_ > 1.0))
            throw std::domain_error("kernel: divergent tail integral (A.2 fails)");
        if (is_power_) return std::pow(x, 1.0 - alpha_) / (alpha_ - 1.0);
        return tail_integral_tabulated(x);
    }

    double lambda(double t) const { return -inv_phi_tail_integral(t) / t; }

    // Numeric-quadrature route for Lambda, available for any kernel; used as a
    // cross-check against the closed form in the power-law case.
    double lambda_numeric(double t) const {
        if (!(t > 0.0)) throw std::domain_error("kernel: Lambda requires t > 0");
        if (!(tail_exponent_ > 1.0))
            throw std::domain_error("kernel: divergent tail integral (A.2 fails)");
        return -tail_integral_numeric(t) / t;
    }

    // Exactly constant for power laws; the generic expression would reproduce
    // the same value only up to pow() roundoff (visibly nonzero at alpha = 2).
    double theta(double t) const {
        if (is_power_) return theta_power_constant();
        return 0.5 * (1.0 + phi(t) * lambda(t));
    }

    // Constant value of Theta for the power law: (alpha-2) / (2 (alpha-1)).
    double theta_power_constant() const {
        return (alpha() - 2.0) / (2.0 * (alpha() - 1.0));
    }

    double tail_constant(double total_length) const {
        if (!(total_length > 0.0))
            throw std::invalid_argument("kernel: tail constant requires L > 0");
        if (is_power_)
            return std::pow(2.0, alpha_) / ((alpha_ - 1.0) * std::pow(total_length, alpha_ - 2.0));
        return 2.0 * total_length * inv_phi_tail_integral(0.5 * total_length);
    }

private:
    double loglog_interp(double lt) const {
        const auto& x = log_t_;
        const auto& y = log_phi_;
        std::size_t k;
        if (lt <= x.front())
            k = 0;
        else if (lt >= x[x.size() - 2])
            k = x.size() - 2;
        else
            k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), lt) - x.begin()) - 1;
        const double w = (lt - x[k]) / (x[k + 1] - x[k]);
        return y[k] + w * (y[k + 1] - y[k]);
    }

    double tail_integral_numeric(double x) const {
        // integrate to a far cutoff, then close with the declared power tail
        const double table_end = is_power_ ? x : std::exp(log_t_.back());
        const double cutoff = std::max({x * 64.0, table_end, 1.0});
        const double body =
            integrate_adaptive([this](double t) { return 1.0 / phi(t); }, x, cutoff, 1e-13);
        const double remainder = cutoff / ((tail_exponent_ - 1.0) * phi(cutoff));
        return body + remainder;
    }

    // The log-log interpolant is piecewise power-law, so Int dt/Phi has a
    // closed form on every table segment. Precomputing suffix sums makes the
    // tail integral (hence Lambda and Theta) an O(log n) lookup instead of an
    // adaptive quadrature per call.
    double segment_integral(std::size_t k, double a, double b) const {
        const double p = seg_p_[k], c = seg_c_[k];
        if (std::abs(1.0 - p) < 1e-12) return (std::log(b) - std::log(a)) / c;
        return (std::pow(b, 1.0 - p) - std::pow(a, 1.0 - p)) / (c * (1.0 - p));
    }

    void build_tail_table() {
        const std::size_t n = t_nodes_.size();
        seg_p_.resize(n - 1);
        seg_c_.resize(n - 1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            seg_p_[k] = (log_phi_[k + 1] - log_phi_[k]) / (log_t_[k + 1] - log_t_[k]);
            seg_c_[k] = std::exp(log_phi_[k] - seg_p_[k] * log_t_[k]);
        }
        suffix_.assign(n, 0.0);
        for (std::size_t k = n - 1; k-- > 0;)
            suffix_[k] = suffix_[k + 1] + segment_integral(k, t_nodes_[k], t_nodes_[k + 1]);
        // declared power tail beyond the last node
        tail_remainder_ = tail_exponent_ > 1.0
                              ? t_nodes_.back() /
                                    ((tail_exponent_ - 1.0) * std::exp(log_phi_.back()))
                              : std::numeric_limits<double>::infinity();
    }

    double tail_integral_tabulated(double x) const {
        if (x >= t_nodes_.back())
            return x / ((tail_exponent_ - 1.0) * phi(x));
        if (x <= t_nodes_.front())
            return segment_integral(0, x, t_nodes_.front()) + suffix_.front() + tail_remainder_;
        const std::size_t k =
            static_cast<std::size_t>(std::upper_bound(t_nodes_.begin(), t_nodes_.end(), x) -
                                     t_nodes_.begin()) - 1;
        return segment_integral(k, x, t_nodes_[k + 1]) + suffix_[k + 1] + tail_remainder_;
    }

    bool is_power_ = true;
    double alpha_ = 2.0;
    double tail_exponent_ = 2.0;
    std::vector<double> log_t_, log_phi_;
    std::vector<double> t_nodes_, seg_p_, seg_c_, suffix_;
    double tail_remainder_ = 0.0;
};

// -------- assumption checks --------

struct AssumptionVerdict {
    bool checked = false; // false => analytic, not machine-checkable
    bool passed = false;
    std::string note;
};

struct AssumptionReport {
    AssumptionVerdict a1; // Phi monotonically increasing
    AssumptionVerdict a2; // integrable tail
    AssumptionVerdict a3; // W_Phi membership / bi-Lipschitz (analytic)
    AssumptionVerdict a4; // eps -> 0 limit conditions (analytic)
    AssumptionVerdict a5a; // Phi(lambda x) >= C(lambda, L) Phi(x)
    AssumptionVerdict a5b; // inf (1/Phi + Lambda) >= 0
    double a5b_infimum = 0.0;

    bool checked_all_pass() const {
        return a1.passed && a2.passed && a5a.passed && a5b.passed;
    }
};

// Dense numerical screening of (A.1), (A.2), (A.5) on (0, L/2]; (A.3)/(A.4)
// are properties of the pair (Phi, f) and are reported, not decided.
inline AssumptionReport check_assumptions(const Kernel& kernel, double total_length) {
    if (!(total_length > 0.0)) throw std::invalid_argument("check_assumptions: L > 0 required");
    AssumptionReport rep;
    const int grid_n = 10000;
    const double t_lo = 1e-6 * total_length;
    const double t_hi = 0.5 * total_length;
    const double ratio = std::pow(t_hi / t_lo, 1.0 / (grid_n - 1));

    // A.1: monotone on a geometric grid up to L
    rep.a1.checked = true;
    rep.a1.passed = true;
    {
        double prev = kernel.phi(t_lo);
        for (double t = t_lo * ratio; t <= 2.0 * t_hi * (1.0 + 1e-12); t *= ratio) {
            const double v = kernel.phi(t);
            if (v < prev * (1.0 - 1e-12)) {
                rep.a1.passed = false;
                rep.a1.note = "Phi decreases near t = " + std::to_string(t);
                break;
            }
            prev = v;
        }
    }

    // A.2: integrable tail
    rep.a2.checked = true;
    rep.a2.passed = kernel.tail_exponent() > 1.0;
    if (!rep.a2.passed)
        rep.a2.note = "tail exponent " + std::to_string(kernel.tail_exponent()) +
                      " <= 1: Int dt/Phi diverges";

    rep.a3.checked = false;
    rep.a3.note = "analytic, not machine-checkable (function space and bi-Lipschitz property)";
    rep.a4.checked = false;
    rep.a4.note = "analytic, not machine-checkable (eps -> 0 limit conditions)";

    // A.5(a): exact for the power law; sampled otherwise
    rep.a5a.checked = true;
    if (kernel.is_power_law()) {
        rep.a5a.passed = true;
        rep.a5a.note = "power law: Phi(lambda x) = lambda^alpha Phi(x), C = lambda^alpha";
    } else {
        rep.a5a.passed = true;
        for (double lam : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            double worst = std::numeric_limits<double>::infinity();
            for (double t = t_lo; t <= t_hi * (1.0 + 1e-12); t *= ratio)
                worst = std::min(worst, kernel.phi(lam * t) / kernel.phi(t));
            if (!(worst > 0.0)) {
                rep.a5a.passed = false;
                rep.a5a.note = "no positive C found for lambda = " + std::to_string(lam);
                break;
            }
        }
    }

    // A.5(b): dense minimization of 1/Phi + Lambda on (0, L/2]
    rep.a5b.checked = true;
    if (!rep.a2.passed) {
        rep.a5b.passed = false;
        rep.a5b.note = "not evaluable: Lambda undefined (A.2 fails)";
    } else {
        double inf = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (double t = t_lo; t <= t_hi * (1.0 + 1e-12); t *= ratio) {
            const double v = 1.0 / kernel.phi(t) + kernel.lambda(t);
            inf = std::min(inf, v);
            // relative slack: near t = 0 both terms blow up and cancel
            if (v < -1e-9 / kernel.phi(t)) ok = false;
        }
        rep.a5b_infimum = inf;
        rep.a5b.passed = ok;
        if (!rep.a5b.passed) rep.a5b.note = "infimum of 1/Phi + Lambda is negative";
    }
    return rep;
}

} // namespace ohara
