#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ohara/common.hpp"

namespace ohara {

// Periodic cubic spline through points y_0..y_{m-1} at strictly increasing
// knots u_0..u_{m-1}, closing up with y_m = y_0 at u_m = u_0 + period.
// Components are interpolated independently (y is m x dim row-major).
class PeriodicSpline {
public:
    PeriodicSpline(std::vector<double> knots, std::vector<double> y, int dim, double period)
        : u_(std::move(knots)), y_(std::move(y)), dim_(dim), period_(period) {
        const std::size_t m = u_.size();
        if (m < 3) throw std::invalid_argument("PeriodicSpline: need at least 3 knots");
        if (y_.size() != m * static_cast<std::size_t>(dim))
            throw std::invalid_argument("PeriodicSpline: knot/value size mismatch");
        for (std::size_t i = 0; i + 1 < m; ++i)
            if (!(u_[i + 1] > u_[i]))
                throw std::invalid_argument("PeriodicSpline: knots not increasing");
        if (!(period_ > u_.back() - u_.front()))
            throw std::invalid_argument("PeriodicSpline: period too short");
        solve_second_derivatives();
    }

    double period() const { return period_; }
    const std::vector<double>& knots() const { return u_; }

    // Value of the spline, u taken modulo the period.
    void eval(double u, double* out) const { eval_impl(u, out, nullptr); }

    // Value and first derivative.
    void eval(double u, double* out, double* dout) const { eval_impl(u, out, dout); }

private:
    void eval_impl(double u, double* out, double* dout) const {
        const std::size_t m = u_.size();
        double t = std::fmod(u - u_[0], period_);
        if (t < 0) t += period_;
        t += u_[0];
        // segment [u_k, u_{k+1}] with wrap segment [u_{m-1}, u_0 + period]
        std::size_t k;
        if (t >= u_[m - 1]) {
            k = m - 1;
        } else {
            k = static_cast<std::size_t>(
                    std::upper_bound(u_.begin(), u_.end(), t) - u_.begin()) - 1;
        }
        const double ua = u_[k];
        const double ub = (k + 1 < m) ? u_[k + 1] : u_[0] + period_;
        const double h = ub - ua;
        const double a = (ub - t) / h;
        const double b = (t - ua) / h;
        const std::size_t kb = (k + 1 < m) ? k + 1 : 0;
        for (int d = 0; d < dim_; ++d) {
            const double ya = y_[k * dim_ + d], yb = y_[kb * dim_ + d];
            const double ma = m2_[k * dim_ + d], mb = m2_[kb * dim_ + d];
            if (out)
                out[d] = a * ya + b * yb +
                         ((a * a * a - a) * ma + (b * b * b - b) * mb) * h * h / 6.0;
            if (dout)
                dout[d] = (yb - ya) / h +
                          ((3.0 * b * b - 1.0) * mb - (3.0 * a * a - 1.0) * ma) * h / 6.0;
        }
    }

    // Cyclic tridiagonal solve (Sherman-Morrison) per component.
    void solve_second_derivatives() {
        const std::size_t m = u_.size();
        std::vector<double> h(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double next = (i + 1 < m) ? u_[i + 1] : u_[0] + period_;
            h[i] = next - u_[i];
        }
        m2_.assign(m * static_cast<std::size_t>(dim_), 0.0);
        std::vector<double> a(m), b(m), c(m), rhs(m);
        for (int d = 0; d < dim_; ++d) {
            for (std::size_t i = 0; i < m; ++i) {
                const std::size_t ip = (i + 1) % m;
                const std::size_t im = (i + m - 1) % m;
                a[i] = h[im] / 6.0;
                b[i] = (h[im] + h[i]) / 3.0;
                c[i] = h[i] / 6.0;
                const double yp = y_[ip * dim_ + d], yi = y_[i * dim_ + d],
                             ym = y_[im * dim_ + d];
                rhs[i] = (yp - yi) / h[i] - (yi - ym) / h[im];
            }
            std::vector<double> x = cyclic_thomas(a, b, c, rhs);
            for (std::size_t i = 0; i < m; ++i) m2_[i * dim_ + d] = x[i];
        }
    }

    static std::vector<double> thomas(std::vector<double> a, std::vector<double> b,
                                      std::vector<double> c, std::vector<double> d) {
        const std::size_t n = b.size();
        for (std::size_t i = 1; i < n; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        std::vector<double> x(n);
        x[n - 1] = d[n - 1] / b[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
        return x;
    }

    static std::vector<double> cyclic_thomas(const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             const std::vector<double>& c,
                                             const std::vector<double>& d) {
        const std::size_t n = b.size();
        const double alpha = a[0];   // coupling to x[n-1]
        const double beta = c[n - 1]; // coupling to x[0]
        const double gamma = -b[0];
        std::vector<double> bb = b;
        bb[0] = b[0] - gamma;
        bb[n - 1] = b[n - 1] - alpha * beta / gamma;
        std::vector<double> ar = a, cr = c;
        ar[0] = 0.0;
        cr[n - 1] = 0.0;
        std::vector<double> x = thomas(ar, bb, cr, d);
        std::vector<double> u(n, 0.0);
        u[0] = gamma;
        u[n - 1] = alpha;
        std::vector<double> z = thomas(ar, bb, cr, u);
        const double fact = (x[0] + beta * x[n - 1] / gamma) /
                            (1.0 + z[0] + beta * z[n - 1] / gamma);
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
        return out;
    }

    std::vector<double> u_;
    std::vector<double> y_;
    int dim_;
    double period_;
    std::vector<double> m2_; // second derivatives at knots
};

} // namespace ohara
