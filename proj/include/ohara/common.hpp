#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohara {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

using VecView = std::span<const double>;

inline double dot(VecView a, VecView b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(VecView a) { return dot(a, a); }

inline double norm(VecView a) { return std::sqrt(norm2(a)); }

inline double dist(VecView a, VecView b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double clamp_unit(double x) {
    if (x > 1.0) return 1.0;
    if (x < -1.0) return -1.0;
    return x;
}

// Neumaier-compensated accumulator; keeps long pair sums reproducible
// and permutation-insensitive at the 1e-13 level.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Hurwitz zeta by Euler-Maclaurin, continued to s > -3, s != 1.
inline double hurwitz_zeta(double s, double q) {
    if (std::abs(s - 1.0) < 1e-14)
        throw std::domain_error("hurwitz_zeta: pole at s = 1");
    const int kTerms = 24;
    double acc = 0.0;
    for (int k = 0; k < kTerms; ++k) acc += std::pow(q + k, -s);
    const double x = q + kTerms;
    acc += std::pow(x, 1.0 - s) / (s - 1.0);
    acc += 0.5 * std::pow(x, -s);
    acc += s * std::pow(x, -s - 1.0) / 12.0;
    acc -= s * (s + 1.0) * (s + 2.0) * std::pow(x, -s - 3.0) / 720.0;
    return acc;
}

// Adaptive Simpson on a finite interval.
namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double fa, double b, double fb, double m, double fm,
                   double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // second test: stop once the correction is below roundoff for this panel,
    // whatever the requested tolerance — recursing further cannot help
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
        std::abs(delta) <= 4.0 * std::numeric_limits<double>::epsilon() *
                               (std::abs(left) + std::abs(right)))
        return left + right + delta / 15.0;
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <class F>
double integrate_adaptive(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

} // namespace ohara
