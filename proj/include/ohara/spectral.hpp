#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ohara/common.hpp"

namespace ohara {

namespace detail {

using cplx = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_radix2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

// O(n^2) fallback for non-power-of-two sizes; fine at desk scale.
inline std::vector<cplx> dft_naive(const std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    std::vector<cplx> out(n);
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sgn * 2.0 * kPi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            acc += a[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

inline void fft(std::vector<cplx>& a, bool inverse) {
    if (is_pow2(a.size()))
        fft_radix2(a, inverse);
    else
        a = dft_naive(a, inverse);
}

} // namespace detail

// d^order/ds^order of the trigonometric interpolant of periodic samples.
// vals is n x dim row-major; the grid is uniform with total period `period`.
inline std::vector<double> spectral_derivative(const std::vector<double>& vals, int dim,
                                               double period, int order = 1) {
    const std::size_t n = vals.size() / static_cast<std::size_t>(dim);
    std::vector<double> out(vals.size());
    std::vector<detail::cplx> work(n);
    for (int d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < n; ++i) work[i] = vals[i * dim + d];
        detail::fft(work, false);
        for (std::size_t k = 0; k < n; ++k) {
            long kk = static_cast<long>(k);
            if (kk > static_cast<long>(n) / 2) kk -= static_cast<long>(n);
            if (n % 2 == 0 && k == n / 2 && (order % 2 == 1)) {
                work[k] = 0.0; // Nyquist mode has no well-defined odd derivative
                continue;
            }
            const detail::cplx ik(0.0, 2.0 * kPi * static_cast<double>(kk) / period);
            detail::cplx f(1.0, 0.0);
            for (int o = 0; o < order; ++o) f *= ik;
            work[k] *= f;
        }
        detail::fft(work, true);
        for (std::size_t i = 0; i < n; ++i) out[i * dim + d] = work[i].real();
    }
    return out;
}

// Trigonometric resampling of periodic samples to n_out points (band-limited
// zero padding / truncation).
inline std::vector<double> spectral_resample(const std::vector<double>& vals, int dim,
                                             std::size_t n_out) {
    const std::size_t n = vals.size() / static_cast<std::size_t>(dim);
    if (n_out == n) return vals;
    std::vector<double> out(n_out * static_cast<std::size_t>(dim));
    std::vector<detail::cplx> work(n), padded(n_out, detail::cplx(0.0, 0.0));
    for (int d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < n; ++i) work[i] = vals[i * dim + d];
        detail::fft(work, false);
        std::fill(padded.begin(), padded.end(), detail::cplx(0.0, 0.0));
        const std::size_t half = std::min(n, n_out) / 2;
        for (std::size_t k = 0; k <= half; ++k) padded[k] = work[k];
        for (std::size_t k = 1; k < half; ++k) padded[n_out - k] = work[n - k];
        if (std::min(n, n_out) % 2 == 0 && half >= 1) {
            // split the Nyquist mode symmetrically when upsampling
            if (n_out > n) {
                padded[half] = 0.5 * work[half];
                padded[n_out - half] = 0.5 * work[half];
            }
        }
        detail::fft(padded, true);
        const double scale = static_cast<double>(n_out) / static_cast<double>(n);
        for (std::size_t i = 0; i < n_out; ++i) out[i * dim + d] = padded[i].real() * scale;
    }
    return out;
}

} // namespace ohara
