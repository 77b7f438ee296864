#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohara/curve.hpp"
#include "ohara/kernel.hpp"

namespace ohara {

// Curve file: one point per line, whitespace-separated coordinates, closed by
// convention (first point not repeated). Returns flat row-major samples.
inline std::vector<double> read_curve_points(const std::string& path, int* dim_out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    std::vector<double> points;
    int dim = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (row.empty()) continue;
        if (dim < 0) dim = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != dim)
            throw std::runtime_error("curve file: inconsistent coordinate count in " + path);
        points.insert(points.end(), row.begin(), row.end());
    }
    if (dim < 2) throw std::runtime_error("curve file: need at least 2 coordinates per point");
    *dim_out = dim;
    return points;
}

inline void write_curve_points(const std::string& path, const Curve& c) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file: " + path);
    out << std::setprecision(17);
    for (int i = 0; i < c.n; ++i) {
        for (int d = 0; d < c.dim; ++d) out << (d ? " " : "") << c.pos[static_cast<std::size_t>(i) * c.dim + d];
        out << "\n";
    }
}

// Kernel file: first non-comment line is the tail exponent, then (t, Phi(t))
// pairs, one per line.
inline Kernel read_kernel_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open kernel file: " + path);
    std::string line;
    double tail_exponent = 0.0;
    bool have_tail = false;
    std::vector<double> t, phi;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!have_tail) {
            if (!(ls >> tail_exponent))
                throw std::runtime_error("kernel file: bad tail exponent header");
            have_tail = true;
            continue;
        }
        double a, b;
        if (ls >> a >> b) {
            t.push_back(a);
            phi.push_back(b);
        }
    }
    if (!have_tail) throw std::runtime_error("kernel file: missing tail exponent header");
    return Kernel::tabulated(std::move(t), std::move(phi), tail_exponent);
}

// FNV-1a, used to stamp outputs with a reproducible config hash.
inline std::uint64_t fnv1a_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace ohara
