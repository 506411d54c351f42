#pragma once

#include <cstddef>
#include <numbers>

#include "nlcg/errors.hpp"

namespace nlcg {

// Uniform periodic grid on [-L/2, L/2)^3. Points per axis must be even and
// >= 16; powers of two give the fastest transforms.
struct Grid {
    int n_points = 0;
    double length = 0.0;

    double spacing() const { return length / n_points; }
    double cell_volume() const {
        const double h = spacing();
        return h * h * h;
    }
    std::size_t size() const {
        return static_cast<std::size_t>(n_points) * n_points * n_points;
    }
    // r2c layout: last axis holds n/2+1 complex modes.
    std::size_t spectral_size() const {
        return static_cast<std::size_t>(n_points) * n_points * (n_points / 2 + 1);
    }
    // Coordinate of axis sample i.
    double coord(int i) const { return -0.5 * length + spacing() * i; }
    // Signed integer mode for axis index i in 0..N-1.
    int mode(int i) const { return i <= n_points / 2 ? i : i - n_points; }
    // Angular wavenumber 2*pi*m/L.
    double wavenumber(int m) const {
        return 2.0 * std::numbers::pi * static_cast<double>(m) / length;
    }

    bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int n_points, double length) {
    std::vector<std::string> bad;
    if (n_points < 16) bad.push_back("grid.points: must be >= 16 (got " + std::to_string(n_points) + ")");
    if (n_points % 2 != 0) bad.push_back("grid.points: must be even (got " + std::to_string(n_points) + ")");
    if (!(length > 0.0)) bad.push_back("grid.length: must be positive (got " + std::to_string(length) + ")");
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return Grid{n_points, length};
}

}  // namespace nlcg
