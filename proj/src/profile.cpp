#include "nlcg/profile.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nlcg/errors.hpp"

namespace nlcg {

namespace {

double min_image(double d, double L) { return d - L * std::round(d / L); }

void add_bump(Field& f, const GaussianBump& b) {
    const Grid& g = f.grid();
    if (!(b.width > 0.0)) throw ValidationError("profile: gaussian width must be positive");
    if (b.width > g.length / 8.0)
        throw ValidationError("profile: gaussian width " + std::to_string(b.width) +
                              " exceeds L/8 = " + std::to_string(g.length / 8.0) +
                              " (periodization budget)");
    const int n = g.n_points;
    const double inv2s2 = 1.0 / (2.0 * b.width * b.width);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double dx = min_image(g.coord(i) - b.center[0], g.length);
        for (int j = 0; j < n; ++j) {
            const double dy = min_image(g.coord(j) - b.center[1], g.length);
            for (int k = 0; k < n; ++k) {
                const double dz = min_image(g.coord(k) - b.center[2], g.length);
                f(i, j, k) += b.amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) * inv2s2);
            }
        }
    }
}

// Smooth random field: sum of low-mode cosines with seeded phases, normalized
// to max amplitude ~1.
void apply_perturbation(Field& f, const Perturbation& p) {
    if (p.amplitude == 0.0) return;
    const Grid& g = f.grid();
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    struct Mode {
        double kx, ky, kz, a, ph;
    };
    std::vector<Mode> modes;
    for (int mx = 0; mx <= p.modes; ++mx)
        for (int my = -p.modes; my <= p.modes; ++my)
            for (int mz = -p.modes; mz <= p.modes; ++mz) {
                if (mx == 0 && my == 0 && mz == 0) continue;
                if (mx == 0 && (my < 0 || (my == 0 && mz < 0))) continue;  // one per conjugate pair
                modes.push_back({g.wavenumber(mx), g.wavenumber(my), g.wavenumber(mz),
                                 amp(rng), phase(rng)});
            }
    double norm = 0.0;
    for (const auto& m : modes) norm += std::abs(m.a);
    if (norm == 0.0) return;
    const int n = g.n_points;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        const double x = g.coord(i);
        for (int j = 0; j < n; ++j) {
            const double y = g.coord(j);
            for (int k = 0; k < n; ++k) {
                const double z = g.coord(k);
                double xi = 0.0;
                for (const auto& m : modes)
                    xi += m.a * std::cos(m.kx * x + m.ky * y + m.kz * z + m.ph);
                f(i, j, k) *= 1.0 + p.amplitude * xi / norm;
            }
        }
    }
}

}  // namespace

Field sample_profile(const ProfileSpec& spec, const Grid& grid) {
    Field f(grid);
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantProfile>) {
                for (auto& v : f.values()) v = shape.value;
            } else if constexpr (std::is_same_v<T, GaussianBump>) {
                add_bump(f, shape);
            } else {
                for (const auto& b : shape.bumps) add_bump(f, b);
            }
        },
        spec.shape);
    apply_perturbation(f, spec.perturbation);
    return f;
}

double profile_mass(const ProfileSpec& spec, const Grid& grid) {
    const double box = grid.length * grid.length * grid.length;
    return std::visit(
        [&](const auto& shape) -> double {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantProfile>) {
                return shape.value * box;
            } else if constexpr (std::is_same_v<T, GaussianBump>) {
                return shape.amplitude * std::pow(2.0 * std::numbers::pi, 1.5) *
                       shape.width * shape.width * shape.width;
            } else {
                double m = 0.0;
                for (const auto& b : shape.bumps)
                    m += b.amplitude * std::pow(2.0 * std::numbers::pi, 1.5) * b.width * b.width * b.width;
                return m;
            }
        },
        spec.shape);
}

ProfileSpec scale_profile(const ProfileSpec& spec, double lambda, int n, double beta) {
    const double gain = std::pow(lambda, static_cast<double>(n) / beta);
    auto scale_bump = [&](const GaussianBump& b) {
        return GaussianBump{gain * b.amplitude, b.width / lambda,
                            {b.center[0] / lambda, b.center[1] / lambda, b.center[2] / lambda}};
    };
    ProfileSpec out = spec;
    std::visit(
        [&](const auto& shape) {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, ConstantProfile>) {
                out.shape = ConstantProfile{gain * shape.value};
            } else if constexpr (std::is_same_v<T, GaussianBump>) {
                out.shape = scale_bump(shape);
            } else {
                MultiBumpProfile mb;
                for (const auto& b : shape.bumps) mb.bumps.push_back(scale_bump(b));
                out.shape = mb;
            }
        },
        spec.shape);
    return out;
}

}  // namespace nlcg
