#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "nlcg/field.hpp"

namespace nlcg {

struct GaussianBump {
    double amplitude = 1.0;
    double width = 1.0;  // standard deviation of exp(-|x-c|^2 / (2 width^2))
    std::array<double, 3> center{0.0, 0.0, 0.0};
};

struct ConstantProfile {
    double value = 0.0;
};

struct MultiBumpProfile {
    std::vector<GaussianBump> bumps;
};

// Optional smooth multiplicative perturbation (1 + amplitude * xi(x)) with xi
// a band-limited random field drawn from the recorded seed.
struct Perturbation {
    double amplitude = 0.0;
    std::uint64_t seed = 0;
    int modes = 2;  // highest wavenumber index per axis
};

struct ProfileSpec {
    std::variant<GaussianBump, MultiBumpProfile, ConstantProfile> shape = ConstantProfile{};
    Perturbation perturbation{};
};

// Samples the profile on the grid. Gaussians are periodized by the nearest
// image only; widths above L/8 are rejected (the wrap error would exceed the
// sampling budget).
Field sample_profile(const ProfileSpec& spec, const Grid& grid);

// Analytic total mass of the unperturbed profile (integral over R^3 for
// bumps, c*L^3 for constants).
double profile_mass(const ProfileSpec& spec, const Grid& grid);

// The profile of lambda^(n/beta) * u(lambda x): bumps map to bumps with
// scaled amplitude, width and center. Exact, no grid interpolation.
ProfileSpec scale_profile(const ProfileSpec& spec, double lambda, int n, double beta);

}  // namespace nlcg
