#pragma once

#include <array>

#include "nlcg/field.hpp"
#include "nlcg/spectral.hpp"

namespace nlcg {

// Fundamental-solution constants: b_n the unit-ball volume, c_n the kernel
// prefactor, so the free-space kernel is c_n |x|^(2-n).
struct KernelConstants {
    double b_n;
    double c_n;
};
KernelConstants kernel_constants(int n);

// Chemical concentration v with spectral coefficients u_hat(k)/|k|^2 and
// v_hat(0) = 0. Equivalently the mean-zero solution of -lap v = u - mean(u)
// on the torus; only grad v enters the dynamics, so the gauge is immaterial.
Field newtonian_potential(const Field& u);
SpectralField newtonian_potential_hat(const SpectralField& u_hat);

std::array<Field, 3> gradient(const Field& v);

// (sum |u|^k h^3)^(1/k) for integral k; negatives are clamped to zero before
// powering when k is fractional. Rejects k < 1.
double lk_norm(const Field& u, double k);
double linf_norm(const Field& u);
double l2_norm(const Field& u);
// sum max(u,0)^beta h^3
double nonlocal_mass(const Field& u, double beta);
double field_mean(const Field& u);

}  // namespace nlcg
