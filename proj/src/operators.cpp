#include "nlcg/operators.hpp"

#include <cmath>
#include <numbers>

#include "nlcg/errors.hpp"
#include "nlcg/kernels.hpp"

namespace nlcg {

KernelConstants kernel_constants(int n) {
    if (n < 3) throw ValidationError("kernel constants require dimension >= 3 (got " + std::to_string(n) + ")");
    const double b_n = std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
    const double c_n = 1.0 / (n * (n - 2) * b_n);
    return {b_n, c_n};
}

SpectralField newtonian_potential_hat(const SpectralField& u_hat) {
    SpectralField v_hat = u_hat;
    apply_inverse_neg_laplacian(v_hat);
    return v_hat;
}

Field newtonian_potential(const Field& u) {
    if (!kernels::all_finite(u.values())) throw NumericalError("newtonian_potential: non-finite input field");
    return inverse(newtonian_potential_hat(forward(u)));
}

std::array<Field, 3> gradient(const Field& v) {
    SpectralField vh = forward(v);
    return {inverse(derivative(vh, 0)), inverse(derivative(vh, 1)), inverse(derivative(vh, 2))};
}

double lk_norm(const Field& u, double k) {
    if (k < 1.0) throw ValidationError("lk_norm: index must be >= 1 (got " + std::to_string(k) + ")");
    const bool integral = std::nearbyint(k) == k;
    const double s = integral ? kernels::sum_abs_pow(u.values(), k)
                              : kernels::sum_clamped_pow(u.values(), k);
    return std::pow(s * u.grid().cell_volume(), 1.0 / k);
}

double linf_norm(const Field& u) { return kernels::max_abs(u.values()); }

double l2_norm(const Field& u) {
    return std::sqrt(kernels::sum_abs_pow(u.values(), 2.0) * u.grid().cell_volume());
}

double nonlocal_mass(const Field& u, double beta) {
    return kernels::sum_clamped_pow(u.values(), beta) * u.grid().cell_volume();
}

double field_mean(const Field& u) {
    return kernels::sum(u.values()) / static_cast<double>(u.grid().size());
}

}  // namespace nlcg
