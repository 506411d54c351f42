#pragma once

#include "nlcg/field.hpp"

namespace nlcg {

// Transforms. Plans are cached per grid size (FFTW_ESTIMATE: deterministic
// algorithm choice, so repeated runs are bit-identical). Both directions are
// safe to call concurrently on distinct arrays.
SpectralField forward(const Field& u);
Field inverse(const SpectralField& spec);  // normalized: inverse(forward(u)) == u

// In-place spectral multipliers.

// spec *= exp(-|k|^2 * t)  (heat semigroup; exact diffusion on the torus)
void apply_heat_factor(SpectralField& spec, double t);
// spec_k := spec_k / |k|^2 for k != 0, zero mode gauged to 0
void apply_inverse_neg_laplacian(SpectralField& spec);
// spec *= -|k|^2
void apply_neg_laplacian(SpectralField& spec);
// 2/3-rule: zero every mode with any axis index above floor(N/3)
void apply_dealias(SpectralField& spec);

// out := i*k_axis * spec  (axis in {0,1,2}); the Nyquist mode is zeroed
SpectralField derivative(const SpectralField& spec, int axis);
// acc += i*k_axis * spec  (divergence assembly)
void add_derivative(SpectralField& acc, const SpectralField& spec, int axis);

}  // namespace nlcg
