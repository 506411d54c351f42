#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlcg/integrate.hpp"
#include "nlcg/model.hpp"
#include "nlcg/profile.hpp"

namespace nlcg {

struct ScalingSpec {
    double lambda = 1.0;  // in [1/4, 4]; solution tests need a multiple of 1/4
    ModelParams params;
    void validate() const;
};

// lambda^(n/beta) * profile(lambda x), sampled exactly from the scaled
// analytic profile (no grid interpolation). Preserves the L^beta norm.
Field scaling_rescale(const ProfileSpec& profile, const ScalingSpec& spec, const Grid& grid);

// Trigonometric resampling of a grid field at lambda * x (lambda = num/den)
// via spectral zero padding; exact for band-limited data. Arguments beyond
// +-L/2 wrap, so only the |x|_inf <= L/(2 lambda) sub-box reads unaliased
// values when lambda > 1.
Field resample_scaled(const Field& u, int num, int den);

struct CovarianceResult {
    double residual;       // relative L2 distance on the wrap-free window
    double window_radius;  // half-width of the comparison sub-box
    long steps_a;
    long steps_b;
};

// Evolves u0 for lambda^2 t_probe and (u0)_lambda for t_probe with scale-
// matched fixed steps, then compares the rescaled trajectories. Small
// residuals witness the scaling covariance at the balance point
// alpha = 2 beta / n + 1 (with sigma + 1 = alpha, where the rescaled field
// solves the same system).
CovarianceResult scaling_solution_test(const ProfileSpec& u0_profile, const ScalingSpec& spec,
                                       double t_probe, const Grid& grid,
                                       const SolverConfig& solver);

struct InterpolationCheck {
    double r, q;
    double c0;
    double lambda_interp;
    double gamma;
    double lhs;     // ||v||_q^q
    double rhs;     // C(n) C0^(-lambda q/(2-lambda q)) ||v||_r^gamma + C0 ||grad v||_2^2
    double margin;  // rhs - lhs
};

// Fitted sufficient constant for the n = 3 interpolation inequality over the
// Gaussian probe family (widths 0.5..2, amplitudes 0.5..2); calibration
// metadata, not a proved constant.
inline constexpr double kFittedInterpolationConstant3 = 0.25;

InterpolationCheck interpolation_check(const Field& v, double r, double q, double c0,
                                       const ModelParams& params,
                                       double c_n = kFittedInterpolationConstant3);

// Smallest constant that closes the inequality over a probe family of fields
// for the given index pairs and C0 values.
double calibrate_interpolation_constant(const std::vector<Field>& probes,
                                        const std::vector<std::pair<double, double>>& rq_pairs,
                                        const std::vector<double>& c0_values,
                                        const ModelParams& params);

struct LbetaBoundCheck {
    bool passed;
    double bound;     // max(int u0^beta, 1 + (beta-1)/(beta+sigma-1))
    double worst;     // largest int u^beta seen on the trace
    double slack;     // tolerance added to the bound
};

// Trace-wide check of the a priori L^beta bound; only stated for
// sigma + 1 = alpha, other parameters are rejected.
LbetaBoundCheck lbeta_bound_check(const RunResult& result, const ModelParams& params);

struct PdeResidual {
    double value;
    bool absolute;  // true when the rhs norm vanished and the residual is absolute
};

// || (u_after - u_before)/dt - rhs(midpoint) ||_2 / || rhs(midpoint) ||_2
PdeResidual pde_residual(const Field& u_before, const Field& u_after, double dt,
                         const ModelParams& params);

// One line of the machine-readable check report.
struct CheckRecord {
    std::string check_name;
    nlohmann::json inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;
};
nlohmann::json to_json(const CheckRecord& rec);

struct CheckSuiteOptions {
    std::uint64_t seed = 20240817;
    // test hook: adds this offset to the exponent-identity lhs to verify the
    // suite actually fails closed
    double db_identity_perturbation = 0.0;
};

// The canned property suite behind the `check` subcommand: exponent-identity
// fuzzing, classifier totality, kernel constants, interpolation margins,
// scaling norms, and the L^beta bound on a small canned run.
std::vector<CheckRecord> check_suite(const CheckSuiteOptions& options);

}  // namespace nlcg
