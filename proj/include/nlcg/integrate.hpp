#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlcg/field.hpp"
#include "nlcg/model.hpp"
#include "nlcg/spectral.hpp"

namespace nlcg {

enum class Scheme { Imex1, Imex2, Duhamel };
std::string to_string(Scheme s);

struct SolverConfig {
    double dt_init = 1e-3;
    double dt_min = 1e-9;
    double cfl_safety = 0.5;  // in (0,1]
    double t_end = 1.0;
    double blowup_linf_factor = 1e6;
    double picard_tol = 1e-10;  // absolute L^inf distance between iterates
    int picard_max_iters = 50;
    Scheme scheme = Scheme::Imex2;
    bool adaptive_dt = true;   // false: fixed dt_init (convergence studies)
    int max_step_rejections = 40;
    long max_steps = 200000;

    void validate() const;
};

// Test hooks: drop the transport or reaction term to isolate subproblems.
struct TermToggles {
    bool flux = true;
    bool reaction = true;
};

struct RunState {
    double t = 0.0;
    Field u;
    double dt = 0.0;
    long step_count = 0;
};

struct TraceRow {
    double t;
    double dt;
    double l1;
    double lbeta;
    double lbam1;  // L^(beta+alpha-1)
    double linf;
    double nonlocal_mass;  // int u^beta
};

enum class RunVerdict { ReachedTEnd, BlowupDetected, DtUnderflow };
std::string to_string(RunVerdict v);

struct RunResult {
    std::vector<TraceRow> trace;
    RunVerdict verdict;
    Field final_state;
    Scheme scheme;
};

// Full right-hand side lap u - div(u^sigma grad v) + u^alpha(1 - int u^beta)
// with v the mean-zero Newtonian potential; nonlinear products dealiased by
// the 2/3 rule. Throws NumericalError naming the offending term on NaN.
Field rhs(const Field& u, const ModelParams& params, TermToggles terms = {});

struct StepInfo {
    int picard_iters = 0;   // Duhamel only
    bool accepted = true;
};

// One accepted step of the requested scheme. Diffusion is exact through the
// heat factor; transport and reaction are explicit (Imex1) or midpoint-staged
// (Imex2). Duhamel iterates the mild form to a fixed point. The candidate is
// rejected (caller halves dt) when the negative-part budget is exceeded; the
// budget is eps_neg = 1e-10 * max(u).
SpectralField step_imex(const RunState& state, const SpectralField& u_hat,
                        const ModelParams& params, const SolverConfig& config, double dt,
                        TermToggles terms = {});
SpectralField step_duhamel(const RunState& state, const SpectralField& u_hat,
                           const ModelParams& params, const SolverConfig& config, double dt,
                           TermToggles terms = {}, StepInfo* info = nullptr);

inline constexpr double kNegativityBudgetRel = 1e-10;

// Advance u0 to t_end or a termination verdict, recording one trace row per
// accepted step. Adaptive dt = cfl * min(h / max|u^sigma grad v|, reaction
// timescale), never growing more than 2x per step.
RunResult run(const Field& u0, const ModelParams& params, const SolverConfig& config,
              TermToggles terms = {});

}  // namespace nlcg
