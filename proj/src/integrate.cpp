#include "nlcg/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlcg/kernels.hpp"
#include "nlcg/operators.hpp"

namespace nlcg {

void SolverConfig::validate() const {
    std::vector<std::string> bad;
    if (!(dt_min < dt_init))
        bad.push_back("solver.dt_min: must be below dt_init (dt_min=" + std::to_string(dt_min) +
                      ", dt_init=" + std::to_string(dt_init) + ")");
    if (!(dt_min > 0.0)) bad.push_back("solver.dt_min: must be positive");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        bad.push_back("solver.cfl_safety: must lie in (0,1] (got " + std::to_string(cfl_safety) + ")");
    if (!(t_end > 0.0)) bad.push_back("solver.t_end: must be positive (got " + std::to_string(t_end) + ")");
    if (!(blowup_linf_factor > 1.0)) bad.push_back("solver.blowup_linf_factor: must exceed 1");
    if (!(picard_tol > 0.0)) bad.push_back("solver.picard_tol: must be positive");
    if (picard_max_iters < 1) bad.push_back("solver.picard_max_iters: must be >= 1");
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::Imex1: return "imex1";
        case Scheme::Imex2: return "imex2";
        case Scheme::Duhamel: return "duhamel";
    }
    return "?";
}

std::string to_string(RunVerdict v) {
    switch (v) {
        case RunVerdict::ReachedTEnd: return "ReachedTEnd";
        case RunVerdict::BlowupDetected: return "BlowupDetected";
        case RunVerdict::DtUnderflow: return "DtUnderflow";
    }
    return "?";
}

namespace {

// Shared nonlinear evaluation: the dealiased spectrum of
// -div(u^sigma grad v) + u^alpha (1 - int u^beta), plus the quantities the
// step controller needs (max transport flux, nonlocal mass). Non-finite
// values flow through; callers decide between rejection and a hard error.
struct NonlinearEval {
    SpectralField spec;
    double max_flux = 0.0;
    double mass = 0.0;
};

NonlinearEval eval_nonlinear(const Field& u, const SpectralField& u_hat,
                             const ModelParams& params, TermToggles terms) {
    const Grid& g = u.grid();
    NonlinearEval out;
    out.spec = SpectralField(g);
    out.mass = nonlocal_mass(u, params.beta);

    if (terms.flux) {
        SpectralField v_hat = newtonian_potential_hat(u_hat);
        Field us(g);
        kernels::pow_clamped(u.values(), params.sigma, us.values());
        Field w(g);
        for (int axis = 0; axis < 3; ++axis) {
            Field dv = inverse(derivative(v_hat, axis));
            kernels::multiply(us.values(), dv.values(), w.values());
            out.max_flux = std::max(out.max_flux, kernels::max_abs(w.values()));
            SpectralField w_hat = forward(w);
            apply_dealias(w_hat);
            add_derivative(out.spec, w_hat, axis);
        }
        kernels::scale(out.spec.coeffs(), -1.0);  // -div(u^sigma grad v)
    }

    if (terms.reaction) {
        Field ua(g);
        kernels::pow_clamped(u.values(), params.alpha, ua.values());
        SpectralField r_hat = forward(ua);
        apply_dealias(r_hat);
        kernels::axpy({1.0 - out.mass, 0.0}, r_hat.coeffs(), out.spec.coeffs());
    }
    return out;
}

SpectralField imex_from_eval(const SpectralField& u_hat, const NonlinearEval& n0,
                             const ModelParams& params, Scheme scheme, double dt,
                             TermToggles terms) {
    if (scheme == Scheme::Imex1) {
        // exponential Euler: u+ = e^(-k^2 dt) (u + dt N(u))
        SpectralField next = u_hat;
        kernels::axpy({dt, 0.0}, n0.spec.coeffs(), next.coeffs());
        apply_heat_factor(next, dt);
        return next;
    }
    // midpoint stage under the integrating factor
    SpectralField half = u_hat;
    kernels::axpy({0.5 * dt, 0.0}, n0.spec.coeffs(), half.coeffs());
    apply_heat_factor(half, 0.5 * dt);
    Field u_half = inverse(half);
    NonlinearEval n1 = eval_nonlinear(u_half, half, params, terms);
    apply_heat_factor(n1.spec, 0.5 * dt);
    SpectralField next = u_hat;
    apply_heat_factor(next, dt);
    kernels::axpy({dt, 0.0}, n1.spec.coeffs(), next.coeffs());
    return next;
}

SpectralField duhamel_from_state(const Field& u, const SpectralField& u_hat,
                                 const ModelParams& params, const SolverConfig& config,
                                 double dt, TermToggles terms, StepInfo* info) {
    // Mild form over one step: z = G(dt)*z0 + int grad G * (zH) + int G * F,
    // H = u^(sigma-1) grad v (so zH = u^sigma grad v), F = u^alpha (1 - int u^beta).
    // The heat semigroup acts spectrally; both time integrals use the midpoint
    // rule with the midpoint iterate taken as the endpoint average.
    SpectralField propagated = u_hat;
    apply_heat_factor(propagated, dt);

    SpectralField z_hat = propagated;  // first iterate: semigroup only
    Field z = inverse(z_hat);
    const Grid& g = u.grid();

    double prev_delta = std::numeric_limits<double>::infinity();
    int growth_streak = 0;
    int iters = 0;
    bool converged = false;
    for (int m = 0; m < config.picard_max_iters; ++m) {
        Field mid(g);
        {
            auto a = u.values();
            auto b = z.values();
            auto o = mid.values();
            const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(o.size());
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < nn; ++i) o[i] = 0.5 * (a[i] + b[i]);
        }
        SpectralField mid_hat = forward(mid);
        NonlinearEval nl = eval_nonlinear(mid, mid_hat, params, terms);
        apply_heat_factor(nl.spec, 0.5 * dt);  // kernels evaluated at the interval midpoint
        SpectralField next_hat = propagated;
        kernels::axpy({dt, 0.0}, nl.spec.coeffs(), next_hat.coeffs());

        Field next = inverse(next_hat);
        double delta = 0.0;
        {
            auto a = next.values();
            auto b = z.values();
            const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static) reduction(max : delta)
            for (std::ptrdiff_t i = 0; i < nn; ++i) delta = std::max(delta, std::abs(a[i] - b[i]));
        }
        z = std::move(next);
        z_hat = std::move(next_hat);
        ++iters;
        if (delta < config.picard_tol) {
            converged = true;
            break;
        }
        if (!(delta <= prev_delta)) {
            if (++growth_streak >= 3) break;  // not contracting; caller rejects the step
        } else {
            growth_streak = 0;
        }
        prev_delta = delta;
    }
    if (info) {
        info->picard_iters = iters;
        info->accepted = converged || growth_streak < 3;
    }
    return z_hat;
}

double negativity_budget(const Field& f) {
    return kNegativityBudgetRel * std::max(kernels::max_value(f.values()), 0.0);
}

void check_finite(const Field& f, const char* term) {
    if (!kernels::all_finite(f.values()))
        throw NumericalError(std::string("rhs: non-finite values in ") + term);
}

}  // namespace

Field rhs(const Field& u, const ModelParams& params, TermToggles terms) {
    params.validate();
    check_finite(u, "input state");
    SpectralField u_hat = forward(u);
    SpectralField acc(u.grid());
    if (terms.flux) {
        NonlinearEval fx = eval_nonlinear(u, u_hat, params, {.flux = true, .reaction = false});
        check_finite(inverse(fx.spec), "aggregation term div(u^sigma grad v)");
        kernels::axpy({1.0, 0.0}, fx.spec.coeffs(), acc.coeffs());
    }
    if (terms.reaction) {
        NonlinearEval re = eval_nonlinear(u, u_hat, params, {.flux = false, .reaction = true});
        check_finite(inverse(re.spec), "reaction term u^alpha (1 - int u^beta)");
        kernels::axpy({1.0, 0.0}, re.spec.coeffs(), acc.coeffs());
    }
    SpectralField lap = u_hat;
    apply_neg_laplacian(lap);
    kernels::axpy({1.0, 0.0}, lap.coeffs(), acc.coeffs());
    Field out = inverse(acc);
    check_finite(out, "assembled right-hand side");
    return out;
}

SpectralField step_imex(const RunState& state, const SpectralField& u_hat,
                        const ModelParams& params, const SolverConfig& config, double dt,
                        TermToggles terms) {
    NonlinearEval n0 = eval_nonlinear(state.u, u_hat, params, terms);
    return imex_from_eval(u_hat, n0, params, config.scheme, dt, terms);
}

SpectralField step_duhamel(const RunState& state, const SpectralField& u_hat,
                           const ModelParams& params, const SolverConfig& config, double dt,
                           TermToggles terms, StepInfo* info) {
    return duhamel_from_state(state.u, u_hat, params, config, dt, terms, info);
}

RunResult run(const Field& u0, const ModelParams& params, const SolverConfig& config,
              TermToggles terms) {
    params.validate();
    config.validate();
    check_finite(u0, "initial state");

    const Grid& g = u0.grid();
    RunResult result;
    result.scheme = config.scheme;

    RunState state{0.0, u0, config.dt_init, 0};
    kernels::clamp_small_negatives(state.u.values(), negativity_budget(state.u));
    SpectralField u_hat = forward(state.u);
    const double linf0 = linf_norm(state.u);

    auto record = [&](double dt_used) {
        const double s_beta =
            kernels::sum_clamped_pow(state.u.values(), params.beta) * g.cell_volume();
        result.trace.push_back(TraceRow{
            state.t, dt_used,
            kernels::sum_abs_pow(state.u.values(), 1.0) * g.cell_volume(),
            std::pow(s_beta, 1.0 / params.beta),
            lk_norm(state.u, params.beta + params.alpha - 1.0),
            linf_norm(state.u),
            s_beta,
        });
    };
    record(config.dt_init);

    double dt_prev = config.dt_init;
    while (state.t < config.t_end * (1.0 - 1e-14)) {
        if (state.step_count >= config.max_steps)
            throw NumericalError("run: step budget exhausted before t_end (" +
                                 std::to_string(config.max_steps) + " steps)");

        // One nonlinear evaluation serves both the dt controller and the
        // first stage of the IMEX schemes; rejections reuse it.
        NonlinearEval n0 = eval_nonlinear(state.u, u_hat, params, terms);

        double dt = config.dt_init;
        if (config.adaptive_dt) {
            const double linf = linf_norm(state.u);
            const double t_adv = n0.max_flux > 0.0 ? g.spacing() / n0.max_flux
                                                   : std::numeric_limits<double>::infinity();
            const double t_reac =
                linf > 0.0 ? 1.0 / (params.alpha * std::pow(linf, params.alpha - 1.0) *
                                    (1.0 + n0.mass))
                           : std::numeric_limits<double>::infinity();
            dt = config.cfl_safety * std::min(t_adv, t_reac);
            if (!std::isfinite(dt)) dt = config.t_end - state.t;
            dt = std::min(dt, 2.0 * dt_prev);
        }
        dt = std::min(dt, config.t_end - state.t);

        Field candidate;
        SpectralField candidate_hat;
        int rejections = 0;
        double clamp_worst = 0.0;
        for (;;) {
            bool scheme_ok = true;
            if (config.scheme == Scheme::Duhamel) {
                StepInfo info;
                candidate_hat = duhamel_from_state(state.u, u_hat, params, config, dt, terms, &info);
                scheme_ok = info.accepted;
            } else {
                candidate_hat = imex_from_eval(u_hat, n0, params, config.scheme, dt, terms);
            }
            candidate = inverse(candidate_hat);
            const double budget = negativity_budget(candidate);
            if (scheme_ok && kernels::all_finite(candidate.values()) &&
                kernels::min_value(candidate.values()) >= -budget) {
                clamp_worst = kernels::clamp_small_negatives(candidate.values(), budget);
                break;
            }
            dt *= 0.5;
            ++rejections;
            if (dt < config.dt_min || rejections > config.max_step_rejections) {
                result.verdict = RunVerdict::DtUnderflow;
                result.final_state = state.u;
                return result;
            }
        }

        state.u = std::move(candidate);
        // clamping perturbs the spectrum; refresh only when it acted
        u_hat = clamp_worst < 0.0 ? forward(state.u) : std::move(candidate_hat);
        state.t += dt;
        state.dt = dt;
        dt_prev = dt;
        ++state.step_count;
        record(dt);

        if (linf_norm(state.u) > config.blowup_linf_factor * std::max(linf0, 1e-300)) {
            result.verdict = RunVerdict::BlowupDetected;
            result.final_state = state.u;
            return result;
        }
    }
    result.verdict = RunVerdict::ReachedTEnd;
    result.final_state = state.u;
    return result;
}

}  // namespace nlcg
