#include "nlcg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nlcg/kernels.hpp"
#include "nlcg/operators.hpp"
#include "nlcg/spectral.hpp"

namespace nlcg {

void ScalingSpec::validate() const {
    params.validate();
    if (!(lambda >= 0.25 && lambda <= 4.0))
        throw ValidationError("scaling.lambda: must lie in [1/4, 4] (got " + std::to_string(lambda) +
                              "), outside the resolution-safe range");
}

Field scaling_rescale(const ProfileSpec& profile, const ScalingSpec& spec, const Grid& grid) {
    spec.validate();
    ProfileSpec scaled = scale_profile(profile, spec.lambda, spec.params.n, spec.params.beta);
    return sample_profile(scaled, grid);
}

namespace {

// lambda as num/den with den in {1,2,4}; the grid map stays exact on integers.
std::pair<int, int> rational_lambda(double lambda) {
    for (int den : {1, 2, 4}) {
        const double scaled = lambda * den;
        if (std::nearbyint(scaled) == scaled)
            return {static_cast<int>(scaled), den};
    }
    throw ValidationError("scaling.lambda: solution test needs lambda to be a multiple of 1/4 (got " +
                          std::to_string(lambda) + ")");
}

}  // namespace

Field resample_scaled(const Field& u, int num, int den) {
    const Grid& g = u.grid();
    const int n = g.n_points;
    const int nf = den * n;
    const Grid fine{nf, g.length};

    Field up(fine);
    if (den == 1) {
        up = u;
    } else {
        // zero-pad the spectrum; the (vanishing) Nyquist planes are dropped
        SpectralField src = forward(u);
        SpectralField dst(fine);
        const int nzs = n / 2 + 1;
        const int nzd = nf / 2 + 1;
        auto s = src.coeffs();
        auto d = dst.coeffs();
        const double gain = static_cast<double>(fine.size()) / static_cast<double>(g.size());
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) {
            const int mi = g.mode(i);
            if (std::abs(mi) == n / 2) continue;
            const int fi = mi >= 0 ? mi : mi + nf;
            for (int j = 0; j < n; ++j) {
                const int mj = g.mode(j);
                if (std::abs(mj) == n / 2) continue;
                const int fj = mj >= 0 ? mj : mj + nf;
                const std::size_t src_base = (static_cast<std::size_t>(i) * n + j) * nzs;
                const std::size_t dst_base = (static_cast<std::size_t>(fi) * nf + fj) * nzd;
                for (int k = 0; k < n / 2; ++k) d[dst_base + k] = gain * s[src_base + k];
            }
        }
        up = inverse(dst);
    }

    // x_i maps to the fine index num*i + (den-num)*N/2 (mod den*N)
    Field out(g);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        long m = static_cast<long>(num) * i + static_cast<long>(den - num) * (n / 2);
        idx[i] = static_cast<int>(((m % nf) + nf) % nf);
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out(i, j, k) = up(idx[i], idx[j], idx[k]);
    return out;
}

CovarianceResult scaling_solution_test(const ProfileSpec& u0_profile, const ScalingSpec& spec,
                                       double t_probe, const Grid& grid,
                                       const SolverConfig& solver) {
    spec.validate();
    const ModelParams& p = spec.params;
    const double balance = 2.0 * p.beta / p.n + 1.0;
    if (std::abs(p.alpha - balance) > 1e-9 || std::abs(p.eta() - p.alpha) > 1e-9)
        throw ValidationError(
            "scaling solution test requires the balance point alpha = 2 beta/n + 1 with "
            "sigma + 1 = alpha");
    auto [num, den] = rational_lambda(spec.lambda);
    const double lambda = spec.lambda;

    ProfileSpec scaled_profile = scale_profile(u0_profile, lambda, p.n, p.beta);
    // features of either run must stay resolvable
    auto min_width = [&](const ProfileSpec& ps) {
        double w = std::numeric_limits<double>::infinity();
        if (const auto* b = std::get_if<GaussianBump>(&ps.shape)) w = b->width;
        if (const auto* mb = std::get_if<MultiBumpProfile>(&ps.shape))
            for (const auto& b : mb->bumps) w = std::min(w, b.width);
        return w;
    };
    if (std::min(min_width(u0_profile), min_width(scaled_profile)) < 4.0 * grid.spacing())
        throw ValidationError("scaling solution test: lambda pushes profile width below 4 grid cells");

    // scale-matched fixed stepping: run A covers lambda^2 t with dt scaled by
    // lambda^2, so both runs take the same number of steps
    SolverConfig cfg_a = solver;
    cfg_a.adaptive_dt = false;
    cfg_a.dt_init = solver.dt_init * lambda * lambda;
    cfg_a.dt_min = std::min(cfg_a.dt_min, cfg_a.dt_init * 1e-6);
    cfg_a.t_end = lambda * lambda * t_probe;
    SolverConfig cfg_b = cfg_a;
    cfg_b.dt_init = solver.dt_init;
    cfg_b.dt_min = std::min(solver.dt_min, cfg_b.dt_init * 1e-6);
    cfg_b.t_end = t_probe;

    const Field u0 = sample_profile(u0_profile, grid);
    const Field u0l = sample_profile(scaled_profile, grid);
    RunResult ra = run(u0, p, cfg_a);
    RunResult rb = run(u0l, p, cfg_b);
    if (ra.verdict != RunVerdict::ReachedTEnd || rb.verdict != RunVerdict::ReachedTEnd)
        throw NumericalError("scaling solution test: reference runs did not reach t_end");

    Field pred = resample_scaled(ra.final_state, num, den);
    const double gain = std::pow(lambda, static_cast<double>(p.n) / p.beta);

    // compare on the wrap-free window |x|_inf <= L / (2 lambda)
    const double rw = lambda > 1.0 ? grid.length / (2.0 * lambda) : 0.5 * grid.length;
    const int n = grid.n_points;
    double num2 = 0.0, den2 = 0.0;
    for (int i = 0; i < n; ++i) {
        if (std::abs(grid.coord(i)) > rw) continue;
        for (int j = 0; j < n; ++j) {
            if (std::abs(grid.coord(j)) > rw) continue;
            for (int k = 0; k < n; ++k) {
                if (std::abs(grid.coord(k)) > rw) continue;
                const double want = gain * pred(i, j, k);
                const double got = rb.final_state(i, j, k);
                num2 += (got - want) * (got - want);
                den2 += want * want;
            }
        }
    }
    CovarianceResult out;
    out.residual = den2 > 0.0 ? std::sqrt(num2 / den2) : std::sqrt(num2);
    out.window_radius = rw;
    out.steps_a = ra.trace.empty() ? 0 : static_cast<long>(ra.trace.size()) - 1;
    out.steps_b = rb.trace.empty() ? 0 : static_cast<long>(rb.trace.size()) - 1;
    return out;
}

InterpolationCheck interpolation_check(const Field& v, double r, double q, double c0,
                                       const ModelParams& params, double c_n) {
    const double p = sobolev_exponent(params.n);
    std::vector<std::string> bad;
    if (!(r >= 1.0)) bad.push_back("interpolation: r must be >= 1 (got " + std::to_string(r) + ")");
    if (!(r < q)) bad.push_back("interpolation: requires r < q");
    if (!(q < p)) bad.push_back("interpolation: requires q < p = " + std::to_string(p));
    if (!(q / r < 2.0 / r + 1.0 - 2.0 / p))
        bad.push_back("interpolation: requires q/r < 2/r + 1 - 2/p");
    if (!(c0 > 0.0)) bad.push_back("interpolation: C0 must be positive");
    if (!bad.empty()) throw ValidationError(std::move(bad));

    InterpolationCheck out;
    out.r = r;
    out.q = q;
    out.c0 = c0;
    out.lambda_interp = (1.0 / r - 1.0 / q) / (1.0 / r - 1.0 / p);
    out.gamma = 2.0 * (1.0 - out.lambda_interp) * q / (2.0 - out.lambda_interp * q);

    out.lhs = std::pow(lk_norm(v, q), q);
    const double grad_sq = [&] {
        auto g = gradient(v);
        double s = 0.0;
        for (const auto& c : g) s += l2_norm(c) * l2_norm(c);
        return s;
    }();
    const double nr = lk_norm(v, r);
    out.rhs = c_n * std::pow(c0, -out.lambda_interp * q / (2.0 - out.lambda_interp * q)) *
                  std::pow(nr, out.gamma) +
              c0 * grad_sq;
    out.margin = out.rhs - out.lhs;
    return out;
}

double calibrate_interpolation_constant(const std::vector<Field>& probes,
                                        const std::vector<std::pair<double, double>>& rq_pairs,
                                        const std::vector<double>& c0_values,
                                        const ModelParams& params) {
    double needed = 0.0;
    for (const Field& v : probes) {
        auto g = gradient(v);
        double grad_sq = 0.0;
        for (const auto& c : g) grad_sq += l2_norm(c) * l2_norm(c);
        const double p = sobolev_exponent(params.n);
        for (auto [r, q] : rq_pairs) {
            const double lam = (1.0 / r - 1.0 / q) / (1.0 / r - 1.0 / p);
            const double nq = std::pow(lk_norm(v, q), q);
            const double nr = lk_norm(v, r);
            const double gamma = 2.0 * (1.0 - lam) * q / (2.0 - lam * q);
            for (double c0 : c0_values) {
                const double gap = nq - c0 * grad_sq;
                if (gap <= 0.0) continue;
                const double c = gap * std::pow(c0, lam * q / (2.0 - lam * q)) / std::pow(nr, gamma);
                needed = std::max(needed, c);
            }
        }
    }
    return needed;
}

LbetaBoundCheck lbeta_bound_check(const RunResult& result, const ModelParams& params) {
    params.validate();
    if (std::abs(params.eta() - params.alpha) > 1e-9 * std::max(params.alpha, 1.0))
        throw ValidationError("lbeta_bound_check: the bound is stated only for sigma + 1 = alpha");
    if (result.trace.empty()) throw ValidationError("lbeta_bound_check: empty trace");

    LbetaBoundCheck out;
    out.slack = 1e-3;
    const double constant = 1.0 + (params.beta - 1.0) / (params.beta + params.sigma - 1.0);
    out.bound = std::max(result.trace.front().nonlocal_mass, constant);
    out.worst = 0.0;
    for (const auto& row : result.trace) out.worst = std::max(out.worst, row.nonlocal_mass);
    out.passed = out.worst <= out.bound + out.slack;
    return out;
}

PdeResidual pde_residual(const Field& u_before, const Field& u_after, double dt,
                         const ModelParams& params) {
    if (!(dt > 0.0)) throw ValidationError("pde_residual: dt must be positive");
    const Grid& g = u_before.grid();
    Field mid(g);
    {
        auto a = u_before.values();
        auto b = u_after.values();
        auto o = mid.values();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = 0.5 * (a[i] + b[i]);
    }
    Field f = rhs(mid, params);
    Field diff(g);
    {
        auto a = u_before.values();
        auto b = u_after.values();
        auto r = f.values();
        auto o = diff.values();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] = (b[i] - a[i]) / dt - r[i];
    }
    const double den = l2_norm(f);
    const double num = l2_norm(diff);
    if (den < 1e-14) return {num, true};
    return {num / den, false};
}

nlohmann::json to_json(const CheckRecord& rec) {
    return nlohmann::json{{"check_name", rec.check_name}, {"inputs", rec.inputs},
                          {"lhs", rec.lhs},             {"rhs", rec.rhs},
                          {"margin", rec.margin},       {"pass", rec.pass}};
}

std::vector<CheckRecord> check_suite(const CheckSuiteOptions& options) {
    std::vector<CheckRecord> records;
    std::mt19937_64 rng(options.seed);

    {  // fundamental-solution constants in three dimensions
        const auto kc = kernel_constants(3);
        CheckRecord rec;
        rec.check_name = "kernel_constants_n3";
        rec.inputs = {{"n", 3}};
        rec.lhs = kc.c_n;
        rec.rhs = 1.0 / (4.0 * std::numbers::pi);
        rec.margin = -std::abs(rec.lhs - rec.rhs);
        rec.pass = std::abs(kc.c_n - 1.0 / (4.0 * std::numbers::pi)) < 1e-14 &&
                   std::abs(kc.b_n - 4.0 / 3.0 * std::numbers::pi) < 1e-14;
        records.push_back(rec);
    }

    {  // exponent identity d/b = beta - (alpha - 1) under the stated conditions
        std::uniform_real_distribution<double> sig(1.0, 5.0), al(1.05, 6.0), be(1.05, 8.0);
        int accepted = 0;
        double worst = 0.0;
        bool d_positive = true;
        while (accepted < 100) {
            ModelParams p{3, sig(rng), al(rng), be(rng), 1.0};
            if (!(p.eta() > p.alpha)) continue;
            ExponentLedger lg;
            try {
                lg = exponent_ledger(p, std::max(p.beta - (p.alpha - 1.0), 1.0) + 1.5);
            } catch (const DegenerateLedgerError&) {
                continue;
            }
            if (!lg.growth_condition || !lg.aggregation_condition) continue;
            if (lg.b_den == 0.0) continue;
            ++accepted;
            const double got = lg.d_num / lg.b_den + options.db_identity_perturbation;
            worst = std::max(worst, std::abs(got - (p.beta - (p.alpha - 1.0))));
            if (!(lg.d_num > 0.0)) d_positive = false;
        }
        CheckRecord rec;
        rec.check_name = "db_identity";
        rec.inputs = {{"samples", 100}, {"seed", options.seed}};
        rec.lhs = worst;
        rec.rhs = 1e-10;
        rec.margin = rec.rhs - rec.lhs;
        rec.pass = worst < 1e-10 && d_positive;
        records.push_back(rec);
    }

    {  // classifier totality and exclusivity on a fuzzed parameter box
        std::uniform_int_distribution<int> dim(3, 6);
        std::uniform_real_distribution<double> sig(1.0, 5.0), al(1.01, 6.0), be(1.01, 8.0);
        bool total = true;
        for (int i = 0; i < 2000 && total; ++i) {
            ModelParams p{dim(rng), sig(rng), al(rng), be(rng), 1.0};
            const Regime reg = classify_regime(p);
            total = to_string(reg.verdict) != "?";
        }
        CheckRecord rec;
        rec.check_name = "classifier_totality";
        rec.inputs = {{"samples", 2000}, {"seed", options.seed}};
        rec.lhs = total ? 1.0 : 0.0;
        rec.rhs = 1.0;
        rec.margin = rec.lhs - rec.rhs;
        rec.pass = total;
        records.push_back(rec);
    }

    {  // scaling preserves the L^beta quadrature norm
        const Grid grid = make_grid(64, 16.0);
        ModelParams p{3, 2.0, 3.0, 3.0, grid.length};
        ProfileSpec prof{GaussianBump{1.0, 1.0, {0, 0, 0}}, {}};
        const double base = lk_norm(sample_profile(prof, grid), p.beta);
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0}) {
            Field f = scaling_rescale(prof, ScalingSpec{lambda, p}, grid);
            worst = std::max(worst, std::abs(lk_norm(f, p.beta) / base - 1.0));
        }
        CheckRecord rec;
        rec.check_name = "scaling_lbeta_norm";
        rec.inputs = {{"lambdas", {0.5, 1.0, 2.0}}, {"grid_points", grid.n_points}};
        rec.lhs = worst;
        rec.rhs = 1e-10;
        rec.margin = rec.rhs - rec.lhs;
        rec.pass = worst < 1e-10;
        records.push_back(rec);
    }

    {  // interpolation margins with the fitted constant
        const Grid grid = make_grid(48, 16.0);
        ModelParams p{3, 1.0, 2.0, 3.0, grid.length};
        double worst = std::numeric_limits<double>::infinity();
        for (double s : {0.5, 1.0, 2.0}) {
            Field v = sample_profile(ProfileSpec{GaussianBump{1.0, s, {0, 0, 0}}, {}}, grid);
            for (double c0 : {0.1, 1.0, 10.0}) {
                const auto chk = interpolation_check(v, 2.0, 3.0, c0, p);
                worst = std::min(worst, chk.margin);
            }
        }
        CheckRecord rec;
        rec.check_name = "interpolation_margin";
        rec.inputs = {{"r", 2.0}, {"q", 3.0}, {"c_n", kFittedInterpolationConstant3}};
        rec.lhs = 0.0;
        rec.rhs = worst;
        rec.margin = worst;
        rec.pass = worst >= 0.0;
        records.push_back(rec);
    }

    {  // a priori L^beta bound along a short canned run (sigma + 1 = alpha)
        const Grid grid = make_grid(48, 12.0);
        ModelParams p{3, 1.0, 2.0, 3.0, grid.length};
        SolverConfig cfg;
        cfg.t_end = 0.5;
        cfg.dt_init = 5e-3;
        // width >= ~5 cells keeps the dealiased powers inside the positivity budget
        Field u0 = sample_profile(ProfileSpec{GaussianBump{0.55, 1.4, {0, 0, 0}}, {}}, grid);
        RunResult rr = run(u0, p, cfg);
        const auto chk = lbeta_bound_check(rr, p);
        CheckRecord rec;
        rec.check_name = "lbeta_bound";
        rec.inputs = {{"t_end", cfg.t_end}, {"verdict", to_string(rr.verdict)}};
        rec.lhs = chk.worst;
        rec.rhs = chk.bound + chk.slack;
        rec.margin = rec.rhs - rec.lhs;
        rec.pass = chk.passed && rr.verdict == RunVerdict::ReachedTEnd;
        records.push_back(rec);
    }

    return records;
}

}  // namespace nlcg
