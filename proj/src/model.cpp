#include "nlcg/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlcg {

namespace {
constexpr double kEqualityRtol = 1e-9;
constexpr double kMajorantCap = 1e12;

bool nearly_equal(double a, double b, double rtol) {
    return std::abs(a - b) <= rtol * std::max({std::abs(a), std::abs(b), 1.0});
}
}  // namespace

void ModelParams::validate() const {
    std::vector<std::string> bad;
    if (n < 3) bad.push_back("model.n: dimension must be >= 3 (got " + std::to_string(n) + ")");
    if (!(sigma >= 1.0)) bad.push_back("model.sigma: must be >= 1 (got " + std::to_string(sigma) + ")");
    if (!(alpha > 1.0)) bad.push_back("model.alpha: must exceed 1 (got " + std::to_string(alpha) + ")");
    if (!(beta > 1.0)) bad.push_back("model.beta: must exceed 1 (got " + std::to_string(beta) + ")");
    if (!(domain_length > 0.0))
        bad.push_back("model.domain_length: must be positive (got " + std::to_string(domain_length) + ")");
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::GlobalCase1: return "GlobalCase1";
        case Verdict::GlobalCase2: return "GlobalCase2";
        case Verdict::Critical: return "Critical";
        case Verdict::ConjecturedBlowup: return "ConjecturedBlowup";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

Regime classify_regime(const ModelParams& params) {
    params.validate();
    const double eta = params.eta();
    RegimeWitness w{};
    w.order_margin = params.alpha - eta;
    w.growth_margin = 1.0 + 2.0 * params.beta / params.n - params.alpha;
    w.aggregation_margin = 2.0 * params.beta + 2.0 * params.alpha + params.n - eta * (params.n + 2);
    w.balance_residual = params.alpha - 1.0 - 2.0 * params.beta / params.n;
    w.equality_rtol = kEqualityRtol;

    const bool order_equal = nearly_equal(eta, params.alpha, kEqualityRtol);
    const bool balanced = nearly_equal(params.alpha - 1.0, 2.0 * params.beta / params.n, kEqualityRtol);

    Verdict verdict = Verdict::Indeterminate;
    if (order_equal && balanced) {
        verdict = Verdict::Critical;
    } else if (order_equal && w.balance_residual > 0.0) {
        verdict = Verdict::ConjecturedBlowup;
    } else if (w.order_margin >= 0.0 && w.growth_margin > 0.0) {
        verdict = Verdict::GlobalCase1;
    } else if (w.order_margin < 0.0 && w.aggregation_margin > 0.0) {
        verdict = Verdict::GlobalCase2;
    }
    return {verdict, w};
}

ExponentLedger exponent_ledger(const ModelParams& params, double k) {
    params.validate();
    if (!(k > 1.0)) throw ValidationError("ledger: k must exceed 1 (got " + std::to_string(k) + ")");

    const double alpha = params.alpha, beta = params.beta, eta = params.eta();
    ExponentLedger lg{};
    lg.p = sobolev_exponent(params.n);
    lg.k = k;
    lg.k_prime = (k + alpha - 1.0 + beta) / 2.0;

    auto guard = [&](double den, const char* what) {
        if (den == 0.0 || !std::isfinite(den))
            throw DegenerateLedgerError(std::string("ledger: degenerate denominator in ") + what);
        return den;
    };

    auto interpolation_pair = [&](double expo, double& lambda_out, double& b_out, const char* tag) {
        const double q_end = expo + k - 1.0;  // L^(q_end) target of the estimate
        const double num = k / (2.0 * lg.k_prime) - k / (2.0 * guard(q_end, tag));
        const double den = guard(k / (2.0 * lg.k_prime) - 1.0 / lg.p, tag);
        lambda_out = num / den;
        b_out = (1.0 - lambda_out) * q_end / guard(1.0 - lambda_out * q_end / k, tag);
    };
    guard(lg.k_prime, "k'");
    interpolation_pair(alpha, lg.lambda_alpha, lg.b_alpha, "growth exponent");
    interpolation_pair(eta, lg.lambda_eta, lg.b_eta, "aggregation exponent");

    lg.theta = (1.0 / beta - 1.0 / lg.k_prime) /
               guard(1.0 / beta - 1.0 / (k + alpha - 1.0), "theta");

    lg.a0 = 0.5 - 1.0 / lg.p - (alpha - 1.0) / (2.0 * beta);
    lg.a1 = (eta - alpha) / beta;
    lg.d_num = lg.a0 * ((alpha + beta - 1.0) / 2.0 - (eta - 1.0)) -
               lg.a1 / (2.0 * lg.p) * (alpha + beta - 1.0);
    lg.b_den = lg.a0 / 2.0 - lg.a1 * (0.5 - 1.0 / (2.0 * lg.p));

    const double pm2 = lg.p - 2.0;
    lg.k_floor = std::max({2.0 * (eta - 1.0) / pm2, 2.0 * (alpha - 1.0) / pm2,
                           2.0 * lg.p * (eta - 1.0) / pm2 - beta - (alpha - 1.0),
                           2.0 * lg.p * (alpha - 1.0) / pm2 - beta - (alpha - 1.0)});

    lg.growth_condition = alpha < 1.0 + (1.0 - 2.0 / lg.p) * beta;
    lg.aggregation_condition = lg.a1 * (1.0 - 1.0 / lg.p) < lg.a0;
    lg.k_admissible = k > std::max(lg.k_floor, beta - (alpha - 1.0));

    const double lo = std::max({lg.p * (eta - 1.0) / pm2, lg.p * (alpha - 1.0) / pm2, 1.0, k / 2.0});
    const double hi = std::min(k + alpha - 1.0, k + eta - 1.0);
    lg.k_prime_bracket_ok = lo < lg.k_prime && lg.k_prime < hi;

    for (double v : {lg.lambda_alpha, lg.lambda_eta, lg.b_alpha, lg.b_eta, lg.theta}) {
        if (!std::isfinite(v)) throw DegenerateLedgerError("ledger: non-finite exponent produced");
    }
    return lg;
}

double existence_time_estimate(double sup_u0, const ModelParams& params) {
    params.validate();
    if (sup_u0 < 0.0) throw ValidationError("existence_time_estimate: sup_u0 must be >= 0");
    if (sup_u0 == 0.0) return std::numeric_limits<double>::infinity();

    const double eta = params.eta(), alpha = params.alpha;
    auto f = [&](double y) { return std::pow(y, eta) + std::pow(y, alpha); };

    auto rk4 = [&](double y, double dt) {
        const double k1 = f(y);
        const double k2 = f(y + 0.5 * dt * k1);
        const double k3 = f(y + 0.5 * dt * k2);
        const double k4 = f(y + dt * k3);
        return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    double y = sup_u0;
    double t = 0.0;
    double dt = 0.01 * y / f(y);
    const double rtol = 1e-10;
    while (y < kMajorantCap) {
        // step doubling: one full step vs two halves
        const double y1 = rk4(y, dt);
        const double yh = rk4(rk4(y, 0.5 * dt), 0.5 * dt);
        const double err = std::abs(y1 - yh) / std::max(std::abs(yh), 1e-300);
        if (!std::isfinite(y1) || !std::isfinite(yh) || err > rtol) {
            dt *= 0.5;
            continue;
        }
        y = yh;
        t += dt;
        if (err < rtol / 64.0) dt *= 2.0;
    }
    return t;
}

double sobolev_exponent(int n) {
    if (n < 3) throw ValidationError("sobolev exponent undefined for dimension " + std::to_string(n));
    return 2.0 * n / (n - 2.0);
}

}  // namespace nlcg
