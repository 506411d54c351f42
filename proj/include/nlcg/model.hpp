#pragma once

#include <string>

#include "nlcg/errors.hpp"

namespace nlcg {

// Model exponents for u_t = lap u - div(u^sigma grad v) + u^alpha (1 - int u^beta),
// v the Newtonian potential of u. Standing hypotheses: n >= 3, sigma >= 1,
// alpha > 1, beta > 1. eta = sigma + 1 is the aggregation exponent that the
// energy estimates compare against alpha.
struct ModelParams {
    int n = 3;
    double sigma = 1.0;
    double alpha = 2.0;
    double beta = 2.0;
    double domain_length = 32.0;

    double eta() const { return sigma + 1.0; }
    void validate() const;
};

enum class Verdict {
    GlobalCase1,       // sigma+1 <= alpha, alpha < 1 + 2 beta / n: global, growth-dominated
    GlobalCase2,       // alpha < sigma+1, (sigma+1)(n+2) < 2 beta + 2 alpha + n
    Critical,          // sigma+1 == alpha, alpha - 1 == 2 beta / n (scaling balance)
    ConjecturedBlowup, // sigma+1 == alpha, alpha - 1 > 2 beta / n
    Indeterminate,
};

std::string to_string(Verdict v);

// Signed distances of every inequality the classifier evaluates; positive
// margin means the inequality holds. The sweep runner draws phase boundaries
// from the zero crossings.
struct RegimeWitness {
    double order_margin;        // alpha - (sigma+1)
    double growth_margin;       // 1 + 2 beta / n - alpha
    double aggregation_margin;  // 2 beta + 2 alpha + n - (sigma+1)(n+2)
    double balance_residual;    // alpha - 1 - 2 beta / n
    double equality_rtol;       // tolerance used for the two equality tests
};

struct Regime {
    Verdict verdict;
    RegimeWitness witness;
};

// Verdict precedence on ties: Critical > ConjecturedBlowup > GlobalCase1 >
// GlobalCase2 > Indeterminate. Equalities use relative tolerance 1e-9.
Regime classify_regime(const ModelParams& params);

// Exponent bookkeeping of the a priori L^k estimate for a given index k:
// the interpolation exponents for the growth (alpha) and aggregation (eta)
// terms, the Young-inequality conditions, and the admissibility threshold
// on k. The ratio d_num/b_den collapses to beta - (alpha - 1).
struct ExponentLedger {
    double p;             // Sobolev exponent 2n/(n-2)
    double k;
    double k_prime;       // (k + alpha - 1 + beta)/2
    double theta;
    double lambda_alpha;
    double lambda_eta;
    double b_alpha;
    double b_eta;
    double a0;            // 1/2 - 1/p - (alpha-1)/(2 beta)
    double a1;            // (eta - alpha)/beta
    double d_num;         // a0((alpha+beta-1)/2 - (eta-1)) - a1(alpha+beta-1)/(2p)
    double b_den;         // a0/2 - a1(1/2 - 1/(2p))
    double k_floor;       // lower admissibility bound on k from the exponent algebra
    bool growth_condition;       // alpha < 1 + (1 - 2/p) beta
    bool aggregation_condition;  // a1 (1 - 1/p) < a0
    bool k_admissible;           // k > max(k_floor, beta - (alpha - 1))
    // k' must sit strictly inside (max(p(e-1)/(p-2) for e in {alpha,eta}, 1, k/2),
    // min(k+alpha-1, k+eta-1)) for the interpolation exponents to be usable;
    // with k' pinned to (k+alpha-1+beta)/2 this is not implied by k_admissible
    // when eta < alpha.
    bool k_prime_bracket_ok;
};

ExponentLedger exponent_ledger(const ModelParams& params, double k);

// Blow-up time of the scalar majorant y' = y^(sigma+1) + y^alpha, y(0) = sup_u0,
// by adaptive step-doubling RK4; +infinity only for sup_u0 = 0. The majorant is
// declared blown up once y exceeds 1e12 (the remaining time to infinity is
// below any reported tolerance).
double existence_time_estimate(double sup_u0, const ModelParams& params);

// 2n/(n-2); rejects n < 3.
double sobolev_exponent(int n);

}  // namespace nlcg
