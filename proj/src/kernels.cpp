#include "nlcg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace nlcg::kernels {

namespace {

bool integral_exponent(double e, int& n) {
    const double r = std::nearbyint(e);
    if (r == e && std::abs(r) <= 64.0) {
        n = static_cast<int>(r);
        return n >= 0;
    }
    return false;
}

inline double powi(double x, int n) {
    double r = 1.0, b = x;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

// Deterministic reduction: fixed-size blocks reduced independently, partials
// combined in block order regardless of thread count.
template <class BlockOp, class Combine>
double blocked_reduce(std::size_t n, double init, BlockOp block, Combine combine) {
    const std::size_t nb = (n + reduce_block - 1) / reduce_block;
    if (nb <= 1) return n ? block(0, n) : init;
    std::vector<double> partial(nb);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * reduce_block;
        partial[b] = block(lo, std::min(lo + reduce_block, n));
    }
    double acc = init;
    for (double p : partial) acc = combine(acc, p);
    return acc;
}

}  // namespace

void pow_clamped(std::span<const double> in, double e, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());
    int ie;
    if (integral_exponent(e, ie)) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = powi(std::max(in[i], 0.0), ie);
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::pow(std::max(in[i], 0.0), e);
    }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

double clamp_small_negatives(std::span<double> x, double budget) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(min : worst)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double v = x[i];
        if (v < 0.0) {
            worst = std::min(worst, v);
            if (v >= -budget) x[i] = 0.0;
        }
    }
    return worst;
}

double sum(std::span<const double> v) {
    return blocked_reduce(
        v.size(), 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += v[i];
            return s;
        },
        [](double a, double b) { return a + b; });
}

double sum_abs_pow(std::span<const double> v, double e) {
    int ie;
    if (integral_exponent(e, ie)) {
        return blocked_reduce(
            v.size(), 0.0,
            [&](std::size_t lo, std::size_t hi) {
                double s = 0.0;
                for (std::size_t i = lo; i < hi; ++i) s += powi(std::abs(v[i]), ie);
                return s;
            },
            [](double a, double b) { return a + b; });
    }
    return blocked_reduce(
        v.size(), 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::abs(v[i]), e);
            return s;
        },
        [](double a, double b) { return a + b; });
}

double sum_clamped_pow(std::span<const double> v, double e) {
    int ie;
    if (integral_exponent(e, ie)) {
        return blocked_reduce(
            v.size(), 0.0,
            [&](std::size_t lo, std::size_t hi) {
                double s = 0.0;
                for (std::size_t i = lo; i < hi; ++i) s += powi(std::max(v[i], 0.0), ie);
                return s;
            },
            [](double a, double b) { return a + b; });
    }
    return blocked_reduce(
        v.size(), 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += std::pow(std::max(v[i], 0.0), e);
            return s;
        },
        [](double a, double b) { return a + b; });
}

double max_abs(std::span<const double> v) {
    return blocked_reduce(
        v.size(), 0.0,
        [&](std::size_t lo, std::size_t hi) {
            double m = 0.0;
            for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(v[i]));
            return m;
        },
        [](double a, double b) { return std::max(a, b); });
}

double min_value(std::span<const double> v) {
    return blocked_reduce(
        v.size(), std::numeric_limits<double>::infinity(),
        [&](std::size_t lo, std::size_t hi) {
            double m = v[lo];
            for (std::size_t i = lo + 1; i < hi; ++i) m = std::min(m, v[i]);
            return m;
        },
        [](double a, double b) { return std::min(a, b); });
}

double max_value(std::span<const double> v) {
    return blocked_reduce(
        v.size(), -std::numeric_limits<double>::infinity(),
        [&](std::size_t lo, std::size_t hi) {
            double m = v[lo];
            for (std::size_t i = lo + 1; i < hi; ++i) m = std::max(m, v[i]);
            return m;
        },
        [](double a, double b) { return std::max(a, b); });
}

bool all_finite(std::span<const double> v) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
    bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
    for (std::ptrdiff_t i = 0; i < n; ++i) ok = ok && std::isfinite(v[i]);
    return ok;
}

void axpy(std::complex<double> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(std::span<std::complex<double>> x, double a) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= a;
}

namespace serial {

void pow_clamped(std::span<const double> in, double e, std::span<double> out) {
    int ie;
    if (integral_exponent(e, ie)) {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = powi(std::max(in[i], 0.0), ie);
    } else {
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::pow(std::max(in[i], 0.0), e);
    }
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

double clamp_small_negatives(std::span<double> x, double budget) {
    double worst = 0.0;
    for (auto& v : x) {
        if (v < 0.0) {
            worst = std::min(worst, v);
            if (v >= -budget) v = 0.0;
        }
    }
    return worst;
}

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double sum_abs_pow(std::span<const double> v, double e) {
    int ie;
    double s = 0.0;
    if (integral_exponent(e, ie)) {
        for (double x : v) s += powi(std::abs(x), ie);
    } else {
        for (double x : v) s += std::pow(std::abs(x), e);
    }
    return s;
}

double sum_clamped_pow(std::span<const double> v, double e) {
    int ie;
    double s = 0.0;
    if (integral_exponent(e, ie)) {
        for (double x : v) s += powi(std::max(x, 0.0), ie);
    } else {
        for (double x : v) s += std::pow(std::max(x, 0.0), e);
    }
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double min_value(std::span<const double> v) {
    double m = std::numeric_limits<double>::infinity();
    for (double x : v) m = std::min(m, x);
    return m;
}

double max_value(std::span<const double> v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    return m;
}

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

void axpy(std::complex<double> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(std::span<std::complex<double>> x, double a) {
    for (auto& v : x) v *= a;
}

}  // namespace serial
}  // namespace nlcg::kernels
