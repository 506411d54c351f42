#include "nlcg/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "nlcg/kernels.hpp"

namespace nlcg {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
    void* p = fftw_malloc(n * sizeof(T));
    if (!p) throw std::bad_alloc();
    return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
    fftw_free(p);
}

template struct FftwAllocator<double>;
template struct FftwAllocator<std::complex<double>>;

namespace {

struct PlanSet {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// The FFTW planner is not thread-safe; executing distinct arrays through a
// shared plan is. Plans live for the process lifetime.
class PlanCache {
  public:
    static PlanSet& get(int n) {
        static PlanCache cache;
        std::lock_guard lock(cache.mu_);
        auto it = cache.plans_.find(n);
        if (it != cache.plans_.end()) return it->second;
        RealVec real(static_cast<std::size_t>(n) * n * n);
        ComplexVec cplx(static_cast<std::size_t>(n) * n * (n / 2 + 1));
        PlanSet set;
        set.r2c = fftw_plan_dft_r2c_3d(n, n, n, real.data(),
                                       reinterpret_cast<fftw_complex*>(cplx.data()),
                                       FFTW_ESTIMATE);
        set.c2r = fftw_plan_dft_c2r_3d(n, n, n, reinterpret_cast<fftw_complex*>(cplx.data()),
                                       real.data(), FFTW_ESTIMATE);
        return cache.plans_.emplace(n, set).first->second;
    }

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [n, set] : plans_) {
            fftw_destroy_plan(set.r2c);
            fftw_destroy_plan(set.c2r);
        }
    }
    std::mutex mu_;
    std::map<int, PlanSet> plans_;
};

}  // namespace

SpectralField forward(const Field& u) {
    SpectralField out(u.grid());
    auto& plans = PlanCache::get(u.grid().n_points);
    // r2c out-of-place preserves its input
    fftw_execute_dft_r2c(plans.r2c, const_cast<double*>(u.values().data()),
                         reinterpret_cast<fftw_complex*>(out.coeffs().data()));
    return out;
}

Field inverse(const SpectralField& spec) {
    // c2r destroys its input, so transform a scratch copy
    ComplexVec scratch(spec.coeffs().begin(), spec.coeffs().end());
    Field out(spec.grid());
    auto& plans = PlanCache::get(spec.grid().n_points);
    fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.values().data());
    const double norm = 1.0 / static_cast<double>(spec.grid().size());
    auto v = out.values();
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) v[i] *= norm;
    return out;
}

void apply_heat_factor(SpectralField& spec, double t) {
    const Grid& g = spec.grid();
    const int n = g.n_points;
    const int nz = n / 2 + 1;
    // exp(-|k|^2 t) is separable; build per-axis tables
    std::vector<double> ex(n), ez(nz);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(g.mode(i));
        ex[i] = std::exp(-k * k * t);
    }
    for (int k = 0; k < nz; ++k) {
        const double kz = g.wavenumber(k);
        ez[k] = std::exp(-kz * kz * t);
    }
    auto c = spec.coeffs();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double exy = ex[i] * ex[j];
            std::complex<double>* row = &c[(static_cast<std::size_t>(i) * n + j) * nz];
            for (int k = 0; k < nz; ++k) row[k] *= exy * ez[k];
        }
    }
}

void apply_inverse_neg_laplacian(SpectralField& spec) {
    const Grid& g = spec.grid();
    const int n = g.n_points;
    const int nz = n / 2 + 1;
    std::vector<double> k2(n), kz2(nz);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(g.mode(i));
        k2[i] = k * k;
    }
    for (int k = 0; k < nz; ++k) {
        const double kz = g.wavenumber(k);
        kz2[k] = kz * kz;
    }
    auto c = spec.coeffs();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double kxy = k2[i] + k2[j];
            std::complex<double>* row = &c[(static_cast<std::size_t>(i) * n + j) * nz];
            for (int k = 0; k < nz; ++k) {
                const double ksq = kxy + kz2[k];
                row[k] = ksq > 0.0 ? row[k] / ksq : std::complex<double>{0.0, 0.0};
            }
        }
    }
}

void apply_neg_laplacian(SpectralField& spec) {
    const Grid& g = spec.grid();
    const int n = g.n_points;
    const int nz = n / 2 + 1;
    std::vector<double> k2(n), kz2(nz);
    for (int i = 0; i < n; ++i) {
        const double k = g.wavenumber(g.mode(i));
        k2[i] = k * k;
    }
    for (int k = 0; k < nz; ++k) {
        const double kz = g.wavenumber(k);
        kz2[k] = kz * kz;
    }
    auto c = spec.coeffs();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double kxy = k2[i] + k2[j];
            std::complex<double>* row = &c[(static_cast<std::size_t>(i) * n + j) * nz];
            for (int k = 0; k < nz; ++k) row[k] *= -(kxy + kz2[k]);
        }
    }
}

void apply_dealias(SpectralField& spec) {
    const Grid& g = spec.grid();
    const int n = g.n_points;
    const int nz = n / 2 + 1;
    const int cut = n / 3;
    std::vector<char> keep(n);
    for (int i = 0; i < n; ++i) keep[i] = std::abs(g.mode(i)) <= cut;
    auto c = spec.coeffs();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::complex<double>* row = &c[(static_cast<std::size_t>(i) * n + j) * nz];
            if (!keep[i] || !keep[j]) {
                for (int k = 0; k < nz; ++k) row[k] = {0.0, 0.0};
            } else {
                for (int k = cut + 1; k < nz; ++k) row[k] = {0.0, 0.0};
            }
        }
    }
}

namespace {

// First-derivative wavenumber: odd multiplier, so the unpaired Nyquist mode
// is dropped.
inline double deriv_wavenumber(const Grid& g, int idx) {
    const int m = g.mode(idx);
    if (std::abs(m) == g.n_points / 2) return 0.0;
    return g.wavenumber(m);
}

template <bool Accumulate>
void derivative_impl(SpectralField& out, const SpectralField& spec, int axis) {
    const Grid& g = spec.grid();
    const int n = g.n_points;
    const int nz = n / 2 + 1;
    auto src = spec.coeffs();
    auto dst = out.coeffs();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t base = (static_cast<std::size_t>(i) * n + j) * nz;
            for (int k = 0; k < nz; ++k) {
                double kv = 0.0;
                switch (axis) {
                    case 0: kv = deriv_wavenumber(g, i); break;
                    case 1: kv = deriv_wavenumber(g, j); break;
                    default: kv = deriv_wavenumber(g, k); break;
                }
                const std::complex<double> d = std::complex<double>{0.0, kv} * src[base + k];
                if constexpr (Accumulate)
                    dst[base + k] += d;
                else
                    dst[base + k] = d;
            }
        }
    }
}

}  // namespace

SpectralField derivative(const SpectralField& spec, int axis) {
    SpectralField out(spec.grid());
    derivative_impl<false>(out, spec, axis);
    return out;
}

void add_derivative(SpectralField& acc, const SpectralField& spec, int axis) {
    derivative_impl<true>(acc, spec, axis);
}

}  // namespace nlcg
