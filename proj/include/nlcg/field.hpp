#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "nlcg/grid.hpp"

namespace nlcg {

// Allocator with FFTW-compatible alignment so transform plans can be reused
// across arrays (new-array execute requires matching alignment).
template <class T>
struct FftwAllocator {
    using value_type = T;
    FftwAllocator() = default;
    template <class U>
    FftwAllocator(const FftwAllocator<U>&) {}
    T* allocate(std::size_t n);
    void deallocate(T* p, std::size_t) noexcept;
    template <class U>
    bool operator==(const FftwAllocator<U>&) const { return true; }
};

using RealVec = std::vector<double, FftwAllocator<double>>;
using ComplexVec = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

// Real scalar field sampled on a Grid, row-major with the z axis contiguous.
class Field {
  public:
    Field() = default;
    explicit Field(const Grid& g) : grid_(g), values_(g.size(), 0.0) {}
    Field(const Grid& g, double fill) : grid_(g), values_(g.size(), fill) {}

    const Grid& grid() const { return grid_; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double& operator()(int i, int j, int k) {
        return values_[(static_cast<std::size_t>(i) * grid_.n_points + j) * grid_.n_points + k];
    }
    double operator()(int i, int j, int k) const {
        return values_[(static_cast<std::size_t>(i) * grid_.n_points + j) * grid_.n_points + k];
    }

  private:
    Grid grid_{};
    RealVec values_;
};

// Spectral coefficients of a real field in r2c half-complex layout:
// dims (N, N, N/2+1), z axis contiguous.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid_(g), coeffs_(g.spectral_size(), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    std::span<std::complex<double>> coeffs() { return coeffs_; }
    std::span<const std::complex<double>> coeffs() const { return coeffs_; }
    std::complex<double>& operator()(int i, int j, int k) {
        return coeffs_[(static_cast<std::size_t>(i) * grid_.n_points + j) * (grid_.n_points / 2 + 1) + k];
    }

  private:
    Grid grid_{};
    ComplexVec coeffs_;
};

}  // namespace nlcg
