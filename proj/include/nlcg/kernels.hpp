#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Data-parallel array primitives behind the field and spectral operators.
// Every kernel has an OpenMP implementation (this namespace) and a plain
// serial twin in kernels::serial used as the reference in tests and in the
// benchmark. Reductions are blocked in a fixed order so results do not
// depend on the thread count.

namespace nlcg::kernels {

inline constexpr std::size_t reduce_block = 4096;

// out = max(in, 0)^e; integer exponents are evaluated by repeated multiplication.
void pow_clamped(std::span<const double> in, double e, std::span<double> out);

// out = a * b
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

// x = (x < 0 && x >= -budget) ? 0 : x. Returns the most negative value seen
// before clamping (0 if none).
double clamp_small_negatives(std::span<double> x, double budget);

double sum(std::span<const double> v);
// sum of |v|^e
double sum_abs_pow(std::span<const double> v, double e);
// sum of max(v,0)^e
double sum_clamped_pow(std::span<const double> v, double e);
double max_abs(std::span<const double> v);
double min_value(std::span<const double> v);
double max_value(std::span<const double> v);
bool all_finite(std::span<const double> v);

// y += a*x over complex spectra
void axpy(std::complex<double> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y);
void scale(std::span<std::complex<double>> x, double a);

namespace serial {
void pow_clamped(std::span<const double> in, double e, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
double clamp_small_negatives(std::span<double> x, double budget);
double sum(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double e);
double sum_clamped_pow(std::span<const double> v, double e);
double max_abs(std::span<const double> v);
double min_value(std::span<const double> v);
double max_value(std::span<const double> v);
bool all_finite(std::span<const double> v);
void axpy(std::complex<double> a, std::span<const std::complex<double>> x,
          std::span<std::complex<double>> y);
void scale(std::span<std::complex<double>> x, double a);
}  // namespace serial

}  // namespace nlcg::kernels
