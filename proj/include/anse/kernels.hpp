/// @file kernels.hpp
/// @brief Data-parallel inner loops: scalar reference implementations plus
/// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected at runtime.
///
/// Everything above this layer (transform scaling, Runge-Kutta combinations,
/// Parseval reductions, quadrature sums) calls through the dispatched table so
/// the hot loops have exactly one home. The scalar table is the reference:
/// SIMD variants are equivalence-tested against it. Reductions may associate
/// differently across variants, so comparisons are tolerance-based; within a
/// single process the dispatched variant is fixed, which keeps run output
/// deterministic.

#ifndef ANSE_KERNELS_HPP
#define ANSE_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace anse::kernels {

/// Function table for one implementation.
struct Ops {
    const char* name;

    /// y[i] += a * x[i]
    void (*axpy)(double* y, double a, const double* x, std::size_t n);
    /// x[i] *= a
    void (*scale)(double* x, double a, std::size_t n);
    /// dst[i] = a[i] * b[i]
    void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
    /// dst[i] += a[i] * b[i]
    void (*mul_acc)(double* dst, const double* a, const double* b, std::size_t n);
    /// c[i] *= f[i]  (complex by real factor)
    void (*cmul_factors)(std::complex<double>* c, const double* f, std::size_t n);
    /// c[i] *= i * f[i]  (complex by imaginary factor: (re,im) -> (-f*im, f*re))
    void (*cmul_ifactors)(std::complex<double>* c, const double* f, std::size_t n);
    /// sum_i w[i] * |c[i]|^2
    double (*weighted_abs2_sum)(const std::complex<double>* c, const double* w,
                                std::size_t n);
    /// sum_i w[i] * Re(a[i] * conj(b[i]))
    double (*weighted_dot_re)(const std::complex<double>* a,
                              const std::complex<double>* b, const double* w,
                              std::size_t n);
    /// max_i |x[i]|
    double (*max_abs)(const double* x, std::size_t n);
    /// sum_i w[i] * |x[i]|
    double (*weighted_abs_sum)(const double* x, const double* w, std::size_t n);
    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
};

/// Portable reference implementation (always available).
const Ops& scalar();

/// Best implementation supported by the executing CPU, chosen once per process.
const Ops& active();

/// All implementations compiled in and executable on this CPU (for tests).
std::vector<const Ops*> available();

}  // namespace anse::kernels

#endif  // ANSE_KERNELS_HPP
