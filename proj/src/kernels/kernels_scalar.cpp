/// @file kernels_scalar.cpp
/// @brief Reference implementations of the data-parallel inner loops.

#include "anse/kernels.hpp"

#include <cmath>

namespace anse::kernels {
namespace {

void axpy(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a[i] * b[i];
}

void cmul_factors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < n; ++i) {
        d[2 * i] *= f[i];
        d[2 * i + 1] *= f[i];
    }
}

void cmul_ifactors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = d[2 * i];
        const double im = d[2 * i + 1];
        d[2 * i] = -f[i] * im;
        d[2 * i + 1] = f[i] * re;
    }
}

double weighted_abs2_sum(const std::complex<double>* c, const double* w,
                         std::size_t n) {
    const double* d = reinterpret_cast<const double*>(c);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    }
    return acc;
}

double weighted_dot_re(const std::complex<double>* a, const std::complex<double>* b,
                       const double* w, std::size_t n) {
    const double* da = reinterpret_cast<const double*>(a);
    const double* db = reinterpret_cast<const double*>(b);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += w[i] * (da[2 * i] * db[2 * i] + da[2 * i + 1] * db[2 * i + 1]);
    }
    return acc;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double weighted_abs_sum(const double* x, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::fabs(x[i]);
    return acc;
}

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace

const Ops& scalar() {
    static const Ops table = {
        "scalar",  axpy,           scale,   mul,
        mul_acc,   cmul_factors,   cmul_ifactors,
        weighted_abs2_sum, weighted_dot_re, max_abs, weighted_abs_sum, dot,
    };
    return table;
}

}  // namespace anse::kernels
