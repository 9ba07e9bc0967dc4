/// @file kernels_neon.cpp
/// @brief NEON variants of the inner loops for aarch64, where Advanced SIMD
/// is architecturally guaranteed (no runtime feature test needed).

#if defined(__aarch64__)

#include "anse/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace anse::kernels {
namespace {

void axpy(double* y, double a, const double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale(double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i,
                  vfmaq_f64(vld1q_f64(dst + i), vld1q_f64(a + i), vld1q_f64(b + i)));
    }
    for (; i < n; ++i) dst[i] = std::fma(a[i], b[i], dst[i]);
}

void cmul_factors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t ff = vdupq_n_f64(f[i]);
        vst1q_f64(d + 2 * i, vmulq_f64(ff, vld1q_f64(d + 2 * i)));
    }
}

void cmul_ifactors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(d + 2 * i);
        const float64x2_t swapped = vextq_f64(v, v, 1);  // (im, re)
        const float64x2_t signs = {-f[i], f[i]};
        vst1q_f64(d + 2 * i, vmulq_f64(signs, swapped));
    }
}

double weighted_abs2_sum(const std::complex<double>* c, const double* w,
                         std::size_t n) {
    const double* d = reinterpret_cast<const double*>(c);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(d + 2 * i);
        acc = vfmaq_f64(acc, vmulq_f64(v, v), vdupq_n_f64(w[i]));
    }
    return vaddvq_f64(acc);
}

double weighted_dot_re(const std::complex<double>* a, const std::complex<double>* b,
                       const double* w, std::size_t n) {
    const double* da = reinterpret_cast<const double*>(a);
    const double* db = reinterpret_cast<const double*>(b);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t prod =
            vmulq_f64(vld1q_f64(da + 2 * i), vld1q_f64(db + 2 * i));
        acc = vfmaq_f64(acc, prod, vdupq_n_f64(w[i]));
    }
    return vaddvq_f64(acc);
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    }
    double best = vmaxvq_f64(m);
    for (; i < n; ++i) best = std::max(best, std::fabs(x[i]));
    return best;
}

double weighted_abs_sum(const double* x, const double* w, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vabsq_f64(vld1q_f64(x + i)), vld1q_f64(w + i));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += w[i] * std::fabs(x[i]);
    return total;
}

double dot(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
    }
    double total = vaddvq_f64(acc);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

}  // namespace

const Ops* neon_ops() {
    static const Ops table = {
        "neon",    axpy,           scale,   mul,
        mul_acc,   cmul_factors,   cmul_ifactors,
        weighted_abs2_sum, weighted_dot_re, max_abs, weighted_abs_sum, dot,
    };
    return &table;
}

}  // namespace anse::kernels

#endif  // aarch64
